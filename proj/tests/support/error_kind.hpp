#ifndef EDA_TESTS_ERROR_KIND_HPP
#define EDA_TESTS_ERROR_KIND_HPP

#include <gtest/gtest.h>

#include "eda/error.hpp"

namespace eda::testing {

/// Runs fn and returns the kind of the eda::Error it throws.
template <class Fn>
ErrorKind kind_of(Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected eda::Error";
    return ErrorKind::IoError;
}

} // namespace eda::testing

#endif

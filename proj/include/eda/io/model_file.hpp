#ifndef EDA_IO_MODEL_FILE_HPP
#define EDA_IO_MODEL_FILE_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "eda/discriminants.hpp"

namespace eda::io {

inline constexpr int kModelFormatVersion = 1;

/// A fitted EDA model plus the schema it was trained on.
struct SavedModel {
    EdaModel model;
    std::vector<std::string> feature_names;
    std::string label_column = "label";
};

/// Line-oriented text format, fields in this order:
///
///     eda-model <version>
///     orientation log_case_minus_control
///     label_column <name>
///     dimension <d>
///     feature <j> <name>                (d lines)
///     k_fraction <f>
///     spacing_floor_rel <r>
///     prior_offset <s>
///     class case|control                (case block first)
///     samples <n>
///     values <j> <n sorted values>      (d lines)
///     sigma <i> <d values>              (d lines)
///     end
///
/// Numbers use 17 significant digits so a reload scores bitwise identically.
void save_model(std::ostream& out, const SavedModel& saved);
SavedModel load_model(std::istream& in);

void save_model_file(const std::filesystem::path& path, const SavedModel& saved);
SavedModel load_model_file(const std::filesystem::path& path);

} // namespace eda::io

#endif

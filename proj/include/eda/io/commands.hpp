#ifndef EDA_IO_COMMANDS_HPP
#define EDA_IO_COMMANDS_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "eda/error.hpp"
#include "eda/simulation.hpp"

namespace eda::cli {

enum ExitCode : int { kSuccess = 0, kUsage = 2, kData = 3, kNumerical = 4 };

ExitCode exit_code_for(ErrorKind kind) noexcept;

/// Runs `body`, turning an eda::Error into a one-line `error=<Kind> ...`
/// diagnostic on `err` and the matching exit code.
int guarded(std::ostream& err, const std::function<void()>& body);

struct FitOptions {
    std::filesystem::path train;
    std::string label_column;
    std::optional<double> k_fraction;
    std::vector<double> cv_grid;
    std::size_t cv_folds = 5;
    std::uint64_t seed = 1;
    std::filesystem::path out;
};

struct PredictOptions {
    std::filesystem::path model;
    std::filesystem::path input;
    std::filesystem::path out;
    bool scores = false;
};

struct SimulateOptions {
    std::filesystem::path scenario;
    std::vector<Method> methods;
    std::optional<std::size_t> replicates;
    std::optional<std::uint64_t> seed;
    std::filesystem::path out;
};

struct BenchOptions {
    Suite suite = Suite::Table1;
    std::vector<std::size_t> dims;
    std::vector<std::size_t> sizes;
    std::size_t replicates = 25;
    std::uint64_t seed = 1;
    std::vector<Method> methods = {Method::E, Method::J, Method::Q, Method::T};
    std::filesystem::path out_dir;
};

// Each command throws eda::Error on failure; wrap with guarded() for exit codes.
void fit(const FitOptions& options, std::ostream& out);
void predict(const PredictOptions& options, std::ostream& out);
void simulate(const SimulateOptions& options, std::ostream& out);
void bench(const BenchOptions& options, std::ostream& out);

/// "E,J,Q" -> methods; ConfigError on an unknown letter.
std::vector<Method> parse_methods(const std::string& list);

} // namespace eda::cli

#endif

#ifndef EDA_IO_SCENARIO_FILE_HPP
#define EDA_IO_SCENARIO_FILE_HPP

#include <filesystem>
#include <iosfwd>

#include "eda/simulation.hpp"

namespace eda::io {

// Flat `key = value` lines, '#' starts a comment. Keys mirror ScenarioConfig:
//
//   family = normal | t1
//   dim, size, replicates, seed            integers
//   case_mean_shift, rho_case, rho_control, case_variance_scale,
//   control_variance_scale, k_fraction     decimals
//   case_cov, control_cov                  dim*dim comma-separated, row-major
//   train_test_ratio = 5:1
//
// Unknown or repeated keys are ConfigErrors. k_fraction defaults to 0.8 for
// normal and 0.1 for t1 when absent.
ScenarioConfig parse_scenario(std::istream& in);
ScenarioConfig load_scenario_file(const std::filesystem::path& path);

/// Writes every field, so parse_scenario(write_scenario(s)) == s.
void write_scenario(std::ostream& out, const ScenarioConfig& scenario);

/// CSV header `method,mean,sd,failures,replicates`.
void write_report(std::ostream& out, const AccuracyReport& report);

} // namespace eda::io

#endif

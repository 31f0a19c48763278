#include "eda/io/commands.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "eda/discriminants.hpp"
#include "eda/io/csv.hpp"
#include "eda/io/model_file.hpp"
#include "eda/io/scenario_file.hpp"

namespace eda::cli {

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
    return out;
}

std::string fixed2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string shortest(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

const char* roman(int row) {
    static const char* names[] = {"I", "II", "III", "IV"};
    return names[row - 1];
}

} // namespace

ExitCode exit_code_for(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::ConfigError:
        return kUsage;
    case ErrorKind::SingularCovariance:
    case ErrorKind::DegenerateFeature:
    case ErrorKind::NotPositiveDefinite:
    case ErrorKind::DomainError:
        return kNumerical;
    default:
        return kData;
    }
}

int guarded(std::ostream& err, const std::function<void()>& body) {
    try {
        body();
        return kSuccess;
    } catch (const Error& e) {
        err << "error=" << to_string(e.kind()) << ' ' << e.what() << '\n';
        return exit_code_for(e.kind());
    }
}

std::vector<Method> parse_methods(const std::string& list) {
    std::vector<Method> methods;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto m = parse_method(item);
        if (!m) throw Error(ErrorKind::ConfigError, "field 'methods': unknown method '" + item + "'");
        methods.push_back(*m);
    }
    if (methods.empty()) throw Error(ErrorKind::ConfigError, "field 'methods': empty list");
    return methods;
}

void fit(const FitOptions& options, std::ostream& out) {
    if (options.k_fraction && !options.cv_grid.empty()) {
        throw Error(ErrorKind::ConfigError, "field 'k-fraction': cannot combine with --cv-grid");
    }
    const io::FeatureTable table =
        io::to_feature_table(io::read_csv_file(options.train), options.label_column);
    const Matrix cases = table.case_rows();
    const Matrix controls = table.control_rows();
    if (cases.rows() < 2 || controls.rows() < 2) {
        throw Error(ErrorKind::TooFewSamples,
                    "need at least 2 rows per class, got case=" + std::to_string(cases.rows()) +
                        " control=" + std::to_string(controls.rows()));
    }

    JacobianConfig cfg;
    if (options.k_fraction) {
        cfg.k_fraction = *options.k_fraction;
    } else if (!options.cv_grid.empty()) {
        cfg = select_k(cases, controls, options.cv_grid, options.cv_folds, options.seed);
    }
    io::SavedModel saved{fit_eda(cases, controls, cfg), table.names, options.label_column};
    io::save_model_file(options.out, saved);
    out << "d=" << saved.model.dim() << " case_n=" << cases.rows()
        << " control_n=" << controls.rows()
        << " k_fraction=" << shortest(saved.model.jacobian.k_fraction) << '\n';
}

void predict(const PredictOptions& options, std::ostream& out) {
    const io::SavedModel saved = io::load_model_file(options.model);
    const io::CsvTable csv = io::read_csv_file(options.input);

    // Match features by name; the training label column may be present.
    std::vector<std::size_t> columns;
    for (const auto& name : saved.feature_names) {
        std::optional<std::size_t> found;
        for (std::size_t c = 0; c < csv.header.size(); ++c) {
            if (csv.header[c] == name) found = c;
        }
        if (!found) {
            throw Error(ErrorKind::SchemaMismatch, "column=" + name + " missing from input");
        }
        columns.push_back(*found);
    }
    for (const auto& name : csv.header) {
        if (name == saved.label_column) continue;
        bool known = false;
        for (const auto& f : saved.feature_names) known = known || f == name;
        if (!known) {
            throw Error(ErrorKind::SchemaMismatch, "column=" + name + " is not a model feature");
        }
    }

    std::ofstream file = open_output(options.out);
    file << "row,label" << (options.scores ? ",score" : "") << '\n';
    Vector x(static_cast<Eigen::Index>(columns.size()));
    std::size_t n_case = 0;
    for (std::size_t r = 0; r < csv.rows.size(); ++r) {
        for (std::size_t j = 0; j < columns.size(); ++j) {
            const auto v = io::parse_double(csv.rows[r][columns[j]]);
            if (!v) {
                throw Error(ErrorKind::ParseError,
                            "row=" + std::to_string(r + 1) + " column=" + saved.feature_names[j] +
                                " cannot parse '" + csv.rows[r][columns[j]] +
                                "' as a finite number");
            }
            x[static_cast<Eigen::Index>(j)] = *v;
        }
        const double s = eda_log_ratio(saved.model, x);
        const int label = predicts_case(s) ? 1 : 0;
        n_case += static_cast<std::size_t>(label);
        file << r + 1 << ',' << label;
        if (options.scores) file << ',' << io::format_double(s);
        file << '\n';
    }
    out << "rows=" << csv.rows.size() << " predicted_case=" << n_case << '\n';
}

void simulate(const SimulateOptions& options, std::ostream& out) {
    ScenarioConfig scenario = io::load_scenario_file(options.scenario);
    if (options.replicates) scenario.replicates = *options.replicates;
    if (options.seed) scenario.seed = *options.seed;
    const AccuracyReport report = run_experiment(scenario, options.methods);
    std::ofstream file = open_output(options.out);
    io::write_report(file, report);
    io::write_report(out, report);
}

void bench(const BenchOptions& options, std::ostream& out) {
    if (options.dims.empty()) throw Error(ErrorKind::ConfigError, "field 'dims': empty list");
    if (options.sizes.empty()) throw Error(ErrorKind::ConfigError, "field 'sizes': empty list");
    if (options.methods.empty()) throw Error(ErrorKind::ConfigError, "field 'methods': empty list");
    std::filesystem::create_directories(options.out_dir);
    const std::string suite(to_string(options.suite));

    std::ostringstream summary;
    summary << "dim,row,size";
    for (Method m : options.methods) summary << ',' << to_string(m);
    summary << '\n';

    std::size_t failed_cells = 0;
    for (std::size_t dim : options.dims) {
        for (int row = 1; row <= 4; ++row) {
            for (std::size_t size : options.sizes) {
                summary << dim << ',' << roman(row) << ',' << size;
                const std::string cell = suite + "_d" + std::to_string(dim) + "_row" +
                                         roman(row) + "_n" + std::to_string(size);
                try {
                    ScenarioConfig scenario = table_scenario(options.suite, row, dim, size);
                    scenario.replicates = options.replicates;
                    scenario.seed = options.seed;
                    const AccuracyReport report = run_experiment(scenario, options.methods);
                    std::ofstream file = open_output(options.out_dir / (cell + ".csv"));
                    io::write_report(file, report);
                    for (const auto& m : report.methods) {
                        summary << ',' << (m.replicates ? fixed2(m.mean) : "failed");
                    }
                } catch (const Error& e) {
                    ++failed_cells;
                    out << "cell=" << cell << " failed: error=" << to_string(e.kind()) << ' '
                        << e.what() << '\n';
                    for (std::size_t m = 0; m < options.methods.size(); ++m) summary << ",failed";
                }
                summary << '\n';
            }
        }
    }
    std::ofstream file = open_output(options.out_dir / (suite + "_summary.csv"));
    file << summary.str();
    out << summary.str();
    if (failed_cells) out << "failed_cells=" << failed_cells << '\n';
}

} // namespace eda::cli

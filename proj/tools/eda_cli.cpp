#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eda/io/commands.hpp"

namespace {

using eda::cli::ExitCode;

int run(int argc, char** argv) {
    CLI::App app{"Empirical discriminant analysis: fit, predict and simulation benchmarks"};
    app.require_subcommand(1);

    eda::cli::FitOptions fit;
    std::string fit_grid;
    auto* fit_cmd = app.add_subcommand("fit", "Fit an EDA model from a labelled CSV");
    fit_cmd->add_option("--train", fit.train, "Training CSV (header required)")->required();
    fit_cmd->add_option("--label-col", fit.label_column, "Label column (1 = case, 0 = control)")
        ->required();
    auto* k_opt = fit_cmd->add_option("--k-fraction", fit.k_fraction,
                                      "Share of each class covered by the Jacobian window");
    fit_cmd->add_option("--cv-grid", fit_grid, "Comma-separated k fractions to cross-validate")
        ->excludes(k_opt);
    fit_cmd->add_option("--cv-folds", fit.cv_folds, "Cross-validation folds")->capture_default_str();
    fit_cmd->add_option("--seed", fit.seed, "Seed for fold assignment")->capture_default_str();
    fit_cmd->add_option("--out", fit.out, "Model file to write")->required();

    eda::cli::PredictOptions predict;
    auto* predict_cmd = app.add_subcommand("predict", "Classify rows of a CSV with a saved model");
    predict_cmd->add_option("--model", predict.model, "Model file")->required();
    predict_cmd->add_option("--input", predict.input, "Input CSV")->required();
    predict_cmd->add_option("--out", predict.out, "Prediction CSV to write")->required();
    predict_cmd->add_flag("--scores", predict.scores, "Also write the log-ratio score");

    eda::cli::SimulateOptions simulate;
    std::string sim_methods = "E,J,Q,T";
    std::size_t sim_replicates = 0;
    std::uint64_t sim_seed = 0;
    auto* simulate_cmd = app.add_subcommand("simulate", "Run one simulated scenario");
    simulate_cmd->add_option("--scenario", simulate.scenario, "Scenario file")->required();
    simulate_cmd->add_option("--methods", sim_methods, "Subset of E,J,Q,T,H")
        ->capture_default_str();
    auto* sim_rep_opt =
        simulate_cmd->add_option("--replicates", sim_replicates, "Override replicate count");
    auto* sim_seed_opt = simulate_cmd->add_option("--seed", sim_seed, "Override seed");
    simulate_cmd->add_option("--out", simulate.out, "Report CSV to write")->required();

    eda::cli::BenchOptions bench;
    std::string bench_suite, bench_dims, bench_sizes, bench_methods = "E,J,Q,T";
    auto* bench_cmd = app.add_subcommand("bench", "Sweep the table1/table2 benchmark grid");
    bench_cmd->add_option("--suite", bench_suite, "table1 (normal) or table2 (t1)")->required();
    bench_cmd->add_option("--dims", bench_dims, "Comma-separated dimensions")->required();
    bench_cmd->add_option("--sizes", bench_sizes, "Comma-separated total sizes")->required();
    bench_cmd->add_option("--replicates", bench.replicates, "Replicates per cell")
        ->capture_default_str();
    bench_cmd->add_option("--seed", bench.seed, "Seed")->capture_default_str();
    bench_cmd->add_option("--methods", bench_methods, "Subset of E,J,Q,T,H")
        ->capture_default_str();
    bench_cmd->add_option("--out", bench.out_dir, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error=Usage " << e.what() << '\n';
        return ExitCode::kUsage;
    }

    auto split_sizes = [](const std::string& text, const char* field) {
        std::vector<std::size_t> out;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.empty()) continue;
            try {
                std::size_t used = 0;
                const auto v = std::stoull(item, &used);
                if (used != item.size()) throw std::invalid_argument(item);
                out.push_back(static_cast<std::size_t>(v));
            } catch (const std::exception&) {
                throw eda::Error(eda::ErrorKind::ConfigError,
                                 std::string("field '") + field + "': bad integer '" + item + "'");
            }
        }
        return out;
    };

    return eda::cli::guarded(std::cerr, [&] {
        if (*fit_cmd) {
            std::stringstream ss(fit_grid);
            std::string item;
            while (std::getline(ss, item, ',')) {
                try {
                    fit.cv_grid.push_back(std::stod(item));
                } catch (const std::exception&) {
                    throw eda::Error(eda::ErrorKind::ConfigError,
                                     "field 'cv-grid': bad number '" + item + "'");
                }
            }
            eda::cli::fit(fit, std::cout);
        } else if (*predict_cmd) {
            eda::cli::predict(predict, std::cout);
        } else if (*simulate_cmd) {
            simulate.methods = eda::cli::parse_methods(sim_methods);
            if (*sim_rep_opt) simulate.replicates = sim_replicates;
            if (*sim_seed_opt) simulate.seed = sim_seed;
            eda::cli::simulate(simulate, std::cout);
        } else if (*bench_cmd) {
            const auto suite = eda::parse_suite(bench_suite);
            if (!suite) {
                throw eda::Error(eda::ErrorKind::ConfigError,
                                 "field 'suite': expected table1 or table2");
            }
            bench.suite = *suite;
            bench.dims = split_sizes(bench_dims, "dims");
            bench.sizes = split_sizes(bench_sizes, "sizes");
            bench.methods = eda::cli::parse_methods(bench_methods);
            eda::cli::bench(bench, std::cout);
        }
    });
}

} // namespace

int main(int argc, char** argv) { return run(argc, argv); }

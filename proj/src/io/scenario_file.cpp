#include "eda/io/scenario_file.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "eda/error.hpp"
#include "eda/io/csv.hpp"

namespace eda::io {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void bad(const std::string& key, const std::string& why) {
    throw Error(ErrorKind::ConfigError, "field '" + key + "': " + why);
}

double as_double(const std::string& key, const std::string& text) {
    const auto v = parse_double(text);
    if (!v) bad(key, "expected a number, got '" + text + "'");
    return *v;
}

std::uint64_t as_unsigned(const std::string& key, const std::string& text) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        bad(key, "expected a non-negative integer, got '" + text + "'");
    }
    return v;
}

std::vector<double> as_list(const std::string& key, const std::string& text) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const std::string item =
            trim(text.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
        out.push_back(as_double(key, item));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

void write_matrix(std::ostream& out, const Matrix& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (i || j) out << ',';
            out << format_double(m(i, j));
        }
    }
}

} // namespace

ScenarioConfig parse_scenario(std::istream& in) {
    std::map<std::string, std::string> fields;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorKind::ConfigError,
                        "line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        if (!fields.emplace(key, trim(line.substr(eq + 1))).second) bad(key, "repeated");
    }

    static const std::set<std::string> known = {
        "family", "dim", "case_mean_shift", "rho_case", "rho_control",
        "case_variance_scale", "control_variance_scale", "case_cov", "control_cov",
        "size", "train_test_ratio", "replicates", "seed", "k_fraction"};
    for (const auto& [key, value] : fields) {
        if (!known.count(key)) bad(key, "unknown key");
    }

    ScenarioConfig s;
    auto get = [&](const std::string& key) -> const std::string* {
        const auto it = fields.find(key);
        return it == fields.end() ? nullptr : &it->second;
    };
    if (auto v = get("family")) {
        const auto family = parse_family(*v);
        if (!family) bad("family", "expected normal or t1, got '" + *v + "'");
        s.family = *family;
    }
    if (auto v = get("dim")) s.dim = as_unsigned("dim", *v);
    if (auto v = get("case_mean_shift")) s.case_mean_shift = as_double("case_mean_shift", *v);
    if (auto v = get("rho_case")) s.rho_case = as_double("rho_case", *v);
    if (auto v = get("rho_control")) s.rho_control = as_double("rho_control", *v);
    if (auto v = get("case_variance_scale")) {
        s.case_variance_scale = as_double("case_variance_scale", *v);
    }
    if (auto v = get("control_variance_scale")) {
        s.control_variance_scale = as_double("control_variance_scale", *v);
    }
    for (const char* key : {"case_cov", "control_cov"}) {
        const auto v = get(key);
        if (!v) continue;
        const auto values = as_list(key, *v);
        const auto d = static_cast<Eigen::Index>(s.dim);
        if (values.size() != s.dim * s.dim) bad(key, "needs dim*dim values");
        Matrix m(d, d);
        for (Eigen::Index i = 0; i < d; ++i) {
            for (Eigen::Index j = 0; j < d; ++j) m(i, j) = values[static_cast<std::size_t>(i * d + j)];
        }
        (std::string(key) == "case_cov" ? s.case_cov : s.control_cov) = std::move(m);
    }
    if (auto v = get("size")) s.size = as_unsigned("size", *v);
    if (auto v = get("train_test_ratio")) {
        const auto colon = v->find(':');
        if (colon == std::string::npos) bad("train_test_ratio", "expected train:test");
        s.train_parts = as_unsigned("train_test_ratio", trim(v->substr(0, colon)));
        s.test_parts = as_unsigned("train_test_ratio", trim(v->substr(colon + 1)));
    }
    if (auto v = get("replicates")) s.replicates = as_unsigned("replicates", *v);
    if (auto v = get("seed")) s.seed = as_unsigned("seed", *v);
    if (auto v = get("k_fraction")) {
        s.k_fraction = as_double("k_fraction", *v);
    } else {
        s.k_fraction = s.family == Family::Normal ? 0.8 : 0.1;
    }
    s.validate();
    return s;
}

ScenarioConfig load_scenario_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
    return parse_scenario(in);
}

void write_scenario(std::ostream& out, const ScenarioConfig& s) {
    out << "family = " << to_string(s.family) << '\n'
        << "dim = " << s.dim << '\n'
        << "case_mean_shift = " << format_double(s.case_mean_shift) << '\n'
        << "rho_case = " << format_double(s.rho_case) << '\n'
        << "rho_control = " << format_double(s.rho_control) << '\n'
        << "case_variance_scale = " << format_double(s.case_variance_scale) << '\n'
        << "control_variance_scale = " << format_double(s.control_variance_scale) << '\n';
    if (s.case_cov) {
        out << "case_cov = ";
        write_matrix(out, *s.case_cov);
        out << '\n';
    }
    if (s.control_cov) {
        out << "control_cov = ";
        write_matrix(out, *s.control_cov);
        out << '\n';
    }
    out << "size = " << s.size << '\n'
        << "train_test_ratio = " << s.train_parts << ':' << s.test_parts << '\n'
        << "replicates = " << s.replicates << '\n'
        << "seed = " << s.seed << '\n'
        << "k_fraction = " << format_double(s.k_fraction) << '\n';
}

void write_report(std::ostream& out, const AccuracyReport& report) {
    out << "method,mean,sd,failures,replicates\n";
    for (const auto& m : report.methods) {
        out << to_string(m.method) << ',' << format_double(m.mean) << ',' << format_double(m.sd)
            << ',' << m.failures << ',' << m.replicates << '\n';
    }
}

} // namespace eda::io

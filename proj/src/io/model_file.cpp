#include "eda/io/model_file.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "eda/error.hpp"
#include "eda/io/csv.hpp"

namespace eda::io {

namespace {

constexpr const char* kOrientation = "log_case_minus_control";

void write_class(std::ostream& out, const char* name, const ClassModel& cls) {
    out << "class " << name << '\n';
    out << "samples " << cls.sample_count() << '\n';
    for (std::size_t j = 0; j < cls.dim(); ++j) {
        out << "values " << j;
        for (double v : cls.normalizer.feature(j).values()) out << ' ' << format_double(v);
        out << '\n';
    }
    const Matrix& sigma = cls.cov.sigma();
    for (Eigen::Index i = 0; i < sigma.rows(); ++i) {
        out << "sigma " << i;
        for (Eigen::Index j = 0; j < sigma.cols(); ++j) out << ' ' << format_double(sigma(i, j));
        out << '\n';
    }
}

class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    /// Next line split into keyword and remainder; fails on end of input.
    std::pair<std::string, std::string> next(const std::string& expected) {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_no_;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty() || line.front() == '#') continue;
            const auto space = line.find(' ');
            std::string key = line.substr(0, space);
            std::string rest = space == std::string::npos ? "" : line.substr(space + 1);
            if (key != expected) fail("expected '" + expected + "', found '" + key + "'");
            return {std::move(key), std::move(rest)};
        }
        fail("unexpected end of file, expected '" + expected + "'");
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw Error(ErrorKind::ParseError,
                    "model line=" + std::to_string(line_no_) + " " + what);
    }

    std::string value(const std::string& key) { return next(key).second; }

    double number(const std::string& key) { return to_number(value(key)); }

    std::size_t count(const std::string& key) {
        const double v = number(key);
        if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v))) {
            fail(key + " must be a non-negative integer");
        }
        return static_cast<std::size_t>(v);
    }

    double to_number(const std::string& text) const {
        const auto v = parse_double(text);
        if (!v) fail("cannot parse '" + text + "' as a number");
        return *v;
    }

    /// "<index> <v1> <v2> ..." with the index checked.
    std::vector<double> indexed_row(const std::string& key, std::size_t index) {
        std::istringstream fields(value(key));
        std::string token;
        fields >> token;
        if (token != std::to_string(index)) fail(key + " rows out of order");
        std::vector<double> out;
        while (fields >> token) out.push_back(to_number(token));
        return out;
    }

private:
    std::istream& in_;
    std::size_t line_no_ = 0;
};

ClassModel read_class(LineReader& reader, const std::string& name, std::size_t dim) {
    if (reader.value("class") != name) reader.fail("expected class " + name);
    const std::size_t n = reader.count("samples");
    std::vector<SortedFeature> features;
    for (std::size_t j = 0; j < dim; ++j) {
        auto values = reader.indexed_row("values", j);
        if (values.size() != n) reader.fail("values row has wrong length");
        features.push_back(SortedFeature::from_sorted(std::move(values)));
    }
    const auto d = static_cast<Eigen::Index>(dim);
    Matrix sigma(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        const auto row = reader.indexed_row("sigma", static_cast<std::size_t>(i));
        if (row.size() != dim) reader.fail("sigma row has wrong length");
        for (Eigen::Index j = 0; j < d; ++j) sigma(i, j) = row[static_cast<std::size_t>(j)];
    }
    return ClassModel{MarginalNormalizer(std::move(features)), CovModel::from_sigma(std::move(sigma))};
}

} // namespace

void save_model(std::ostream& out, const SavedModel& saved) {
    const EdaModel& m = saved.model;
    if (saved.feature_names.size() != m.dim()) {
        throw Error(ErrorKind::SchemaMismatch, "model needs one feature name per dimension");
    }
    out << "eda-model " << kModelFormatVersion << '\n';
    out << "orientation " << kOrientation << '\n';
    out << "label_column " << saved.label_column << '\n';
    out << "dimension " << m.dim() << '\n';
    for (std::size_t j = 0; j < saved.feature_names.size(); ++j) {
        out << "feature " << j << ' ' << saved.feature_names[j] << '\n';
    }
    out << "k_fraction " << format_double(m.jacobian.k_fraction) << '\n';
    out << "spacing_floor_rel " << format_double(m.jacobian.spacing_floor_rel) << '\n';
    out << "prior_offset " << format_double(m.prior_offset) << '\n';
    write_class(out, "case", m.case_model);
    write_class(out, "control", m.control_model);
    out << "end\n";
}

SavedModel load_model(std::istream& in) {
    LineReader reader(in);
    const std::string version = reader.value("eda-model");
    if (version != std::to_string(kModelFormatVersion)) {
        reader.fail("unsupported model version '" + version + "', expected " +
                    std::to_string(kModelFormatVersion));
    }
    if (reader.value("orientation") != kOrientation) reader.fail("unknown score orientation");

    std::string label_column = reader.value("label_column");
    const std::size_t dim = reader.count("dimension");
    if (dim == 0) reader.fail("dimension must be positive");
    std::vector<std::string> names;
    for (std::size_t j = 0; j < dim; ++j) {
        const std::string rest = reader.value("feature");
        const auto space = rest.find(' ');
        if (space == std::string::npos || rest.substr(0, space) != std::to_string(j)) {
            reader.fail("feature rows out of order");
        }
        names.push_back(rest.substr(space + 1));
    }
    JacobianConfig cfg;
    cfg.k_fraction = reader.number("k_fraction");
    cfg.spacing_floor_rel = reader.number("spacing_floor_rel");
    cfg.validate();
    const double prior_offset = reader.number("prior_offset");

    ClassModel case_model = read_class(reader, "case", dim);
    ClassModel control_model = read_class(reader, "control", dim);
    reader.next("end");
    return SavedModel{
        EdaModel{std::move(case_model), std::move(control_model), cfg, prior_offset},
        std::move(names), std::move(label_column)};
}

void save_model_file(const std::filesystem::path& path, const SavedModel& saved) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
    save_model(out, saved);
    if (!out) throw Error(ErrorKind::IoError, "write failed: " + path.string());
}

SavedModel load_model_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
    return load_model(in);
}

} // namespace eda::io

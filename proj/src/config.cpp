#include "homq/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace homq {

namespace {

struct Entry {
    std::string value;
    int line = 0;
    int value_column = 0;  // 1-based column where the value starts
};

[[noreturn]] void parse_error(int line, int column, const std::string& what) {
    std::ostringstream msg;
    msg << "line " << line << ", column " << column << ": " << what;
    throw Error(ErrorCode::ParseError, msg.str());
}

[[noreturn]] void validation_error(const std::string& key, const std::string& what) {
    throw Error(ErrorCode::ValidationError, "key `" + key + "`: " + what);
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

double parse_number(const Entry& e, size_t begin, size_t end) {
    const char* first = e.value.data() + begin;
    const char* last = e.value.data() + end;
    if (*first == '+') ++first;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
        parse_error(e.line, e.value_column + static_cast<int>(begin),
                    "invalid number `" + e.value.substr(begin, end - begin) + "`");
    }
    return v;
}

std::vector<std::vector<double>> parse_rows(const Entry& e) {
    std::vector<std::vector<double>> rows(1);
    size_t i = 0;
    while (i < e.value.size()) {
        const char c = e.value[i];
        if (is_space(c)) {
            ++i;
        } else if (c == ';') {
            rows.emplace_back();
            ++i;
        } else {
            size_t j = i;
            while (j < e.value.size() && !is_space(e.value[j]) && e.value[j] != ';') ++j;
            rows.back().push_back(parse_number(e, i, j));
            i = j;
        }
    }
    for (const auto& row : rows) {
        if (row.empty()) parse_error(e.line, e.value_column, "empty matrix row");
    }
    return rows;
}

Matrix parse_matrix(const std::string& key, const Entry& e) {
    const auto rows = parse_rows(e);
    const size_t cols = rows.front().size();
    Matrix m(rows.size(), cols);
    for (size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) validation_error(key, "matrix rows have different lengths");
        for (size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

Vector parse_vector(const std::string& key, const Entry& e) {
    const auto rows = parse_rows(e);
    if (rows.size() != 1) validation_error(key, "expected a single row of numbers");
    return Eigen::Map<const Vector>(rows.front().data(), static_cast<Eigen::Index>(rows.front().size()));
}

double parse_scalar(const Entry& e) {
    size_t begin = 0;
    size_t end = e.value.size();
    if (begin == end) parse_error(e.line, e.value_column, "missing value");
    for (size_t i = begin; i < end; ++i) {
        if (is_space(e.value[i]) || e.value[i] == ';') parse_error(e.line, e.value_column + static_cast<int>(i), "expected a single number");
    }
    return parse_number(e, begin, end);
}

bool parse_bool(const Entry& e) {
    if (e.value == "true" || e.value == "1" || e.value == "yes") return true;
    if (e.value == "false" || e.value == "0" || e.value == "no") return false;
    parse_error(e.line, e.value_column, "expected true or false, got `" + e.value + "`");
}

std::int64_t parse_int(const Entry& e) {
    std::int64_t v = 0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) parse_error(e.line, e.value_column, "expected an integer");
    return v;
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_matrix(const Matrix& m) {
    std::string out;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        if (r > 0) out += "; ";
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c > 0) out += ' ';
            out += format_number(m(r, c));
        }
    }
    return out;
}

bool same(const Matrix& a, const Matrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && (a.size() == 0 || a == b);
}

const std::set<std::string> kKnownKeys = {
    "generator", "weight", "gain",   "norm_power", "nu",    "delta_angle", "x0",     "step",
    "t_end",     "quantized", "rng_seed", "plant", "drift", "input",       "degree"};

}  // namespace

bool operator==(const RunConfig& a, const RunConfig& b) {
    return same(a.generator, b.generator) && same(a.weight, b.weight) && same(a.gain, b.gain) &&
           a.norm_power == b.norm_power && a.nu == b.nu && a.delta_angle == b.delta_angle &&
           same(a.x0, b.x0) && a.step == b.step && a.t_end == b.t_end && a.quantized == b.quantized &&
           a.rng_seed == b.rng_seed && a.plant == b.plant && same(a.drift, b.drift) && same(a.input, b.input) &&
           a.degree == b.degree;
}

RunConfig parse_config(const std::string& text) {
    std::map<std::string, Entry> entries;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = raw.substr(0, raw.find('#'));
        size_t first = 0;
        while (first < line.size() && is_space(line[first])) ++first;
        if (first == line.size()) continue;

        const size_t eq = line.find('=');
        if (eq == std::string::npos) parse_error(line_no, static_cast<int>(first) + 1, "expected `key = value`");
        size_t key_end = eq;
        while (key_end > first && is_space(line[key_end - 1])) --key_end;
        const std::string key = line.substr(first, key_end - first);
        if (key.empty()) parse_error(line_no, static_cast<int>(first) + 1, "missing key");
        if (!kKnownKeys.count(key)) parse_error(line_no, static_cast<int>(first) + 1, "unknown key `" + key + "`");
        if (entries.count(key)) parse_error(line_no, static_cast<int>(first) + 1, "duplicate key `" + key + "`");

        size_t vbegin = eq + 1;
        while (vbegin < line.size() && is_space(line[vbegin])) ++vbegin;
        size_t vend = line.size();
        while (vend > vbegin && is_space(line[vend - 1])) --vend;
        if (vbegin == vend) parse_error(line_no, static_cast<int>(eq) + 2, "missing value for `" + key + "`");
        entries[key] = Entry{line.substr(vbegin, vend - vbegin), line_no, static_cast<int>(vbegin) + 1};
    }

    RunConfig cfg;
    if (entries.count("generator")) cfg.generator = parse_matrix("generator", entries["generator"]);
    if (entries.count("gain")) cfg.gain = parse_matrix("gain", entries["gain"]);
    if (entries.count("nu")) cfg.nu = parse_scalar(entries["nu"]);
    if (entries.count("delta_angle")) cfg.delta_angle = parse_scalar(entries["delta_angle"]);
    if (entries.count("x0")) cfg.x0 = parse_vector("x0", entries["x0"]);
    if (entries.count("weight")) cfg.weight = parse_matrix("weight", entries["weight"]);
    if (entries.count("norm_power")) cfg.norm_power = parse_scalar(entries["norm_power"]);
    if (entries.count("step")) cfg.step = parse_scalar(entries["step"]);
    if (entries.count("t_end")) cfg.t_end = parse_scalar(entries["t_end"]);
    if (entries.count("quantized")) cfg.quantized = parse_bool(entries["quantized"]);
    if (entries.count("rng_seed")) cfg.rng_seed = parse_int(entries["rng_seed"]);
    if (entries.count("plant")) {
        const Entry& e = entries["plant"];
        if (e.value == "example") {
            cfg.plant = PlantKind::Example;
        } else if (e.value == "linear") {
            cfg.plant = PlantKind::Linear;
        } else {
            parse_error(e.line, e.value_column, "plant must be `example` or `linear`");
        }
    }
    if (entries.count("drift")) cfg.drift = parse_matrix("drift", entries["drift"]);
    if (entries.count("input")) cfg.input = parse_matrix("input", entries["input"]);
    if (entries.count("degree")) cfg.degree = parse_scalar(entries["degree"]);

    for (const char* key : {"generator", "gain", "nu", "delta_angle", "x0"}) {
        if (!entries.count(key)) validation_error(key, "required key is missing");
    }
    if (!entries.count("weight")) cfg.weight = Matrix::Identity(cfg.generator.rows(), cfg.generator.rows());
    if (cfg.plant == PlantKind::Linear) {
        if (!entries.count("drift")) validation_error("drift", "required for a linear plant");
        if (!entries.count("input")) validation_error("input", "required for a linear plant");
    } else {
        for (const char* key : {"drift", "input", "degree"}) {
            if (entries.count(key)) validation_error(key, "only valid with `plant = linear`");
        }
    }

    validate_config(cfg);
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot read config file " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream out;
    out << "generator = " << format_matrix(cfg.generator) << '\n';
    out << "weight = " << format_matrix(cfg.weight) << '\n';
    out << "gain = " << format_matrix(cfg.gain) << '\n';
    out << "norm_power = " << format_number(cfg.norm_power) << '\n';
    out << "nu = " << format_number(cfg.nu) << '\n';
    out << "delta_angle = " << format_number(cfg.delta_angle) << '\n';
    out << "x0 = " << format_matrix(cfg.x0.transpose()) << '\n';
    out << "step = " << format_number(cfg.step) << '\n';
    out << "t_end = " << format_number(cfg.t_end) << '\n';
    out << "quantized = " << (cfg.quantized ? "true" : "false") << '\n';
    out << "rng_seed = " << cfg.rng_seed << '\n';
    if (cfg.plant == PlantKind::Linear) {
        out << "plant = linear\n";
        out << "drift = " << format_matrix(cfg.drift) << '\n';
        out << "input = " << format_matrix(cfg.input) << '\n';
        out << "degree = " << format_number(cfg.degree) << '\n';
    } else {
        out << "plant = example\n";
    }
    return out.str();
}

void validate_config(const RunConfig& cfg) {
    const auto n = cfg.generator.rows();
    if (n < 1 || cfg.generator.cols() != n) validation_error("generator", "must be a square matrix");
    if (cfg.weight.rows() != n || cfg.weight.cols() != n) validation_error("weight", "must match the generator size");
    if (cfg.gain.cols() != n) validation_error("gain", "must have one column per state");
    if (cfg.x0.size() != n) validation_error("x0", "must have one entry per state");
    const std::pair<const char*, const Matrix*> finite_checks[] = {
        {"generator", &cfg.generator}, {"weight", &cfg.weight}, {"gain", &cfg.gain}};
    for (const auto& [key, m] : finite_checks) {
        if (!m->allFinite()) validation_error(key, "entries must be finite");
    }
    if (!cfg.x0.allFinite()) validation_error("x0", "entries must be finite");
    if (!std::isfinite(cfg.norm_power)) validation_error("norm_power", "must be finite");
    if (!(cfg.step > 0.0) || !std::isfinite(cfg.step)) validation_error("step", "must be positive");
    if (!(cfg.t_end >= cfg.step) || !std::isfinite(cfg.t_end)) validation_error("t_end", "must be finite and >= step");
    if (cfg.plant == PlantKind::Linear) {
        if (cfg.drift.rows() != n || cfg.drift.cols() != n) validation_error("drift", "must be n x n");
        if (cfg.input.rows() != n || cfg.input.cols() != cfg.gain.rows()) {
            validation_error("input", "must be n x m with m the number of gain rows");
        }
        if (!std::isfinite(cfg.degree)) validation_error("degree", "must be finite");
    }
    config_dilation(cfg);
    config_quantizer(cfg);
}

Dilation config_dilation(const RunConfig& cfg) {
    try {
        return make_dilation(cfg.generator, cfg.weight);
    } catch (const Error& e) {
        const bool weight_fault =
            e.code() == ErrorCode::NotSymmetric || e.code() == ErrorCode::NotPositiveDefinite;
        validation_error(weight_fault ? "weight" : "generator", e.what());
    }
}

QuantizerParams config_quantizer(const RunConfig& cfg) {
    if (!(cfg.nu > 0.0 && cfg.nu < 1.0)) validation_error("nu", "must lie in (0, 1)");
    try {
        return QuantizerParams(cfg.nu, cfg.delta_angle, static_cast<int>(cfg.generator.rows()));
    } catch (const Error& e) {
        validation_error("delta_angle", e.what());
    }
}

HomPlant config_plant(const RunConfig& cfg) {
    Dilation d = config_dilation(cfg);
    if (cfg.plant == PlantKind::Example) {
        if (d.dim() != 3 || cfg.gain.rows() != 1) {
            validation_error("generator", "the example plant needs n = 3 and a 1 x 3 gain");
        }
        const HomPlant reference = example_plant();
        try {
            return make_hom_plant(reference.drift, reference.input, reference.degree, std::move(d));
        } catch (const Error& e) {
            validation_error("generator", e.what());
        }
    }
    const Matrix a = cfg.drift;
    try {
        return make_hom_plant([a](const Vector& x) -> Vector { return a * x; }, cfg.input, cfg.degree, std::move(d));
    } catch (const Error& e) {
        validation_error("drift", e.what());
    }
}

HomFeedback config_feedback(const RunConfig& cfg) { return {cfg.gain, cfg.norm_power}; }

}  // namespace homq

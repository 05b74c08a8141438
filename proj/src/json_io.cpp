#include "birkhoff/json_io.hpp"

#include "birkhoff/error.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace birkhoff {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorKind::parse, what); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing field '") + key + "'");
    return j.at(key);
}

std::int64_t read_int(const Json& j, const char* what) {
    if (j.is_number_integer()) return j.get<std::int64_t>();
    if (j.is_number_float()) {
        const double v = j.get<double>();
        if (v == std::floor(v) && std::abs(v) < 9e15) return static_cast<std::int64_t>(v);
    }
    parse_fail(std::string("expected an integer for ") + what);
}

std::uint64_t read_u64(const Json& j, const char* what) {
    if (j.is_number_unsigned()) return j.get<std::uint64_t>();
    if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(j.get<std::int64_t>());
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        char* end = nullptr;
        errno = 0;
        const auto v = std::strtoull(s.c_str(), &end, 0);
        if (!s.empty() && end == s.c_str() + s.size() && errno == 0) return v;
    }
    parse_fail(std::string("expected an unsigned integer for ") + what);
}

std::string read_string(const Json& j, const char* what) {
    if (!j.is_string()) parse_fail(std::string("expected a string for ") + what);
    return j.get<std::string>();
}

std::vector<double> read_doubles(const Json& j, const char* what) {
    if (!j.is_array()) parse_fail(std::string("expected an array for ") + what);
    std::vector<double> v;
    for (const auto& e : j) v.push_back(read_double(e));
    return v;
}

// Library errors raised while building objects from well-formed JSON are
// still input problems; keep their kind but make sure nothing else leaks.
template <class F>
auto guarded(F&& f) {
    try {
        return f();
    } catch (const Json::exception& e) {
        parse_fail(e.what());
    }
}

}  // namespace

std::string hex_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%a", x);
    return buf;
}

double read_double(const Json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        char* end = nullptr;
        const double v = std::strtod(s.c_str(), &end);
        if (!s.empty() && end == s.c_str() + s.size()) return v;
        parse_fail("cannot read '" + s + "' as a number");
    }
    parse_fail("expected a number, got " + std::string(j.type_name()));
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Json observable_to_json(const FourierObservable& f) {
    Json coeffs = Json::array();
    for (const auto& [k, c] : f.coeffs()) {
        coeffs.push_back({{"k", k}, {"re", hex_double(c.real())}, {"im", hex_double(c.imag())}});
    }
    return {{"dim", f.dim()}, {"real_valued", f.real_valued()}, {"coeffs", std::move(coeffs)}};
}

FourierObservable observable_from_json(const Json& j, std::uint64_t default_seed) {
    return guarded([&] {
        if (!j.is_object()) parse_fail("observable must be an object");
        if (j.contains("kind")) {
            const auto kind = read_string(j.at("kind"), "observable kind");
            const auto dim = [&] { return j.contains("dim") ? read_int(j.at("dim"), "dim") : 1; };
            if (kind == "sin") {
                const auto axis = j.contains("axis") ? read_int(j.at("axis"), "axis") : 0;
                if (dim() < 1 || axis < 0) parse_fail("sin observable needs dim >= 1 and axis >= 0");
                return make_sin(static_cast<std::size_t>(dim()), static_cast<std::size_t>(axis));
            }
            if (kind == "weak_regularity") {
                return make_weak_regularity_series(static_cast<int>(read_int(field(j, "terms"), "terms")));
            }
            if (kind == "constant") {
                if (dim() < 1) parse_fail("constant observable needs dim >= 1");
                return make_constant(static_cast<std::size_t>(dim()), read_double(field(j, "value")));
            }
            if (kind == "random_analytic") {
                const auto seed = j.contains("seed") ? read_u64(j.at("seed"), "seed") : default_seed;
                if (dim() < 1) parse_fail("random_analytic observable needs dim >= 1");
                return make_random_analytic(static_cast<std::size_t>(dim()), read_double(field(j, "sigma")),
                                            static_cast<int>(read_int(field(j, "cutoff"), "cutoff")), seed);
            }
            parse_fail("unknown observable kind '" + kind + "'");
        }
        const auto dim = read_int(field(j, "dim"), "dim");
        if (dim < 1) parse_fail("observable dim must be positive");
        const bool real_valued = j.contains("real_valued") ? j.at("real_valued").get<bool>() : false;
        Coefficients coeffs;
        for (const auto& e : field(j, "coeffs")) {
            Frequency k;
            for (const auto& v : field(e, "k")) k.push_back(read_int(v, "frequency entry"));
            const std::complex<double> c{read_double(field(e, "re")),
                                         e.contains("im") ? read_double(e.at("im")) : 0.0};
            if (!coeffs.emplace(std::move(k), c).second) parse_fail("duplicate frequency in observable");
        }
        return FourierObservable(static_cast<std::size_t>(dim), std::move(coeffs), real_valued);
    });
}

Json rotation_to_json(const RotationVector& r) {
    if (r.tag) return {{"tag", *r.tag}};
    Json phases = Json::array();
    for (double p : r.phases) phases.push_back(hex_double(p));
    return {{"phases", std::move(phases)}};
}

RotationVector rotation_from_json(const Json& j) {
    return guarded([&] {
        if (j.is_string()) return RotationVector::from_tag(j.get<std::string>());
        if (j.is_number()) return RotationVector::from_phases({j.get<double>()});
        if (j.is_array()) return RotationVector::from_phases(read_doubles(j, "rotation"));
        if (j.is_object() && j.contains("tag")) return RotationVector::from_tag(read_string(j.at("tag"), "tag"));
        if (j.is_object() && j.contains("phases")) return RotationVector::from_phases(read_doubles(j.at("phases"), "phases"));
        parse_fail("cannot read rotation from " + j.dump());
    });
}

Json spec_to_json(const AverageSpec& spec) {
    Json obs = Json::array();
    for (const auto& f : spec.observables) obs.push_back(observable_to_json(f));
    Json rot = Json::array();
    for (const auto& r : spec.joint.components) rot.push_back(rotation_to_json(r));
    Json theta = Json::array();
    for (double t : spec.theta0) theta.push_back(hex_double(t));
    Json j = {{"weight", weight_kind_name(spec.weight.kind())},
              {"observables", std::move(obs)},
              {"rotations", std::move(rot)},
              {"theta0", std::move(theta)},
              {"mode", spec.mode == AverageMode::discrete ? "discrete" : "continuous"}};
    if (spec.mode == AverageMode::discrete) {
        j["N"] = spec.N;
    } else {
        j["T"] = hex_double(spec.T);
        j["nodes_per_period"] = spec.nodes_per_period;
    }
    if (spec.weight_scale != 1.0) j["weight_scale"] = hex_double(spec.weight_scale);
    return j;
}

AverageSpec spec_from_json(const Json& j, std::uint64_t default_seed) {
    return guarded([&] {
        if (!j.is_object()) parse_fail("average spec must be an object");
        AverageSpec s;
        s.weight = WeightFunction(j.contains("weight") ? parse_weight_kind(read_string(j.at("weight"), "weight"))
                                                       : WeightKind::exponential_bump);
        const auto& obs = field(j, "observables");
        if (!obs.is_array()) parse_fail("observables must be an array");
        for (const auto& o : obs) s.observables.push_back(observable_from_json(o, default_seed));
        const auto& rot = field(j, "rotations");
        if (!rot.is_array()) parse_fail("rotations must be an array");
        std::vector<RotationVector> rv;
        for (const auto& r : rot) rv.push_back(rotation_from_json(r));
        s.joint = make_joint(std::move(rv));
        s.theta0 = j.contains("theta0") ? read_doubles(j.at("theta0"), "theta0")
                                        : std::vector<double>(s.joint.d, 0.0);
        const auto mode = j.contains("mode") ? read_string(j.at("mode"), "mode") : std::string("discrete");
        if (mode == "discrete") {
            s.mode = AverageMode::discrete;
            if (j.contains("N")) s.N = read_int(j.at("N"), "N");
        } else if (mode == "continuous") {
            s.mode = AverageMode::continuous;
            if (j.contains("T")) s.T = read_double(j.at("T"));
            if (j.contains("nodes_per_period")) {
                s.nodes_per_period = static_cast<int>(read_int(j.at("nodes_per_period"), "nodes_per_period"));
            }
        } else {
            parse_fail("mode must be 'discrete' or 'continuous'");
        }
        if (j.contains("weight_scale")) s.weight_scale = read_double(j.at("weight_scale"));
        validate(s);
        return s;
    });
}

Json config_to_json(const ExperimentConfig& c) {
    Json scales = Json::array();
    for (double s : c.scales) scales.push_back(hex_double(s));
    Json models = Json::array();
    for (auto m : c.fit_models) models.push_back(rate_model_name(m));
    return {{"name", c.name},
            {"spec", spec_to_json(c.spec)},
            {"scales", std::move(scales)},
            {"fit_models", std::move(models)},
            {"output", c.output}};
}

ExperimentConfig config_from_json(const Json& j, std::uint64_t default_seed) {
    return guarded([&] {
        ExperimentConfig c;
        c.name = read_string(field(j, "name"), "name");
        if (c.name.empty() || c.name.find('/') != std::string::npos) parse_fail("config name must be a plain file stem");
        c.spec = spec_from_json(field(j, "spec"), default_seed);
        c.scales = read_doubles(field(j, "scales"), "scales");
        if (j.contains("fit_models")) {
            for (const auto& m : j.at("fit_models")) c.fit_models.push_back(parse_rate_model(read_string(m, "fit model")));
        }
        c.output = j.contains("output") ? read_string(j.at("output"), "output") : std::string(".");
        return c;
    });
}

Json result_to_json(const AverageResult& r) {
    return {{"value", r.value}, {"target", r.target}, {"abs_error", r.abs_error}, {"scale", r.scale}, {"floor", r.floor}};
}

Json divisor_scan_to_json(const DivisorScan& s) {
    return {{"K", s.K},
            {"mode", scan_mode_name(s.mode)},
            {"min_divisor", s.min_divisor},
            {"argmin_k", s.argmin_k},
            {"alpha_estimate", s.alpha_estimate}};
}

Json rate_fit_to_json(const RateFit& f) {
    Json params = Json::object();
    for (const auto& [k, v] : f.params) params[k] = v;
    return {{"model", rate_model_name(f.model)},
            {"params", std::move(params)},
            {"residual", f.residual},
            {"points_used", f.points_used}};
}

Json audit_to_json(const ConditionAudit& a) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < a.grid.size(); ++i) {
        rows.push_back({{"cutoff", a.grid[i]}, {"value", a.values[i]}, {"log_value", a.log_values[i]}});
    }
    Json j = {{"condition", condition_name(a.condition)}, {"verdict", verdict_name(a.verdict)}, {"partial_sums", rows}};
    if (a.condition == Condition::truncated_smallness_finite || a.condition == Condition::truncated_smallness_infinite) {
        j["rate"] = a.rate;
        j["zeta"] = a.zeta;
        j["rate_trend"] = a.rate_trend;
    }
    return j;
}

std::string curve_csv(const std::vector<AverageResult>& rows) {
    std::string out = kCurveHeader;
    out += '\n';
    for (const auto& r : rows) {
        out += format_double(r.scale) + ',' + format_double(r.value) + ',' + format_double(r.target) + ',' +
               format_double(r.abs_error) + ',' + format_double(r.floor) + '\n';
    }
    return out;
}

std::vector<AverageResult> parse_curve_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) parse_fail("empty CSV");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kCurveHeader) parse_fail("CSV header must be '" + std::string(kCurveHeader) + "'");
    std::vector<AverageResult> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        double v[5];
        std::size_t pos = 0;
        for (int c = 0; c < 5; ++c) {
            const auto comma = line.find(',', pos);
            if ((c < 4) == (comma == std::string::npos)) parse_fail("CSV line " + std::to_string(lineno) + " needs 5 fields");
            const std::string cell = line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            char* end = nullptr;
            v[c] = std::strtod(cell.c_str(), &end);
            if (cell.empty() || end != cell.c_str() + cell.size()) {
                parse_fail("CSV line " + std::to_string(lineno) + ": bad number '" + cell + "'");
            }
            pos = comma + 1;
        }
        rows.push_back({v[1], v[2], v[3], v[0], v[4]});
    }
    return rows;
}

void write_file_atomic(const std::string& path, const std::string& contents) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    std::error_code ec;
    if (target.has_parent_path()) {
        fs::create_directories(target.parent_path(), ec);
        if (ec) throw Error(ErrorKind::io, "cannot create directory " + target.parent_path().string() + ": " + ec.message());
    }
    const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorKind::io, "cannot open " + tmp.string() + " for writing");
        out << contents;
        out.flush();
        if (!out) throw Error(ErrorKind::io, "write to " + tmp.string() + " failed");
    }
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw Error(ErrorKind::io, "cannot move output into place at " + path);
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::io, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw Error(ErrorKind::io, "read from " + path + " failed");
    return ss.str();
}

Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        parse_fail(std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace birkhoff

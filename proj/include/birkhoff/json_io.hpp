#pragma once

// JSON and CSV forms of the library types. Doubles that must survive a round
// trip bit-exactly are written as hex-float strings ("0x1.8p+1"); readers
// accept either JSON numbers or such strings.

#include "birkhoff/analysis.hpp"
#include "birkhoff/averaging.hpp"
#include "birkhoff/observables.hpp"
#include "birkhoff/rotations.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace birkhoff {

using Json = nlohmann::ordered_json;

std::string hex_double(double x);
// Number, hex-float string, or decimal string. Throws parse.
double read_double(const Json& j);

Json observable_to_json(const FourierObservable& f);
// Accepts the explicit {dim, real_valued, coeffs} form or a builder:
//   {"kind": "sin", "dim": d, "axis": a}
//   {"kind": "weak_regularity", "terms": K}
//   {"kind": "constant", "dim": d, "value": c}
//   {"kind": "random_analytic", "dim": d, "sigma": s, "cutoff": c, "seed": u}
// default_seed fills a missing random_analytic seed.
FourierObservable observable_from_json(const Json& j, std::uint64_t default_seed = 0);

Json rotation_to_json(const RotationVector& r);
// "golden" | "one" | "p/q" | "liouville_trunc" | "liouville_series" | decimal
// string | number | array of numbers | {"tag": ...} | {"phases": [...]}.
RotationVector rotation_from_json(const Json& j);

Json spec_to_json(const AverageSpec& spec);
AverageSpec spec_from_json(const Json& j, std::uint64_t default_seed = 0);

struct ExperimentConfig {
    std::string name;
    AverageSpec spec;
    std::vector<double> scales;
    std::vector<RateModel> fit_models;
    std::string output;  // directory for <name>.csv and <name>_fits.json
};

Json config_to_json(const ExperimentConfig& c);
ExperimentConfig config_from_json(const Json& j, std::uint64_t default_seed = 0);

Json result_to_json(const AverageResult& r);
Json divisor_scan_to_json(const DivisorScan& s);
Json rate_fit_to_json(const RateFit& f);
Json audit_to_json(const ConditionAudit& a);

// scale,value,target,abs_error,floor with %.17g and LF line endings.
inline constexpr const char* kCurveHeader = "scale,value,target,abs_error,floor";
std::string curve_csv(const std::vector<AverageResult>& rows);
// Reads the same layout (header required).
std::vector<AverageResult> parse_curve_csv(const std::string& text);

std::string format_double(double x);  // %.17g

// Writes path via a temporary file in the same directory and a rename. Throws io.
void write_file_atomic(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);
Json parse_json_text(const std::string& text);

}  // namespace birkhoff

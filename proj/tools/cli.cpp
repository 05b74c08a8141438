#include "cli.hpp"

#include "experiments.hpp"

#include "birkhoff/error.hpp"
#include "birkhoff/kernels.hpp"
#include "birkhoff/lattice.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <ostream>

namespace birkhoff::cli {

namespace {

constexpr const char* kFooter = R"(Exit codes: 0 ok, 2 parse error (flags, JSON, CSV), 3 library error, 4 I/O error.
Errors are printed to standard error as {"error": kind, "message": text}.

Audit verdicts:
  boundedness  plateauing when the last two partial sums differ by less than
               1e-6 relative; diverging when the log increments stop shrinking;
               inconclusive otherwise.
  smallness    plateauing (exponentially small) when the tail decreases and
               zeta - 1 >= -0.25, zeta being the slope of log(-log tail)
               against log x; diverging when the tail does not decrease;
               inconclusive otherwise (stretched or polynomial decay).
Fits run on the dyadic envelope [s, 2s) of the curve after dropping points at
or below the floor column.)";

constexpr const char* kGrowthHelp = "power:P (x^P), exp:R (e^{Rx}), dexp (e^{e^x}) or logpow:U (log^U(1+x))";

LatticeSpace parse_space(const std::string& text) {
    const auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    int n = 0;
    if (colon != std::string::npos) {
        const char* b = text.data() + colon + 1;
        const char* e = text.data() + text.size();
        const auto [ptr, ec] = std::from_chars(b, e, n);
        if (ec != std::errc() || ptr != e || n < 1) n = 0;
    }
    if (n > 0 && head == "finite") return LatticeSpace::finite(static_cast<std::size_t>(n));
    if (n > 0 && head == "sequences") return LatticeSpace::sequences(n);
    throw Error(ErrorKind::parse, "space must be finite:D or sequences:ETA, got '" + text + "'");
}

std::vector<RotationVector> parse_rotations(const std::vector<std::string>& tags) {
    std::vector<RotationVector> out;
    for (const auto& t : tags) out.push_back(RotationVector::from_tag(t));
    return out;
}

void print_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

void error_json(std::ostream& err, const std::string& kind, const std::string& message) {
    err << Json{{"error", kind}, {"message", message}}.dump() << '\n';
}

int exit_code(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::parse: return kExitParse;
    case ErrorKind::io: return kExitIo;
    default: return kExitModule;
    }
}

struct Options {
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    int threads = 0;

    std::string spec_path;
    std::vector<double> scales;

    std::string csv_path;
    std::vector<std::string> models{"power"};
    bool raw = false;

    std::string condition;
    std::string delta;
    std::vector<std::string> decays;
    int m = 2;
    std::string space = "finite:1";
    std::vector<std::int64_t> cutoffs{10, 20, 40, 80, 160};
    std::string phi = "power:0.5";
    std::vector<double> xs{5, 10, 20, 40, 80, 160, 320};

    std::vector<std::string> rho{"golden", "one"};
    int K = 5;
    std::string scan_mode = "discrete";
    double tau = 1.0;

    int eta = 2;
    int nu_max = 20;

    std::string preset;
    bool print_config = false;

    bool resonant = false;
    std::string cex_rho = "golden";
    int n_min = 5;
    int n_max = 200;
    std::vector<double> T{10, 100, 1000, 10000};

    std::string config_path;
};

std::vector<RateModel> parse_models(const std::vector<std::string>& names) {
    std::vector<RateModel> models;
    for (const auto& n : names) models.push_back(parse_rate_model(n));
    return models;
}

void cmd_average(const Options& o, std::ostream& out) {
    const AverageSpec spec = spec_from_json(parse_json_text(read_file(o.spec_path)), o.seed);
    print_json(out, result_to_json(spec.mode == AverageMode::discrete ? dmw(spec) : cmw(spec)));
}

void cmd_sweep(const Options& o, std::ostream& out) {
    const AverageSpec spec = spec_from_json(parse_json_text(read_file(o.spec_path)), o.seed);
    std::vector<double> scales = o.scales;
    if (scales.empty()) {
        scales = spec.mode == AverageMode::discrete ? default_discrete_scales() : default_continuous_scales();
    }
    out << curve_csv(error_curve(spec, scales));
}

void cmd_fit(const Options& o, std::ostream& out) {
    const auto rows = parse_curve_csv(read_file(o.csv_path));
    const auto models = parse_models(o.models);
    std::vector<CurvePoint> curve;
    if (o.raw) {
        for (const auto& p : to_curve(rows)) {
            if (p.abs_error > p.floor) curve.push_back(p);
        }
    } else {
        curve = envelope(to_curve(rows));
    }
    if (models.size() == 1) {
        print_json(out, rate_fit_to_json(fit(curve, models[0])));
        return;
    }
    Json all = Json::array();
    for (auto m : models) all.push_back(rate_fit_to_json(fit(curve, m)));
    print_json(out, all);
}

void cmd_audit(const Options& o, std::ostream& out) {
    if (o.decays.empty()) throw Error(ErrorKind::parse, "audit needs at least one --decay");
    const GrowthFunction delta = parse_growth(o.delta);
    std::vector<GrowthFunction> decays;
    for (const auto& d : o.decays) decays.push_back(parse_growth(d));
    const LatticeSpace space = parse_space(o.space);
    if (o.condition == "boundedness") {
        print_json(out, audit_to_json(audit_boundedness(delta, decays, o.m, space, o.cutoffs)));
    } else {
        print_json(out, audit_to_json(audit_truncated_smallness(decays, delta, parse_growth(o.phi), space, o.xs)));
    }
}

void cmd_divisors(const Options& o, std::ostream& out) {
    const JointRotation joint = make_joint(parse_rotations(o.rho));
    print_json(out, divisor_scan_to_json(smallest_divisor(joint, o.K, parse_scan_mode(o.scan_mode), o.tau)));
}

void cmd_shells(const Options& o, std::ostream& out) {
    if (o.eta < 1 || o.nu_max < 1) throw Error(ErrorKind::invalid_argument, "need eta >= 1 and max >= 1");
    out << "nu,count\n";
    for (int nu = 1; nu <= o.nu_max; ++nu) out << nu << ',' << shell_count(o.eta, nu).str() << '\n';
}

void cmd_preset(const Options& o, std::ostream& out) {
    if (o.print_config) {
        Json configs = Json::array();
        for (const auto& c : preset_configs(o.preset, o.out_dir)) configs.push_back(config_to_json(c));
        print_json(out, configs);
        return;
    }
    print_json(out, run_preset(o.preset, o.out_dir));
}

void cmd_counterexample(const Options& o, std::ostream& out) {
    if (o.resonant) {
        const auto rho = RotationVector::from_tag(o.cex_rho);
        if (rho.dim() != 1) throw Error(ErrorKind::invalid_argument, "resonant speed must be a single number");
        out << curve_csv(resonant_curve(o.T, rho.phases[0]));
    } else {
        out << curve_csv(counterexample_curve(o.n_min, o.n_max));
    }
}

void cmd_run(const Options& o, bool out_given, std::ostream& out) {
    ExperimentConfig config = config_from_json(parse_json_text(read_file(o.config_path)), o.seed);
    if (out_given) config.output = o.out_dir;
    print_json(out, run_config(config));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Weighted multiple Birkhoff averages over torus rotations", "birkhoff"};
    app.footer(kFooter);
    app.require_subcommand(1);
    app.fallthrough();
    auto* out_opt = app.add_option("--out", o.out_dir, "Directory for preset and run outputs")->capture_default_str();
    app.add_option("--seed", o.seed, "Default seed for random_analytic observables")->capture_default_str();
    app.add_option("--threads", o.threads, "OpenMP threads, 0 = runtime default")->check(CLI::NonNegativeNumber);

    auto* average = app.add_subcommand("average", "Evaluate one average from a JSON spec and print it as JSON");
    average->add_option("spec", o.spec_path, "Spec JSON file")->required();

    auto* sweep = app.add_subcommand("sweep", "Evaluate a spec over a scale grid, CSV " + std::string(kCurveHeader));
    sweep->add_option("spec", o.spec_path, "Spec JSON file")->required();
    sweep->add_option("--scales", o.scales, "Increasing N (discrete) or T (continuous) values")->delimiter(',');

    auto* fitc = app.add_subcommand("fit", "Fit a convergence rate to a sweep CSV and print RateFit JSON");
    fitc->add_option("csv", o.csv_path, "Sweep CSV file")->required();
    fitc->add_option("--model", o.models, "power, stretched_exp or log_stretched_exp (repeatable)")
        ->delimiter(',')
        ->capture_default_str();
    fitc->add_flag("--raw", o.raw, "Fit the floor-clipped curve without the dyadic envelope");

    auto* audit = app.add_subcommand("audit", "Partial-sum audit of a boundedness or truncated-smallness condition");
    audit->add_option("condition", o.condition, "boundedness or smallness")
        ->required()
        ->check(CLI::IsMember({"boundedness", "smallness"}));
    audit->add_option("--delta", o.delta, std::string("Small-divisor growth Delta: ") + kGrowthHelp)->required();
    audit->add_option("--decay", o.decays, "Coefficient decay of one factor, repeat once per factor")->required();
    audit->add_option("--m", o.m, "Power of Delta in the boundedness sum")->capture_default_str();
    audit->add_option("--space", o.space, "finite:D (Z^D, l1 norm) or sequences:ETA")->capture_default_str();
    audit->add_option("--cutoffs", o.cutoffs, "Boundedness cutoffs")->delimiter(',')->capture_default_str();
    audit->add_option("--phi", o.phi, "Truncation growth phi for smallness")->capture_default_str();
    audit->add_option("--x", o.xs, "Smallness x grid")->delimiter(',')->capture_default_str();

    auto* divisors = app.add_subcommand("divisors", "Smallest divisor over 0 < ||k||_1 <= K, printed as JSON");
    divisors->add_option("--rho", o.rho, "Rotation per factor: golden, one, p/q, liouville_trunc, liouville_series or a decimal")
        ->delimiter(',')
        ->capture_default_str();
    divisors->add_option("--K", o.K, "l1 radius")->capture_default_str();
    divisors->add_option("--mode", o.scan_mode, "discrete or continuous")->capture_default_str();
    divisors->add_option("--tau", o.tau, "Exponent in alpha_estimate = min divisor * ||k||^tau")->capture_default_str();

    auto* shells = app.add_subcommand("shells", "Counts of eta-weighted shells, CSV nu,count");
    shells->add_option("--eta", o.eta, "Weight exponent")->capture_default_str();
    shells->add_option("--max", o.nu_max, "Largest shell")->capture_default_str();

    auto* preset = app.add_subcommand("preset", "Run a named experiment and write its files into --out");
    preset->add_option("name", o.preset)->required()->check(CLI::IsMember(preset_names()));
    preset->add_flag("--print-config", o.print_config, "Print the sweep configs instead of running");

    auto* cex = app.add_subcommand("counterexample", "Closed-form counterexample curves as sweep CSV");
    cex->add_flag("--resonant", o.resonant, "Equal speeds: trajectory of the resonant closed form");
    cex->add_option("--rho", o.cex_rho, "Resonant speed")->capture_default_str();
    cex->add_option("--n-min", o.n_min, "First n of T_n = n / (rho1 - rho2)")->capture_default_str();
    cex->add_option("--n-max", o.n_max, "Last n")->capture_default_str();
    cex->add_option("--T", o.T, "Resonant T values")->delimiter(',')->capture_default_str();

    auto* run = app.add_subcommand("run", "Run an experiment config: sweep, CSV and fits");
    run->add_option("config", o.config_path, "Config JSON file")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        error_json(err, "parse", e.what());
        return kExitParse;
    }

    try {
        if (o.threads > 0) kernels::set_thread_count(o.threads);
        if (average->parsed()) cmd_average(o, out);
        else if (sweep->parsed()) cmd_sweep(o, out);
        else if (fitc->parsed()) cmd_fit(o, out);
        else if (audit->parsed()) cmd_audit(o, out);
        else if (divisors->parsed()) cmd_divisors(o, out);
        else if (shells->parsed()) cmd_shells(o, out);
        else if (preset->parsed()) cmd_preset(o, out);
        else if (cex->parsed()) cmd_counterexample(o, out);
        else if (run->parsed()) cmd_run(o, out_opt->count() > 0, out);
    } catch (const Error& e) {
        error_json(err, to_string(e.kind()), e.what());
        return exit_code(e.kind());
    } catch (const Json::exception& e) {
        error_json(err, "parse", e.what());
        return kExitParse;
    } catch (const std::exception& e) {
        error_json(err, "internal", e.what());
        return kExitModule;
    }
    out.flush();
    return kExitOk;
}

}  // namespace birkhoff::cli

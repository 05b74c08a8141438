#include "experiments.hpp"

#include "birkhoff/error.hpp"
#include "birkhoff/lattice.hpp"

#include <cmath>
#include <filesystem>

namespace birkhoff::cli {

namespace {

std::string join(const std::string& dir, const std::string& file) {
    return (std::filesystem::path(dir) / file).string();
}

// Both factors on T^1 starting from theta0 = 0.1, one discrete sweep per weight.
std::vector<ExperimentConfig> figure_configs(const std::string& stem, FourierObservable first, RotationVector rho1,
                                             const std::string& out_dir) {
    std::vector<ExperimentConfig> configs;
    for (auto kind : {WeightKind::exponential_bump, WeightKind::uniform}) {
        ExperimentConfig c;
        c.name = stem + "_" + std::string(weight_kind_name(kind));
        c.spec.weight = WeightFunction(kind);
        c.spec.observables = {first, make_sin(1, 0)};
        c.spec.joint = make_joint({rho1, RotationVector::one()});
        c.spec.theta0 = {0.1};
        c.spec.mode = AverageMode::discrete;
        c.scales = default_discrete_scales();
        c.fit_models = {RateModel::power};
        if (kind == WeightKind::exponential_bump) c.fit_models.push_back(RateModel::stretched_exp);
        c.output = out_dir;
        configs.push_back(std::move(c));
    }
    return configs;
}

Json write_curve(const std::string& dir, const std::string& name, const std::vector<AverageResult>& rows,
                 const std::vector<RateModel>& models) {
    Json summary = {{"name", name}, {"points", rows.size()}};
    const std::string csv = join(dir, name + ".csv");
    write_file_atomic(csv, curve_csv(rows));
    summary["csv"] = csv;
    if (!models.empty()) {
        const std::string fits = join(dir, name + "_fits.json");
        Json report = fit_report(rows, models);
        report["source"] = name + ".csv";
        write_file_atomic(fits, report.dump(2) + "\n");
        summary["fits"] = fits;
        summary["fit_results"] = report["fits"];
    }
    return summary;
}

Json cex_degree3(const std::string& dir) {
    return write_curve(dir, "cex_degree3", counterexample_curve(5, 200), {RateModel::power});
}

Json cex_resonant(const std::string& dir) {
    const double rho = RotationVector::golden().phases[0];
    const std::vector<double> T{10.0, 100.0, 1000.0, 10000.0};
    const auto closed = resonant_curve(T, rho);
    Json summary = write_curve(dir, "cex_resonant", closed, {});

    // The same trajectory by quadrature of the continuous average.
    AverageSpec spec;
    spec.weight = WeightFunction(WeightKind::sin_squared);
    spec.observables = {make_sin(1, 0), make_sin(1, 0)};
    spec.joint = make_joint({RotationVector::golden(), RotationVector::golden()});
    spec.theta0 = {0.0};
    spec.mode = AverageMode::continuous;
    Json quad = write_curve(dir, "cex_resonant_quadrature", error_curve(spec, T), {});
    summary["quadrature_csv"] = quad["csv"];
    summary["final_distance_to_half"] = std::abs(closed.back().value - 0.5);
    return summary;
}

Json shells(const std::string& dir) {
    std::string csv = "nu,count\n";
    for (int nu = 1; nu <= 20; ++nu) csv += std::to_string(nu) + ',' + shell_count(2, nu).str() + '\n';
    const std::string path = join(dir, "shells.csv");
    write_file_atomic(path, csv);
    return {{"name", "shells"}, {"csv", path}};
}

Json bump_growth(const std::string& dir) {
    std::string csv = "n,l1_norm\n";
    for (int n = 0; n <= kMaxBumpDerivative; ++n) csv += std::to_string(n) + ',' + format_double(bump_derivative_l1(n)) + '\n';
    const std::string path = join(dir, "bump_growth.csv");
    write_file_atomic(path, csv);
    return {{"name", "bump_growth"}, {"csv", path}};
}

}  // namespace

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"fig1_golden", "fig2_liouville", "cex_degree3",
                                                "cex_resonant", "shells", "bump_growth"};
    return names;
}

std::vector<double> default_discrete_scales() { return {10, 20, 50, 100, 200, 500, 1000, 2000}; }
std::vector<double> default_continuous_scales() { return {5, 10, 20, 50, 100, 200, 500, 1000}; }

std::vector<ExperimentConfig> preset_configs(std::string_view name, const std::string& out_dir) {
    if (name == "fig1_golden") return figure_configs("fig1_golden", make_sin(1, 0), RotationVector::golden(), out_dir);
    if (name == "fig2_liouville") {
        return figure_configs("fig2_liouville", make_weak_regularity_series(100), RotationVector::liouville_truncated(),
                              out_dir);
    }
    for (const auto& n : preset_names()) {
        if (n == name) return {};
    }
    throw Error(ErrorKind::invalid_argument, "unknown preset '" + std::string(name) + "'");
}

Json fit_report(const std::vector<AverageResult>& curve, const std::vector<RateModel>& models) {
    Json fits = Json::array();
    std::vector<CurvePoint> env;
    try {
        env = envelope(to_curve(curve));
    } catch (const Error& e) {
        for (auto m : models) {
            fits.push_back({{"model", rate_model_name(m)}, {"error", to_string(e.kind())}, {"message", e.what()}});
        }
        return {{"envelope_points", 0}, {"fits", fits}};
    }
    for (auto m : models) {
        try {
            fits.push_back(rate_fit_to_json(fit(env, m)));
        } catch (const Error& e) {
            fits.push_back({{"model", rate_model_name(m)}, {"error", to_string(e.kind())}, {"message", e.what()}});
        }
    }
    return {{"envelope_points", env.size()}, {"fits", fits}};
}

Json run_config(const ExperimentConfig& config) {
    return write_curve(config.output, config.name, error_curve(config.spec, config.scales), config.fit_models);
}

Json run_preset(std::string_view name, const std::string& out_dir) {
    Json runs = Json::array();
    const auto configs = preset_configs(name, out_dir);
    for (const auto& c : configs) runs.push_back(run_config(c));
    if (name == "cex_degree3") runs.push_back(cex_degree3(out_dir));
    if (name == "cex_resonant") runs.push_back(cex_resonant(out_dir));
    if (name == "shells") runs.push_back(shells(out_dir));
    if (name == "bump_growth") runs.push_back(bump_growth(out_dir));
    return {{"preset", name}, {"runs", runs}};
}

}  // namespace birkhoff::cli

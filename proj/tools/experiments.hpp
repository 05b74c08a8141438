#pragma once

// Reproducible experiments: a sweep config run end to end, and the named
// presets built from it.

#include "birkhoff/json_io.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace birkhoff::cli {

const std::vector<std::string>& preset_names();

// N grid used by the sweep presets and by `sweep` without --scales.
std::vector<double> default_discrete_scales();
std::vector<double> default_continuous_scales();

// The sweep presets (fig1_golden, fig2_liouville) as plain configs writing to
// out_dir. Table presets have none.
std::vector<ExperimentConfig> preset_configs(std::string_view name, const std::string& out_dir);

// Envelope of the curve, then one fit per model. A fit that cannot be made is
// recorded as {"model", "error", "message"} instead of aborting the run.
Json fit_report(const std::vector<AverageResult>& curve, const std::vector<RateModel>& models);

// Sweep, <output>/<name>.csv, and <output>/<name>_fits.json when models are
// requested. Returns a summary naming the files.
Json run_config(const ExperimentConfig& config);

Json run_preset(std::string_view name, const std::string& out_dir);

}  // namespace birkhoff::cli

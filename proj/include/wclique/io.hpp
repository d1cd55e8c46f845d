#pragma once

// File formats: graphons and reports are JSON documents; graphon files carry
// "mu" (array) and "values" (array of arrays).

#include "wclique/experiments.hpp"
#include "wclique/graphon.hpp"
#include "wclique/limit.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace wclique {

using Json = nlohmann::ordered_json;

/// Throws InputError on malformed text or an invalid graphon.
StepGraphon parse_graphon(const std::string& text);
/// Throws IoError if the file cannot be read, InputError if it is invalid.
StepGraphon read_graphon(const std::filesystem::path& path);
Json graphon_to_json(const StepGraphon& w);
void write_graphon(const StepGraphon& w, const std::filesystem::path& path);

Json law_to_json(const LimitLaw& law);
/// Classification report for `analyze`: law, t_r, spectrum of V_W(r),
/// sigma / sigma_hat, coefficients and the pure-normal / normal-free flags.
Json analysis_report(const StepGraphon& w, int r, double tol);
Json experiment_report_to_json(const ExperimentReport& report);

/// Writes `text` to `path`, throwing IoError on failure.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace wclique

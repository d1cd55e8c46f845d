#pragma once

// Monte Carlo harness: sample G(n, W) repeatedly, count r-cliques, and
// compare the standardized counts with the classified limit law.

#include "wclique/graphon.hpp"
#include "wclique/limit.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wclique {

struct ExperimentConfig {
  StepGraphon graphon = StepGraphon::constant(0.5);
  int r = 2;
  int n = 100;
  int trials = 1000;
  std::uint64_t seed = 1;
  /// Truncation order of the moment series (case (c)).
  int order = 12;
  /// Size of the comparison sample drawn from the limit law; 0 means `trials`.
  int limit_samples = 0;
  int threads = 1;
  double classify_tol = 1e-10;
  double ks_threshold = 0.03;
  /// Relative tolerance of the variance check; negative selects 5% for
  /// n >= 2000 and 15% below.
  double variance_tolerance = -1.0;
  int max_vertices = 1 << 16;
};

struct MomentEstimate {
  int m = 0;
  double empirical = 0.0;
  double standard_error = 0.0;
  double theoretical = 0.0;
};

struct SteinBound {
  double value = 0.0;
  /// Common neighbourhood size of the dependency graph on r-sets.
  double dependency_degree = 0.0;
  /// Exact standard deviation of X_{n,r}.
  double sigma_n = 0.0;
  double third_moment_sum = 0.0;
  double fourth_moment_sum = 0.0;
  bool regular_input = false;
};

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ExperimentReport {
  LimitLaw law;
  int r = 0;
  int n = 0;
  int trials = 0;
  std::uint64_t seed = 0;

  std::vector<std::uint64_t> counts;
  /// (X - C(n,r) t_r) / n^e per trial; empty for degenerate laws.
  std::vector<double> standardized;

  double expected_count = 0.0;
  double mean_count = 0.0;
  double sd_count = 0.0;

  /// Raw moments m = 1..4 of the standardized statistic.
  std::vector<MomentEstimate> moments;
  double variance = 0.0;
  double variance_se = 0.0;
  double variance_theory = 0.0;
  double skewness = 0.0;
  double skewness_se = 0.0;
  double ks_distance = 0.0;
  std::optional<SteinBound> stein;

  std::vector<Check> checks;

  bool all_pass() const;
};

/// (X - C(n,r) t_r) / n^e with e = r - 1/2 (Gaussian) or r - 1 (chi-square
/// mixture). Throws InputError for degenerate laws.
double standardized_statistic(std::uint64_t count, int n, int r, double t_r, const LimitLaw& law);

ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// Right-hand side of the dependency-graph Wasserstein bound for the
/// normalized clique count, evaluated with exact finite-n counts. Requires
/// n >= 2r. `regular_input` is set for K_r-regular graphons.
SteinBound stein_bound_details(const StepGraphon& w, int r, int n);
/// As above; throws InputError for K_r-regular graphons.
double stein_bound(const StepGraphon& w, int r, int n);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Sample variance (n - 1 denominator) and its jackknife standard error.
std::pair<double, double> variance_with_se(std::span<const double> x);
/// Moment skewness m3 / m2^{3/2} and its jackknife standard error.
std::pair<double, double> skewness_with_se(std::span<const double> x);

/// "trial,X,standardized" rows.
void write_trials_csv(const ExperimentReport& report, std::ostream& out);
/// Overlaid histograms of the standardized counts and the limit-law sample.
void write_histogram_svg(std::span<const double> empirical, std::span<const double> limit, std::ostream& out);

/// Limit-law comparison sample used by run_experiment (deterministic in the
/// config seed).
std::vector<double> limit_sample(const LimitLaw& law, std::uint64_t seed, int size);

}  // namespace wclique

#include "wclique/experiments.hpp"

#include "wclique/clique_count.hpp"
#include "wclique/density.hpp"
#include "wclique/multigraph.hpp"
#include "wclique/rng.hpp"
#include "wclique/sampler.hpp"
#include "wclique/types.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>
#include <thread>
#include <tuple>

namespace wclique {

namespace {

long double binomial_ld(int n, int k) {
  if (k < 0 || k > n) return 0.0L;
  k = std::min(k, n - k);
  long double out = 1.0L;
  for (int i = 1; i <= k; ++i) out = out * static_cast<long double>(n - k + i) / i;
  return out;
}

// Exact C(n,r) when it fits in 63 bits, otherwise the long double product.
long double expected_count(int n, int r, double t_r) {
  long double c;
  try {
    c = static_cast<long double>(binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(r)));
  } catch (const NumericalError&) {
    c = binomial_ld(n, r);
  }
  return c * static_cast<long double>(t_r);
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

struct CentralSums {
  double n = 0, s1 = 0, s2 = 0, s3 = 0;
};

double variance_of(const CentralSums& c) {
  return (c.s2 - c.s1 * c.s1 / c.n) / (c.n - 1.0);
}

double skewness_of(const CentralSums& c) {
  const double mean = c.s1 / c.n;
  const double m2 = c.s2 / c.n - mean * mean;
  const double m3 = c.s3 / c.n - 3.0 * mean * c.s2 / c.n + 2.0 * mean * mean * mean;
  return m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;
}

// Leave-one-out jackknife of a statistic of the first three power sums. The
// data are shifted by their mean first, which leaves both statistics unchanged
// and keeps the power sums well conditioned.
template <class Stat>
std::pair<double, double> jackknife(std::span<const double> x, Stat stat) {
  if (x.size() < 3) throw InputError("at least 3 observations needed");
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  CentralSums all{static_cast<double>(x.size())};
  for (double v : x) {
    const double d = v - mean;
    all.s1 += d;
    all.s2 += d * d;
    all.s3 += d * d * d;
  }
  const double full = stat(all);
  std::vector<double> loo(x.size());
  double loo_mean = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - mean;
    const CentralSums c{all.n - 1.0, all.s1 - d, all.s2 - d * d, all.s3 - d * d * d};
    loo[i] = stat(c);
    loo_mean += loo[i];
  }
  loo_mean /= static_cast<double>(x.size());
  double ss = 0.0;
  for (double v : loo) ss += (v - loo_mean) * (v - loo_mean);
  const double n = static_cast<double>(x.size());
  return {full, std::sqrt((n - 1.0) / n * ss)};
}

std::vector<std::uint64_t> run_trials(const ExperimentConfig& cfg) {
  const auto trials = static_cast<std::size_t>(cfg.trials);
  std::vector<std::uint64_t> counts(trials, 0);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  const auto worker = [&] {
    try {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= trials) return;
        RngStream stream = split_stream(cfg.seed, i);
        const SampledGraph g = sample_graph(cfg.graphon, cfg.n, stream, cfg.max_vertices);
        counts[i] = count_cliques(g, cfg.r);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next.store(trials);
    }
  };

  const int threads = std::max(1, std::min(cfg.threads, cfg.trials));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return counts;
}

constexpr std::uint64_t kLimitStreamTag = 0x6c696d6974ULL;

}  // namespace

bool ExperimentReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

double standardized_statistic(std::uint64_t count, int n, int r, double t_r, const LimitLaw& law) {
  if (law.is_degenerate()) throw InputError("standardized statistic undefined for a degenerate limit");
  if (n < r) throw InputError("n must be >= r");
  const long double centred = static_cast<long double>(count) - expected_count(n, r, t_r);
  return static_cast<double>(centred / std::pow(static_cast<long double>(n), static_cast<long double>(law.exponent())));
}

std::pair<double, double> variance_with_se(std::span<const double> x) { return jackknife(x, variance_of); }

std::pair<double, double> skewness_with_se(std::span<const double> x) { return jackknife(x, skewness_of); }

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw InputError("KS statistic needs two nonempty samples");
  std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size()), ny = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  return d;
}

std::vector<double> limit_sample(const LimitLaw& law, std::uint64_t seed, int size) {
  std::vector<double> out(static_cast<std::size_t>(std::max(size, 0)));
  const std::uint64_t base = RngStream::mix64(seed ^ kLimitStreamTag);
  for (std::size_t i = 0; i < out.size(); ++i) {
    RngStream stream = split_stream(base, i);
    out[i] = sample_limit(law, stream);
  }
  return out;
}

SteinBound stein_bound_details(const StepGraphon& w, int r, int n) {
  if (r < 2 || r > kMaxCliqueSize) throw InputError("clique size r must be in 2..20");
  if (n < 2 * r) throw InputError("stein_bound needs n >= 2r");
  const double t = hom_density(complete_graph(r), w);
  const std::vector<double> d = overlap_densities(w, r);

  SteinBound out;
  out.regular_input = is_kr_regular(w, r);
  long double degree = 0.0L, variance = 0.0L;
  for (int l = 1; l <= r; ++l) {
    degree += binomial_ld(r, l) * binomial_ld(n - r, r - l);
    const long double pairs = binomial_ld(n, l) * binomial_ld(n - l, r - l) * binomial_ld(n - r, r - l);
    variance += pairs * (static_cast<long double>(d[static_cast<std::size_t>(l - 1)]) - static_cast<long double>(t) * t);
  }
  if (!(variance > 0.0L)) throw NumericalError("clique count has zero variance; bound undefined");
  const long double sets = binomial_ld(n, r);
  const long double q = 1.0L - t;
  out.dependency_degree = static_cast<double>(degree);
  out.sigma_n = static_cast<double>(std::sqrt(variance));
  out.third_moment_sum = static_cast<double>(sets * t * q * (q * q + static_cast<long double>(t) * t));
  out.fourth_moment_sum = static_cast<double>(sets * t * q * (q * q * q + static_cast<long double>(t) * t * t));

  const long double sigma = std::sqrt(variance);
  const long double first = degree * degree / (sigma * sigma * sigma) * out.third_moment_sum;
  const long double second = std::sqrt(28.0L) * std::pow(degree, 1.5L) /
                             (std::sqrt(std::numbers::pi_v<long double>) * variance) *
                             std::sqrt(static_cast<long double>(out.fourth_moment_sum));
  out.value = static_cast<double>(first + second);
  return out;
}

double stein_bound(const StepGraphon& w, int r, int n) {
  const SteinBound b = stein_bound_details(w, r, n);
  if (b.regular_input) throw InputError("stein_bound applies to graphons that are not K_r-regular");
  return b.value;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  if (cfg.r < 2 || cfg.r > kMaxCliqueSize) throw InputError("clique size r must be in 2..20");
  if (cfg.n < cfg.r) throw InputError("experiment needs n >= r");
  if (cfg.trials < 2) throw InputError("experiment needs at least 2 trials");
  if (cfg.threads < 1) throw InputError("thread count must be >= 1");
  if (cfg.limit_samples < 0) throw InputError("limit sample size must be >= 0");

  ExperimentReport rep;
  rep.r = cfg.r;
  rep.n = cfg.n;
  rep.trials = cfg.trials;
  rep.seed = cfg.seed;
  rep.law = classify_limit(cfg.graphon, cfg.r, cfg.classify_tol);
  rep.counts = run_trials(cfg);

  const double T = cfg.trials;
  const long double expected = expected_count(cfg.n, cfg.r, rep.law.t_r);
  rep.expected_count = static_cast<double>(expected);
  long double sum = 0.0L, sum_sq = 0.0L;
  for (std::uint64_t c : rep.counts) {
    const long double dev = static_cast<long double>(c) - expected;
    sum += dev;
    sum_sq += dev * dev;
  }
  const long double mean_dev = sum / T;
  rep.mean_count = static_cast<double>(expected + mean_dev);
  rep.sd_count = static_cast<double>(std::sqrt(std::max(0.0L, (sum_sq - sum * mean_dev) / (T - 1.0))));
  {
    const double allowed = rep.sd_count > 0.0 ? 4.0 * rep.sd_count / std::sqrt(T) : 1e-9 * std::max(1.0, rep.expected_count);
    const double gap = std::abs(static_cast<double>(mean_dev));
    rep.checks.push_back({"mean", gap <= allowed, "|mean - C(n,r) t_r| = " + fmt(gap) + ", allowed " + fmt(allowed)});
  }
  if (rep.law.is_degenerate()) return rep;

  rep.standardized.reserve(rep.counts.size());
  for (std::uint64_t c : rep.counts)
    rep.standardized.push_back(standardized_statistic(c, cfg.n, cfg.r, rep.law.t_r, rep.law));

  std::vector<double> theory(5, 0.0);
  if (const auto* g = std::get_if<Gaussian>(&rep.law.kind)) {
    const double s2 = g->sigma_hat * g->sigma_hat;
    theory = {1.0, 0.0, s2, 0.0, 3.0 * s2 * s2};
  } else {
    const MomentSeries series = moment_series(cfg.graphon, cfg.r, std::max(cfg.order, 4));
    for (int m = 1; m <= 4; ++m) theory[static_cast<std::size_t>(m)] = theoretical_moment(series, m);
  }
  for (int m = 1; m <= 4; ++m) {
    std::vector<double> powers(rep.standardized.size());
    double mean = 0.0;
    for (std::size_t i = 0; i < powers.size(); ++i) mean += powers[i] = std::pow(rep.standardized[i], m);
    mean /= T;
    double ss = 0.0;
    for (double v : powers) ss += (v - mean) * (v - mean);
    rep.moments.push_back({m, mean, std::sqrt(ss / (T - 1.0) / T), theory[static_cast<std::size_t>(m)]});
  }
  std::tie(rep.variance, rep.variance_se) = variance_with_se(rep.standardized);
  std::tie(rep.skewness, rep.skewness_se) = skewness_with_se(rep.standardized);
  rep.variance_theory = variance_of_limit(rep.law);

  const int samples = cfg.limit_samples > 0 ? cfg.limit_samples : cfg.trials;
  const std::vector<double> ys = limit_sample(rep.law, cfg.seed, samples);
  rep.ks_distance = ks_two_sample(rep.standardized, ys);

  const double tol = cfg.variance_tolerance >= 0.0 ? cfg.variance_tolerance : (cfg.n >= 2000 ? 0.05 : 0.15);
  if (rep.variance_theory > 0.0) {
    const double rel = std::abs(rep.variance - rep.variance_theory) / rep.variance_theory;
    rep.checks.push_back({"variance", rel <= tol,
                          "variance " + fmt(rep.variance) + " vs " + fmt(rep.variance_theory) + ", relative error " +
                              fmt(rel) + ", allowed " + fmt(tol)});
  }
  if (cfg.n >= 1000) {
    bool ok = true;
    std::string detail;
    for (int m = 2; m <= 4; ++m) {
      const MomentEstimate& e = rep.moments[static_cast<std::size_t>(m - 1)];
      const double allowed = std::max(5.0 * e.standard_error, 0.15 * std::abs(e.theoretical));
      ok = ok && std::abs(e.empirical - e.theoretical) <= allowed;
      detail += (m > 2 ? "; " : "") + std::string("m=") + std::to_string(m) + " " + fmt(e.empirical) + " vs " +
                fmt(e.theoretical);
    }
    rep.checks.push_back({"moments", ok, detail});
  }
  if (rep.law.is_gaussian() || (rep.law.is_chi_square_mix() && std::get<ChiSquareMix>(rep.law.kind).coefficients.empty())) {
    const double allowed = 5.0 * rep.skewness_se;
    rep.checks.push_back({"skewness", std::abs(rep.skewness) <= allowed,
                          "skewness " + fmt(rep.skewness) + ", allowed " + fmt(allowed)});
  }
  rep.checks.push_back({"ks", rep.ks_distance < cfg.ks_threshold,
                        "two-sample KS " + fmt(rep.ks_distance) + ", threshold " + fmt(cfg.ks_threshold) +
                            " (engineering choice)"});
  if (rep.law.is_gaussian() && cfg.n >= 2 * cfg.r) rep.stein = stein_bound_details(cfg.graphon, cfg.r, cfg.n);
  return rep;
}

void write_trials_csv(const ExperimentReport& report, std::ostream& out) {
  out << "trial,X,standardized\n";
  char buf[64];
  for (std::size_t i = 0; i < report.counts.size(); ++i) {
    out << i << ',' << report.counts[i] << ',';
    if (i < report.standardized.size()) {
      std::snprintf(buf, sizeof buf, "%.17g", report.standardized[i]);
      out << buf;
    }
    out << '\n';
  }
}

void write_histogram_svg(std::span<const double> empirical, std::span<const double> limit, std::ostream& out) {
  constexpr int kBins = 60;
  constexpr double kWidth = 640, kHeight = 360, kMargin = 40;
  double lo = 0.0, hi = 1.0;
  if (!empirical.empty() || !limit.empty()) {
    lo = std::numeric_limits<double>::infinity();
    hi = -lo;
    for (auto s : {empirical, limit})
      for (double v : s) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    if (hi <= lo) hi = lo + 1.0;
  }
  const auto histogram = [&](std::span<const double> s) {
    std::vector<double> h(kBins, 0.0);
    for (double v : s) {
      const int b = std::min(kBins - 1, static_cast<int>((v - lo) / (hi - lo) * kBins));
      h[static_cast<std::size_t>(b)] += 1.0;
    }
    if (!s.empty())
      for (double& c : h) c /= static_cast<double>(s.size());
    return h;
  };
  const std::vector<double> he = histogram(empirical), hl = histogram(limit);
  double top = 1e-12;
  for (double v : he) top = std::max(top, v);
  for (double v : hl) top = std::max(top, v);

  char buf[256];
  const double bw = (kWidth - 2 * kMargin) / kBins;
  const auto y_of = [&](double v) { return kHeight - kMargin - v / top * (kHeight - 2 * kMargin); };
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"360\" viewBox=\"0 0 640 360\">\n";
  out << "<rect width=\"640\" height=\"360\" fill=\"white\"/>\n";
  for (int b = 0; b < kBins; ++b) {
    const double x = kMargin + b * bw;
    const double y = y_of(he[static_cast<std::size_t>(b)]);
    std::snprintf(buf, sizeof buf,
                  "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" fill=\"steelblue\" fill-opacity=\"0.6\"/>\n",
                  x, y, bw, kHeight - kMargin - y);
    out << buf;
  }
  out << "<polyline fill=\"none\" stroke=\"firebrick\" stroke-width=\"1.5\" points=\"";
  for (int b = 0; b < kBins; ++b) {
    std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", b ? " " : "", kMargin + (b + 0.5) * bw, y_of(hl[static_cast<std::size_t>(b)]));
    out << buf;
  }
  out << "\"/>\n";
  std::snprintf(buf, sizeof buf,
                "<line x1=\"%.0f\" y1=\"%.0f\" x2=\"%.0f\" y2=\"%.0f\" stroke=\"black\"/>\n", kMargin,
                kHeight - kMargin, kWidth - kMargin, kHeight - kMargin);
  out << buf;
  std::snprintf(buf, sizeof buf, "<text x=\"%.0f\" y=\"%.0f\" font-size=\"12\">%.4g</text>\n", kMargin,
                kHeight - kMargin + 16, lo);
  out << buf;
  std::snprintf(buf, sizeof buf, "<text x=\"%.0f\" y=\"%.0f\" font-size=\"12\" text-anchor=\"end\">%.4g</text>\n",
                kWidth - kMargin, kHeight - kMargin + 16, hi);
  out << buf;
  out << "<text x=\"40\" y=\"24\" font-size=\"12\">bars: standardized counts; line: limit-law sample</text>\n";
  out << "</svg>\n";
}

}  // namespace wclique

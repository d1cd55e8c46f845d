#include "wclique/limit.hpp"

#include "wclique/density.hpp"
#include "wclique/multigraph.hpp"
#include "wclique/rng.hpp"

#include <cmath>
#include <string>

namespace wclique {

namespace {

void check_clique_size(int r) {
  if (r < 2) throw InputError("clique size r must be >= 2");
  if (r > kMaxCliqueSize) throw InputError("clique size r > 20 is not supported");
}

double clique_density(const StepGraphon& w, int r) { return hom_density(complete_graph(r), w); }

}  // namespace

std::uint64_t factorial(int n) {
  if (n < 0 || n > 20) throw InputError("factorial argument outside 0..20");
  std::uint64_t out = 1;
  for (int k = 2; k <= n; ++k) out *= static_cast<std::uint64_t>(k);
  return out;
}

double LimitLaw::exponent() const { return is_gaussian() ? r - 0.5 : r - 1.0; }

char LimitLaw::theorem_case() const {
  if (is_degenerate()) return 'a';
  return is_gaussian() ? 'b' : 'c';
}

std::vector<double> overlap_densities(const StepGraphon& w, int r) {
  check_clique_size(r);
  std::vector<double> d;
  for (int j = 1; j <= r; ++j) d.push_back(hom_density(build_glued_cliques(r, j), w));
  return d;
}

double sigma_sq(const StepGraphon& w, int r) {
  check_clique_size(r);
  const double shared = hom_density(build_glued_cliques(r, 2), w);
  const double doubled = hom_density(build_glued_cliques(r, 2, true), w);
  const double fact = static_cast<double>(factorial(r - 2));
  const double value = (shared - doubled) / (2.0 * fact * fact);
  if (value < -1e-12) throw NumericalError("negative sigma^2 = " + std::to_string(value));
  return value < 0 ? 0.0 : value;
}

double sigma_hat(const StepGraphon& w, int r) {
  check_clique_size(r);
  const double t_r = clique_density(w, r);
  const double d1 = hom_density(build_glued_cliques(r, 1), w);
  double radicand = d1 - t_r * t_r;
  if (radicand < -1e-12) throw NumericalError("negative sigma_hat radicand " + std::to_string(radicand));
  if (radicand < 0) radicand = 0;
  return std::sqrt(radicand) / static_cast<double>(factorial(r - 1));
}

LimitLaw classify_limit(const StepGraphon& w, int r, double tol) {
  check_clique_size(r);
  LimitLaw law;
  law.r = r;
  law.t_r = clique_density(w, r);
  if (law.t_r <= tol) {
    law.kind = Degenerate{Degenerate::Kind::Empty};
    return law;
  }
  if (w.values().minCoeff() >= 1.0 - tol) {
    law.kind = Degenerate{Degenerate::Kind::Complete};
    return law;
  }
  law.near_degenerate = law.t_r < 1e-6 || law.t_r > 1.0 - 1e-6;

  const StepGraphon v = build_vwr(w, r);
  law.vwr_spectrum = spectrum(v);
  if (!is_kr_regular(w, r, tol)) {
    const double s = sigma_hat(w, r);
    if (!(s > 0)) throw NumericalError("non-regular graphon with sigma_hat = 0");
    law.kind = Gaussian{s};
    return law;
  }
  const Spectrum reduced = spec_minus(law.vwr_spectrum, law.t_r, 1e-8);
  const double fact = static_cast<double>(factorial(r - 2));
  ChiSquareMix mix{std::sqrt(sigma_sq(w, r)), {}};
  for (double lambda : reduced.eigenvalues()) mix.coefficients.push_back(lambda / (2.0 * fact));
  law.kind = std::move(mix);
  return law;
}

std::vector<double> exp_series(const std::vector<double>& g) {
  if (g.empty()) return {};
  if (g[0] != 0.0) throw InputError("exp_series needs a zero constant term");
  // f' = g' f  =>  m f_m = sum_{k=1}^m k g_k f_{m-k}.
  std::vector<double> f(g.size(), 0.0);
  f[0] = 1.0;
  for (std::size_t m = 1; m < g.size(); ++m) {
    double acc = 0.0;
    for (std::size_t k = 1; k <= m; ++k) acc += static_cast<double>(k) * g[k] * f[m - k];
    f[m] = acc / static_cast<double>(m);
  }
  return f;
}

MomentSeries moment_series(const StepGraphon& w, int r, int order) {
  check_clique_size(r);
  if (order < 2) throw InputError("truncation order must be >= 2");
  if (!is_kr_regular(w, r)) throw InputError("moment series requires a K_r-regular graphon");
  const double t_r = clique_density(w, r);
  const StepGraphon v = build_vwr(w, r);
  const double fact = static_cast<double>(factorial(r - 2));

  MomentSeries series;
  series.r = r;
  series.d.assign(static_cast<std::size_t>(order) + 1, 0.0);
  // t(C_2, V) = t(K_r (+)_2 K_r, W); add back the doubled-edge deficit to get
  // t(K_r (-)_2 K_r, W) = t(G_{2,r}, W).
  const double two_cycle = cycle_density_transfer(v, 2) + 2.0 * fact * fact * sigma_sq(w, r);
  series.d[2] = (two_cycle - t_r * t_r) / (4.0 * fact * fact);
  for (int ell = 3; ell <= order; ++ell) {
    const double scale = 2.0 * ell * std::pow(fact, ell);
    series.d[static_cast<std::size_t>(ell)] = (cycle_density_transfer(v, ell) - std::pow(t_r, ell)) / scale;
  }
  series.f_coeffs = exp_series(series.d);
  return series;
}

double theoretical_moment(const MomentSeries& series, int m) {
  if (m < 0) throw InputError("moment order must be >= 0");
  if (m > series.order()) throw InputError("moment order exceeds the series truncation");
  double fact = 1.0;
  for (int k = 2; k <= m; ++k) fact *= k;
  return fact * series.f_coeffs[static_cast<std::size_t>(m)];
}

double mgf_limit(const LimitLaw& law, double x) {
  if (const auto* g = std::get_if<Gaussian>(&law.kind)) return std::exp(g->sigma_hat * g->sigma_hat * x * x / 2.0);
  if (const auto* mix = std::get_if<ChiSquareMix>(&law.kind)) {
    double log_m = mix->sigma * mix->sigma * x * x / 2.0;
    for (double c : mix->coefficients) {
      const double slack = 1.0 - 2.0 * c * x;
      if (!(slack > 0)) throw InputError("x = " + std::to_string(x) + " outside the MGF domain");
      log_m += -c * x - 0.5 * std::log(slack);
    }
    return std::exp(log_m);
  }
  return 1.0;
}

double variance_of_limit(const LimitLaw& law) {
  if (const auto* g = std::get_if<Gaussian>(&law.kind)) return g->sigma_hat * g->sigma_hat;
  if (const auto* mix = std::get_if<ChiSquareMix>(&law.kind)) {
    double v = mix->sigma * mix->sigma;
    for (double c : mix->coefficients) v += 2.0 * c * c;
    return v;
  }
  throw InputError("degenerate limit law has no variance");
}

double sample_limit(const LimitLaw& law, RngStream& stream) {
  if (const auto* g = std::get_if<Gaussian>(&law.kind)) return g->sigma_hat * stream.normal();
  if (const auto* mix = std::get_if<ChiSquareMix>(&law.kind)) {
    double y = mix->sigma * stream.normal();
    for (double c : mix->coefficients) {
      const double z = stream.normal();
      y += c * (z * z - 1.0);
    }
    return y;
  }
  throw InputError("cannot sample a degenerate limit law");
}

bool is_pure_normal(const StepGraphon& w, int r, double tol) {
  check_clique_size(r);
  const double t_r = clique_density(w, r);
  const StepGraphon v = build_vwr(w, r);
  return (v.values().array() - t_r).abs().maxCoeff() <= tol;
}

bool is_normal_free(const StepGraphon& w, int r, double tol) {
  check_clique_size(r);
  const StepGraphon v = build_vwr(w, r);
  bool free = true;
  for (Eigen::Index i = 0; i < w.blocks(); ++i)
    for (Eigen::Index j = 0; j < w.blocks(); ++j)
      if (v.value(i, j) > tol && w.value(i, j) < 1.0 - tol) free = false;
  const double s2 = sigma_sq(w, r);
  if (free != (s2 <= tol))
    throw NumericalError("normal-free predicate disagrees with sigma^2 = " + std::to_string(s2));
  return free;
}

}  // namespace wclique

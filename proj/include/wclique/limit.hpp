#pragma once

// Limit laws of the centred r-clique count of G(n, W): classification,
// coefficients, moment series, MGF and sampling.

#include "wclique/graphon.hpp"
#include "wclique/spectral.hpp"

#include <cstdint>
#include <variant>
#include <vector>

namespace wclique {

class RngStream;

inline constexpr int kMaxCliqueSize = 20;

/// n! for 0 <= n <= 20, exact.
std::uint64_t factorial(int n);

struct Degenerate {
  enum class Kind { Empty, Complete };
  Kind kind;
};

/// (X - C(n,r) t_r) / n^{r-1/2} -> sigma_hat * Z.
struct Gaussian {
  double sigma_hat;
};

/// (X - C(n,r) t_r) / n^{r-1} -> sigma * Z + sum_k c_k (Z_k^2 - 1).
struct ChiSquareMix {
  double sigma;
  std::vector<double> coefficients;  // lambda / (2 (r-2)!) over Spec^-(V_W(r))
};

struct LimitLaw {
  int r = 2;
  double t_r = 0.0;
  std::variant<Degenerate, Gaussian, ChiSquareMix> kind;
  /// Spectrum of V_W(r) (empty for degenerate laws).
  Spectrum vwr_spectrum;
  /// t_r within 1e-6 of 0 or 1 without being classified degenerate.
  bool near_degenerate = false;

  bool is_degenerate() const { return std::holds_alternative<Degenerate>(kind); }
  bool is_gaussian() const { return std::holds_alternative<Gaussian>(kind); }
  bool is_chi_square_mix() const { return std::holds_alternative<ChiSquareMix>(kind); }
  /// Scaling exponent e of n^e in the standardized statistic: r - 1/2 for
  /// Gaussian laws, r - 1 otherwise.
  double exponent() const;
  /// "a", "b" or "c".
  char theorem_case() const;
};

LimitLaw classify_limit(const StepGraphon& w, int r, double tol = 1e-10);

/// d_j = t(K_r (-)_j K_r, W) for j = 1..r, returned at index j - 1.
std::vector<double> overlap_densities(const StepGraphon& w, int r);

/// (t(K_r (-)_2 K_r) - t(K_r (+)_2 K_r)) / (2 ((r-2)!)^2), clamped to 0 when
/// within -1e-12.
double sigma_sq(const StepGraphon& w, int r);

/// (1/(r-1)!) sqrt(d_1 - t_r^2).
double sigma_hat(const StepGraphon& w, int r);

struct MomentSeries {
  int r = 2;
  /// d[l] for l = 0..L; d[0] = d[1] = 0.
  std::vector<double> d;
  /// Coefficients of x^0..x^L of exp(sum_l d_l x^l).
  std::vector<double> f_coeffs;

  int order() const { return static_cast<int>(f_coeffs.size()) - 1; }
};

/// Requires W to be K_r-regular. Truncation order L >= 2.
MomentSeries moment_series(const StepGraphon& w, int r, int order = 12);

/// exp of a power series with zero constant term; g[0] must be 0.
std::vector<double> exp_series(const std::vector<double>& g);

/// m! [x^m] f, the limiting m-th moment of the standardized count.
double theoretical_moment(const MomentSeries& series, int m);

/// E[exp(x Y)]. Throws InputError outside the domain 1 - 2 c x > 0.
double mgf_limit(const LimitLaw& law, double x);

double variance_of_limit(const LimitLaw& law);

/// One draw of Y using independent standard normals from `stream`.
double sample_limit(const LimitLaw& law, RngStream& stream);

/// V_W(r) is constant t_r (within tol): the case (c) limit is then normal.
bool is_pure_normal(const StepGraphon& w, int r, double tol = 1e-10);

/// W = 1 wherever V_W(r) > 0 (within tol): the normal term vanishes. Throws
/// NumericalError when this disagrees with sigma_sq(w, r) <= tol.
bool is_normal_free(const StepGraphon& w, int r, double tol = 1e-10);

}  // namespace wclique

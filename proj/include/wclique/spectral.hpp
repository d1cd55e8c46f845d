#pragma once

#include "wclique/graphon.hpp"
#include "wclique/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace wclique {

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations, run
/// until the off-diagonal mass is at the rounding floor. Unsorted.
template <typename Scalar>
VectorX<Scalar> jacobi_eigenvalues(MatrixX<Scalar> a, int max_sweeps = 100) {
  using std::abs;
  using std::sqrt;
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw InputError("jacobi_eigenvalues needs a square matrix");
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  const Scalar scale = a.norm();
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    Scalar off = 0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (sqrt(off) <= eps * scale || off == Scalar(0)) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Scalar apq = a(p, q);
        if (apq == Scalar(0)) continue;
        // Rotation angle zeroing a(p, q); the small-angle root for stability.
        const Scalar theta = (a(q, q) - a(p, p)) / (Scalar(2) * apq);
        const Scalar sign = theta >= 0 ? Scalar(1) : Scalar(-1);
        const Scalar t = sign / (abs(theta) + sqrt(theta * theta + Scalar(1)));
        const Scalar c = Scalar(1) / sqrt(t * t + Scalar(1));
        const Scalar s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar akp = a(k, p);
          const Scalar akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar apk = a(p, k);
          const Scalar aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = Scalar(0);
      }
    }
  }
  return a.diagonal();
}

/// Multiset of nonzero eigenvalues, ordered by decreasing |lambda| (ties:
/// larger value first).
template <typename Scalar>
class SpectrumT {
 public:
  SpectrumT() = default;
  explicit SpectrumT(std::vector<Scalar> eigenvalues) : values_(std::move(eigenvalues)) {
    std::sort(values_.begin(), values_.end(), [](Scalar a, Scalar b) {
      using std::abs;
      if (abs(a) != abs(b)) return abs(a) > abs(b);
      return a > b;
    });
  }

  const std::vector<Scalar>& eigenvalues() const { return values_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  Scalar operator[](std::size_t i) const { return values_[i]; }

  Scalar sum_of_powers(int ell) const {
    Scalar total = 0;
    for (Scalar lambda : values_) {
      Scalar term = 1;
      for (int k = 0; k < ell; ++k) term *= lambda;
      total += term;
    }
    return total;
  }

 private:
  std::vector<Scalar> values_;
};

using Spectrum = SpectrumT<double>;

inline constexpr double kZeroEigenvalue = 1e-12;

/// Nonzero eigenvalues of the kernel operator of a step graphon: the
/// eigenvalues of diag(sqrt mu) * values * diag(sqrt mu).
template <typename Scalar>
SpectrumT<Scalar> spectrum(const StepGraphonT<Scalar>& w, double zero_tol = kZeroEigenvalue) {
  const VectorX<Scalar> root = w.mu().cwiseSqrt();
  const MatrixX<Scalar> sym = root.asDiagonal() * w.values() * root.asDiagonal();
  const VectorX<Scalar> all = jacobi_eigenvalues<Scalar>(sym);
  std::vector<Scalar> kept;
  for (Eigen::Index i = 0; i < all.size(); ++i) {
    using std::abs;
    if (abs(all(i)) > Scalar(zero_tol)) kept.push_back(all(i));
  }
  return SpectrumT<Scalar>(std::move(kept));
}

/// Removes the single eigenvalue closest to the regular degree d. Throws
/// NumericalError when none lies within tol of d.
template <typename Scalar>
SpectrumT<Scalar> spec_minus(const SpectrumT<Scalar>& spec, Scalar d, double tol = 1e-8) {
  using std::abs;
  const auto& values = spec.eigenvalues();
  std::size_t best = values.size();
  for (std::size_t i = 0; i < values.size(); ++i)
    if (best == values.size() || abs(values[i] - d) < abs(values[best] - d)) best = i;
  if (best == values.size() || !(abs(values[best] - d) <= Scalar(tol)))
    throw NumericalError("no eigenvalue within " + std::to_string(tol) + " of degree " +
                         std::to_string(static_cast<double>(d)));
  std::vector<Scalar> rest = values;
  rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(best));
  return SpectrumT<Scalar>(std::move(rest));
}

/// t(C_ell, W) as the sum of ell-th powers of the spectrum.
template <typename Scalar>
Scalar cycle_density_spectral(const SpectrumT<Scalar>& spec, int ell) {
  if (ell < 2) throw InputError("cycle length must be >= 2");
  return spec.sum_of_powers(ell);
}

/// t(C_ell, W) as trace((values * diag(mu))^ell).
template <typename Scalar>
Scalar cycle_density_transfer(const StepGraphonT<Scalar>& w, int ell) {
  if (ell < 2) throw InputError("cycle length must be >= 2");
  const MatrixX<Scalar> transfer = w.values() * w.mu().asDiagonal();
  MatrixX<Scalar> power = transfer;
  for (int k = 1; k < ell; ++k) power = (power * transfer).eval();
  return power.trace();
}

}  // namespace wclique

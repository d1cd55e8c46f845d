#pragma once

#include "wclique/types.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace wclique {

/// Unvalidated graphon description, as read from a file.
struct RawGraphon {
  std::vector<double> mu;
  std::vector<std::vector<double>> values;
};

/// Step graphon: blocks of measure mu_i with constant edge probability
/// values(i, j) between blocks i and j.
///
/// Invariants: every mu_i > 0, sum(mu) = 1 within the weight tolerance,
/// values symmetric (exactly) with entries in [0, 1].
template <typename Scalar>
class StepGraphonT {
 public:
  using Vector = VectorX<Scalar>;
  using Matrix = MatrixX<Scalar>;

  static constexpr double kWeightTolerance = 1e-12;

  /// Throws InputError describing the first violated invariant.
  static StepGraphonT validate(Vector mu, Matrix values, double weight_tol = kWeightTolerance) {
    const Eigen::Index blocks = mu.size();
    if (blocks == 0) throw InputError("graphon has no blocks");
    if (values.rows() != blocks || values.cols() != blocks)
      throw InputError("values must be a " + std::to_string(blocks) + "x" + std::to_string(blocks) +
                       " matrix");
    for (Eigen::Index i = 0; i < blocks; ++i) {
      if (!std::isfinite(static_cast<double>(mu(i))) || !(mu(i) > 0))
        throw InputError("block weight mu[" + std::to_string(i) + "] must be positive");
    }
    const double total = static_cast<double>(mu.sum());
    if (std::abs(total - 1.0) > weight_tol)
      throw InputError("block weights sum to " + std::to_string(total) + ", expected 1");
    for (Eigen::Index i = 0; i < blocks; ++i) {
      for (Eigen::Index j = 0; j < blocks; ++j) {
        const Scalar v = values(i, j);
        if (!(v >= 0 && v <= 1))
          throw InputError("value (" + std::to_string(i) + "," + std::to_string(j) +
                           ") outside [0,1]");
        if (v != values(j, i))
          throw InputError("values not symmetric at (" + std::to_string(i) + "," +
                           std::to_string(j) + ")");
      }
    }
    return StepGraphonT(std::move(mu), std::move(values));
  }

  static StepGraphonT constant(Scalar p) {
    return validate(Vector::Ones(1), Matrix::Constant(1, 1, p));
  }

  /// For values derived from an already valid graphon (e.g. V_W(r)): clamps
  /// rounding excursions into [0, 1] and symmetrizes, then validates.
  static StepGraphonT derived(Vector mu, Matrix values) {
    const Matrix sym = ((values + values.transpose()) / Scalar(2)).cwiseMax(Scalar(0)).cwiseMin(Scalar(1));
    return validate(std::move(mu), sym);
  }

  Eigen::Index blocks() const { return mu_.size(); }
  const Vector& mu() const { return mu_; }
  const Matrix& values() const { return values_; }
  Scalar mu(Eigen::Index i) const { return mu_(i); }
  Scalar value(Eigen::Index i, Eigen::Index j) const { return values_(i, j); }

  template <typename Other>
  StepGraphonT<Other> cast() const {
    return StepGraphonT<Other>::derived(mu_.template cast<Other>(), values_.template cast<Other>());
  }

 private:
  StepGraphonT(Vector mu, Matrix values) : mu_(std::move(mu)), values_(std::move(values)) {}

  Vector mu_;
  Matrix values_;
};

using StepGraphon = StepGraphonT<double>;

inline StepGraphon validate_graphon(const RawGraphon& raw) {
  const auto blocks = static_cast<Eigen::Index>(raw.mu.size());
  if (static_cast<Eigen::Index>(raw.values.size()) != blocks)
    throw InputError("values must have one row per block");
  StepGraphon::Vector mu(blocks);
  StepGraphon::Matrix values(blocks, blocks);
  for (Eigen::Index i = 0; i < blocks; ++i) {
    mu(i) = raw.mu[static_cast<std::size_t>(i)];
    const auto& row = raw.values[static_cast<std::size_t>(i)];
    if (static_cast<Eigen::Index>(row.size()) != blocks)
      throw InputError("values row " + std::to_string(i) + " has wrong length");
    for (Eigen::Index j = 0; j < blocks; ++j) values(i, j) = row[static_cast<std::size_t>(j)];
  }
  return StepGraphon::validate(std::move(mu), std::move(values));
}

inline RawGraphon to_raw(const StepGraphon& w) {
  RawGraphon raw;
  for (Eigen::Index i = 0; i < w.blocks(); ++i) {
    raw.mu.push_back(w.mu(i));
    std::vector<double> row;
    for (Eigen::Index j = 0; j < w.blocks(); ++j) row.push_back(w.value(i, j));
    raw.values.push_back(std::move(row));
  }
  return raw;
}

}  // namespace wclique

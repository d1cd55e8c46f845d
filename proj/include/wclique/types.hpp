#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace wclique {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Per-block quantity of a step graphon (degree, clique profile). Its length
/// equals the number of blocks of the graphon it came from.
template <typename Scalar>
using BlockVector = VectorX<Scalar>;

/// Malformed input or violated precondition.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two routes that must agree did not (e.g. a spectral identity or a sign
/// constraint failed beyond its tolerance).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A hard enumeration budget was exceeded.
class BudgetError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A file could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wclique

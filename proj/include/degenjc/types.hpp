#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace degenjc {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

/// A quantity was requested outside the domain where its formula is finite
/// (e.g. the pumping-matrix expansion at circular polarization).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A matrix that must be inverted is numerically singular.
class IllConditionedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Degenerate subspaces could not be aligned so that the pumping matrix is
/// diagonal in the natural basis.
class PairingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Physical or numerical parameter outside a documented precondition.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace degenjc

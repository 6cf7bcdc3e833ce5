// Copyright 2026 The nhzm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nhzm {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

/// One period of the time evolution, 2*pi/t in natural units (t = 1).
inline constexpr double kPeriod = 2.0 * std::numbers::pi;

/// Half-open range of site indices [begin, end).
struct SiteRange {
    std::size_t begin = 0;
    std::size_t end = 0;

    [[nodiscard]] std::size_t size() const noexcept { return end > begin ? end - begin : 0; }
    [[nodiscard]] bool contains(std::size_t i) const noexcept { return i >= begin && i < end; }
};

// ---------------------------------------------------------------------------
// Errors. Every failure raised by the library derives from nhzm::Error so the
// CLI can map numerical failures onto a single exit code.
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed lattice description or Hamiltonian.
class InvalidSpec : public Error {
public:
    using Error::Error;
};

/// An operation was called outside its mathematical domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Dense eigensolver failed to converge.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, CMatrix matrix, int iterations)
        : Error(what), matrix_(std::move(matrix)), iterations_(iterations) {}

    [[nodiscard]] const CMatrix& matrix() const noexcept { return matrix_; }
    [[nodiscard]] int iterations() const noexcept { return iterations_; }

private:
    CMatrix matrix_;
    int iterations_;
};

/// Not enough (or unusable) data for a least-squares fit.
class FitError : public Error {
public:
    using Error::Error;
};

/// Perturbation theory hit a vanishing denominator or a defective mode.
class DegeneratePerturbation : public Error {
public:
    using Error::Error;
};

/// No eigenvector overlaps a reference vector well enough to be identified with it.
class MatchingError : public Error {
public:
    using Error::Error;
};

/// Time evolution left the representable floating point range.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// Exceptional-point data that does not form a Jordan chain of H.
class SetupError : public Error {
public:
    using Error::Error;
};

}  // namespace nhzm

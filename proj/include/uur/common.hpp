#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace uur {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Numeric contracts used across the library. Values are part of the public
/// behaviour (validation thresholds, comparison slacks), not tuning knobs.
namespace tol {
inline constexpr double hermitian = 1e-12;      // max |M - M^dag| entry
inline constexpr double psd = 1e-10;            // min eigenvalue floor
inline constexpr double trace = 1e-10;          // |Tr - 1|
inline constexpr double unit_norm = 1e-12;      // | ||x||^2 - 1 |
inline constexpr double gram = 1e-10;           // basis Gram / POVM completeness
inline constexpr double prob_clip = 1e-10;      // negative probability clip window
inline constexpr double prob_sum = 1e-9;        // | sum p - 1 |
inline constexpr double majorization = 1e-9;    // slack per partial-sum inequality
inline constexpr double zero_component = 1e-12; // min-nonzero cutoff
inline constexpr double saturation = 1e-12;     // snap-to-one window for bound sequences
}  // namespace tol

/// A value failed a domain-type invariant (non-Hermitian input, broken
/// normalization, invalid POVM, ...).
struct InvariantError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input file; message carries line/field context.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An exhaustive enumeration would exceed its evaluation budget.
/// Bounds are only valid as true maxima, so we refuse instead of sampling.
struct BudgetError : std::runtime_error {
    BudgetError(const std::string& msg, unsigned long long required, unsigned long long budget)
        : std::runtime_error(msg), required(required), budget(budget) {}
    unsigned long long required;
    unsigned long long budget;
};

/// No optimizer restart converged. Carries the best value seen so the
/// failure is reported, never silently accepted.
struct ConvergenceError : std::runtime_error {
    ConvergenceError(const std::string& msg, double best) : std::runtime_error(msg), best_value(best) {}
    double best_value;
};

}  // namespace uur

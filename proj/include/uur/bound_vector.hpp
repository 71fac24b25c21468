#pragma once

#include <vector>

#include "uur/majorization.hpp"

namespace uur {

/// The nondecreasing sequence (O~_1, ..., O~_N) of joint-weight bounds,
/// O~_N = 1. `exact` marks entries where the bound is known to equal the
/// true optimum (k = 1, 2 for two bases, and the saturated tail).
struct BoundSequence {
    std::vector<double> values;
    std::vector<bool> exact;

    int size() const { return static_cast<int>(values.size()); }
    double value(int k) const { return values[static_cast<std::size_t>(k - 1)]; }  // 1-based k
};

/// Consecutive differences of a bound sequence, zero-padded: the vector
/// that majorizes every admissible joint outcome distribution. Carries the
/// raw (construction) order and the sorted-descending view used in
/// majorization tests.
class UncertaintyVector {
public:
    explicit UncertaintyVector(const BoundSequence& seq);

    int size() const { return static_cast<int>(raw_.size()); }
    const RVector& raw() const { return raw_; }
    const RVector& sorted() const { return sorted_; }
    ProbVector sorted_prob() const { return ProbVector(sorted_); }

private:
    RVector raw_;
    RVector sorted_;
};

/// Outcome of checking joint-distribution majorization against a bound
/// vector. A negative margin beyond the slack is data (it would falsify
/// the bound), not an error.
struct MajorizationReport {
    RVector margins;    // per-k partial-sum margins, k = 1..N
    double min_margin;  // most negative entry
    bool ok;            // min_margin >= -tol::majorization
};

MajorizationReport check_majorization(const ProbVector& joint, const UncertaintyVector& bound);

}  // namespace uur

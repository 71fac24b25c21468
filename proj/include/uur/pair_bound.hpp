#pragma once

#include <utility>

#include "uur/bound_vector.hpp"
#include "uur/quantum.hpp"
#include "uur/types.hpp"

namespace uur {

/// Largest overlap c = max |<a_m|b_n>| and the two-entry extension
/// c' = max sqrt(o^2 + o'^2) over pairs sharing a row or a column of the
/// overlap matrix. Maximizing index sets are kept for diagnostics only.
struct OverlapStats {
    double c;
    double c_prime;
    std::pair<int, int> argmax_c;                   // (m, n)
    std::pair<std::pair<int, int>, std::pair<int, int>> argmax_c_prime;
};

OverlapStats overlap_stats(const OrthonormalBasis& a, const OrthonormalBasis& b);

/// Exact largest joint weight for one outcome pair: 1/4 (1 + c)^2.
double omega1_exact(const OrthonormalBasis& a, const OrthonormalBasis& b);

/// Exact largest joint weight for two outcome pairs: 1/4 (1 + c')^2.
double omega2_exact(const OrthonormalBasis& a, const OrthonormalBasis& b);

/// Computable bound O~_k: maximum of 1/4 ||P_R + Q_S||^2 over subset pairs
/// with |R| + |S| = k + 1, both nonempty, by exhaustive enumeration.
/// Returns 1 for k >= d. Exact enumeration is guaranteed for d <= 8;
/// larger dimensions throw BudgetError rather than approximate.
double omega_tilde_k(const OrthonormalBasis& a, const OrthonormalBasis& b, int k);

/// Full sequence (O~_1, ..., O~_{d^2}); k = 1, 2 use the closed forms,
/// k >= d is 1.
BoundSequence bound_sequence(const OrthonormalBasis& a, const OrthonormalBasis& b);

UncertaintyVector build_bound_vector(const OrthonormalBasis& a, const OrthonormalBasis& b);

/// -2 log2 c: the additive entropic bound recovered at the min-entropy.
double maassen_uffink_bound(const OrthonormalBasis& a, const OrthonormalBasis& b);

/// Measure rho in both bases and test p (x) q against the bound vector.
MajorizationReport verify_majorization(const DensityMatrix& rho, const OrthonormalBasis& a,
                                       const OrthonormalBasis& b);

namespace detail {
/// || sum_{m in R} |a_m><a_m| + sum_{n in S} |b_n><b_n| ||_inf via full
/// eigendecomposition. R, S are bitmasks over [d]. Exposed for the
/// fast-path cross-check.
double projector_sum_norm(const OrthonormalBasis& a, const OrthonormalBasis& b, unsigned r_mask,
                          unsigned s_mask);
/// Same norm for singleton R = {m} from the overlap matrix alone:
/// 1 + sqrt(sum_{n in S} |<a_m|b_n>|^2).
double singleton_row_norm(const RMatrix& overlaps, int m, unsigned s_mask);
}  // namespace detail

}  // namespace uur

#pragma once

#include <cstdint>
#include <string>

#include "uur/common.hpp"

namespace uur {

/// Nonnegative vector summing to 1 (within tol::prob_sum).
class ProbVector {
public:
    explicit ProbVector(RVector components);

    static ProbVector uniform(int d);
    /// Point mass on component 0: (1, 0, ..., 0).
    static ProbVector point_mass(int d);

    int size() const { return static_cast<int>(v_.size()); }
    double operator[](int i) const { return v_(i); }
    const RVector& values() const { return v_; }
    RVector sorted_descending() const;

private:
    struct Unchecked {};
    ProbVector(RVector components, Unchecked) : v_(std::move(components)) {}
    RVector v_;

    friend ProbVector tensor_product(const ProbVector&, const ProbVector&);
};

/// Joint distribution p (x) q: all pairwise products, p-index major.
ProbVector tensor_product(const ProbVector& p, const ProbVector& q);

/// Whether x is majorized by y (x "more uncertain"): every partial sum of
/// the k largest components of x is <= the corresponding sum for y, with
/// slack tol::majorization per inequality. Vectors of unequal length are
/// zero-padded. Throws InvariantError when the totals differ beyond
/// tol::prob_sum.
bool is_majorized_by(const ProbVector& x, const ProbVector& y);

/// Per-k margins sum_k(y_sorted) - sum_k(x_sorted), k = 1..max(len).
/// x is majorized by y iff every margin >= -tol::majorization.
RVector majorization_margins(const ProbVector& x, const ProbVector& y);

/// Schur-concave (or, for the min-nonzero kind, merely permutation-invariant)
/// uncertainty quantifier. Log base 2 throughout: values are in bits.
class UncertaintyMeasure {
public:
    enum class Kind { shannon, renyi, min_entropy, neg_log_min_nonzero };

    static UncertaintyMeasure shannon();
    /// alpha in (0,1) u (1,64]; values within 1e-6 of 1 evaluate as Shannon.
    static UncertaintyMeasure renyi(double alpha);
    static UncertaintyMeasure min_entropy();
    static UncertaintyMeasure neg_log_min_nonzero();

    double operator()(const ProbVector& p) const { return apply(p); }
    double apply(const ProbVector& p) const;

    Kind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    /// Additive under tensor products (contract for weighted bounds):
    /// Shannon, Renyi, min-entropy.
    bool additive() const { return kind_ != Kind::neg_log_min_nonzero; }
    /// Whether the kind reverses the majorization order. The min-nonzero
    /// kind does not: mixing raises the minimum component of a positive
    /// vector, so it is excluded from majorization-dominance checks.
    bool schur_concave() const { return kind_ != Kind::neg_log_min_nonzero; }
    std::string name() const;

private:
    UncertaintyMeasure(Kind k, double a) : kind_(k), alpha_(a) {}
    Kind kind_;
    double alpha_;
};

double apply_measure(const UncertaintyMeasure& phi, const ProbVector& p);

/// Convex combination of n_perms uniformly random permutation matrices with
/// uniform simplex weights. Rows and columns sum to 1 within 1e-12.
RMatrix random_doubly_stochastic(int dim, int n_perms, std::uint64_t seed);

}  // namespace uur

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "uur/bound_vector.hpp"
#include "uur/pair_bound.hpp"
#include "uur/quantum.hpp"
#include "uur/types.hpp"

namespace uur {

/// L >= 2 POVMs on a common dimension; joint outcome space of size
/// N = N_1 N_2 ... N_L.
class MeasurementEnsemble {
public:
    explicit MeasurementEnsemble(std::vector<Povm> povms);

    static MeasurementEnsemble from_bases(const std::vector<OrthonormalBasis>& bases);

    int dim() const { return povms_.front().dim(); }
    int count() const { return static_cast<int>(povms_.size()); }  // L
    const Povm& povm(int l) const { return povms_[static_cast<std::size_t>(l)]; }
    std::vector<int> outcome_counts() const;
    long long total_outcomes() const;  // N

private:
    std::vector<Povm> povms_;
};

inline constexpr std::uint64_t kDefaultNormBudget = 10'000'000;

/// Number of subset tuples (norm evaluations) the exhaustive O~_k
/// enumeration would visit.
std::uint64_t count_subset_tuples(const MeasurementEnsemble& ens, long long k);

/// Joint-weight bound for L POVMs: max over subset tuples (S_1,...,S_L),
/// each nonempty, sum |S_l| = L + k - 1, of ||(1/L) sum_l sum_{a in S_l}
/// Pi^(l)_a||_inf^L. Returns 1 for k at or past the saturation point
/// sum N_l - L + 1. Throws BudgetError when the enumeration would exceed
/// `budget` norm evaluations.
double omega_tilde_k_multi(const MeasurementEnsemble& ens, long long k,
                           std::uint64_t budget = kDefaultNormBudget);

/// Full sequence (O~_1, ..., O~_N) with O~_N = 1. With short_circuit, once
/// a value saturates at 1 the remaining entries are filled without further
/// enumeration (the bound is nondecreasing in k).
BoundSequence bound_sequence_multi(const MeasurementEnsemble& ens,
                                   std::uint64_t budget = kDefaultNormBudget,
                                   bool short_circuit = true);

UncertaintyVector build_bound_vector_multi(const MeasurementEnsemble& ens,
                                           std::uint64_t budget = kDefaultNormBudget);

/// Joint distribution (x)_l p^(l)(rho), lexicographic in the outcome tuple.
ProbVector joint_distribution(const DensityMatrix& rho, const MeasurementEnsemble& ens);

MajorizationReport verify_majorization_multi(const DensityMatrix& rho,
                                             const MeasurementEnsemble& ens,
                                             std::uint64_t budget = kDefaultNormBudget);

/// Three d = 4 orthonormal bases in which every pair shares one common
/// eigenvector but no vector is common to all three; the standard example
/// of pairwise-trivial measurements with a nontrivial joint bound.
std::array<OrthonormalBasis, 3> example1_bases();
MeasurementEnsemble example1_ensemble();

/// Integer measurement weights w_l; t_l = w_l / W shown as exact rationals.
struct WeightedScheme {
    std::vector<int> weights;

    WeightedScheme(std::initializer_list<int> w) : weights(w) { validate(); }
    explicit WeightedScheme(std::vector<int> w) : weights(std::move(w)) { validate(); }

    int total() const;  // W
    /// t_l as a reduced fraction, e.g. "2/3".
    std::string t_display(int l) const;

private:
    void validate() const;
};

/// Weighted uncertainty bound: builds the W-measurement ensemble repeating
/// POVM l exactly w_l times, computes its bound vector, and returns
/// Phi(omega) / W. Requires an additive measure (Shannon, Renyi,
/// min-entropy).
double weighted_bound(const MeasurementEnsemble& ens, const WeightedScheme& scheme,
                      const UncertaintyMeasure& phi, std::uint64_t budget = kDefaultNormBudget);

}  // namespace uur

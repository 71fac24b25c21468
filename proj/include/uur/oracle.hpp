#pragma once

#include <cstdint>
#include <vector>

#include "uur/multi_bound.hpp"
#include "uur/types.hpp"

namespace uur {

/// Random-restart ascent configuration. Deterministic for a fixed seed;
/// restarts are independent substreams, so the best-of-restarts result does
/// not depend on evaluation order.
struct OptimizerConfig {
    int restarts = 64;           // >= 8
    int max_iters = 1000;
    double tol = 1e-10;          // convergence tolerance on the objective
    std::uint64_t seed = 1;
    std::uint64_t max_subsets = 200'000;  // index-subset budget for omega_k_oracle
};

struct AscentResult {
    double value = 0.0;
    CVector state;               // argmax unit vector
    bool converged = false;
    std::vector<double> restart_values;  // per-restart bests, diagnostics
};

/// Brute-force check of the product maximum: ascend
/// <x|A|x><x|B|x> over unit vectors from random starts plus a spectral warm
/// start. For projector inputs the result must reach 1/4 ||A+B||^2 within
/// 1e-6 relative. Throws ConvergenceError (carrying the best value) if no
/// restart converges.
AscentResult max_product_pure(const HermitianOperator& a, const HermitianOperator& b,
                              const OptimizerConfig& cfg);

/// The explicit optimizer of the rank-one product maximum: Gram-Schmidt
/// companion of (b, a), phases aligned, mixing angle alpha = beta/2 with
/// cos(beta) = |<a|b>|. Parallel inputs (c = 1) return a itself.
StateVector optimal_product_state(const StateVector& a, const StateVector& b);

/// Desk-scale brute force for the true Omega_k: for every index subset of
/// size k of the joint outcome space, ascend sum of joint probabilities over
/// density matrices rho = M M^dag / Tr(M M^dag) (full-rank parameterization),
/// and return the overall maximum (clamped to the provable ceiling 1).
/// Preconditions: dim <= 5, k <= 4, L <= 3, subset count within
/// cfg.max_subsets.
double omega_k_oracle(const MeasurementEnsemble& ens, int k, const OptimizerConfig& cfg);
double omega_k_oracle(const OrthonormalBasis& a, const OrthonormalBasis& b, int k,
                      const OptimizerConfig& cfg);

/// Best value of the subset objective over density matrices (warm starts
/// plus random restarts); the building block of omega_k_oracle.
double max_subset_product(const MeasurementEnsemble& ens,
                          const std::vector<std::vector<int>>& subset, const OptimizerConfig& cfg);

struct ConjectureProbe {
    double oracle_value;
    double conjectured_value;  // 1/4 (1 + sqrt(k/d))^2
};

/// Runs the oracle on the (computational, Fourier) MUB pair and reports the
/// value next to the conjectured closed form. Never asserts equality.
ConjectureProbe mub_conjecture_probe(int d, int k, const OptimizerConfig& cfg);

// Objective/gradient pairs exposed for finite-difference validation.

/// f(x) = <x|A|x><x|B|x> / ||x||^4 and its Wirtinger gradient d f / d x*.
double pure_product_objective(const CMatrix& a, const CMatrix& b, const CVector& x);
CVector pure_product_gradient(const CMatrix& a, const CMatrix& b, const CVector& x);

/// Joint-probability subset objective F(M) = sum_{t in subset} prod_l
/// p^(l)_{t_l}(rho(M)) with rho(M) = M M^dag / Tr(M M^dag), and its gradient
/// d F / d M*. Subset entries are outcome tuples (one index per POVM).
double subset_objective(const MeasurementEnsemble& ens,
                        const std::vector<std::vector<int>>& subset, const CMatrix& m);
CMatrix subset_objective_gradient(const MeasurementEnsemble& ens,
                                  const std::vector<std::vector<int>>& subset, const CMatrix& m);

}  // namespace uur

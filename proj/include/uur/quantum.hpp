#pragma once

#include <cstdint>

#include "uur/majorization.hpp"
#include "uur/rng.hpp"
#include "uur/types.hpp"

namespace uur {

/// Outcome distribution p_m = <a_m|rho|a_m>. Small negative values (down to
/// -tol::prob_clip) are clipped to zero; anything below that, or a total
/// further than tol::prob_sum from 1, signals an invalid state and throws.
ProbVector measure_basis(const DensityMatrix& rho, const OrthonormalBasis& basis);

/// Outcome distribution p_alpha = Tr(rho Pi_alpha), same clipping contract.
ProbVector measure_povm(const DensityMatrix& rho, const Povm& povm);

/// Infinity operator norm of a PSD operator = its largest eigenvalue.
/// Throws InvariantError if the operator is not PSD within tol::psd.
double operator_norm_psd(const HermitianOperator& op);

/// Matrix of |<a_m|b_n>|; every row and column of squared entries sums to 1.
RMatrix overlap_matrix(const OrthonormalBasis& a, const OrthonormalBasis& b);

/// Standard basis e_1..e_d.
OrthonormalBasis computational_basis(int d);

/// Discrete Fourier basis, amplitudes e^{2 pi i mn/d}/sqrt(d); mutually
/// unbiased with the computational basis (all overlaps 1/sqrt(d)).
OrthonormalBasis fourier_basis(int d);

/// Columns of a Haar-distributed unitary: QR of a complex Ginibre matrix
/// with the R-diagonal phase correction. Deterministic per seed.
OrthonormalBasis haar_random_basis(int d, std::uint64_t seed);
OrthonormalBasis haar_random_basis(int d, Rng& rng);

/// Ginibre construction M M^dag / Tr(M M^dag) with M a d x rank complex
/// Gaussian matrix. rank = 1 gives a pure state, rank = d the
/// Hilbert-Schmidt ensemble.
DensityMatrix random_density(int d, int rank, std::uint64_t seed);
DensityMatrix random_density(int d, int rank, Rng& rng);

StateVector random_pure(int d, std::uint64_t seed);
StateVector random_pure(int d, Rng& rng);

}  // namespace uur

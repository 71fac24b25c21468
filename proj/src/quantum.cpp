#include "uur/quantum.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <sstream>

namespace uur {

namespace {

void require_same_dim(int lhs, int rhs, const char* what) {
    if (lhs != rhs) {
        std::ostringstream os;
        os << what << ": dimension mismatch (" << lhs << " vs " << rhs << ")";
        throw std::invalid_argument(os.str());
    }
}

/// Clip measurement outcomes to [0, 1]-ish and renormalize. Values below
/// -tol::prob_clip or a total off by more than tol::prob_sum indicate an
/// invalid state, not rounding.
ProbVector finalize_outcomes(RVector p) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (p(i) < 0.0) {
            if (p(i) < -tol::prob_clip) {
                std::ostringstream os;
                os << "measurement outcome " << i << " is negative beyond tolerance: " << p(i);
                throw InvariantError(os.str());
            }
            p(i) = 0.0;
        }
        sum += p(i);
    }
    if (std::abs(sum - 1.0) > tol::prob_sum) {
        std::ostringstream os;
        os << "measurement outcomes sum to " << sum << ", not renormalizable";
        throw InvariantError(os.str());
    }
    p /= sum;
    return ProbVector(std::move(p));
}

}  // namespace

ProbVector measure_basis(const DensityMatrix& rho, const OrthonormalBasis& basis) {
    require_same_dim(rho.dim(), basis.dim(), "measure_basis");
    const int d = rho.dim();
    RVector p(d);
    for (int m = 0; m < d; ++m) {
        const CVector a = basis.matrix().col(m);
        p(m) = (a.adjoint() * rho.matrix() * a)(0, 0).real();
    }
    return finalize_outcomes(std::move(p));
}

ProbVector measure_povm(const DensityMatrix& rho, const Povm& povm) {
    require_same_dim(rho.dim(), povm.dim(), "measure_povm");
    RVector p(povm.size());
    for (int alpha = 0; alpha < povm.size(); ++alpha) {
        p(alpha) = (rho.matrix() * povm.element(alpha)).trace().real();
    }
    return finalize_outcomes(std::move(p));
}

double operator_norm_psd(const HermitianOperator& op) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(op.matrix(), Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues()(0);
    if (min_eig < -tol::psd) {
        std::ostringstream os;
        os << "operator_norm_psd: operator not PSD, min eigenvalue " << min_eig;
        throw InvariantError(os.str());
    }
    return std::max(0.0, es.eigenvalues()(op.dim() - 1));
}

RMatrix overlap_matrix(const OrthonormalBasis& a, const OrthonormalBasis& b) {
    require_same_dim(a.dim(), b.dim(), "overlap_matrix");
    return (a.matrix().adjoint() * b.matrix()).cwiseAbs();
}

OrthonormalBasis computational_basis(int d) {
    if (d < 2) throw std::invalid_argument("computational_basis: d must be >= 2");
    return OrthonormalBasis(CMatrix::Identity(d, d));
}

OrthonormalBasis fourier_basis(int d) {
    if (d < 2) throw std::invalid_argument("fourier_basis: d must be >= 2");
    CMatrix u(d, d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    for (int m = 0; m < d; ++m) {
        for (int n = 0; n < d; ++n) {
            const double phase =
                2.0 * std::numbers::pi * static_cast<double>((m * n) % d) / static_cast<double>(d);
            u(m, n) = norm * Complex(std::cos(phase), std::sin(phase));
        }
    }
    return OrthonormalBasis(std::move(u));
}

OrthonormalBasis haar_random_basis(int d, Rng& rng) {
    if (d < 2) throw std::invalid_argument("haar_random_basis: d must be >= 2");
    const CMatrix m = rng.ginibre(d, d);
    Eigen::HouseholderQR<CMatrix> qr(m);
    CMatrix q = qr.householderQ();
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Phase correction: without it the QR map is not Haar.
    for (int j = 0; j < d; ++j) {
        const Complex rjj = r(j, j);
        const double mag = std::abs(rjj);
        q.col(j) *= (mag > 0.0) ? rjj / mag : Complex(1.0, 0.0);
    }
    return OrthonormalBasis(std::move(q));
}

OrthonormalBasis haar_random_basis(int d, std::uint64_t seed) {
    Rng rng(seed);
    return haar_random_basis(d, rng);
}

DensityMatrix random_density(int d, int rank, Rng& rng) {
    if (d < 1 || rank < 1 || rank > d) {
        std::ostringstream os;
        os << "random_density: invalid rank " << rank << " for dimension " << d;
        throw std::invalid_argument(os.str());
    }
    const CMatrix m = rng.ginibre(d, rank);
    CMatrix w = m * m.adjoint();
    w /= w.trace().real();
    // Hermitize against rounding before validation.
    w = ((w + w.adjoint()) / 2.0).eval();
    return DensityMatrix(std::move(w));
}

DensityMatrix random_density(int d, int rank, std::uint64_t seed) {
    Rng rng(seed);
    return random_density(d, rank, rng);
}

StateVector random_pure(int d, Rng& rng) {
    if (d < 1) throw std::invalid_argument("random_pure: d must be >= 1");
    CVector v = rng.gaussian_vector(d);
    v /= v.norm();
    return StateVector(std::move(v));
}

StateVector random_pure(int d, std::uint64_t seed) {
    Rng rng(seed);
    return random_pure(d, rng);
}

}  // namespace uur

#pragma once

#include <utility>
#include <vector>

#include "uur/common.hpp"

namespace uur {

namespace detail {
double max_hermiticity_defect(const CMatrix& m);
double min_eigenvalue(const CMatrix& m);
}  // namespace detail

/// Unit-norm pure state on C^d.
class StateVector {
public:
    explicit StateVector(CVector amplitudes);

    int dim() const { return static_cast<int>(v_.size()); }
    const CVector& amplitudes() const { return v_; }

private:
    CVector v_;
};

/// d x d Hermitian, positive semidefinite, unit-trace matrix.
class DensityMatrix {
public:
    explicit DensityMatrix(CMatrix m);

    static DensityMatrix pure(const StateVector& x);

    int dim() const { return static_cast<int>(m_.rows()); }
    const CMatrix& matrix() const { return m_; }

private:
    CMatrix m_;
};

/// d orthonormal vectors, stored as the columns of a unitary.
class OrthonormalBasis {
public:
    /// Columns of `vectors` are the basis elements; Gram matrix must be
    /// identity within tol::gram.
    explicit OrthonormalBasis(CMatrix vectors);

    int dim() const { return static_cast<int>(u_.rows()); }
    const CMatrix& matrix() const { return u_; }
    StateVector vector(int m) const { return StateVector(u_.col(m)); }
    CMatrix projector(int m) const { return u_.col(m) * u_.col(m).adjoint(); }

private:
    CMatrix u_;
};

/// Positive operators summing to the identity.
class Povm {
public:
    explicit Povm(std::vector<CMatrix> elements);

    static Povm from_basis(const OrthonormalBasis& basis);

    int dim() const { return static_cast<int>(elements_.front().rows()); }
    int size() const { return static_cast<int>(elements_.size()); }
    const CMatrix& element(int alpha) const { return elements_[static_cast<std::size_t>(alpha)]; }
    const std::vector<CMatrix>& elements() const { return elements_; }

private:
    std::vector<CMatrix> elements_;
};

/// Hermitian matrix (within tol::hermitian); no positivity requirement.
class HermitianOperator {
public:
    explicit HermitianOperator(CMatrix m);

    int dim() const { return static_cast<int>(m_.rows()); }
    const CMatrix& matrix() const { return m_; }

private:
    CMatrix m_;
};

}  // namespace uur

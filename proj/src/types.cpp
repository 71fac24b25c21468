#include "uur/types.hpp"

#include <Eigen/Eigenvalues>
#include <sstream>

namespace uur {

namespace detail {

double max_hermiticity_defect(const CMatrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double min_eigenvalue(const CMatrix& m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

}  // namespace detail

namespace {

void require_square(const CMatrix& m, const char* what) {
    if (m.rows() == 0 || m.rows() != m.cols()) {
        std::ostringstream os;
        os << what << ": expected a nonempty square matrix, got " << m.rows() << "x" << m.cols();
        throw InvariantError(os.str());
    }
}

}  // namespace

StateVector::StateVector(CVector amplitudes) : v_(std::move(amplitudes)) {
    if (v_.size() == 0) throw InvariantError("StateVector: empty amplitude vector");
    const double defect = std::abs(v_.squaredNorm() - 1.0);
    if (defect > tol::unit_norm) {
        std::ostringstream os;
        os << "StateVector: squared norm deviates from 1 by " << defect;
        throw InvariantError(os.str());
    }
}

DensityMatrix::DensityMatrix(CMatrix m) : m_(std::move(m)) {
    require_square(m_, "DensityMatrix");
    const double herm = detail::max_hermiticity_defect(m_);
    if (herm > tol::hermitian) {
        std::ostringstream os;
        os << "DensityMatrix: hermiticity defect " << herm;
        throw InvariantError(os.str());
    }
    const double tr_defect = std::abs(m_.trace() - Complex(1.0, 0.0));
    if (tr_defect > tol::trace) {
        std::ostringstream os;
        os << "DensityMatrix: trace deviates from 1 by " << tr_defect;
        throw InvariantError(os.str());
    }
    const double min_eig = detail::min_eigenvalue(m_);
    if (min_eig < -tol::psd) {
        std::ostringstream os;
        os << "DensityMatrix: negative eigenvalue " << min_eig;
        throw InvariantError(os.str());
    }
}

DensityMatrix DensityMatrix::pure(const StateVector& x) {
    return DensityMatrix(x.amplitudes() * x.amplitudes().adjoint());
}

OrthonormalBasis::OrthonormalBasis(CMatrix vectors) : u_(std::move(vectors)) {
    require_square(u_, "OrthonormalBasis");
    const CMatrix gram = u_.adjoint() * u_;
    const double defect = (gram - CMatrix::Identity(u_.rows(), u_.rows())).cwiseAbs().maxCoeff();
    if (defect > tol::gram) {
        std::ostringstream os;
        os << "OrthonormalBasis: Gram matrix deviates from identity by " << defect;
        throw InvariantError(os.str());
    }
}

Povm::Povm(std::vector<CMatrix> elements) : elements_(std::move(elements)) {
    if (elements_.empty()) throw InvariantError("Povm: no elements");
    const auto rows = elements_.front().rows();
    CMatrix sum = CMatrix::Zero(rows, rows);
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        const CMatrix& e = elements_[i];
        require_square(e, "Povm element");
        if (e.rows() != rows) throw InvariantError("Povm: elements of mixed dimension");
        const double herm = detail::max_hermiticity_defect(e);
        if (herm > tol::hermitian) {
            std::ostringstream os;
            os << "Povm: element " << i << " hermiticity defect " << herm;
            throw InvariantError(os.str());
        }
        const double min_eig = detail::min_eigenvalue(e);
        if (min_eig < -tol::psd) {
            std::ostringstream os;
            os << "Povm: element " << i << " has negative eigenvalue " << min_eig;
            throw InvariantError(os.str());
        }
        sum += e;
    }
    const double defect = (sum - CMatrix::Identity(rows, rows)).cwiseAbs().maxCoeff();
    if (defect > tol::gram) {
        std::ostringstream os;
        os << "Povm: completeness defect " << defect;
        throw InvariantError(os.str());
    }
}

Povm Povm::from_basis(const OrthonormalBasis& basis) {
    std::vector<CMatrix> elems;
    elems.reserve(static_cast<std::size_t>(basis.dim()));
    for (int m = 0; m < basis.dim(); ++m) elems.push_back(basis.projector(m));
    return Povm(std::move(elems));
}

HermitianOperator::HermitianOperator(CMatrix m) : m_(std::move(m)) {
    require_square(m_, "HermitianOperator");
    const double herm = detail::max_hermiticity_defect(m_);
    if (herm > tol::hermitian) {
        std::ostringstream os;
        os << "HermitianOperator: hermiticity defect " << herm;
        throw InvariantError(os.str());
    }
}

}  // namespace uur

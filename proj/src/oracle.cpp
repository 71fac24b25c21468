#include "uur/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "uur/rng.hpp"

namespace uur {

namespace {

struct LocalAscent {
    double value = 0.0;
    bool converged = false;
};

/// Shared line-search ascent loop over a scale-invariant objective.
/// `Point` is CVector or CMatrix; `normalize` keeps the iterate on its
/// natural scale without changing the objective.
template <typename Point, typename Objective, typename Gradient, typename Normalize>
LocalAscent ascend(Point& x, const Objective& objective, const Gradient& gradient,
                   const Normalize& normalize, int max_iters, double obj_tol) {
    normalize(x);
    double f = objective(x);
    double eta = 0.5;
    int stall = 0;
    const double stall_tol = std::max(obj_tol, 1e-9);
    for (int iter = 0; iter < max_iters; ++iter) {
        const Point g = gradient(x);
        if (g.norm() < 1e-8 * std::max(1.0, std::abs(f))) return {f, true};
        bool stepped = false;
        while (eta > 1e-12) {
            Point cand = x + eta * g;
            normalize(cand);
            const double fc = objective(cand);
            if (fc > f) {
                x = std::move(cand);
                stall = (fc - f < stall_tol) ? stall + 1 : 0;
                f = fc;
                stepped = true;
                break;
            }
            eta /= 2.0;
        }
        if (!stepped) return {f, true};  // no ascent direction left at this precision
        if (stall >= 5) return {f, true};
        eta = std::min(eta * 2.0, 0.5);
    }
    return {f, false};
}

CVector top_eigenvector(const CMatrix& m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
    return es.eigenvectors().col(m.rows() - 1);
}

void require_product_inputs(const HermitianOperator& a, const HermitianOperator& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("max_product_pure: dimension mismatch");
    }
    for (const HermitianOperator* op : {&a, &b}) {
        Eigen::SelfAdjointEigenSolver<CMatrix> es(op->matrix(), Eigen::EigenvaluesOnly);
        const double lo = es.eigenvalues()(0);
        const double hi = es.eigenvalues()(op->dim() - 1);
        if (lo < -tol::psd) {
            std::ostringstream os;
            os << "max_product_pure: operator not PSD (min eigenvalue " << lo << ")";
            throw InvariantError(os.str());
        }
        if (hi > 1.0 + 1e-9) {
            std::ostringstream os;
            os << "max_product_pure: operator norm " << hi << " exceeds 1";
            throw InvariantError(os.str());
        }
    }
}

}  // namespace

double pure_product_objective(const CMatrix& a, const CMatrix& b, const CVector& x) {
    const double n2 = x.squaredNorm();
    const double qa = (x.adjoint() * a * x)(0, 0).real();
    const double qb = (x.adjoint() * b * x)(0, 0).real();
    return qa * qb / (n2 * n2);
}

CVector pure_product_gradient(const CMatrix& a, const CMatrix& b, const CVector& x) {
    const double n2 = x.squaredNorm();
    const double qa = (x.adjoint() * a * x)(0, 0).real();
    const double qb = (x.adjoint() * b * x)(0, 0).real();
    const double n4 = n2 * n2;
    return (qb * (a * x) + qa * (b * x)) / n4 - (2.0 * qa * qb / (n4 * n2)) * x;
}

AscentResult max_product_pure(const HermitianOperator& a, const HermitianOperator& b,
                              const OptimizerConfig& cfg) {
    require_product_inputs(a, b);
    if (cfg.restarts < 8) throw std::invalid_argument("OptimizerConfig: restarts must be >= 8");
    const int d = a.dim();
    const CMatrix& am = a.matrix();
    const CMatrix& bm = b.matrix();

    auto objective = [&](const CVector& x) { return pure_product_objective(am, bm, x); };
    auto gradient = [&](const CVector& x) { return pure_product_gradient(am, bm, x); };
    auto normalize = [](CVector& x) { x /= x.norm(); };

    AscentResult result;
    result.restart_values.reserve(static_cast<std::size_t>(cfg.restarts) + 1);

    auto run_start = [&](CVector x) {
        const LocalAscent out =
            ascend(x, objective, gradient, normalize, cfg.max_iters, cfg.tol);
        result.restart_values.push_back(out.value);
        if (out.value > result.value || result.state.size() == 0) {
            result.value = out.value;
            result.state = x;
        }
        result.converged = result.converged || out.converged;
    };

    // Spectral warm start: the optimum lives near the top eigenvector of A+B.
    run_start(top_eigenvector(am + bm));
    for (int r = 0; r < cfg.restarts; ++r) {
        Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(r)));
        run_start(rng.gaussian_vector(d));
    }

    if (!result.converged) {
        std::ostringstream os;
        os << "max_product_pure: no restart converged; best value " << result.value;
        throw ConvergenceError(os.str(), result.value);
    }
    return result;
}

StateVector optimal_product_state(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("optimal_product_state: dimension mismatch");
    }
    const CVector& av = a.amplitudes();
    const CVector& bv = b.amplitudes();
    const Complex ab = av.dot(bv);  // <a|b>
    const double c = std::abs(ab);
    if (c >= 1.0 - 1e-12) return a;

    // Companion direction: {a_tilde, b} orthonormal with a in their span.
    CVector at = av - bv * bv.dot(av);
    at /= at.norm();

    const Complex phase_phi = (c > 0.0) ? std::conj(ab) / c : Complex(1.0, 0.0);  // e^{i phi} <a|b> = c
    const Complex a_at = av.dot(at);
    const double a_at_mag = std::abs(a_at);
    const Complex phase_theta = (a_at_mag > 0.0) ? std::conj(a_at) / a_at_mag : Complex(1.0, 0.0);

    const double beta = std::acos(std::clamp(c, 0.0, 1.0));
    const double alpha = beta / 2.0;
    const double r = std::cos(alpha);

    CVector x = phase_phi * r * bv + std::sqrt(1.0 - r * r) * phase_theta * at;
    x /= x.norm();
    return StateVector(std::move(x));
}

double subset_objective(const MeasurementEnsemble& ens,
                        const std::vector<std::vector<int>>& subset, const CMatrix& m) {
    const double tr = m.squaredNorm();
    const CMatrix rho_t = (m * m.adjoint()).transpose() / tr;  // transposed for trace products
    double f = 0.0;
    for (const auto& tuple : subset) {
        double term = 1.0;
        for (int l = 0; l < ens.count(); ++l) {
            term *= rho_t.cwiseProduct(ens.povm(l).element(tuple[static_cast<std::size_t>(l)]))
                        .sum()
                        .real();
        }
        f += term;
    }
    return f;
}

CMatrix subset_objective_gradient(const MeasurementEnsemble& ens,
                                  const std::vector<std::vector<int>>& subset, const CMatrix& m) {
    const int d = ens.dim();
    const int l_count = ens.count();
    const double tr = m.squaredNorm();
    const CMatrix rho_t = (m * m.adjoint()).transpose() / tr;

    double f = 0.0;
    CMatrix k_op = CMatrix::Zero(d, d);
    std::vector<double> probs(static_cast<std::size_t>(l_count));
    for (const auto& tuple : subset) {
        double term = 1.0;
        for (int l = 0; l < l_count; ++l) {
            probs[static_cast<std::size_t>(l)] =
                rho_t.cwiseProduct(ens.povm(l).element(tuple[static_cast<std::size_t>(l)]))
                    .sum()
                    .real();
            term *= probs[static_cast<std::size_t>(l)];
        }
        f += term;
        for (int l = 0; l < l_count; ++l) {
            double coeff = 1.0;
            for (int j = 0; j < l_count; ++j) {
                if (j != l) coeff *= probs[static_cast<std::size_t>(j)];
            }
            k_op += coeff * ens.povm(l).element(tuple[static_cast<std::size_t>(l)]);
        }
    }
    return (k_op * m - static_cast<double>(l_count) * f * m) / tr;
}

double max_subset_product(const MeasurementEnsemble& ens,
                          const std::vector<std::vector<int>>& subset,
                          const OptimizerConfig& cfg) {
    if (cfg.restarts < 8) throw std::invalid_argument("OptimizerConfig: restarts must be >= 8");
    const int d = ens.dim();
    auto objective = [&](const CMatrix& m) { return subset_objective(ens, subset, m); };
    auto gradient = [&](const CMatrix& m) { return subset_objective_gradient(ens, subset, m); };
    auto normalize = [](CMatrix& m) { m /= m.norm(); };

    double best = 0.0;
    bool converged = false;

    auto run_start = [&](CMatrix m) {
        const LocalAscent out =
            ascend(m, objective, gradient, normalize, cfg.max_iters, cfg.tol);
        best = std::max(best, out.value);
        converged = converged || out.converged;
    };

    // Warm starts: pure states along each involved POVM element, and along
    // the top of the aggregated operator.
    std::set<std::pair<int, int>> involved;
    CMatrix aggregate = CMatrix::Zero(d, d);
    for (const auto& tuple : subset) {
        for (int l = 0; l < ens.count(); ++l) {
            involved.insert({l, tuple[static_cast<std::size_t>(l)]});
            aggregate += ens.povm(l).element(tuple[static_cast<std::size_t>(l)]);
        }
    }
    auto pure_start = [&](const CVector& v) {
        CMatrix m = CMatrix::Zero(d, d);
        m.col(0) = v;
        return m;
    };
    for (const auto& [l, alpha] : involved) {
        run_start(pure_start(top_eigenvector(ens.povm(l).element(alpha))));
        if (best >= 1.0 - tol::saturation) break;
    }
    if (best < 1.0 - tol::saturation) run_start(pure_start(top_eigenvector(aggregate)));
    for (int r = 0; r < cfg.restarts && best < 1.0 - tol::saturation; ++r) {
        Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(r)));
        run_start(rng.ginibre(d, d));
    }

    if (!converged) {
        std::ostringstream os;
        os << "max_subset_product: no restart converged; best value " << best;
        throw ConvergenceError(os.str(), best);
    }
    return best;
}

double omega_k_oracle(const MeasurementEnsemble& ens, int k, const OptimizerConfig& cfg) {
    // Scale gates come first: the subset count below would overflow on
    // inputs far past desk scale.
    if (ens.dim() > 5 || k > 4 || k < 1 || ens.count() > 3) {
        std::ostringstream os;
        os << "omega_k_oracle: desk scale is d <= 5, k <= 4, L <= 3; got d = " << ens.dim()
           << ", k = " << k << ", L = " << ens.count();
        throw BudgetError(os.str(), 0, 0);
    }
    const long long n = ens.total_outcomes();
    std::uint64_t n_subsets = 1;
    for (int i = 0; i < k; ++i) {
        n_subsets = n_subsets * static_cast<std::uint64_t>(n - i) /
                    static_cast<std::uint64_t>(i + 1);
    }
    if (n_subsets > cfg.max_subsets) {
        std::ostringstream os;
        os << "omega_k_oracle: " << n_subsets << " index subsets exceed the budget of "
           << cfg.max_subsets;
        throw BudgetError(os.str(), n_subsets, cfg.max_subsets);
    }

    const auto counts = ens.outcome_counts();
    auto decode = [&](long long flat) {
        std::vector<int> tuple(static_cast<std::size_t>(ens.count()));
        for (int l = ens.count() - 1; l >= 0; --l) {
            tuple[static_cast<std::size_t>(l)] = static_cast<int>(flat % counts[static_cast<std::size_t>(l)]);
            flat /= counts[static_cast<std::size_t>(l)];
        }
        return tuple;
    };

    // Lexicographic enumeration of k-element index subsets of [N].
    std::vector<long long> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    double best = 0.0;
    while (true) {
        std::vector<std::vector<int>> subset;
        subset.reserve(static_cast<std::size_t>(k));
        for (long long flat : idx) subset.push_back(decode(flat));
        best = std::max(best, max_subset_product(ens, subset, cfg));
        if (best >= 1.0) break;  // provable ceiling

        int pos = k - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - k + pos) --pos;
        if (pos < 0) break;
        ++idx[static_cast<std::size_t>(pos)];
        for (int i = pos + 1; i < k; ++i)
            idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i) - 1] + 1;
    }
    best = std::min(best, 1.0);
    // The objective is provably capped at 1; treat saturation dust as exact.
    if (best > 1.0 - tol::saturation) best = 1.0;
    return best;
}

double omega_k_oracle(const OrthonormalBasis& a, const OrthonormalBasis& b, int k,
                      const OptimizerConfig& cfg) {
    return omega_k_oracle(MeasurementEnsemble::from_bases({a, b}), k, cfg);
}

ConjectureProbe mub_conjecture_probe(int d, int k, const OptimizerConfig& cfg) {
    ConjectureProbe probe{};
    const double root = std::sqrt(static_cast<double>(k) / static_cast<double>(d));
    // Past k = d the weight saturates at 1 outright; the formula only
    // conjectures the k < d values and meets 1 exactly at k = d.
    probe.conjectured_value = std::min(1.0, 0.25 * (1.0 + root) * (1.0 + root));
    probe.oracle_value = omega_k_oracle(computational_basis(d), fourier_basis(d), k, cfg);
    return probe;
}

}  // namespace uur

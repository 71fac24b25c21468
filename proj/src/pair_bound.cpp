#include "uur/pair_bound.hpp"

#include <Eigen/Eigenvalues>
#include <bit>
#include <cmath>
#include <sstream>
#include <vector>

namespace uur {

namespace {

constexpr int kMaxEnumerationDim = 8;

/// Visit every bitmask over [d] with the given popcount (Gosper's hack).
template <typename F>
void for_each_mask(int d, int popcount, F&& f) {
    if (popcount < 1 || popcount > d) return;
    const unsigned limit = 1u << d;
    unsigned m = (1u << popcount) - 1;
    while (m < limit) {
        f(m);
        const unsigned c = m & (0u - m);
        const unsigned r = m + c;
        m = (((r ^ m) >> 2) / c) | r;
    }
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double out = 1.0;
    for (int i = 1; i <= k; ++i) out *= static_cast<double>(n - k + i) / static_cast<double>(i);
    return out;
}

/// Shared state for one basis pair: overlap matrix and lazily built
/// projector partial sums, reused across every k of a bound sequence.
class PairContext {
public:
    PairContext(const OrthonormalBasis& a, const OrthonormalBasis& b)
        : a_(a), b_(b), d_(a.dim()), overlaps_(overlap_matrix(a, b)) {
        sq_ = overlaps_.array().square();
        a_sums_.resize(1u << d_);
        b_sums_.resize(1u << d_);
    }

    const RMatrix& overlaps() const { return overlaps_; }

    double omega_tilde(int k) {
        double best = 0.0;
        for (int r = 1; r <= std::min(d_, k); ++r) {
            const int s = k + 1 - r;
            if (s < 1 || s > d_) continue;
            if (r == 1) {
                for (int m = 0; m < d_; ++m) {
                    for_each_mask(d_, s, [&](unsigned s_mask) {
                        best = std::max(best, value_from_norm(row_norm(m, s_mask)));
                    });
                }
            } else if (s == 1) {
                for_each_mask(d_, r, [&](unsigned r_mask) {
                    for (int n = 0; n < d_; ++n) {
                        best = std::max(best, value_from_norm(col_norm(r_mask, n)));
                    }
                });
            } else {
                for_each_mask(d_, r, [&](unsigned r_mask) {
                    const CMatrix& pr = subset_sum(a_, a_sums_, r_mask);
                    for_each_mask(d_, s, [&](unsigned s_mask) {
                        const CMatrix g = pr + subset_sum(b_, b_sums_, s_mask);
                        Eigen::SelfAdjointEigenSolver<CMatrix> es(g, Eigen::EigenvaluesOnly);
                        best = std::max(best, value_from_norm(es.eigenvalues()(d_ - 1)));
                    });
                });
            }
        }
        if (best > 1.0 - tol::saturation) best = 1.0;
        return best;
    }

    double row_norm(int m, unsigned s_mask) const {
        double sum = 0.0;
        for (unsigned rest = s_mask; rest != 0; rest &= rest - 1) {
            sum += sq_(m, std::countr_zero(rest));
        }
        return 1.0 + std::sqrt(sum);
    }

    double col_norm(unsigned r_mask, int n) const {
        double sum = 0.0;
        for (unsigned rest = r_mask; rest != 0; rest &= rest - 1) {
            sum += sq_(std::countr_zero(rest), n);
        }
        return 1.0 + std::sqrt(sum);
    }

private:
    static double value_from_norm(double norm) { return 0.25 * norm * norm; }

    const CMatrix& subset_sum(const OrthonormalBasis& basis, std::vector<CMatrix>& cache,
                              unsigned mask) {
        CMatrix& slot = cache[mask];
        if (slot.size() == 0) {
            const unsigned low = mask & (0u - mask);
            const int idx = std::countr_zero(low);
            if (mask == low) {
                slot = basis.projector(idx);
            } else {
                slot = subset_sum(basis, cache, mask ^ low) + basis.projector(idx);
            }
        }
        return slot;
    }

    const OrthonormalBasis& a_;
    const OrthonormalBasis& b_;
    int d_;
    RMatrix overlaps_;
    RMatrix sq_;
    std::vector<CMatrix> a_sums_;
    std::vector<CMatrix> b_sums_;
};

void require_pair(const OrthonormalBasis& a, const OrthonormalBasis& b) {
    if (a.dim() != b.dim()) {
        std::ostringstream os;
        os << "basis pair: dimension mismatch (" << a.dim() << " vs " << b.dim() << ")";
        throw std::invalid_argument(os.str());
    }
}

void require_enumeration_budget(int d, int k) {
    if (d > kMaxEnumerationDim) {
        double count = 0.0;
        for (int r = 1; r <= std::min(d, k); ++r) {
            const int s = k + 1 - r;
            if (s >= 1 && s <= d) count += binomial(d, r) * binomial(d, s);
        }
        std::ostringstream os;
        os << "omega_tilde_k: exhaustive enumeration is only guaranteed for d <= "
           << kMaxEnumerationDim << "; d = " << d << ", k = " << k << " needs about " << count
           << " subset pairs and will not be approximated";
        throw BudgetError(os.str(), static_cast<unsigned long long>(count), 0);
    }
}

}  // namespace

OverlapStats overlap_stats(const OrthonormalBasis& a, const OrthonormalBasis& b) {
    require_pair(a, b);
    const int d = a.dim();
    const RMatrix o = overlap_matrix(a, b);

    OverlapStats stats{};
    stats.c = -1.0;
    for (int m = 0; m < d; ++m) {
        for (int n = 0; n < d; ++n) {
            if (o(m, n) > stats.c) {
                stats.c = o(m, n);
                stats.argmax_c = {m, n};
            }
        }
    }

    // c': best root-sum of two squared entries sharing a row or a column.
    stats.c_prime = -1.0;
    auto consider = [&stats](double o1, double o2, std::pair<int, int> i1,
                             std::pair<int, int> i2) {
        const double v = std::sqrt(o1 * o1 + o2 * o2);
        if (v > stats.c_prime) {
            stats.c_prime = v;
            stats.argmax_c_prime = {i1, i2};
        }
    };
    for (int m = 0; m < d; ++m) {
        int n1 = 0;
        for (int n = 1; n < d; ++n)
            if (o(m, n) > o(m, n1)) n1 = n;
        int n2 = (n1 == 0) ? 1 : 0;
        for (int n = 0; n < d; ++n)
            if (n != n1 && o(m, n) > o(m, n2)) n2 = n;
        consider(o(m, n1), o(m, n2), {m, n1}, {m, n2});
    }
    for (int n = 0; n < d; ++n) {
        int m1 = 0;
        for (int m = 1; m < d; ++m)
            if (o(m, n) > o(m1, n)) m1 = m;
        int m2 = (m1 == 0) ? 1 : 0;
        for (int m = 0; m < d; ++m)
            if (m != m1 && o(m, n) > o(m2, n)) m2 = m;
        consider(o(m1, n), o(m2, n), {m1, n}, {m2, n});
    }

    const double floor_c = 1.0 / std::sqrt(static_cast<double>(d));
    if (stats.c < floor_c - 1e-9 || stats.c > 1.0 + 1e-9) {
        std::ostringstream os;
        os << "overlap_stats: c = " << stats.c << " outside [1/sqrt(d), 1]";
        throw InvariantError(os.str());
    }
    const double cap = std::min(std::sqrt(2.0), std::sqrt(1.0 + stats.c * stats.c));
    if (stats.c_prime < stats.c - 1e-9 || stats.c_prime > cap + 1e-9) {
        std::ostringstream os;
        os << "overlap_stats: c' = " << stats.c_prime << " outside [c, min(sqrt(2), sqrt(1+c^2))]";
        throw InvariantError(os.str());
    }
    return stats;
}

double omega1_exact(const OrthonormalBasis& a, const OrthonormalBasis& b) {
    const double c = overlap_stats(a, b).c;
    return 0.25 * (1.0 + c) * (1.0 + c);
}

double omega2_exact(const OrthonormalBasis& a, const OrthonormalBasis& b) {
    if (a.dim() < 2) throw std::invalid_argument("omega2_exact: d must be >= 2");
    const double cp = overlap_stats(a, b).c_prime;
    return 0.25 * (1.0 + cp) * (1.0 + cp);
}

double omega_tilde_k(const OrthonormalBasis& a, const OrthonormalBasis& b, int k) {
    require_pair(a, b);
    if (k < 1) throw std::invalid_argument("omega_tilde_k: k must be >= 1");
    const int d = a.dim();
    if (k >= d) return 1.0;
    require_enumeration_budget(d, k);
    PairContext ctx(a, b);
    return ctx.omega_tilde(k);
}

BoundSequence bound_sequence(const OrthonormalBasis& a, const OrthonormalBasis& b) {
    require_pair(a, b);
    const int d = a.dim();
    const auto n = static_cast<std::size_t>(d) * static_cast<std::size_t>(d);

    BoundSequence seq;
    seq.values.resize(n, 1.0);
    seq.exact.resize(n, false);

    const OverlapStats stats = overlap_stats(a, b);
    double prev = 0.0;
    if (d >= 4) require_enumeration_budget(d, d - 1);
    PairContext ctx(a, b);
    for (int k = 1; k < d; ++k) {
        double v;
        if (k == 1) {
            v = 0.25 * (1.0 + stats.c) * (1.0 + stats.c);
        } else if (k == 2) {
            v = 0.25 * (1.0 + stats.c_prime) * (1.0 + stats.c_prime);
        } else {
            v = ctx.omega_tilde(k);
        }
        v = std::min(v, 1.0);
        v = std::max(v, prev);
        seq.values[static_cast<std::size_t>(k) - 1] = v;
        prev = v;
    }
    for (std::size_t k = 1; k <= n; ++k) {
        seq.exact[k - 1] = (k <= 2) || (k >= static_cast<std::size_t>(d));
    }
    return seq;
}

UncertaintyVector build_bound_vector(const OrthonormalBasis& a, const OrthonormalBasis& b) {
    return UncertaintyVector(bound_sequence(a, b));
}

double maassen_uffink_bound(const OrthonormalBasis& a, const OrthonormalBasis& b) {
    return -2.0 * std::log2(overlap_stats(a, b).c);
}

MajorizationReport verify_majorization(const DensityMatrix& rho, const OrthonormalBasis& a,
                                       const OrthonormalBasis& b) {
    const ProbVector joint = tensor_product(measure_basis(rho, a), measure_basis(rho, b));
    return check_majorization(joint, build_bound_vector(a, b));
}

namespace detail {

double projector_sum_norm(const OrthonormalBasis& a, const OrthonormalBasis& b, unsigned r_mask,
                          unsigned s_mask) {
    const int d = a.dim();
    CMatrix g = CMatrix::Zero(d, d);
    for (unsigned rest = r_mask; rest != 0; rest &= rest - 1) {
        g += a.projector(std::countr_zero(rest));
    }
    for (unsigned rest = s_mask; rest != 0; rest &= rest - 1) {
        g += b.projector(std::countr_zero(rest));
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(g, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(d - 1);
}

double singleton_row_norm(const RMatrix& overlaps, int m, unsigned s_mask) {
    double sum = 0.0;
    for (unsigned rest = s_mask; rest != 0; rest &= rest - 1) {
        const double o = overlaps(m, std::countr_zero(rest));
        sum += o * o;
    }
    return 1.0 + std::sqrt(sum);
}

}  // namespace detail

}  // namespace uur

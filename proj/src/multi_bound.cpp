#include "uur/multi_bound.hpp"

#include <Eigen/Eigenvalues>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace uur {

namespace {

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

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    return (a > std::numeric_limits<std::uint64_t>::max() - b)
               ? std::numeric_limits<std::uint64_t>::max()
               : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    if (a > std::numeric_limits<std::uint64_t>::max() / b)
        return std::numeric_limits<std::uint64_t>::max();
    return a * b;
}

std::uint64_t binomial_u64(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t out = 1;
    for (int i = 1; i <= k; ++i) out = sat_mul(out, static_cast<std::uint64_t>(n - k + i)) / i;
    return out;
}

/// Enumeration state: per-POVM lazy subset-sum caches and the running
/// partial operator per recursion level.
class MultiEnum {
public:
    explicit MultiEnum(const MeasurementEnsemble& ens)
        : ens_(ens), l_count_(ens.count()), dim_(ens.dim()), counts_(ens.outcome_counts()) {
        caches_.resize(static_cast<std::size_t>(l_count_));
        for (int l = 0; l < l_count_; ++l) {
            const int n = counts_[static_cast<std::size_t>(l)];
            if (n <= 16) caches_[static_cast<std::size_t>(l)].resize(1u << n);
        }
        suffix_.assign(static_cast<std::size_t>(l_count_) + 1, 0);
        for (int l = l_count_ - 1; l >= 0; --l)
            suffix_[static_cast<std::size_t>(l)] =
                suffix_[static_cast<std::size_t>(l) + 1] + counts_[static_cast<std::size_t>(l)];
        partial_.assign(static_cast<std::size_t>(l_count_) + 1, CMatrix::Zero(dim_, dim_));
    }

    /// Max of ||(1/L) sum_l S_l||^L over tuples with total subset size `total`.
    double run(int total) {
        best_ = 0.0;
        recurse(0, total);
        return best_;
    }

private:
    void recurse(int level, int remaining) {
        if (level == l_count_) {
            const CMatrix op = partial_[static_cast<std::size_t>(level)] /
                               static_cast<double>(l_count_);
            Eigen::SelfAdjointEigenSolver<CMatrix> es(op, Eigen::EigenvaluesOnly);
            const double v = std::pow(std::max(0.0, es.eigenvalues()(dim_ - 1)),
                                      static_cast<double>(l_count_));
            best_ = std::max(best_, v);
            return;
        }
        const int n = counts_[static_cast<std::size_t>(level)];
        const int levels_after = l_count_ - 1 - level;
        const int lo = std::max(1, remaining - suffix_[static_cast<std::size_t>(level) + 1]);
        const int hi = std::min(n, remaining - levels_after);
        for (int s = lo; s <= hi; ++s) {
            for_each_mask(n, s, [&](unsigned mask) {
                partial_[static_cast<std::size_t>(level) + 1] =
                    partial_[static_cast<std::size_t>(level)] + subset_sum(level, mask);
                recurse(level + 1, remaining - s);
            });
        }
    }

    CMatrix subset_sum_direct(int level, unsigned mask) const {
        CMatrix out = CMatrix::Zero(dim_, dim_);
        for (unsigned rest = mask; rest != 0; rest &= rest - 1) {
            out += ens_.povm(level).element(std::countr_zero(rest));
        }
        return out;
    }

    const CMatrix& subset_sum(int level, unsigned mask) {
        auto& cache = caches_[static_cast<std::size_t>(level)];
        if (cache.empty()) {
            scratch_ = subset_sum_direct(level, mask);
            return scratch_;
        }
        CMatrix& slot = cache[mask];
        if (slot.size() == 0) {
            const unsigned low = mask & (0u - mask);
            const int idx = std::countr_zero(low);
            if (mask == low) {
                slot = ens_.povm(level).element(idx);
            } else {
                slot = subset_sum(level, mask ^ low) + ens_.povm(level).element(idx);
            }
        }
        return slot;
    }

    const MeasurementEnsemble& ens_;
    int l_count_;
    int dim_;
    std::vector<int> counts_;
    std::vector<int> suffix_;
    std::vector<std::vector<CMatrix>> caches_;
    std::vector<CMatrix> partial_;
    CMatrix scratch_;
    double best_ = 0.0;
};

long long saturation_k(const MeasurementEnsemble& ens) {
    long long sum = 0;
    for (int n : ens.outcome_counts()) sum += n;
    return sum - ens.count() + 1;
}

}  // namespace

MeasurementEnsemble::MeasurementEnsemble(std::vector<Povm> povms) : povms_(std::move(povms)) {
    if (povms_.size() < 2) throw InvariantError("MeasurementEnsemble: needs at least 2 POVMs");
    const int d = povms_.front().dim();
    for (const Povm& p : povms_) {
        if (p.dim() != d) throw InvariantError("MeasurementEnsemble: POVMs of mixed dimension");
    }
}

MeasurementEnsemble MeasurementEnsemble::from_bases(const std::vector<OrthonormalBasis>& bases) {
    std::vector<Povm> povms;
    povms.reserve(bases.size());
    for (const OrthonormalBasis& b : bases) povms.push_back(Povm::from_basis(b));
    return MeasurementEnsemble(std::move(povms));
}

std::vector<int> MeasurementEnsemble::outcome_counts() const {
    std::vector<int> counts;
    counts.reserve(povms_.size());
    for (const Povm& p : povms_) counts.push_back(p.size());
    return counts;
}

long long MeasurementEnsemble::total_outcomes() const {
    long long n = 1;
    for (const Povm& p : povms_) n *= p.size();
    return n;
}

std::uint64_t count_subset_tuples(const MeasurementEnsemble& ens, long long k) {
    const auto counts = ens.outcome_counts();
    const int total = static_cast<int>(std::min<long long>(
        k + ens.count() - 1, std::accumulate(counts.begin(), counts.end(), 0LL)));
    // ways[t] = weighted number of prefixes with subset sizes summing to t.
    std::vector<std::uint64_t> ways(static_cast<std::size_t>(total) + 1, 0);
    ways[0] = 1;
    for (int n : counts) {
        std::vector<std::uint64_t> next(ways.size(), 0);
        for (std::size_t t = 0; t < ways.size(); ++t) {
            if (ways[t] == 0) continue;
            for (int s = 1; s <= n; ++s) {
                const std::size_t nt = t + static_cast<std::size_t>(s);
                if (nt >= next.size()) break;
                next[nt] = sat_add(next[nt], sat_mul(ways[t], binomial_u64(n, s)));
            }
        }
        ways = std::move(next);
    }
    const long long target = k + ens.count() - 1;
    if (target < 0 || target > total) return 0;
    return ways[static_cast<std::size_t>(target)];
}

double omega_tilde_k_multi(const MeasurementEnsemble& ens, long long k, std::uint64_t budget) {
    const long long n = ens.total_outcomes();
    if (k < 1 || k > n) {
        std::ostringstream os;
        os << "omega_tilde_k_multi: k = " << k << " outside [1, " << n << "]";
        throw std::invalid_argument(os.str());
    }
    if (k >= saturation_k(ens)) return 1.0;
    for (int count : ens.outcome_counts()) {
        if (count > 31) {
            std::ostringstream os;
            os << "omega_tilde_k_multi: a POVM with " << count
               << " elements is past the subset-mask limit of 31";
            throw BudgetError(os.str(), static_cast<std::uint64_t>(count), 31);
        }
    }

    const std::uint64_t required = count_subset_tuples(ens, k);
    if (required > budget) {
        std::ostringstream os;
        os << "omega_tilde_k_multi: k = " << k << " needs " << required
           << " norm evaluations, budget is " << budget;
        throw BudgetError(os.str(), required, budget);
    }

    MultiEnum enumerator(ens);
    double v = enumerator.run(static_cast<int>(k) + ens.count() - 1);
    v = std::min(v, 1.0);
    if (v > 1.0 - tol::saturation) v = 1.0;
    return v;
}

BoundSequence bound_sequence_multi(const MeasurementEnsemble& ens, std::uint64_t budget,
                                   bool short_circuit) {
    const long long n = ens.total_outcomes();
    if (n > 1'000'000) {
        std::ostringstream os;
        os << "bound_sequence_multi: joint outcome space of size " << n << " is past desk scale";
        throw BudgetError(os.str(), static_cast<std::uint64_t>(n), 1'000'000);
    }
    BoundSequence seq;
    seq.values.assign(static_cast<std::size_t>(n), 1.0);
    seq.exact.assign(static_cast<std::size_t>(n), false);
    seq.exact.back() = true;  // Omega_N = 1 by normalization

    double prev = 0.0;
    for (long long k = 1; k < n; ++k) {
        double v = omega_tilde_k_multi(ens, k, budget);
        v = std::max(v, prev);
        seq.values[static_cast<std::size_t>(k) - 1] = v;
        prev = v;
        if (short_circuit && v >= 1.0) {
            // Nondecreasing and capped at 1: the remaining entries are 1.
            break;
        }
    }
    return seq;
}

UncertaintyVector build_bound_vector_multi(const MeasurementEnsemble& ens, std::uint64_t budget) {
    return UncertaintyVector(bound_sequence_multi(ens, budget));
}

ProbVector joint_distribution(const DensityMatrix& rho, const MeasurementEnsemble& ens) {
    ProbVector joint = measure_povm(rho, ens.povm(0));
    for (int l = 1; l < ens.count(); ++l) {
        joint = tensor_product(joint, measure_povm(rho, ens.povm(l)));
    }
    return joint;
}

MajorizationReport verify_majorization_multi(const DensityMatrix& rho,
                                             const MeasurementEnsemble& ens,
                                             std::uint64_t budget) {
    return check_majorization(joint_distribution(rho, ens), build_bound_vector_multi(ens, budget));
}

std::array<OrthonormalBasis, 3> example1_bases() {
    const double s2 = 1.0 / std::sqrt(2.0);
    const double s3 = 1.0 / std::sqrt(3.0);
    const double s6 = 1.0 / std::sqrt(6.0);

    CMatrix b1 = CMatrix::Identity(4, 4);

    CMatrix b2 = CMatrix::Zero(4, 4);
    b2(0, 0) = 1.0;
    b2(2, 1) = s2;
    b2(3, 1) = s2;
    b2(1, 2) = s3;
    b2(2, 2) = s3;
    b2(3, 2) = -s3;
    b2(1, 3) = 2.0 * s6;
    b2(2, 3) = -s6;
    b2(3, 3) = s6;

    CMatrix b3 = CMatrix::Zero(4, 4);
    b3(2, 0) = s2;
    b3(3, 0) = s2;
    b3(1, 1) = 1.0;
    b3(0, 2) = s3;
    b3(2, 2) = s3;
    b3(3, 2) = -s3;
    b3(0, 3) = 2.0 * s6;
    b3(2, 3) = -s6;
    b3(3, 3) = s6;

    return {OrthonormalBasis(std::move(b1)), OrthonormalBasis(std::move(b2)),
            OrthonormalBasis(std::move(b3))};
}

MeasurementEnsemble example1_ensemble() {
    const auto bases = example1_bases();
    return MeasurementEnsemble::from_bases({bases[0], bases[1], bases[2]});
}

int WeightedScheme::total() const {
    return std::accumulate(weights.begin(), weights.end(), 0);
}

void WeightedScheme::validate() const {
    if (weights.empty()) throw std::invalid_argument("WeightedScheme: empty");
    for (int w : weights) {
        if (w < 1) throw std::invalid_argument("WeightedScheme: weights must be positive integers");
    }
}

std::string WeightedScheme::t_display(int l) const {
    const int w = weights[static_cast<std::size_t>(l)];
    const int sum = total();
    const int g = std::gcd(w, sum);
    std::ostringstream os;
    os << (w / g) << "/" << (sum / g);
    return os.str();
}

double weighted_bound(const MeasurementEnsemble& ens, const WeightedScheme& scheme,
                      const UncertaintyMeasure& phi, std::uint64_t budget) {
    if (!phi.additive()) {
        throw std::invalid_argument("weighted_bound: measure '" + phi.name() +
                                    "' is not additive under tensor products");
    }
    if (static_cast<int>(scheme.weights.size()) != ens.count()) {
        throw std::invalid_argument("weighted_bound: scheme length differs from ensemble size");
    }
    std::vector<Povm> repeated;
    for (int l = 0; l < ens.count(); ++l) {
        for (int r = 0; r < scheme.weights[static_cast<std::size_t>(l)]; ++r) {
            repeated.push_back(ens.povm(l));
        }
    }
    const MeasurementEnsemble expanded(std::move(repeated));
    const UncertaintyVector omega = build_bound_vector_multi(expanded, budget);
    return phi(omega.sorted_prob()) / static_cast<double>(scheme.total());
}

}  // namespace uur

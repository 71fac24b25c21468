#include "uur/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "uur/rng.hpp"

namespace uur {

ProbVector::ProbVector(RVector components) : v_(std::move(components)) {
    if (v_.size() == 0) throw InvariantError("ProbVector: empty");
    for (Eigen::Index i = 0; i < v_.size(); ++i) {
        if (v_(i) < 0.0) {
            std::ostringstream os;
            os << "ProbVector: negative component " << v_(i) << " at " << i;
            throw InvariantError(os.str());
        }
    }
    const double sum = v_.sum();
    if (std::abs(sum - 1.0) > tol::prob_sum) {
        std::ostringstream os;
        os << "ProbVector: components sum to " << sum;
        throw InvariantError(os.str());
    }
}

ProbVector ProbVector::uniform(int d) {
    return ProbVector(RVector::Constant(d, 1.0 / static_cast<double>(d)));
}

ProbVector ProbVector::point_mass(int d) {
    RVector v = RVector::Zero(d);
    v(0) = 1.0;
    return ProbVector(std::move(v));
}

RVector ProbVector::sorted_descending() const {
    RVector s = v_;
    std::sort(s.data(), s.data() + s.size(), std::greater<double>());
    return s;
}

ProbVector tensor_product(const ProbVector& p, const ProbVector& q) {
    RVector out(static_cast<Eigen::Index>(p.size()) * q.size());
    Eigen::Index idx = 0;
    for (int i = 0; i < p.size(); ++i)
        for (int j = 0; j < q.size(); ++j) out(idx++) = p[i] * q[j];
    return ProbVector(std::move(out), ProbVector::Unchecked{});
}

namespace {

// Sorted-descending copies padded to a common length.
std::pair<RVector, RVector> sorted_padded(const ProbVector& x, const ProbVector& y) {
    const Eigen::Index n = std::max(x.size(), y.size());
    RVector xs = RVector::Zero(n);
    RVector ys = RVector::Zero(n);
    xs.head(x.size()) = x.sorted_descending();
    ys.head(y.size()) = y.sorted_descending();
    return {std::move(xs), std::move(ys)};
}

}  // namespace

RVector majorization_margins(const ProbVector& x, const ProbVector& y) {
    if (std::abs(x.values().sum() - y.values().sum()) > tol::prob_sum) {
        std::ostringstream os;
        os << "majorization: totals differ: " << x.values().sum() << " vs " << y.values().sum();
        throw InvariantError(os.str());
    }
    auto [xs, ys] = sorted_padded(x, y);
    RVector margins(xs.size());
    double cx = 0.0, cy = 0.0;
    for (Eigen::Index k = 0; k < xs.size(); ++k) {
        cx += xs(k);
        cy += ys(k);
        margins(k) = cy - cx;
    }
    return margins;
}

bool is_majorized_by(const ProbVector& x, const ProbVector& y) {
    const RVector margins = majorization_margins(x, y);
    return margins.minCoeff() >= -tol::majorization;
}

UncertaintyMeasure UncertaintyMeasure::shannon() { return {Kind::shannon, 1.0}; }

UncertaintyMeasure UncertaintyMeasure::renyi(double alpha) {
    if (!(alpha > 0.0) || alpha > 64.0) {
        std::ostringstream os;
        os << "renyi: alpha must be in (0,1) u (1,64], got " << alpha;
        throw std::invalid_argument(os.str());
    }
    return {Kind::renyi, alpha};
}

UncertaintyMeasure UncertaintyMeasure::min_entropy() { return {Kind::min_entropy, 0.0}; }

UncertaintyMeasure UncertaintyMeasure::neg_log_min_nonzero() {
    return {Kind::neg_log_min_nonzero, 0.0};
}

namespace {

double shannon_bits(const RVector& p) {
    double h = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (p(i) > 0.0) h -= p(i) * std::log2(p(i));
    }
    return h;
}

}  // namespace

double UncertaintyMeasure::apply(const ProbVector& p) const {
    const RVector& v = p.values();
    double out = 0.0;
    switch (kind_) {
        case Kind::shannon:
            out = shannon_bits(v);
            break;
        case Kind::renyi: {
            // Near alpha = 1 the closed form cancels badly; dispatch to the limit.
            if (std::abs(alpha_ - 1.0) <= 1e-6) {
                out = shannon_bits(v);
            } else {
                double s = 0.0;
                for (Eigen::Index i = 0; i < v.size(); ++i) {
                    if (v(i) > 0.0) s += std::pow(v(i), alpha_);
                }
                out = std::log2(s) / (1.0 - alpha_);
            }
            break;
        }
        case Kind::min_entropy:
            out = -std::log2(v.maxCoeff());
            break;
        case Kind::neg_log_min_nonzero: {
            double mn = 1.0;
            for (Eigen::Index i = 0; i < v.size(); ++i) {
                if (v(i) > tol::zero_component) mn = std::min(mn, v(i));
            }
            out = -std::log2(mn);
            break;
        }
    }
    return std::max(0.0, out);
}

std::string UncertaintyMeasure::name() const {
    switch (kind_) {
        case Kind::shannon: return "shannon";
        case Kind::renyi: {
            std::ostringstream os;
            os << "renyi:" << alpha_;
            return os.str();
        }
        case Kind::min_entropy: return "minentropy";
        case Kind::neg_log_min_nonzero: return "neglogmin";
    }
    return "?";
}

double apply_measure(const UncertaintyMeasure& phi, const ProbVector& p) { return phi.apply(p); }

RMatrix random_doubly_stochastic(int dim, int n_perms, std::uint64_t seed) {
    if (dim < 1) throw std::invalid_argument("random_doubly_stochastic: dim must be >= 1");
    if (n_perms < 1) throw std::invalid_argument("random_doubly_stochastic: n_perms must be >= 1");
    Rng rng(seed);

    // Uniform simplex weights: normalized exponentials.
    std::vector<double> w(static_cast<std::size_t>(n_perms));
    double total = 0.0;
    for (auto& wi : w) {
        wi = -std::log(1.0 - rng.uniform());
        total += wi;
    }

    RMatrix d = RMatrix::Zero(dim, dim);
    std::vector<int> perm(static_cast<std::size_t>(dim));
    for (int t = 0; t < n_perms; ++t) {
        std::iota(perm.begin(), perm.end(), 0);
        // Fisher-Yates with the shared engine (uniform over permutations).
        for (int i = dim - 1; i > 0; --i) {
            const auto j = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(i) + 1));
            std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
        }
        const double wt = w[static_cast<std::size_t>(t)] / total;
        for (int i = 0; i < dim; ++i) d(perm[static_cast<std::size_t>(i)], i) += wt;
    }
    return d;
}

}  // namespace uur

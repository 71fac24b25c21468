#include "uur/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <ostream>
#include <sstream>

#include "uur/experiments.hpp"
#include "uur/io.hpp"
#include "uur/oracle.hpp"
#include "uur/quantum.hpp"
#include "uur/rng.hpp"

namespace uur {

namespace {

// Tolerances fixed by the release contract.
constexpr double kOracleRelTol = 1e-4;
constexpr double kNeverExceed = 1e-9;
constexpr double kAlgebraicTol = 1e-12;
constexpr double kSlack = tol::majorization;  // 1e-9
constexpr double kExample1Tol = 5e-3;
constexpr double kProbeTol = 1e-3;
constexpr double kGradientRelTol = 1e-5;
constexpr double kGradientStep = 1e-6;

struct Check {
    bool ok = true;
    std::string detail;

    void fail(const std::string& msg) {
        if (ok) detail = msg;
        ok = false;
    }
};

/// Rank-r projector onto the first r columns of a Haar unitary.
CMatrix random_projector(int d, int rank, Rng& rng) {
    const OrthonormalBasis u = haar_random_basis(d, rng);
    const CMatrix cols = u.matrix().leftCols(rank);
    return cols * cols.adjoint();
}

double relative_error(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

// --- criterion 1: product-maximum equality on random projector pairs ------

Check criterion_theorem_equality(std::uint64_t seed) {
    constexpr int kPairs = 200;
    std::vector<std::string> failures(kPairs);
    detail::parallel_for(kPairs, [&](long long i) {
        const int d = 2 + static_cast<int>(i % 5);
        Rng rng(derive_seed(seed, 1000 + static_cast<std::uint64_t>(i)));
        const int rank_a = 1 + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(d - 1)));
        const int rank_b = 1 + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(d - 1)));
        const HermitianOperator a(random_projector(d, rank_a, rng));
        const HermitianOperator b(random_projector(d, rank_b, rng));

        const double norm = operator_norm_psd(HermitianOperator(a.matrix() + b.matrix()));
        const double closed = 0.25 * norm * norm;

        OptimizerConfig cfg;
        cfg.restarts = 16;
        cfg.seed = derive_seed(seed, 5000 + static_cast<std::uint64_t>(i));
        const AscentResult result = max_product_pure(a, b, cfg);

        std::ostringstream os;
        if (result.value > closed + kNeverExceed) {
            os << "pair " << i << ": ascent value " << result.value << " exceeds closed form "
               << closed;
            failures[static_cast<std::size_t>(i)] = os.str();
        } else if (relative_error(result.value, closed) > kOracleRelTol) {
            os << "pair " << i << " (d=" << d << ", ranks " << rank_a << "/" << rank_b
               << "): ascent " << result.value << " vs closed " << closed;
            failures[static_cast<std::size_t>(i)] = os.str();
        }
    });
    Check check;
    int bad = 0;
    for (const auto& f : failures) {
        if (!f.empty()) {
            ++bad;
            if (check.ok) check.fail(f);
        }
    }
    if (check.ok) {
        check.detail = "200 projector pairs, d in 2..6, within 1e-4 relative";
    } else {
        check.detail = std::to_string(bad) + " of 200 pairs off; first: " + check.detail;
    }
    return check;
}

// --- criterion 2: two-basis universality ----------------------------------

Check criterion_pair_universality(std::uint64_t seed) {
    Check check;
    std::ostringstream detail;
    for (int d = 2; d <= 6; ++d) {
        ExperimentConfig cfg;
        cfg.dim = d;
        cfg.trials = 10000;
        cfg.seed = derive_seed(seed, 100 + static_cast<std::uint64_t>(d));
        const VerifySummary summary = run_verify_pair(cfg);
        detail << "d=" << d << ": " << summary.violations << " violations, worst margin "
               << summary.worst_margin << "; ";
        if (summary.violations != 0) {
            check.fail("d=" + std::to_string(d) + " has " + std::to_string(summary.violations) +
                       " violations");
        }
    }
    if (check.ok) check.detail = detail.str();
    return check;
}

// --- criterion 3: L-POVM universality --------------------------------------

Check criterion_multi_universality(std::uint64_t seed) {
    Check check;
    ExperimentConfig cfg;
    cfg.trials = 1000;
    cfg.seed = derive_seed(seed, 300);
    const VerifySummary ex1 = run_verify_ensemble(cfg, example1_ensemble());
    if (ex1.violations != 0) {
        check.fail("pairwise-trivial ensemble: " + std::to_string(ex1.violations) + " violations");
    }

    constexpr long long kTrials = 1000;
    std::vector<double> margins(kTrials, 0.0);
    detail::parallel_for(kTrials, [&](long long t) {
        Rng rng(derive_seed(seed, 400000 + static_cast<std::uint64_t>(t)));
        const MeasurementEnsemble ens = MeasurementEnsemble::from_bases(
            {haar_random_basis(3, rng), haar_random_basis(3, rng), haar_random_basis(3, rng)});
        const int rank = 1 + static_cast<int>(rng.uniform_int(3));
        const DensityMatrix rho = random_density(3, rank, rng);
        margins[static_cast<std::size_t>(t)] = verify_majorization_multi(rho, ens).min_margin;
    });
    const double worst = *std::min_element(margins.begin(), margins.end());
    if (worst < -kSlack) {
        check.fail("random d=3 triples: worst margin " + format_double(worst));
    }
    if (check.ok) {
        check.detail = "1000 trials on the pairwise-trivial ensemble and 1000 random d=3 triples; worst triple margin " +
                       format_double(worst);
    }
    return check;
}

// --- criterion 5: closed forms vs enumeration vs oracle ---------------------

Check criterion_k12_exactness(std::uint64_t seed) {
    Check check;
    int pair_index = 0;
    for (int d = 2; d <= 6 && check.ok; ++d) {
        for (int rep = 0; rep < 20 && check.ok; ++rep, ++pair_index) {
            Rng rng(derive_seed(seed, 7000 + static_cast<std::uint64_t>(pair_index)));
            const OrthonormalBasis a = haar_random_basis(d, rng);
            const OrthonormalBasis b = haar_random_basis(d, rng);
            const double e1 = omega1_exact(a, b);
            const double e2 = omega2_exact(a, b);
            const double t1 = omega_tilde_k(a, b, 1);
            const double t2 = omega_tilde_k(a, b, 2);
            if (std::abs(e1 - t1) > kAlgebraicTol || std::abs(e2 - t2) > kAlgebraicTol) {
                std::ostringstream os;
                os << "d=" << d << " rep=" << rep << ": |e1-t1|=" << std::abs(e1 - t1)
                   << ", |e2-t2|=" << std::abs(e2 - t2);
                check.fail(os.str());
            }
        }
    }
    if (!check.ok) return check;

    // Oracle agreement at desk scale.
    for (int d = 2; d <= 4 && check.ok; ++d) {
        for (int rep = 0; rep < 3 && check.ok; ++rep) {
            Rng rng(derive_seed(seed, 7500 + static_cast<std::uint64_t>(10 * d + rep)));
            const OrthonormalBasis a = haar_random_basis(d, rng);
            const OrthonormalBasis b = haar_random_basis(d, rng);
            OptimizerConfig cfg;
            cfg.restarts = 12;
            cfg.seed = derive_seed(seed, 7600 + static_cast<std::uint64_t>(10 * d + rep));
            for (int k = 1; k <= 2; ++k) {
                const double closed = (k == 1) ? omega1_exact(a, b) : omega2_exact(a, b);
                const double oracle = omega_k_oracle(a, b, k, cfg);
                if (relative_error(oracle, closed) > kOracleRelTol) {
                    std::ostringstream os;
                    os << "oracle d=" << d << " k=" << k << ": " << oracle << " vs closed "
                       << closed;
                    check.fail(os.str());
                }
            }
        }
    }
    if (check.ok) {
        check.detail = "100 pairs at 1e-12; oracle within 1e-4 relative for d <= 4";
    }
    return check;
}

// --- criterion 6: min-entropy recovery --------------------------------------

Check criterion_mu_recovery(std::uint64_t seed) {
    Check check;
    for (int i = 0; i < 40 && check.ok; ++i) {
        const int d = 2 + (i % 5);
        Rng rng(derive_seed(seed, 8000 + static_cast<std::uint64_t>(i)));
        const OrthonormalBasis a = haar_random_basis(d, rng);
        const OrthonormalBasis b = haar_random_basis(d, rng);
        const double c = overlap_stats(a, b).c;
        const double lhs = -std::log2(omega1_exact(a, b));
        const double rhs = -2.0 * std::log2((1.0 + c) / 2.0);
        if (std::abs(lhs - rhs) > kAlgebraicTol) {
            std::ostringstream os;
            os << "identity off by " << std::abs(lhs - rhs) << " at d=" << d << " i=" << i;
            check.fail(os.str());
        }
    }
    if (!check.ok) return check;

    for (int d = 2; d <= 6 && check.ok; ++d) {
        const OrthonormalBasis a = computational_basis(d);
        const OrthonormalBasis b = fourier_basis(d);
        const double c = overlap_stats(a, b).c;
        const UncertaintyVector omega = build_bound_vector(a, b);
        const double omega1 = bound_sequence(a, b).value(1);
        if (std::abs(omega.sorted()(0) - omega1) > kAlgebraicTol) {
            check.fail("d=" + std::to_string(d) + ": largest component is not Omega~_1");
            break;
        }
        const double min_entropy = UncertaintyMeasure::min_entropy()(omega.sorted_prob());
        const double rhs = -2.0 * std::log2((1.0 + c) / 2.0);
        if (std::abs(min_entropy - rhs) > kAlgebraicTol) {
            std::ostringstream os;
            os << "MUB d=" << d << ": min-entropy " << min_entropy << " vs " << rhs;
            check.fail(os.str());
        }
    }
    if (check.ok) check.detail = "identity on 40 random pairs; min-entropy match on MUB pairs d=2..6";
    return check;
}

// --- criterion 7: Schur-concavity suite -------------------------------------

ProbVector random_prob(int dim, Rng& rng) {
    RVector v(dim);
    double sum = 0.0;
    for (int i = 0; i < dim; ++i) {
        v(i) = -std::log(1.0 - rng.uniform());
        sum += v(i);
    }
    v /= sum;
    return ProbVector(std::move(v));
}

Check criterion_schur_suite(std::uint64_t seed) {
    Check check;
    const std::vector<UncertaintyMeasure> concave = {
        UncertaintyMeasure::shannon(), UncertaintyMeasure::renyi(2.0),
        UncertaintyMeasure::renyi(0.5), UncertaintyMeasure::min_entropy()};
    const std::vector<UncertaintyMeasure> all = {
        UncertaintyMeasure::shannon(), UncertaintyMeasure::renyi(2.0),
        UncertaintyMeasure::renyi(0.5), UncertaintyMeasure::min_entropy(),
        UncertaintyMeasure::neg_log_min_nonzero()};

    std::uint64_t stream = 0;
    for (int dim = 2; dim <= 8 && check.ok; ++dim) {
        for (int t = 0; t < 1000 && check.ok; ++t) {
            Rng rng(derive_seed(seed, 900000 + stream++));
            const ProbVector p = random_prob(dim, rng);
            const int n_perms = 1 + static_cast<int>(rng.uniform_int(4));
            const RMatrix d = random_doubly_stochastic(dim, n_perms, derive_seed(seed, 950000 + stream));
            const ProbVector mixed(d * p.values());
            for (const auto& phi : concave) {
                if (phi(mixed) < phi(p) - kSlack) {
                    std::ostringstream os;
                    os << phi.name() << " drops under mixing at dim " << dim << " trial " << t;
                    check.fail(os.str());
                }
            }
            const RMatrix perm = random_doubly_stochastic(dim, 1, derive_seed(seed, 980000 + stream));
            const ProbVector permuted(perm * p.values());
            for (const auto& phi : all) {
                if (std::abs(phi(permuted) - phi(p)) > kAlgebraicTol) {
                    std::ostringstream os;
                    os << phi.name() << " not permutation-invariant at dim " << dim;
                    check.fail(os.str());
                }
            }
        }
    }
    if (check.ok) {
        check.detail =
            "shannon/renyi-2/renyi-0.5/minentropy monotone under mixing, dims 2-8, 1000 trials "
            "each; permutation invariance holds for all kinds incl. neglogmin";
    }
    return check;
}

// --- criterion 8: two-POVM reduction ----------------------------------------

Check criterion_l2_reduction(std::uint64_t seed) {
    Check check;
    for (int d = 2; d <= 4 && check.ok; ++d) {
        for (int rep = 0; rep < 50 && check.ok; ++rep) {
            Rng rng(derive_seed(seed, 10000 + static_cast<std::uint64_t>(100 * d + rep)));
            const OrthonormalBasis a = haar_random_basis(d, rng);
            const OrthonormalBasis b = haar_random_basis(d, rng);
            const BoundSequence pair = bound_sequence(a, b);
            const BoundSequence multi =
                bound_sequence_multi(MeasurementEnsemble::from_bases({a, b}));
            for (std::size_t k = 0; k < pair.values.size(); ++k) {
                if (std::abs(pair.values[k] - multi.values[k]) > kAlgebraicTol) {
                    std::ostringstream os;
                    os << "d=" << d << " rep=" << rep << " k=" << (k + 1) << ": pair "
                       << pair.values[k] << " vs multi " << multi.values[k];
                    check.fail(os.str());
                    break;
                }
            }
        }
    }
    if (check.ok) check.detail = "50 random pairs per d in {2,3,4}, all k within 1e-12";
    return check;
}

// --- criterion 9: conjecture probe ------------------------------------------

Check criterion_probe(std::uint64_t seed) {
    Check check;
    OptimizerConfig cfg;
    cfg.restarts = 16;
    cfg.seed = derive_seed(seed, 11000);

    const ConjectureProbe p21 = mub_conjecture_probe(2, 1, cfg);
    if (std::abs(p21.oracle_value - p21.conjectured_value) > kProbeTol) {
        std::ostringstream os;
        os << "(d,k)=(2,1): oracle " << p21.oracle_value << " vs " << p21.conjectured_value;
        check.fail(os.str());
    }
    for (const auto& [d, k] : std::vector<std::pair<int, int>>{{2, 2}, {3, 3}}) {
        const ConjectureProbe probe = mub_conjecture_probe(d, k, cfg);
        if (probe.oracle_value != 1.0 || probe.conjectured_value != 1.0) {
            std::ostringstream os;
            os << "(d,k)=(" << d << "," << k << "): oracle " << format_double(probe.oracle_value)
               << ", conjectured " << format_double(probe.conjectured_value) << ", expected exact 1";
            check.fail(os.str());
        }
    }
    if (check.ok) check.detail = "(2,1) within 1e-3; (2,2) and (3,3) exactly 1";
    return check;
}

// --- criterion 10: gradient check -------------------------------------------

double fd_relative_error_pure(const CMatrix& a, const CMatrix& b, const CVector& x) {
    const CVector g = pure_product_gradient(a, b, x);
    RVector analytic(2 * x.size()), fd(2 * x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        analytic(2 * i) = 2.0 * g(i).real();
        analytic(2 * i + 1) = 2.0 * g(i).imag();
        CVector xp = x, xm = x;
        xp(i) += kGradientStep;
        xm(i) -= kGradientStep;
        fd(2 * i) = (pure_product_objective(a, b, xp) - pure_product_objective(a, b, xm)) /
                    (2.0 * kGradientStep);
        xp = x; xm = x;
        xp(i) += Complex(0.0, kGradientStep);
        xm(i) -= Complex(0.0, kGradientStep);
        fd(2 * i + 1) = (pure_product_objective(a, b, xp) - pure_product_objective(a, b, xm)) /
                        (2.0 * kGradientStep);
    }
    return (analytic - fd).norm() / std::max(analytic.norm(), 1e-12);
}

double fd_relative_error_subset(const MeasurementEnsemble& ens,
                                const std::vector<std::vector<int>>& subset, const CMatrix& m) {
    const CMatrix g = subset_objective_gradient(ens, subset, m);
    const auto n = static_cast<Eigen::Index>(m.size());
    RVector analytic(2 * n), fd(2 * n);
    Eigen::Index at = 0;
    for (Eigen::Index col = 0; col < m.cols(); ++col) {
        for (Eigen::Index row = 0; row < m.rows(); ++row, ++at) {
            analytic(2 * at) = 2.0 * g(row, col).real();
            analytic(2 * at + 1) = 2.0 * g(row, col).imag();
            CMatrix mp = m, mm = m;
            mp(row, col) += kGradientStep;
            mm(row, col) -= kGradientStep;
            fd(2 * at) = (subset_objective(ens, subset, mp) - subset_objective(ens, subset, mm)) /
                         (2.0 * kGradientStep);
            mp = m; mm = m;
            mp(row, col) += Complex(0.0, kGradientStep);
            mm(row, col) -= Complex(0.0, kGradientStep);
            fd(2 * at + 1) =
                (subset_objective(ens, subset, mp) - subset_objective(ens, subset, mm)) /
                (2.0 * kGradientStep);
        }
    }
    return (analytic - fd).norm() / std::max(analytic.norm(), 1e-12);
}

Check criterion_gradients(std::uint64_t seed) {
    Check check;
    double worst = 0.0;
    for (int i = 0; i < 50 && check.ok; ++i) {
        const int d = 2 + (i % 4);
        Rng rng(derive_seed(seed, 12000 + static_cast<std::uint64_t>(i)));
        const int rank_a = 1 + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(d - 1)));
        const int rank_b = 1 + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(d - 1)));
        const CMatrix a = random_projector(d, rank_a, rng);
        const CMatrix b = random_projector(d, rank_b, rng);
        CVector x = rng.gaussian_vector(d);
        x /= x.norm();
        const double err = fd_relative_error_pure(a, b, x);
        worst = std::max(worst, err);
        if (err > kGradientRelTol) {
            check.fail("pure-state gradient point " + std::to_string(i) + ": relative error " +
                       format_double(err));
        }
    }
    for (int i = 0; i < 50 && check.ok; ++i) {
        const int d = 2 + (i % 2);
        Rng rng(derive_seed(seed, 13000 + static_cast<std::uint64_t>(i)));
        const int l_count = 2 + static_cast<int>(i % 2);
        std::vector<OrthonormalBasis> bases;
        for (int l = 0; l < l_count; ++l) bases.push_back(haar_random_basis(d, rng));
        const MeasurementEnsemble ens = MeasurementEnsemble::from_bases(bases);
        const int k = 1 + static_cast<int>(rng.uniform_int(2));
        std::vector<std::vector<int>> subset;
        for (int t = 0; t < k; ++t) {
            std::vector<int> tuple;
            for (int l = 0; l < l_count; ++l)
                tuple.push_back(static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(d))));
            if (std::find(subset.begin(), subset.end(), tuple) == subset.end())
                subset.push_back(tuple);
        }
        CMatrix m = rng.ginibre(d, d);
        m /= m.norm();
        const double err = fd_relative_error_subset(ens, subset, m);
        worst = std::max(worst, err);
        if (err > kGradientRelTol) {
            check.fail("density gradient point " + std::to_string(i) + ": relative error " +
                       format_double(err));
        }
    }
    if (check.ok) check.detail = "100 points, worst relative error " + format_double(worst);
    return check;
}

}  // namespace

namespace acceptance {

bool check_example1(const MeasurementEnsemble& ens, std::string& detail, std::uint64_t budget) {
    const BoundSequence seq = bound_sequence_multi(ens, budget);
    const UncertaintyVector omega(seq);
    std::ostringstream os;
    os << "Omega~_1 = " << format_double(seq.value(1)) << ", omega = ("
       << format_double(omega.raw()(0)) << ", " << format_double(omega.raw()(1)) << ", 0, ...)";
    detail = os.str();
    if (std::abs(seq.value(1) - 0.78) > kExample1Tol) return false;
    RVector target = RVector::Zero(omega.size());
    target(0) = 0.78;
    target(1) = 0.22;
    return (omega.raw() - target).cwiseAbs().maxCoeff() <= kExample1Tol;
}

}  // namespace acceptance

std::vector<CriterionResult> run_acceptance(std::ostream& out, std::uint64_t seed) {
    std::vector<CriterionResult> results;
    auto run = [&](int id, const std::string& name, auto&& fn) {
        CriterionResult r;
        r.id = id;
        r.name = name;
        try {
            const Check check = fn();
            r.passed = check.ok;
            r.detail = check.detail;
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("exception: ") + e.what();
        }
        out << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << ". " << r.name << ": " << r.detail
            << "\n";
        out.flush();
        results.push_back(std::move(r));
    };

    run(1, "product-maximum equality on projector pairs",
        [&] { return criterion_theorem_equality(seed); });
    run(2, "two-basis majorization universality", [&] { return criterion_pair_universality(seed); });
    run(3, "multi-POVM majorization universality",
        [&] { return criterion_multi_universality(seed); });
    run(4, "pairwise-trivial ensemble reproduction", [&] {
        Check check;
        std::string detail;
        if (!acceptance::check_example1(example1_ensemble(), detail)) check.fail(detail);
        check.detail = detail;
        return check;
    });
    run(5, "closed forms match enumeration and oracle at k = 1, 2",
        [&] { return criterion_k12_exactness(seed); });
    run(6, "min-entropy bound recovery", [&] { return criterion_mu_recovery(seed); });
    run(7, "Schur-concavity and permutation invariance",
        [&] { return criterion_schur_suite(seed); });
    run(8, "two-POVM pipeline reduces to the two-basis pipeline",
        [&] { return criterion_l2_reduction(seed); });
    run(9, "MUB probe anchors", [&] { return criterion_probe(seed); });
    run(10, "analytic gradients match finite differences",
        [&] { return criterion_gradients(seed); });
    return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
    for (const auto& r : results) {
        if (!r.passed) return false;
    }
    return true;
}

}  // namespace uur

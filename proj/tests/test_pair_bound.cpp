#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cmath>

#include "test_helpers.hpp"
#include "uur/oracle.hpp"
#include "uur/pair_bound.hpp"

using namespace uur;

namespace {

constexpr double kMub2Omega1 = 0.7285533905932737;  // 1/4 (1 + 1/sqrt(2))^2

OrthonormalBasis mub2_partner() { return fourier_basis(2); }

}  // namespace

TEST_CASE("overlap stats on known pairs") {
    const OrthonormalBasis comp = computational_basis(2);
    const OverlapStats mub = overlap_stats(comp, mub2_partner());
    CHECK(mub.c == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(mub.c_prime == doctest::Approx(1.0).epsilon(1e-14));

    const OverlapStats same = overlap_stats(comp, comp);
    CHECK(same.c == doctest::Approx(1.0));
    CHECK(same.c_prime == doctest::Approx(1.0));

    Rng rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const int d = 2 + static_cast<int>(rng.uniform_int(5));
        const OverlapStats s = overlap_stats(haar_random_basis(d, rng), haar_random_basis(d, rng));
        CHECK(s.c >= 1.0 / std::sqrt(static_cast<double>(d)) - 1e-12);
        CHECK(s.c <= 1.0 + 1e-12);
        CHECK(s.c_prime >= s.c - 1e-12);
        CHECK(s.c_prime <= std::sqrt(1.0 + s.c * s.c) + 1e-12);
    }
}

TEST_CASE("omega1 closed form") {
    const OrthonormalBasis comp = computational_basis(2);
    CHECK(omega1_exact(comp, comp) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(omega1_exact(comp, mub2_partner()) == doctest::Approx(kMub2Omega1).epsilon(1e-14));
    for (int d = 2; d <= 6; ++d) {
        const double c = 1.0 / std::sqrt(static_cast<double>(d));
        CHECK(omega1_exact(computational_basis(d), fourier_basis(d)) ==
              doctest::Approx(0.25 * (1.0 + c) * (1.0 + c)).epsilon(1e-14));
    }
}

TEST_CASE("omega2 closed form") {
    const OrthonormalBasis comp = computational_basis(2);
    CHECK(omega2_exact(comp, mub2_partner()) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(omega2_exact(comp, comp) == doctest::Approx(1.0).epsilon(1e-14));
    // d=3 Fourier: two squared overlaps of 1/3 -> 1/4 (1 + sqrt(2/3))^2
    CHECK(omega2_exact(computational_basis(3), fourier_basis(3)) ==
          doctest::Approx(0.8249149571305296).epsilon(1e-13));
}

TEST_CASE("omega_tilde_k matches the closed forms at k = 1, 2") {
    Rng rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const int d = 2 + static_cast<int>(rng.uniform_int(5));
        const OrthonormalBasis a = haar_random_basis(d, rng);
        const OrthonormalBasis b = haar_random_basis(d, rng);
        CHECK(std::abs(omega_tilde_k(a, b, 1) - omega1_exact(a, b)) <= 1e-12);
        CHECK(std::abs(omega_tilde_k(a, b, 2) - omega2_exact(a, b)) <= 1e-12);
    }
}

TEST_CASE("omega_tilde_k saturates at k >= d and rejects bad k") {
    Rng rng(12);
    const OrthonormalBasis a = haar_random_basis(4, rng);
    const OrthonormalBasis b = haar_random_basis(4, rng);
    for (int k = 4; k <= 16; ++k) CHECK(omega_tilde_k(a, b, k) == 1.0);
    CHECK_THROWS_AS(omega_tilde_k(a, b, 0), std::invalid_argument);
    CHECK_THROWS_AS(omega_tilde_k(a, haar_random_basis(5, rng), 1), std::invalid_argument);
}

TEST_CASE("enumeration refuses dimensions past the exact-search guarantee") {
    Rng rng(13);
    const OrthonormalBasis a = haar_random_basis(9, rng);
    const OrthonormalBasis b = haar_random_basis(9, rng);
    CHECK_THROWS_AS(omega_tilde_k(a, b, 3), BudgetError);
    CHECK_THROWS_AS(bound_sequence(a, b), BudgetError);
}

TEST_CASE("enumerated bound dominates arbitrary feasible subset pairs") {
    // The bound is only valid as a true maximum: random feasible (R, S)
    // candidates must never beat it.
    Rng rng(140);
    for (int trial = 0; trial < 25; ++trial) {
        const int d = 4 + static_cast<int>(rng.uniform_int(3));  // 4..6
        const OrthonormalBasis a = haar_random_basis(d, rng);
        const OrthonormalBasis b = haar_random_basis(d, rng);
        const int k = 3 + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(d - 3)));
        const double bound = omega_tilde_k(a, b, k);
        for (int probe = 0; probe < 40; ++probe) {
            // random sizes r + s = k + 1, random masks of those sizes
            const int r = 1 + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(
                                  std::min(d, k))));
            const int s = k + 1 - r;
            if (s < 1 || s > d) continue;
            auto random_mask = [&](int count) {
                unsigned mask = 0;
                while (std::popcount(mask) < count)
                    mask |= 1u << rng.uniform_int(static_cast<std::uint64_t>(d));
                return mask;
            };
            const double norm =
                detail::projector_sum_norm(a, b, random_mask(r), random_mask(s));
            CHECK(0.25 * norm * norm <= bound + 1e-10);
        }
    }
}

TEST_CASE("singleton fast path equals the eigensolver norm") {
    Rng rng(14);
    for (int trial = 0; trial < 30; ++trial) {
        const int d = 3 + static_cast<int>(rng.uniform_int(4));
        const OrthonormalBasis a = haar_random_basis(d, rng);
        const OrthonormalBasis b = haar_random_basis(d, rng);
        const RMatrix o = overlap_matrix(a, b);
        const int m = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(d)));
        // random nonempty subset mask over [d]
        const unsigned s_mask =
            1u + static_cast<unsigned>(rng.uniform_int((1u << d) - 1));
        const double fast = detail::singleton_row_norm(o, m, s_mask);
        const double eig = detail::projector_sum_norm(a, b, 1u << m, s_mask);
        CHECK(fast == doctest::Approx(eig).epsilon(1e-10));
    }
}

TEST_CASE("bound sequence is nondecreasing and exact where promised") {
    Rng rng(15);
    for (int trial = 0; trial < 10; ++trial) {
        const int d = 2 + static_cast<int>(rng.uniform_int(5));
        const OrthonormalBasis a = haar_random_basis(d, rng);
        const OrthonormalBasis b = haar_random_basis(d, rng);
        const BoundSequence seq = bound_sequence(a, b);
        REQUIRE(seq.size() == d * d);
        for (int k = 2; k <= seq.size(); ++k) {
            CHECK(seq.value(k) >= seq.value(k - 1));
            CHECK(seq.value(k) <= 1.0);
        }
        CHECK(seq.value(d) == 1.0);
        CHECK(seq.exact[0]);
        CHECK(seq.exact[1]);
        CHECK(seq.value(1) == doctest::Approx(omega1_exact(a, b)).epsilon(1e-14));
        CHECK(seq.value(2) == doctest::Approx(omega2_exact(a, b)).epsilon(1e-14));
    }
}

TEST_CASE("bound vector for identical bases and the d=2 MUB pair") {
    const OrthonormalBasis comp = computational_basis(2);
    const UncertaintyVector trivial = build_bound_vector(comp, comp);
    CHECK(trivial.raw()(0) == doctest::Approx(1.0));
    CHECK(trivial.raw().tail(3).cwiseAbs().maxCoeff() <= 1e-14);

    const UncertaintyVector mub = build_bound_vector(comp, mub2_partner());
    CHECK(mub.raw()(0) == doctest::Approx(kMub2Omega1).epsilon(1e-14));
    CHECK(mub.raw()(1) == doctest::Approx(1.0 - kMub2Omega1).epsilon(1e-13));
    CHECK(mub.raw()(2) == 0.0);
    CHECK(mub.raw()(3) == 0.0);
    CHECK(mub.raw().sum() == doctest::Approx(1.0).epsilon(1e-14));

    // Shannon bound of the pair, frozen regression anchor
    CHECK(UncertaintyMeasure::shannon()(mub.sorted_prob()) ==
          doctest::Approx(0.8435327794477916).epsilon(1e-12));
}

TEST_CASE("bound vector sums to one and is symmetric in the bases") {
    Rng rng(16);
    for (int trial = 0; trial < 20; ++trial) {
        const int d = 2 + static_cast<int>(rng.uniform_int(5));
        const OrthonormalBasis a = haar_random_basis(d, rng);
        const OrthonormalBasis b = haar_random_basis(d, rng);
        const UncertaintyVector ab = build_bound_vector(a, b);
        const UncertaintyVector ba = build_bound_vector(b, a);
        CHECK(std::abs(ab.raw().sum() - 1.0) <= 1e-12);
        CHECK(ab.raw().minCoeff() >= 0.0);
        CHECK((ab.raw() - ba.raw()).cwiseAbs().maxCoeff() <= 1e-12);
        // sorted view is a permutation of raw
        RVector r = ab.raw();
        std::sort(r.data(), r.data() + r.size(), std::greater<double>());
        CHECK((r - ab.sorted()).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("maassen-uffink values") {
    const OrthonormalBasis comp = computational_basis(2);
    CHECK(maassen_uffink_bound(comp, comp) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(maassen_uffink_bound(comp, mub2_partner()) == doctest::Approx(1.0).epsilon(1e-12));
    for (int d = 2; d <= 6; ++d) {
        CHECK(maassen_uffink_bound(computational_basis(d), fourier_basis(d)) ==
              doctest::Approx(std::log2(static_cast<double>(d))).epsilon(1e-12));
    }
}

TEST_CASE("min-entropy of the bound vector recovers the overlap bound") {
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const int d = 2 + static_cast<int>(rng.uniform_int(5));
        const OrthonormalBasis a = haar_random_basis(d, rng);
        const OrthonormalBasis b = haar_random_basis(d, rng);
        const double c = overlap_stats(a, b).c;
        const UncertaintyVector omega = build_bound_vector(a, b);
        const double omega1 = omega1_exact(a, b);
        CHECK(std::abs(-std::log2(omega1) - (-2.0 * std::log2((1.0 + c) / 2.0))) <= 1e-12);
        if (std::abs(omega.sorted()(0) - omega1) <= 1e-14) {
            const double hmin = UncertaintyMeasure::min_entropy()(omega.sorted_prob());
            CHECK(hmin == doctest::Approx(-2.0 * std::log2((1.0 + c) / 2.0)).epsilon(1e-12));
        }
    }
}

TEST_CASE("verify_majorization on aligned projector state") {
    const OrthonormalBasis comp = computational_basis(3);
    const DensityMatrix rho = DensityMatrix::pure(comp.vector(0));
    const MajorizationReport report = verify_majorization(rho, comp, comp);
    CHECK(report.ok);
    CHECK(std::abs(report.margins(0)) <= 1e-12);  // both sides are (1,0,...)
}

TEST_CASE("verify_majorization over random states and bases") {
    Rng rng(18);
    for (int trial = 0; trial < 300; ++trial) {
        const int d = 2 + static_cast<int>(rng.uniform_int(5));
        const OrthonormalBasis a = haar_random_basis(d, rng);
        const OrthonormalBasis b = haar_random_basis(d, rng);
        const int rank = 1 + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(d)));
        const DensityMatrix rho = random_density(d, rank, rng);
        const MajorizationReport report = verify_majorization(rho, a, b);
        CHECK(report.ok);
        // cross-check against the brute-force oracle
        const ProbVector joint = tensor_product(measure_basis(rho, a), measure_basis(rho, b));
        const UncertaintyVector omega = build_bound_vector(a, b);
        CHECK(test::brute_majorized_by(test::to_std(joint.values()), test::to_std(omega.raw())));
    }
}

TEST_CASE("the k=1 bound is tight at the explicit optimal state") {
    Rng rng(19);
    for (int trial = 0; trial < 10; ++trial) {
        const int d = 2 + static_cast<int>(rng.uniform_int(4));
        const OrthonormalBasis a = haar_random_basis(d, rng);
        const OrthonormalBasis b = haar_random_basis(d, rng);
        const OverlapStats stats = overlap_stats(a, b);
        const auto [m, n] = stats.argmax_c;
        const StateVector x = optimal_product_state(a.vector(m), b.vector(n));
        const DensityMatrix rho = DensityMatrix::pure(x);
        const ProbVector joint = tensor_product(measure_basis(rho, a), measure_basis(rho, b));
        const UncertaintyVector omega = build_bound_vector(a, b);
        const MajorizationReport report = check_majorization(joint, omega);
        CHECK(report.ok);
        // the k=1 margin closes at the optimizer
        CHECK(report.margins(0) >= -1e-9);
        CHECK(report.margins(0) <= 1e-9);
    }
}

TEST_CASE("measure dominance follows from majorization") {
    Rng rng(20);
    const auto kinds = {UncertaintyMeasure::shannon(), UncertaintyMeasure::renyi(2.0),
                        UncertaintyMeasure::renyi(0.5), UncertaintyMeasure::min_entropy()};
    for (int trial = 0; trial < 100; ++trial) {
        const int d = 2 + static_cast<int>(rng.uniform_int(5));
        const OrthonormalBasis a = haar_random_basis(d, rng);
        const OrthonormalBasis b = haar_random_basis(d, rng);
        const DensityMatrix rho = random_density(d, d, rng);
        const ProbVector joint = tensor_product(measure_basis(rho, a), measure_basis(rho, b));
        const ProbVector omega = build_bound_vector(a, b).sorted_prob();
        for (const auto& phi : kinds) {
            CHECK(phi(joint) >= phi(omega) - 1e-9);
        }
    }
}

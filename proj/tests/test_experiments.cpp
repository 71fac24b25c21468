#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <cmath>

#include "test_helpers.hpp"
#include "uur/experiments.hpp"

using namespace uur;

TEST_CASE("parallel_for covers every index once and propagates errors") {
    std::vector<std::atomic<int>> hits(257);
    for (auto& h : hits) h = 0;
    detail::parallel_for(257, [&](long long i) { hits[static_cast<std::size_t>(i)]++; });
    for (const auto& h : hits) CHECK(h.load() == 1);

    CHECK_THROWS_AS(detail::parallel_for(64,
                                         [](long long i) {
                                             if (i == 13) throw std::runtime_error("boom");
                                         }),
                    std::runtime_error);
}

TEST_CASE("verify runs are deterministic and clean") {
    ExperimentConfig cfg;
    cfg.dim = 3;
    cfg.trials = 64;
    cfg.seed = 12345;

    std::vector<TrialRecord> rows1, rows2;
    const VerifySummary s1 = run_verify_pair(cfg, &rows1);
    const VerifySummary s2 = run_verify_pair(cfg, &rows2);
    CHECK(s1.violations == 0);
    CHECK(s1.trials == 64);
    CHECK(s1.violations == s2.violations);
    CHECK(s1.worst_margin == s2.worst_margin);
    CHECK(trial_csv(rows1) == trial_csv(rows2));  // byte-identical artifacts

    // different seed, different rows
    cfg.seed = 54321;
    std::vector<TrialRecord> rows3;
    run_verify_pair(cfg, &rows3);
    CHECK(trial_csv(rows1) != trial_csv(rows3));
}

TEST_CASE("ensemble verify is clean on the three-basis fixture") {
    ExperimentConfig cfg;
    cfg.trials = 50;
    cfg.seed = 7;
    std::vector<TrialRecord> rows;
    const VerifySummary summary = run_verify_ensemble(cfg, example1_ensemble(), &rows);
    CHECK(summary.violations == 0);
    REQUIRE(rows.size() == 50);
    const std::string csv = trial_csv(rows, false);
    CHECK(csv.rfind("trial,h_joint,h_bound,min_margin\n", 0) == 0);
    // bound entropy is a per-run constant
    CHECK(rows[0].h_bound == rows[49].h_bound);
}

TEST_CASE("figure3 rows satisfy the dominance and range conditions") {
    ExperimentConfig cfg;
    cfg.dim = 6;
    cfg.trials = 120;
    cfg.seed = 99;
    const Figure3Result result = run_figure3(cfg);
    CHECK(result.violations == 0);
    REQUIRE(result.rows.size() == 120);
    const double floor_c = 1.0 / std::sqrt(6.0);
    for (const TrialRecord& row : result.rows) {
        CHECK(row.c >= floor_c - 1e-12);
        CHECK(row.c <= 1.0 + 1e-12);
        CHECK(row.h_joint >= row.h_bound - 1e-9);
        CHECK(row.min_margin >= -1e-9);
    }
    CHECK(result.frac_bound_above_mu >= 0.0);
    CHECK(result.frac_bound_above_mu <= 1.0);

    // deterministic artifact
    const Figure3Result again = run_figure3(cfg);
    CHECK(trial_csv(result.rows) == trial_csv(again.rows));
}

TEST_CASE("figure3 csv header and layout") {
    ExperimentConfig cfg;
    cfg.dim = 2;
    cfg.trials = 3;
    cfg.seed = 5;
    const Figure3Result result = run_figure3(cfg);
    const std::string csv = trial_csv(result.rows);
    CHECK(csv.rfind("trial,c,h_joint,h_bound,mu_bound,min_margin\n", 0) == 0);
    // one header + 3 rows
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}

TEST_CASE("conjectured MUB vector construction") {
    const UncertaintyVector v = mub_conjectured_vector(3);
    REQUIRE(v.size() == 9);
    CHECK(v.raw()(0) ==
          doctest::Approx(0.25 * std::pow(1.0 + std::sqrt(1.0 / 3.0), 2)).epsilon(1e-14));
    CHECK(std::abs(v.raw().sum() - 1.0) <= 1e-12);
    // matches the computational/Fourier bound at k = 1 (proven case)
    const BoundSequence seq = bound_sequence(computational_basis(3), fourier_basis(3));
    CHECK(seq.value(1) == doctest::Approx(v.raw()(0)).epsilon(1e-12));
}

TEST_CASE("mub majorization rate is a probability and seed-stable") {
    const double rate = mub_majorization_rate(2, 200, 31);
    CHECK(rate >= 0.0);
    CHECK(rate <= 1.0);
    CHECK(rate == mub_majorization_rate(2, 200, 31));
}

TEST_CASE("mub table cells carry bound, conjecture and oracle where allowed") {
    OptimizerConfig cfg;
    cfg.restarts = 10;
    cfg.seed = 3;
    const auto cells = run_mub_table({2}, {1, 2}, cfg);
    REQUIRE(cells.size() == 2);
    CHECK(cells[0].bound == doctest::Approx(0.7285533905932737).epsilon(1e-13));
    CHECK(cells[0].conjectured == doctest::Approx(0.7285533905932737).epsilon(1e-13));
    REQUIRE(cells[0].oracle.has_value());
    CHECK(std::abs(*cells[0].oracle - cells[0].conjectured) <= 1e-3);
    CHECK(cells[1].bound == 1.0);
    CHECK(cells[1].conjectured == 1.0);

    // past desk scale the oracle cell is skipped with a note
    const auto big = run_mub_table({6}, {1}, cfg);
    REQUIRE(big.size() == 1);
    CHECK_FALSE(big[0].oracle.has_value());
    CHECK(big[0].note.find("desk scale") != std::string::npos);
}

TEST_CASE("default measures are the report set") {
    const auto measures = default_measures();
    REQUIRE(measures.size() == 3);
    CHECK(measures[0].name() == "shannon");
    CHECK(measures[1].name() == "renyi:2");
    CHECK(measures[2].name() == "minentropy");
}

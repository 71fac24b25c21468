#include "uur/experiments.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "uur/io.hpp"
#include "uur/quantum.hpp"
#include "uur/rng.hpp"

namespace uur {

namespace detail {

void parallel_for(long long n, const std::function<void(long long)>& fn) {
    if (n <= 0) return;
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const auto workers = static_cast<unsigned>(std::min<long long>(hw, n));
    if (workers <= 1) {
        for (long long i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<long long> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto body = [&]() {
        while (true) {
            const long long i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(n);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(body);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace detail

std::vector<UncertaintyMeasure> default_measures() {
    return {UncertaintyMeasure::shannon(), UncertaintyMeasure::renyi(2.0),
            UncertaintyMeasure::min_entropy()};
}

namespace {

struct TrialOutcome {
    TrialRecord record;
    bool violated = false;
};

std::vector<UncertaintyMeasure> effective_measures(const ExperimentConfig& cfg) {
    return cfg.measures.empty() ? default_measures() : cfg.measures;
}

/// Dominance check Phi(joint) >= Phi(omega) - slack for the Schur-concave
/// measures in the set.
bool measures_dominate(const std::vector<UncertaintyMeasure>& measures, const ProbVector& joint,
                       const ProbVector& omega) {
    for (const UncertaintyMeasure& phi : measures) {
        if (!phi.schur_concave()) continue;
        if (phi(joint) < phi(omega) - tol::majorization) return false;
    }
    return true;
}

VerifySummary summarize(const std::vector<TrialOutcome>& outcomes,
                        std::vector<TrialRecord>* rows) {
    VerifySummary summary;
    summary.trials = static_cast<long long>(outcomes.size());
    summary.worst_margin = std::numeric_limits<double>::infinity();
    if (rows) rows->reserve(outcomes.size());
    for (const TrialOutcome& out : outcomes) {
        summary.violations += out.violated ? 1 : 0;
        summary.worst_margin = std::min(summary.worst_margin, out.record.min_margin);
        if (rows) rows->push_back(out.record);
    }
    return summary;
}

}  // namespace

VerifySummary run_verify_pair(const ExperimentConfig& cfg, std::vector<TrialRecord>* rows) {
    const auto measures = effective_measures(cfg);
    const UncertaintyMeasure shannon = UncertaintyMeasure::shannon();
    std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(cfg.trials));

    detail::parallel_for(cfg.trials, [&](long long t) {
        Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(t)));
        const OrthonormalBasis a = haar_random_basis(cfg.dim, rng);
        const OrthonormalBasis b = haar_random_basis(cfg.dim, rng);
        const int rank = 1 + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(cfg.dim)));
        const DensityMatrix rho = random_density(cfg.dim, rank, rng);

        const ProbVector joint = tensor_product(measure_basis(rho, a), measure_basis(rho, b));
        const UncertaintyVector omega = build_bound_vector(a, b);
        const MajorizationReport report = check_majorization(joint, omega);
        const ProbVector omega_p = omega.sorted_prob();

        TrialOutcome& out = outcomes[static_cast<std::size_t>(t)];
        out.record.trial = t;
        out.record.c = overlap_stats(a, b).c;
        out.record.h_joint = shannon(joint);
        out.record.h_bound = shannon(omega_p);
        out.record.mu_bound = maassen_uffink_bound(a, b);
        out.record.min_margin = report.min_margin;
        out.violated = !report.ok || !measures_dominate(measures, joint, omega_p);
    });
    return summarize(outcomes, rows);
}

VerifySummary run_verify_ensemble(const ExperimentConfig& cfg, const MeasurementEnsemble& ens,
                                  std::vector<TrialRecord>* rows) {
    const auto measures = effective_measures(cfg);
    const UncertaintyMeasure shannon = UncertaintyMeasure::shannon();
    const UncertaintyVector omega = build_bound_vector_multi(ens, cfg.budget);
    const ProbVector omega_p = omega.sorted_prob();
    const double h_bound = shannon(omega_p);
    const int d = ens.dim();
    std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(cfg.trials));

    detail::parallel_for(cfg.trials, [&](long long t) {
        Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(t)));
        const int rank = 1 + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(d)));
        const DensityMatrix rho = random_density(d, rank, rng);
        const ProbVector joint = joint_distribution(rho, ens);
        const MajorizationReport report = check_majorization(joint, omega);

        TrialOutcome& out = outcomes[static_cast<std::size_t>(t)];
        out.record.trial = t;
        out.record.c = std::numeric_limits<double>::quiet_NaN();
        out.record.h_joint = shannon(joint);
        out.record.h_bound = h_bound;
        out.record.mu_bound = std::numeric_limits<double>::quiet_NaN();
        out.record.min_margin = report.min_margin;
        out.violated = !report.ok || !measures_dominate(measures, joint, omega_p);
    });
    return summarize(outcomes, rows);
}

Figure3Result run_figure3(const ExperimentConfig& cfg) {
    const UncertaintyMeasure shannon = UncertaintyMeasure::shannon();
    std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(cfg.trials));

    detail::parallel_for(cfg.trials, [&](long long t) {
        Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(t)));
        const OrthonormalBasis a = haar_random_basis(cfg.dim, rng);
        const OrthonormalBasis b = haar_random_basis(cfg.dim, rng);
        const DensityMatrix rho = DensityMatrix::pure(random_pure(cfg.dim, rng));

        const ProbVector joint = tensor_product(measure_basis(rho, a), measure_basis(rho, b));
        const UncertaintyVector omega = build_bound_vector(a, b);
        const MajorizationReport report = check_majorization(joint, omega);

        TrialOutcome& out = outcomes[static_cast<std::size_t>(t)];
        out.record.trial = t;
        out.record.c = overlap_stats(a, b).c;
        out.record.h_joint = shannon(joint);
        out.record.h_bound = shannon(omega.sorted_prob());
        out.record.mu_bound = maassen_uffink_bound(a, b);
        out.record.min_margin = report.min_margin;
        out.violated = !report.ok || out.record.h_joint < out.record.h_bound - tol::majorization;
    });

    Figure3Result result;
    result.rows.reserve(outcomes.size());
    long long above = 0, above_high = 0, above_low = 0, high = 0;
    for (const TrialOutcome& out : outcomes) {
        result.rows.push_back(out.record);
        result.violations += out.violated ? 1 : 0;
        const bool bound_wins = out.record.h_bound > out.record.mu_bound;
        above += bound_wins ? 1 : 0;
        if (out.record.c > 0.83) {
            ++high;
            above_high += bound_wins ? 1 : 0;
        } else {
            above_low += bound_wins ? 1 : 0;
        }
    }
    const auto n = static_cast<double>(cfg.trials);
    result.high_c_trials = high;
    result.frac_bound_above_mu = static_cast<double>(above) / n;
    result.frac_above_mu_high_c = high > 0 ? static_cast<double>(above_high) / static_cast<double>(high) : 0.0;
    result.frac_above_mu_low_c =
        (cfg.trials - high) > 0 ? static_cast<double>(above_low) / static_cast<double>(cfg.trials - high) : 0.0;
    return result;
}

std::string trial_csv(const std::vector<TrialRecord>& rows, bool pair_columns) {
    std::string out = pair_columns ? "trial,c,h_joint,h_bound,mu_bound,min_margin\n"
                                   : "trial,h_joint,h_bound,min_margin\n";
    for (const TrialRecord& r : rows) {
        out += std::to_string(r.trial);
        if (pair_columns) {
            out += ',';
            out += format_double(r.c);
        }
        out += ',';
        out += format_double(r.h_joint);
        out += ',';
        out += format_double(r.h_bound);
        if (pair_columns) {
            out += ',';
            out += format_double(r.mu_bound);
        }
        out += ',';
        out += format_double(r.min_margin);
        out += '\n';
    }
    return out;
}

std::vector<MubCell> run_mub_table(const std::vector<int>& dims, const std::vector<int>& ks,
                                   const OptimizerConfig& cfg) {
    std::vector<MubCell> cells;
    for (int d : dims) {
        const OrthonormalBasis comp = computational_basis(d);
        const OrthonormalBasis four = fourier_basis(d);
        const BoundSequence seq = bound_sequence(comp, four);
        for (int k : ks) {
            if (k > d * d) continue;
            MubCell cell;
            cell.d = d;
            cell.k = k;
            cell.bound = seq.value(k);
            const double root = std::sqrt(static_cast<double>(k) / static_cast<double>(d));
            cell.conjectured = std::min(1.0, 0.25 * (1.0 + root) * (1.0 + root));
            try {
                cell.oracle = omega_k_oracle(comp, four, k, cfg);
            } catch (const BudgetError& e) {
                cell.note = e.what();
            }
            cells.push_back(std::move(cell));
        }
    }
    return cells;
}

UncertaintyVector mub_conjectured_vector(int d) {
    BoundSequence seq;
    const auto n = static_cast<std::size_t>(d) * static_cast<std::size_t>(d);
    seq.values.assign(n, 1.0);
    seq.exact.assign(n, true);
    for (int k = 1; k < d; ++k) {
        const double root = std::sqrt(static_cast<double>(k) / static_cast<double>(d));
        seq.values[static_cast<std::size_t>(k) - 1] = 0.25 * (1.0 + root) * (1.0 + root);
    }
    return UncertaintyVector(seq);
}

double mub_majorization_rate(int d, long long trials, std::uint64_t seed) {
    const UncertaintyVector mub = mub_conjectured_vector(d);
    const ProbVector mub_p = mub.sorted_prob();
    std::vector<char> wins(static_cast<std::size_t>(trials), 0);
    detail::parallel_for(trials, [&](long long t) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        const OrthonormalBasis a = haar_random_basis(d, rng);
        const OrthonormalBasis b = haar_random_basis(d, rng);
        const UncertaintyVector omega = build_bound_vector(a, b);
        wins[static_cast<std::size_t>(t)] = is_majorized_by(mub_p, omega.sorted_prob()) ? 1 : 0;
    });
    long long count = 0;
    for (char w : wins) count += w;
    return static_cast<double>(count) / static_cast<double>(trials);
}

}  // namespace uur

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "uur/multi_bound.hpp"
#include "uur/oracle.hpp"
#include "uur/pair_bound.hpp"

namespace uur {

/// Shared Monte Carlo configuration. Trials use substreams derived from the
/// master seed, so serial and concurrent runs produce identical artifacts.
struct ExperimentConfig {
    int dim = 6;
    long long trials = 10000;
    std::uint64_t seed = 1;
    std::vector<UncertaintyMeasure> measures;  // empty = default report set
    std::uint64_t budget = kDefaultNormBudget;
};

/// Default report set: Shannon, Renyi-2, min-entropy.
std::vector<UncertaintyMeasure> default_measures();

struct TrialRecord {
    long long trial = 0;
    double c = 0.0;         // max basis overlap (pair experiments)
    double h_joint = 0.0;   // Shannon of p (x) q
    double h_bound = 0.0;   // Shannon of the bound vector
    double mu_bound = 0.0;  // Maassen-Uffink value (pair experiments)
    double min_margin = 0.0;
};

struct VerifySummary {
    long long trials = 0;
    long long violations = 0;  // majorization or measure-dominance failures
    double worst_margin = 0.0;
};

/// Random (rho, basis pair) draws per trial; checks the majorization
/// relation and Phi-dominance for every Schur-concave measure in the config.
VerifySummary run_verify_pair(const ExperimentConfig& cfg,
                              std::vector<TrialRecord>* rows = nullptr);

/// Fixed measurement ensemble, random rho per trial.
VerifySummary run_verify_ensemble(const ExperimentConfig& cfg, const MeasurementEnsemble& ens,
                                  std::vector<TrialRecord>* rows = nullptr);

struct Figure3Result {
    std::vector<TrialRecord> rows;
    long long violations = 0;
    double frac_bound_above_mu = 0.0;         // H(omega) > MU, all trials
    double frac_above_mu_high_c = 0.0;        // among trials with c > 0.83
    double frac_above_mu_low_c = 0.0;         // among trials with c <= 0.83
    long long high_c_trials = 0;
};

/// Random basis pairs and random pure states; per-trial records of c, the
/// Shannon joint entropy, the Shannon bound, and the Maassen-Uffink value.
Figure3Result run_figure3(const ExperimentConfig& cfg);

/// CSV with a fixed header; floats at 17 significant digits. `pair_columns`
/// selects the two-basis schema (with c and the Maassen-Uffink column).
std::string trial_csv(const std::vector<TrialRecord>& rows, bool pair_columns = true);

struct MubCell {
    int d = 0;
    int k = 0;
    double bound = 0.0;        // computed O~_k for (computational, Fourier)
    double conjectured = 0.0;  // 1/4 (1 + sqrt(k/d))^2
    std::optional<double> oracle;
    std::string note;          // budget message when the oracle is skipped
};

/// One row per (d, k): bound, conjectured value, oracle value where the
/// desk-scale budget allows.
std::vector<MubCell> run_mub_table(const std::vector<int>& dims, const std::vector<int>& ks,
                                   const OptimizerConfig& cfg);

/// Conjectured bound vector from Omega_k = 1/4 (1 + sqrt(k/d))^2.
UncertaintyVector mub_conjectured_vector(int d);

/// Fraction of random basis pairs whose computed bound vector majorizes the
/// conjectured MUB vector. A reported finding, never asserted.
double mub_majorization_rate(int d, long long trials, std::uint64_t seed);

namespace detail {
/// Deterministic helper: fn(i) for i in [0, n), work distributed over
/// hardware threads. fn must only touch slot i of shared outputs.
void parallel_for(long long n, const std::function<void(long long)>& fn);
}  // namespace detail

}  // namespace uur

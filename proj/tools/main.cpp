#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "uur/acceptance.hpp"
#include "uur/experiments.hpp"
#include "uur/io.hpp"
#include "uur/multi_bound.hpp"
#include "uur/oracle.hpp"
#include "uur/pair_bound.hpp"
#include "uur/quantum.hpp"
#include "uur/rng.hpp"

namespace {

// Exit codes, also documented in the README.
constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitParse = 2;
constexpr int kExitInvariant = 3;
constexpr int kExitBudget = 4;
constexpr int kExitAcceptance = 5;

using uur::format_double;

std::vector<uur::UncertaintyMeasure> measures_from(const std::vector<std::string>& names) {
    if (names.empty()) return uur::default_measures();
    std::vector<uur::UncertaintyMeasure> out;
    out.reserve(names.size());
    for (const auto& n : names) out.push_back(uur::parse_measure(n));
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
}

std::string join_values(const uur::RVector& v) {
    std::string out;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i) out += ' ';
        out += format_double(v(i));
    }
    return out;
}

std::string join_values(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ' ';
        out += format_double(v[i]);
    }
    return out;
}

// --- bound ------------------------------------------------------------------

struct BoundOptions {
    std::string input;
    std::string out;
    std::vector<std::string> measures;
    std::uint64_t budget = uur::kDefaultNormBudget;
};

void cmd_bound(const BoundOptions& opt) {
    const uur::MeasurementFile file = uur::parse_measurement_file_path(opt.input);
    const auto measures = measures_from(opt.measures);

    nlohmann::json json;
    json["dim"] = file.dim;

    uur::BoundSequence seq;
    std::cout << "dim: " << file.dim << "  measurements: " << file.measurements.size() << "\n";
    if (file.is_basis_pair()) {
        const auto [a, b] = file.basis_pair();
        const uur::OverlapStats stats = uur::overlap_stats(a, b);
        seq = uur::bound_sequence(a, b);
        const double mu = uur::maassen_uffink_bound(a, b);
        std::cout << "route: two orthonormal bases\n";
        std::cout << "c  = " << format_double(stats.c) << "  at (m,n) = (" << stats.argmax_c.first
                  << "," << stats.argmax_c.second << ")\n";
        std::cout << "c' = " << format_double(stats.c_prime) << "\n";
        std::cout << "maassen-uffink bound = " << format_double(mu) << " bits\n";
        json["route"] = "pair";
        json["c"] = stats.c;
        json["c_prime"] = stats.c_prime;
        json["maassen_uffink"] = mu;
    } else {
        const uur::MeasurementEnsemble ens = file.ensemble();
        seq = uur::bound_sequence_multi(ens, opt.budget);
        std::cout << "route: " << ens.count() << " POVMs, joint outcomes N = "
                  << ens.total_outcomes() << "\n";
        json["route"] = "multi";
        json["povms"] = ens.count();
    }

    const uur::UncertaintyVector omega(seq);
    std::cout << "Omega~ (k = 1.." << seq.size() << "): " << join_values(seq.values) << "\n";
    std::cout << "omega raw:    " << join_values(omega.raw()) << "\n";
    std::cout << "omega sorted: " << join_values(omega.sorted()) << "\n";
    json["omega_tilde"] = seq.values;
    json["omega_raw"] = std::vector<double>(omega.raw().data(), omega.raw().data() + omega.size());
    json["omega_sorted"] =
        std::vector<double>(omega.sorted().data(), omega.sorted().data() + omega.size());

    const uur::ProbVector omega_p = omega.sorted_prob();
    for (const auto& phi : measures) {
        const double v = phi(omega_p);
        std::cout << "Phi(omega) " << phi.name() << " = " << format_double(v) << " bits\n";
        json["measures"][phi.name()] = v;
    }
    if (!opt.out.empty()) write_file(opt.out, json.dump(2) + "\n");
}

// --- verify -----------------------------------------------------------------

struct VerifyOptions {
    int dim = 6;
    long long trials = 1000;
    std::uint64_t seed = 1;
    std::vector<std::string> measures;
    std::string file;
    bool example1 = false;
    std::string out;
    std::uint64_t budget = uur::kDefaultNormBudget;
};

int cmd_verify(const VerifyOptions& opt) {
    uur::ExperimentConfig cfg;
    cfg.dim = opt.dim;
    cfg.trials = opt.trials;
    cfg.seed = opt.seed;
    cfg.budget = opt.budget;
    cfg.measures = measures_from(opt.measures);

    std::vector<uur::TrialRecord> rows;
    uur::VerifySummary summary;
    bool pair_columns = true;
    if (opt.example1) {
        summary = uur::run_verify_ensemble(cfg, uur::example1_ensemble(), &rows);
        pair_columns = false;
    } else if (!opt.file.empty()) {
        const uur::MeasurementFile file = uur::parse_measurement_file_path(opt.file);
        summary = uur::run_verify_ensemble(cfg, file.ensemble(), &rows);
        pair_columns = false;
    } else {
        summary = uur::run_verify_pair(cfg, &rows);
    }

    std::cout << "trials: " << summary.trials << "  violations: " << summary.violations
              << "  worst margin: " << format_double(summary.worst_margin) << "\n";
    if (!opt.out.empty()) write_file(opt.out, uur::trial_csv(rows, pair_columns));
    return summary.violations == 0 ? kExitOk : kExitError;
}

// --- figure3 ----------------------------------------------------------------

struct Figure3Options {
    int dim = 6;
    long long trials = 10000;
    std::uint64_t seed = 1;
    std::string out;
};

void cmd_figure3(const Figure3Options& opt) {
    uur::ExperimentConfig cfg;
    cfg.dim = opt.dim;
    cfg.trials = opt.trials;
    cfg.seed = opt.seed;
    const uur::Figure3Result result = uur::run_figure3(cfg);
    const std::string csv = uur::trial_csv(result.rows, true);

    std::ostream& info = opt.out.empty() ? std::cerr : std::cout;
    info << "trials: " << opt.trials << "  dim: " << opt.dim
         << "  dominance violations: " << result.violations << "\n";
    info << "H(omega) > maassen-uffink: " << format_double(result.frac_bound_above_mu)
         << " overall; " << format_double(result.frac_above_mu_high_c) << " for c > 0.83 ("
         << result.high_c_trials << " trials); " << format_double(result.frac_above_mu_low_c)
         << " for c <= 0.83\n";
    if (opt.out.empty()) {
        std::cout << csv;
    } else {
        write_file(opt.out, csv);
    }
}

// --- mub --------------------------------------------------------------------

struct MubOptions {
    std::vector<int> dims = {2, 3};
    std::vector<int> ks;
    long long trials = 1000;
    std::uint64_t seed = 1;
    int restarts = 16;
};

void cmd_mub(const MubOptions& opt) {
    uur::OptimizerConfig cfg;
    cfg.restarts = opt.restarts;
    cfg.seed = opt.seed;

    std::vector<int> ks = opt.ks;
    if (ks.empty()) {
        int kmax = 0;
        for (int d : opt.dims) kmax = std::max(kmax, d);
        for (int k = 1; k <= kmax; ++k) ks.push_back(k);
    }

    std::cout << "d  k  Omega~_k             conjectured          oracle\n";
    for (const uur::MubCell& cell : uur::run_mub_table(opt.dims, ks, cfg)) {
        std::cout << cell.d << "  " << cell.k << "  " << format_double(cell.bound) << "  "
                  << format_double(cell.conjectured) << "  ";
        if (cell.oracle) {
            std::cout << format_double(*cell.oracle);
        } else {
            std::cout << "skipped: " << cell.note;
        }
        std::cout << "\n";
    }
    for (int d : opt.dims) {
        const double rate = uur::mub_majorization_rate(d, opt.trials, uur::derive_seed(opt.seed, 77));
        std::cout << "conjectured MUB vector majorized by random-pair bound, d=" << d << ": "
                  << format_double(100.0 * rate) << "% of " << opt.trials << " trials\n";
    }
}

// --- theorem1 ---------------------------------------------------------------

struct Theorem1Options {
    long long trials = 25;
    int dim = 0;  // 0 = cycle 2..6
    std::uint64_t seed = 1;
    int restarts = 24;
};

void cmd_theorem1(const Theorem1Options& opt) {
    double worst = 0.0;
    for (long long i = 0; i < opt.trials; ++i) {
        const int d = opt.dim > 0 ? opt.dim : 2 + static_cast<int>(i % 5);
        uur::Rng rng(uur::derive_seed(opt.seed, static_cast<std::uint64_t>(i)));
        const uur::OrthonormalBasis u = uur::haar_random_basis(d, rng);
        const uur::OrthonormalBasis v = uur::haar_random_basis(d, rng);
        const int ra = 1 + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(d - 1)));
        const int rb = 1 + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(d - 1)));
        const uur::CMatrix ca = u.matrix().leftCols(ra);
        const uur::CMatrix cb = v.matrix().leftCols(rb);
        const uur::HermitianOperator a(ca * ca.adjoint());
        const uur::HermitianOperator b(cb * cb.adjoint());

        const double norm = uur::operator_norm_psd(uur::HermitianOperator(a.matrix() + b.matrix()));
        const double closed = 0.25 * norm * norm;
        uur::OptimizerConfig cfg;
        cfg.restarts = opt.restarts;
        cfg.seed = uur::derive_seed(opt.seed, 1000 + static_cast<std::uint64_t>(i));
        const uur::AscentResult result = uur::max_product_pure(a, b, cfg);
        const double rel = std::abs(result.value - closed) / closed;
        worst = std::max(worst, rel);
        std::cout << "d=" << d << " ranks=(" << ra << "," << rb << ")  ascent "
                  << format_double(result.value) << "  closed " << format_double(closed)
                  << "  rel " << format_double(rel) << "\n";
    }
    std::cout << "worst relative deviation: " << format_double(worst) << "\n";
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"majorization-based measurement uncertainty bounds"};
    app.require_subcommand(1);

    BoundOptions bound_opt;
    auto* bound = app.add_subcommand("bound", "compute the bound vector for a measurement file");
    bound->add_option("file", bound_opt.input, "measurement file")->required();
    bound->add_option("--measure", bound_opt.measures,
                      "uncertainty measure (shannon | renyi:a | minentropy | neglogmin)");
    bound->add_option("--budget", bound_opt.budget, "norm-evaluation budget");
    bound->add_option("--out", bound_opt.out, "write the result as JSON");

    VerifyOptions verify_opt;
    auto* verify = app.add_subcommand("verify", "Monte Carlo majorization check");
    verify->add_option("--dim", verify_opt.dim, "dimension for random basis pairs")
        ->check(CLI::Range(2, 8));
    verify->add_option("--trials", verify_opt.trials, "number of trials")->check(CLI::PositiveNumber);
    verify->add_option("--seed", verify_opt.seed, "master seed");
    verify->add_option("--measure", verify_opt.measures, "measures for dominance checks");
    verify->add_option("--file", verify_opt.file, "verify a fixed measurement file");
    verify->add_flag("--example1", verify_opt.example1, "verify the pairwise-trivial ensemble");
    verify->add_option("--budget", verify_opt.budget, "norm-evaluation budget");
    verify->add_option("--out", verify_opt.out, "write per-trial CSV");

    Figure3Options fig_opt;
    auto* fig = app.add_subcommand("figure3", "entropy-vs-overlap sweep, CSV output");
    fig->add_option("--dim", fig_opt.dim)->check(CLI::Range(2, 8));
    fig->add_option("--trials", fig_opt.trials)->check(CLI::PositiveNumber);
    fig->add_option("--seed", fig_opt.seed);
    fig->add_option("--out", fig_opt.out, "CSV path (default: stdout)");

    MubOptions mub_opt;
    auto* mub = app.add_subcommand("mub", "bound vs conjecture table for MUB pairs");
    mub->add_option("--dims", mub_opt.dims, "dimensions")->delimiter(',');
    mub->add_option("--ks", mub_opt.ks, "k values (default 1..max dim)")->delimiter(',');
    mub->add_option("--trials", mub_opt.trials, "trials for the majorization rate");
    mub->add_option("--seed", mub_opt.seed);
    mub->add_option("--restarts", mub_opt.restarts)->check(CLI::Range(8, 1024));

    std::string example1_out;
    auto* ex1 = app.add_subcommand("example1", "print the pairwise-trivial fixture");
    ex1->add_option("--out", example1_out, "write to file instead of stdout");

    Theorem1Options th_opt;
    auto* th = app.add_subcommand("theorem1", "spot-check the product-maximum identity");
    th->add_option("--trials", th_opt.trials)->check(CLI::PositiveNumber);
    th->add_option("--dim", th_opt.dim)->check(CLI::Range(2, 8));
    th->add_option("--seed", th_opt.seed);
    th->add_option("--restarts", th_opt.restarts)->check(CLI::Range(8, 1024));

    std::uint64_t acceptance_seed = 424242;
    auto* acc = app.add_subcommand("acceptance", "run the release acceptance suite");
    acc->add_option("--seed", acceptance_seed, "master seed (verdicts are seed-stable)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*bound) {
            cmd_bound(bound_opt);
        } else if (*verify) {
            return cmd_verify(verify_opt);
        } else if (*fig) {
            cmd_figure3(fig_opt);
        } else if (*mub) {
            cmd_mub(mub_opt);
        } else if (*ex1) {
            if (example1_out.empty()) {
                std::cout << uur::example1_file_text();
            } else {
                write_file(example1_out, uur::example1_file_text());
            }
        } else if (*th) {
            cmd_theorem1(th_opt);
        } else if (*acc) {
            const auto results = uur::run_acceptance(std::cout, acceptance_seed);
            if (!uur::all_passed(results)) return kExitAcceptance;
        }
    } catch (const uur::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const uur::BudgetError& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const uur::InvariantError& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitOk;
}

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
}

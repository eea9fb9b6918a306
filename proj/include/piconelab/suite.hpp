#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "piconelab/corpus.hpp"

namespace piconelab {

struct SweepStats {
    double max_residual_scaled = 0.0; ///< max |L - R| / scale
    double min_L_scaled = 0.0;        ///< min L / scale over admissible points
    double min_term_scaled = 0.0;     ///< min term / scale over admissible points
    double max_cross_scaled = 0.0;    ///< dunninger only: disagreement with the p = 2 power form
    long long points = 0;
    long long inadmissible = 0; ///< corpus points failing the hypotheses (expected 0)
};

/// Lemma 2.2 over the 1-D and 2-D corpora at the given exponents.
SweepStats sweep_power_identity(int pts_per_pair, std::uint64_t seed,
                                const std::vector<double>& ps);

/// max |L| / scale for u = alpha v over the corpus v's (equality rigidity).
double max_equality_L_scaled(const std::vector<double>& alphas, const std::vector<double>& ps,
                             int pts_per_field, std::uint64_t seed);

struct NonlinearSweepStats {
    double max_residual_scaled = 0.0;     ///< rederived form vs R
    double max_reduction_reldiff = 0.0;   ///< R_nonlinear(f = y^(p-1)) vs R_power
    double max_printed_diag_mismatch = 0.0; ///< full-formula printed-minus-rederived vs direct term
    double max_printed_discrepancy_scaled = 0.0;
    long long diag_cases = 0; ///< points with p != 2 and a non-negligible printed offset
    long long points = 0;
};

/// Lemma 2.3 with f in {identity, y^(p-1), sqrt} over the corpora.
NonlinearSweepStats sweep_nonlinear_identity(int pts_per_pair, std::uint64_t seed,
                                             const std::vector<double>& ps);

/// Dunninger p = 2 identity over the corpora.
SweepStats sweep_dunninger(int pts_per_pair, std::uint64_t seed);

struct YoungStats {
    double min_gap = 0.0;
    double max_equality_gap = 0.0;
    int trials = 0;
    int equality_trials = 0;
};

YoungStats young_sweep(int trials, int equality_trials, std::uint64_t seed);

struct JobResult {
    std::string name;
    bool pass = false;
    std::string summary;
};

struct SuiteResult {
    std::vector<JobResult> jobs;
    bool all_pass = true;
    std::vector<std::string> files; ///< report files written, relative to out_dir
};

/// The default verification suite: nine jobs, each writing <name>.report.json
/// and <name>.data.csv under out_dir. Byte-deterministic for a fixed build.
SuiteResult run_suite(const std::string& out_dir);

} // namespace piconelab

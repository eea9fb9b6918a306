#include "piconelab/suite.hpp"

#include <cmath>
#include <filesystem>
#include <limits>
#include <random>
#include <sstream>

#include "json.hpp"

#include "piconelab/report_io.hpp"

namespace piconelab {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct CorpusBlock {
    std::string label;
    Domain dom;
    std::vector<IdentityPair> pairs;
};

std::vector<CorpusBlock> corpus_blocks() {
    return {{"interval", corpus_domain_1d(), identity_corpus_1d()},
            {"rectangle", corpus_domain_2d(), identity_corpus_2d()}};
}

std::uint64_t pair_seed(std::uint64_t seed, size_t block, size_t pair) {
    return seed + 1000003ull * block + 7919ull * pair;
}

struct PowerRow {
    std::string domain, u, v;
    double p;
    double max_res_scaled = 0.0;
    double min_L_scaled = kInf;
    double min_term_scaled = kInf;
    long long inadmissible = 0;
};

std::vector<PowerRow> power_rows(int pts_per_pair, std::uint64_t seed,
                                 const std::vector<double>& ps) {
    std::vector<PowerRow> rows;
    auto blocks = corpus_blocks();
    for (size_t b = 0; b < blocks.size(); ++b) {
        for (size_t i = 0; i < blocks[b].pairs.size(); ++i) {
            const IdentityPair& pr = blocks[b].pairs[i];
            auto pts = random_interior_points(blocks[b].dom, pts_per_pair, pair_seed(seed, b, i));
            for (double pval : ps) {
                ExponentPair p(pval);
                PowerRow row;
                row.domain = blocks[b].label;
                row.u = pr.u.name;
                row.v = pr.v.name;
                row.p = pval;
                for (const Point& x : pts) {
                    PiconePointEval ev = eval_L_power(pr.u.expr, pr.v.expr, x, p);
                    row.max_res_scaled =
                        std::max(row.max_res_scaled, std::abs(ev.residual) / ev.scale);
                    if (ev.admissible) {
                        row.min_L_scaled = std::min(row.min_L_scaled, ev.L / ev.scale);
                        double tmin = std::min({ev.term_I, ev.term_II, ev.term_III}) / ev.scale;
                        row.min_term_scaled = std::min(row.min_term_scaled, tmin);
                    } else {
                        row.inadmissible += 1;
                    }
                }
                rows.push_back(row);
            }
        }
    }
    return rows;
}

} // namespace

SweepStats sweep_power_identity(int pts_per_pair, std::uint64_t seed,
                                const std::vector<double>& ps) {
    SweepStats st;
    st.min_L_scaled = kInf;
    st.min_term_scaled = kInf;
    for (const PowerRow& r : power_rows(pts_per_pair, seed, ps)) {
        st.max_residual_scaled = std::max(st.max_residual_scaled, r.max_res_scaled);
        st.min_L_scaled = std::min(st.min_L_scaled, r.min_L_scaled);
        st.min_term_scaled = std::min(st.min_term_scaled, r.min_term_scaled);
        st.points += pts_per_pair;
        st.inadmissible += r.inadmissible;
    }
    return st;
}

double max_equality_L_scaled(const std::vector<double>& alphas, const std::vector<double>& ps,
                             int pts_per_field, std::uint64_t seed) {
    double worst = 0.0;
    auto blocks = corpus_blocks();
    for (size_t b = 0; b < blocks.size(); ++b) {
        for (size_t i = 0; i < blocks[b].pairs.size(); ++i) {
            const FieldExpr& v = blocks[b].pairs[i].v.expr;
            auto pts =
                random_interior_points(blocks[b].dom, pts_per_field, pair_seed(seed, b, i) ^ 0x5a);
            for (double alpha : alphas) {
                FieldExpr u = alpha * v;
                for (double pval : ps) {
                    ExponentPair p(pval);
                    for (const Point& x : pts) {
                        PiconePointEval ev = eval_L_power(u, v, x, p);
                        worst = std::max(worst, std::abs(ev.L) / ev.scale);
                    }
                }
            }
        }
    }
    return worst;
}

namespace {

struct NonlinearRow {
    std::string domain, u, v, f;
    double p;
    double max_res_scaled = 0.0;
    double max_reduction_reldiff = 0.0;
    double max_printed_disc_scaled = 0.0;
};

std::vector<NonlinearRow> nonlinear_rows(int pts_per_pair, std::uint64_t seed,
                                         const std::vector<double>& ps,
                                         NonlinearSweepStats* agg) {
    std::vector<NonlinearRow> rows;
    auto blocks = corpus_blocks();
    for (size_t b = 0; b < blocks.size(); ++b) {
        for (size_t i = 0; i < blocks[b].pairs.size(); ++i) {
            const IdentityPair& pr = blocks[b].pairs[i];
            auto pts = random_interior_points(blocks[b].dom, pts_per_pair,
                                              pair_seed(seed, b, i) ^ 0x17);
            for (double pval : ps) {
                ExponentPair p(pval);
                std::vector<NonlinearityProfile> fs = {
                    nonlinearity_catalog("identity", p),
                    nonlinearity_catalog("power", p),
                    nonlinearity_catalog("sqrt", p),
                };
                for (const NonlinearityProfile& f : fs) {
                    NonlinearRow row;
                    row.domain = blocks[b].label;
                    row.u = pr.u.name;
                    row.v = pr.v.name;
                    row.f = f.label();
                    row.p = pval;
                    for (const Point& x : pts) {
                        PiconePointEval re =
                            eval_L_nonlinear(pr.u.expr, pr.v.expr, f, x, p,
                                             NonlinearForm::rederived);
                        row.max_res_scaled =
                            std::max(row.max_res_scaled, std::abs(re.residual) / re.scale);

                        PiconePointEval pe = eval_L_nonlinear(pr.u.expr, pr.v.expr, f, x, p,
                                                              NonlinearForm::printed);
                        double diff = pe.L - re.L;
                        row.max_printed_disc_scaled =
                            std::max(row.max_printed_disc_scaled, std::abs(diff) / re.scale);

                        // Direct evaluation of the coefficient-offset term
                        // -(1/2) Dv|Dv|^(p-2) u^(p-2)/f * (p(p-1) - p(p-2)) |grad u|^2
                        // from fresh jets; the full-formula subtraction must match it.
                        if (pval != 2.0 && agg) {
                            Jet2 ju = eval_jet(pr.u.expr, x);
                            Jet2 jv = eval_jet(pr.v.expr, x);
                            double gu2 = ju.grad[0] * ju.grad[0] +
                                         (x.dim == 2 ? ju.grad[1] * ju.grad[1] : 0.0);
                            double direct = -0.5 * signed_pow(laplacian(jv), pval - 1.0) *
                                            std::pow(ju.value, pval - 2.0) /
                                            f.f(jv.value) * (pval * (pval - 1.0) -
                                                             pval * (pval - 2.0)) *
                                            gu2;
                            if (std::abs(direct) >= 1e-6 * re.scale) {
                                agg->diag_cases += 1;
                                agg->max_printed_diag_mismatch =
                                    std::max(agg->max_printed_diag_mismatch,
                                             std::abs(diff - direct) / std::abs(direct));
                            }
                        }

                        if (f.label() == "power") {
                            double rn = eval_R_nonlinear(pr.u.expr, pr.v.expr, f, x, p);
                            double rp = eval_R_power(pr.u.expr, pr.v.expr, x, p);
                            double denom = std::max({std::abs(rn), std::abs(rp), 1e-300});
                            double rd = rn == rp ? 0.0 : std::abs(rn - rp) / denom;
                            row.max_reduction_reldiff = std::max(row.max_reduction_reldiff, rd);
                        }
                    }
                    if (agg) {
                        agg->max_residual_scaled =
                            std::max(agg->max_residual_scaled, row.max_res_scaled);
                        agg->max_reduction_reldiff =
                            std::max(agg->max_reduction_reldiff, row.max_reduction_reldiff);
                        agg->max_printed_discrepancy_scaled =
                            std::max(agg->max_printed_discrepancy_scaled,
                                     row.max_printed_disc_scaled);
                        agg->points += pts_per_pair;
                    }
                    rows.push_back(row);
                }
            }
        }
    }
    return rows;
}

} // namespace

NonlinearSweepStats sweep_nonlinear_identity(int pts_per_pair, std::uint64_t seed,
                                             const std::vector<double>& ps) {
    NonlinearSweepStats st;
    nonlinear_rows(pts_per_pair, seed, ps, &st);
    return st;
}

SweepStats sweep_dunninger(int pts_per_pair, std::uint64_t seed) {
    SweepStats st;
    st.min_L_scaled = kInf;
    st.min_term_scaled = kInf;
    ExponentPair two(2.0);
    auto blocks = corpus_blocks();
    for (size_t b = 0; b < blocks.size(); ++b) {
        for (size_t i = 0; i < blocks[b].pairs.size(); ++i) {
            const IdentityPair& pr = blocks[b].pairs[i];
            auto pts = random_interior_points(blocks[b].dom, pts_per_pair,
                                              pair_seed(seed, b, i) ^ 0xd2);
            for (const Point& x : pts) {
                PiconePointEval ev = eval_dunninger_p2(pr.u.expr, pr.v.expr, x);
                st.max_residual_scaled =
                    std::max(st.max_residual_scaled, std::abs(ev.residual) / ev.scale);
                PiconePointEval pw = eval_L_power(pr.u.expr, pr.v.expr, x, two);
                st.max_cross_scaled = std::max(
                    st.max_cross_scaled, std::abs(ev.L - pw.L) / std::max(ev.scale, pw.scale));
                if (ev.admissible) {
                    st.min_L_scaled = std::min(st.min_L_scaled, ev.L / ev.scale);
                    st.min_term_scaled = std::min(
                        st.min_term_scaled, std::min(ev.term_I, ev.term_III) / ev.scale);
                } else {
                    st.inadmissible += 1;
                }
                st.points += 1;
            }
        }
    }
    return st;
}

YoungStats young_sweep(int trials, int equality_trials, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto unit = [&]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    YoungStats st;
    st.trials = trials;
    st.equality_trials = equality_trials;
    st.min_gap = kInf;
    for (int k = 0; k < trials; ++k) {
        double a = 3.0 * unit(), b = 3.0 * unit();
        ExponentPair p(1.1 + 3.0 * unit());
        st.min_gap = std::min(st.min_gap, young_gap(a, b, p));
    }
    for (int k = 0; k < equality_trials; ++k) {
        double a = 1.5 * unit();
        ExponentPair p(1.1 + 2.9 * unit());
        double b = std::pow(a, p.p - 1.0); // then b^q = a^p
        st.max_equality_gap = std::max(st.max_equality_gap, std::abs(young_gap(a, b, p)));
    }
    return st;
}

// ---------------------------------------------------------------------------
// the default suite

namespace {

const std::vector<double> kSuitePs{1.5, 2.0, 2.5, 3.0, 4.0};
constexpr std::uint64_t kSuiteSeed = 20250117ull;
constexpr int kSuitePoints = 500;

std::string fmt(double v) { return format_double(v); }

NamedField weight_one(const Domain& dom) {
    return {"1", FieldExpr::constant(1.0, dom.dim)};
}

void write_job(const std::string& out_dir, SuiteResult& suite, const std::string& name,
               const ordered_json& report, const std::string& csv, bool pass,
               const std::string& summary) {
    std::string base = out_dir + "/" + name;
    write_text_file(base + ".report.json", report.dump(2) + "\n");
    write_text_file(base + ".data.csv", csv);
    suite.files.push_back(name + ".report.json");
    suite.files.push_back(name + ".data.csv");
    suite.jobs.push_back({name, pass, summary});
    suite.all_pass = suite.all_pass && pass;
}

ordered_json parse_report(const std::string& text) { return ordered_json::parse(text); }

} // namespace

SuiteResult run_suite(const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    SuiteResult suite;

    // 1. identity-power
    {
        auto rows = power_rows(kSuitePoints, kSuiteSeed, kSuitePs);
        SweepStats st;
        st.min_L_scaled = kInf;
        st.min_term_scaled = kInf;
        for (const PowerRow& r : rows) {
            st.max_residual_scaled = std::max(st.max_residual_scaled, r.max_res_scaled);
            st.min_L_scaled = std::min(st.min_L_scaled, r.min_L_scaled);
            st.min_term_scaled = std::min(st.min_term_scaled, r.min_term_scaled);
            st.points += kSuitePoints;
            st.inadmissible += r.inadmissible;
        }
        double eq = max_equality_L_scaled({0.1, 1.0, 7.0}, kSuitePs, 160, kSuiteSeed);
        bool pass = st.max_residual_scaled <= 1e-10 && st.min_L_scaled >= -1e-12 &&
                    st.min_term_scaled >= -1e-12 && eq <= 1e-11 && st.inadmissible == 0;

        ordered_json j;
        j["schema"] = 1;
        j["experiment"] = "identity-power";
        j["config"] = {{"points_per_pair", kSuitePoints},
                       {"p_values", kSuitePs},
                       {"seed", kSuiteSeed},
                       {"alphas", {0.1, 1.0, 7.0}}};
        j["points"] = st.points;
        j["inadmissible_points"] = st.inadmissible;
        j["max_residual_scaled"] = st.max_residual_scaled;
        j["min_L_scaled"] = st.min_L_scaled;
        j["min_term_scaled"] = st.min_term_scaled;
        j["equality_max_L_scaled"] = eq;
        j["pass"] = pass;

        std::string csv = "domain,u,v,p,max_residual_scaled,min_L_scaled,min_term_scaled\n";
        for (const PowerRow& r : rows)
            csv += r.domain + "," + r.u + "," + r.v + "," + fmt(r.p) + "," +
                   fmt(r.max_res_scaled) + "," + fmt(r.min_L_scaled) + "," +
                   fmt(r.min_term_scaled) + "\n";
        write_job(out_dir, suite, "identity-power", j, csv, pass,
                  "max|L-R|/scale = " + fmt(st.max_residual_scaled) +
                      ", min L/scale = " + fmt(st.min_L_scaled));
    }

    // 2. identity-nonlinear (rederived form; printed offset as diagnostic; dunninger)
    {
        NonlinearSweepStats st;
        auto rows = nonlinear_rows(200, kSuiteSeed, kSuitePs, &st);
        SweepStats dn = sweep_dunninger(200, kSuiteSeed);
        bool pass = st.max_residual_scaled <= 1e-10 && st.max_reduction_reldiff <= 1e-13 &&
                    st.max_printed_discrepancy_scaled > 0.0 && st.diag_cases > 0 &&
                    st.max_printed_diag_mismatch <= 1e-8 && dn.max_residual_scaled <= 1e-12 &&
                    dn.max_cross_scaled <= 1e-12;

        ordered_json j;
        j["schema"] = 1;
        j["experiment"] = "identity-nonlinear";
        j["config"] = {{"points_per_pair", 200},
                       {"p_values", kSuitePs},
                       {"seed", kSuiteSeed},
                       {"nonlinearities", {"identity", "power", "sqrt"}}};
        j["max_residual_scaled"] = st.max_residual_scaled;
        j["max_reduction_reldiff"] = st.max_reduction_reldiff;
        j["printed_discrepancy_max_scaled"] = st.max_printed_discrepancy_scaled;
        j["printed_diag_cases"] = st.diag_cases;
        j["printed_diag_mismatch_max"] = st.max_printed_diag_mismatch;
        j["dunninger_max_residual_scaled"] = dn.max_residual_scaled;
        j["dunninger_max_cross_scaled"] = dn.max_cross_scaled;
        j["pass"] = pass;

        std::string csv =
            "domain,u,v,f,p,max_residual_scaled,max_reduction_reldiff,max_printed_disc_scaled\n";
        for (const NonlinearRow& r : rows)
            csv += r.domain + "," + r.u + "," + r.v + "," + r.f + "," + fmt(r.p) + "," +
                   fmt(r.max_res_scaled) + "," + fmt(r.max_reduction_reldiff) + "," +
                   fmt(r.max_printed_disc_scaled) + "\n";
        write_job(out_dir, suite, "identity-nonlinear", j, csv, pass,
                  "max|L-R|/scale = " + fmt(st.max_residual_scaled) + ", printed offset seen at " +
                      std::to_string(st.diag_cases) + " points");
    }

    // 3. young
    {
        YoungStats st = young_sweep(10000, 1000, kSuiteSeed);
        bool pass = st.min_gap >= 0.0 && st.max_equality_gap <= 1e-14;
        ordered_json j;
        j["schema"] = 1;
        j["experiment"] = "young";
        j["config"] = {{"trials", st.trials},
                       {"equality_trials", st.equality_trials},
                       {"seed", kSuiteSeed}};
        j["min_gap"] = st.min_gap;
        j["max_equality_gap"] = st.max_equality_gap;
        j["pass"] = pass;

        std::mt19937_64 rng(kSuiteSeed ^ 0xce5);
        auto unit = [&]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
        std::string csv = "a,b,p,gap\n";
        for (int k = 0; k < 1000; ++k) {
            double a = 3.0 * unit(), b = 3.0 * unit();
            ExponentPair p(1.1 + 3.0 * unit());
            csv += fmt(a) + "," + fmt(b) + "," + fmt(p.p) + "," + fmt(young_gap(a, b, p)) + "\n";
        }
        write_job(out_dir, suite, "young", j, csv, pass,
                  "min gap = " + fmt(st.min_gap) +
                      ", max equality-case gap = " + fmt(st.max_equality_gap));
    }

    Domain unit_iv = Domain::interval(0.0, 1.0);
    QuadratureRule rule;
    double pi4 = std::pow(M_PI, 4);

    // 4. hardy
    {
        ExponentPair two(2.0);
        NamedField v{"sine_mode 1", catalog("sine_mode", {1.0}, unit_iv)};
        HardyReport rep = run_hardy(v, nonlinearity_catalog("identity", two), weight_one(unit_iv),
                                    pi4, two, hardy_corpus(unit_iv), unit_iv, rule);
        double eq_gap = 0.0;
        for (const auto& row : rep.corpus)
            if (row.u_name == "sine_mode 1")
                eq_gap = std::abs(row.lhs - row.rhs) / std::max(row.lhs, 1.0);
        bool pass = rep.hypothesis_ok && rep.all_pass && eq_gap <= 1e-9;
        ordered_json j = parse_report(to_json(rep));
        j["equality_row_gap"] = eq_gap;
        j["pass"] = pass;
        write_job(out_dir, suite, "hardy", j, to_csv(rep), pass,
                  "margins >= 0: " + std::string(rep.all_pass ? "yes" : "no") +
                      ", supersolution residual min = " + fmt(rep.supersolution_residual_min));
    }

    // 5. sturm
    {
        ExponentPair two(2.0);
        NamedField u{"sine_mode 1", catalog("sine_mode", {1.0}, unit_iv)};
        NamedField f1{"pi^4", FieldExpr::constant(pi4)};
        NamedField f2{"pi^4+1", FieldExpr::constant(pi4 + 1.0)};
        SturmReport rep = run_sturm(u, f1, f2, two, nonlinearity_catalog("identity", two),
                                    sturm_candidates(unit_iv), unit_iv, rule);
        bool pass = rep.conclusion == SturmConclusion::no_positive_v_possible &&
                    std::abs(rep.contradiction_integral + 0.5) <= 1e-10;
        ordered_json j = parse_report(to_json(rep));
        j["pass"] = pass;
        write_job(out_dir, suite, "sturm", j, to_csv(rep), pass,
                  "contradiction integral = " + fmt(rep.contradiction_integral));
    }

    // 6. eigen
    {
        ExponentPair two(2.0);
        NamedField g = weight_one(unit_iv);
        EigenResult descent = principal_eigenvalue(unit_iv, g.expr, two, 399);
        EigenResult oracle = p2_oracle(unit_iv, g.expr, 399);
        double vs_pi4 = std::abs(descent.lambda - pi4) / pi4;
        double vs_oracle = std::abs(descent.lambda - oracle.lambda) / oracle.lambda;
        bool pass = vs_pi4 <= 0.01 && vs_oracle <= 1e-8 && descent.converged;
        ordered_json j = parse_report(to_json(descent, g.name, 2.0, unit_iv, 399));
        j["oracle_lambda"] = oracle.lambda;
        j["vs_oracle_rel"] = vs_oracle;
        j["vs_pi4_rel"] = vs_pi4;
        j["pass"] = pass;
        write_job(out_dir, suite, "eigen", j, to_csv(descent), pass,
                  "lambda = " + fmt(descent.lambda) + " (oracle " + fmt(oracle.lambda) + ")");
    }

    // 7. monotonicity
    {
        ExponentPair two(2.0);
        Domain big = Domain::interval(0.0, 2.0);
        MonotonicityReport rep = run_monotonicity(unit_iv, big, weight_one(unit_iv), two, 399);
        double expect = 15.0 * pi4 / 16.0;
        bool pass = rep.strict && std::abs(rep.gap - expect) <= 0.02 * expect;
        ordered_json j = parse_report(to_json(rep));
        j["expected_gap"] = expect;
        j["pass"] = pass;
        write_job(out_dir, suite, "monotonicity", j, to_csv(rep), pass,
                  "gap = " + fmt(rep.gap) + " (analytic " + fmt(expect) + ")");
    }

    // 8. singular system
    {
        ExponentPair two(2.0);
        NamedField v{"sine_mode 1", catalog("sine_mode", {1.0}, unit_iv)};
        double c1 = 1.0 / pi4;
        ProportionalityReport rep = run_singular_system(v, c1, nonlinearity_catalog("identity", two),
                                                        two, unit_iv, rule);
        bool rejected = false;
        try {
            run_singular_system(v, 2.0 * c1, nonlinearity_catalog("identity", two), two, unit_iv,
                                rule);
        } catch (const ResidualTooLarge&) {
            rejected = true;
        }
        bool pass = std::abs(rep.c1_recovered - c1) <= 1e-12 && rep.residual_eq1 <= 1e-8 &&
                    rep.residual_eq2 <= 1e-8 && std::abs(rep.int_R) <= 1e-10 &&
                    rep.relative_deviation <= 1e-10 && rejected;
        ordered_json j = parse_report(to_json(rep));
        j["perturbed_rejected"] = rejected;
        j["pass"] = pass;
        write_job(out_dir, suite, "singular", j, to_csv(rep, unit_iv), pass,
                  "recovered c1 = " + fmt(rep.c1_recovered) + ", perturbed instance rejected: " +
                      (rejected ? "yes" : "no"));
    }

    // 9. morse
    {
        ExponentPair two(2.0);
        NamedField a = weight_one(unit_iv);
        MorseReport rep = run_morse(a, nonlinearity_catalog("identity", two), unit_iv, 399);
        EigenResult oracle = p2_oracle(unit_iv, a.expr, 399);
        double expect = oracle.lambda - 1.0;
        double vs_oracle = std::abs(rep.min_eigenvalue - expect) / std::max(1.0, std::abs(expect));
        bool gate = false;
        try {
            run_morse(a, nonlinearity_catalog("linear2", two), unit_iv, 99);
        } catch (const HypothesisViolation&) {
            gate = true;
        }
        bool quad_ok = true;
        for (const auto& q : rep.quad_form) quad_ok = quad_ok && q.ok;
        bool pass = rep.morse_index_zero && rep.min_eigenvalue > 0.0 && vs_oracle <= 1e-8 &&
                    gate && quad_ok;
        ordered_json j = parse_report(to_json(rep));
        j["oracle_shifted"] = expect;
        j["vs_oracle_rel"] = vs_oracle;
        j["gate_rejects_fprime0_gt_1"] = gate;
        j["pass"] = pass;
        write_job(out_dir, suite, "morse", j, to_csv(rep), pass,
                  "min eigenvalue = " + fmt(rep.min_eigenvalue) + " (oracle shift " + fmt(expect) +
                      ")");
    }

    return suite;
}

} // namespace piconelab

// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are fixed here, not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "piconelab/report_io.hpp"
#include "piconelab/suite.hpp"

using namespace piconelab;

namespace {

int failures = 0;

void report(int idx, bool pass, const std::string& what) {
    std::printf("%s [%2d] %s\n", pass ? "PASS" : "FAIL", idx, what.c_str());
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const std::vector<double> kPs{1.5, 2.0, 2.5, 3.0, 4.0};
constexpr std::uint64_t kSeed = 20250117ull;

std::string fd(double v) { return format_double(v); }

} // namespace

int main() {
    double pi4 = std::pow(M_PI, 4);

    // 1. Lemma 2.2 identity sweep: >= 6 pairs x 5 exponents x 500 points,
    //    1-D and 2-D, |L-R|/scale <= 1e-10 and L/scale >= -1e-12, under 10 s.
    {
        auto t0 = std::chrono::steady_clock::now();
        SweepStats st = sweep_power_identity(500, kSeed, kPs);
        double secs = seconds_since(t0);
        bool pass = st.max_residual_scaled <= 1e-10 && st.min_L_scaled >= -1e-12 &&
                    st.inadmissible == 0 && secs <= 10.0;
        report(1, pass,
               "identity sweep: max|L-R|/scale = " + fd(st.max_residual_scaled) +
                   ", min L/scale = " + fd(st.min_L_scaled) + ", " +
                   std::to_string(st.points) + " pts in " + fd(secs) + " s");
    }

    // 2. Equality rigidity: u = alpha v, alpha in {0.1, 1, 7}, |L|/scale <= 1e-11.
    {
        double eq = max_equality_L_scaled({0.1, 1.0, 7.0}, kPs, 500, kSeed);
        report(2, eq <= 1e-11, "equality rigidity: max|L|/scale = " + fd(eq));
    }

    // 3. Lemma 2.3 rederived identity <= 1e-10; printed-form offset nonzero
    //    for some p != 2, grad u != 0 case and matching the direct
    //    coefficient term to 1e-8.
    NonlinearSweepStats nl = sweep_nonlinear_identity(500, kSeed, kPs);
    {
        bool pass = nl.max_residual_scaled <= 1e-10 && nl.diag_cases > 0 &&
                    nl.max_printed_discrepancy_scaled > 0.0 &&
                    nl.max_printed_diag_mismatch <= 1e-8;
        report(3, pass,
               "nonlinear identity: max|L-R|/scale = " + fd(nl.max_residual_scaled) +
                   ", printed-offset cases = " + std::to_string(nl.diag_cases) +
                   ", offset mismatch = " + fd(nl.max_printed_diag_mismatch));
    }

    // 4. Reduction: R_nonlinear with f = y^(p-1) equals R_power to 1e-13.
    report(4, nl.max_reduction_reldiff <= 1e-13,
           "reduction f = y^(p-1): max rel diff = " + fd(nl.max_reduction_reldiff));

    // 5. Dunninger p = 2: |L-R|/scale <= 1e-12 and power-form agreement 1e-12.
    {
        SweepStats dn = sweep_dunninger(500, kSeed);
        bool pass = dn.max_residual_scaled <= 1e-12 && dn.max_cross_scaled <= 1e-12;
        report(5, pass,
               "dunninger: max|L-R|/scale = " + fd(dn.max_residual_scaled) +
                   ", vs power form = " + fd(dn.max_cross_scaled));
    }

    // 6. Young gap: >= 0 on 1e4 random triples, <= 1e-14 on 1e3 equality cases.
    {
        YoungStats y = young_sweep(10000, 1000, kSeed);
        bool pass = y.min_gap >= 0.0 && y.max_equality_gap <= 1e-14;
        report(6, pass,
               "young: min gap = " + fd(y.min_gap) +
                   ", max equality gap = " + fd(y.max_equality_gap));
    }

    // 7. Eigenvalue fixtures at N = 399, p = 2: 1% of pi^4 and pi^4/16,
    //    oracle agreement 1e-8, under 30 s.
    {
        auto t0 = std::chrono::steady_clock::now();
        ExponentPair two(2.0);
        FieldExpr g = FieldExpr::constant(1.0, 1);
        Domain d1 = Domain::interval(0.0, 1.0), d2 = Domain::interval(0.0, 2.0);
        EigenResult r1 = principal_eigenvalue(d1, g, two, 399);
        EigenResult r2 = principal_eigenvalue(d2, g, two, 399);
        EigenResult o1 = p2_oracle(d1, g, 399);
        double secs = seconds_since(t0);
        double rel1 = std::abs(r1.lambda - pi4) / pi4;
        double rel2 = std::abs(r2.lambda - pi4 / 16.0) / (pi4 / 16.0);
        double vs_oracle = std::abs(r1.lambda - o1.lambda) / o1.lambda;
        bool pass = rel1 <= 0.01 && rel2 <= 0.01 && vs_oracle <= 1e-8 && secs <= 30.0;
        report(7, pass,
               "eigen: lambda(0,1) = " + fd(r1.lambda) + " (" + fd(rel1 * 100) +
                   "% off pi^4), lambda(0,2) = " + fd(r2.lambda) + ", vs oracle = " +
                   fd(vs_oracle) + ", " + fd(secs) + " s");
    }

    // 8. Monotonicity: strict gaps for p in {2, 3}; p = 2 gap within 2% of
    //    15 pi^4 / 16.
    {
        NamedField g{"1", FieldExpr::constant(1.0, 1)};
        Domain d1 = Domain::interval(0.0, 1.0), d2 = Domain::interval(0.0, 2.0);
        MonotonicityReport m2 = run_monotonicity(d1, d2, g, ExponentPair(2.0), 399);
        MonotonicityReport m3 = run_monotonicity(d1, d2, g, ExponentPair(3.0), 399);
        double expect = 15.0 * pi4 / 16.0;
        bool pass = m2.strict && m3.strict && std::abs(m2.gap - expect) <= 0.02 * expect;
        report(8, pass,
               "monotonicity: p=2 gap = " + fd(m2.gap) + " (analytic " + fd(expect) +
                   "), p=3 gap = " + fd(m3.gap));
    }

    // 9. Hardy fixture: quadrature within 1e-9 of the exact rationals
    //    4/5 and 1/630 (ratio 504); all corpus margins >= 0.
    {
        ExponentPair two(2.0);
        Domain dom = Domain::interval(0.0, 1.0);
        QuadratureRule rule;
        NamedField v{"sine_mode 1", catalog("sine_mode", {1.0}, dom)};
        NamedField g{"1", FieldExpr::constant(1.0, 1)};
        HardyReport rep = run_hardy(v, nonlinearity_catalog("identity", two), g, pi4, two,
                                    hardy_corpus(dom), dom, rule);
        double lhs = 0.0, l2 = 0.0;
        for (const auto& row : rep.corpus)
            if (row.u_name == "bubble") {
                lhs = row.lhs;
                l2 = row.rhs / pi4; // rhs = lambda * int u^2 for g = 1
            }
        double ratio = lhs / l2;
        bool margins = true;
        for (const auto& row : rep.corpus) margins = margins && row.margin >= -1e-9;
        bool pass = std::abs(lhs - 0.8) <= 1e-9 * 0.8 &&
                    std::abs(l2 - 1.0 / 630.0) <= 1e-9 / 630.0 &&
                    std::abs(ratio - 504.0) <= 1e-6 && margins && rep.hypothesis_ok;
        report(9, pass,
               "hardy: int|Du|^2 = " + fd(lhs) + ", int u^2 = " + fd(l2) + ", ratio = " +
                   fd(ratio) + " >= pi^4 = " + fd(pi4));
    }

    // 10. Sturm: contradiction integrals -1/2 (f2 = f1 + 1) and -1/4
    //     (f2 = f1 + x) to 1e-10.
    {
        ExponentPair two(2.0);
        Domain dom = Domain::interval(0.0, 1.0);
        QuadratureRule rule;
        NamedField u{"sine_mode 1", catalog("sine_mode", {1.0}, dom)};
        NamedField f1{"pi^4", FieldExpr::constant(pi4)};
        NonlinearityProfile f = nonlinearity_catalog("identity", two);
        SturmReport a =
            run_sturm(u, f1, {"pi^4+1", FieldExpr::constant(pi4 + 1.0)}, two, f,
                      sturm_candidates(dom), dom, rule);
        SturmReport b = run_sturm(u, f1,
                                  {"pi^4+x", FieldExpr::constant(pi4) + FieldExpr::coordinate(0, 1)},
                                  two, f, sturm_candidates(dom), dom, rule);
        bool pass = std::abs(a.contradiction_integral + 0.5) <= 1e-10 &&
                    std::abs(b.contradiction_integral + 0.25) <= 1e-10 &&
                    a.conclusion == SturmConclusion::no_positive_v_possible &&
                    b.conclusion == SturmConclusion::no_positive_v_possible;
        report(10, pass,
               "sturm: integrals = " + fd(a.contradiction_integral) + ", " +
                   fd(b.contradiction_integral));
    }

    // 11. Singular system: c1 = pi^-4 recovered to 1e-12, equation residuals
    //     <= 1e-8, perturbed instance rejected.
    {
        ExponentPair two(2.0);
        Domain dom = Domain::interval(0.0, 1.0);
        QuadratureRule rule;
        NamedField v{"sine_mode 1", catalog("sine_mode", {1.0}, dom)};
        NonlinearityProfile f = nonlinearity_catalog("identity", two);
        double c1 = 1.0 / pi4;
        ProportionalityReport rep = run_singular_system(v, c1, f, two, dom, rule);
        bool rejected = false;
        try {
            run_singular_system(v, 2.0 * c1, f, two, dom, rule);
        } catch (const ResidualTooLarge&) {
            rejected = true;
        }
        bool pass = std::abs(rep.c1_recovered - c1) <= 1e-12 && rep.residual_eq1 <= 1e-8 &&
                    rep.residual_eq2 <= 1e-8 && rejected;
        report(11, pass,
               "singular: recovered c1 = " + fd(rep.c1_recovered) + " (target " + fd(c1) +
                   "), residuals = " + fd(rep.residual_eq1) + ", " + fd(rep.residual_eq2) +
                   ", perturbed rejected = " + (rejected ? "yes" : "no"));
    }

    // 12. Morse: min linearized eigenvalue equals the oracle's shifted value
    //     within 1e-8 and is positive.
    {
        ExponentPair two(2.0);
        Domain dom = Domain::interval(0.0, 1.0);
        NamedField a{"1", FieldExpr::constant(1.0, 1)};
        MorseReport rep = run_morse(a, nonlinearity_catalog("identity", two), dom, 399);
        EigenResult oracle = p2_oracle(dom, a.expr, 399);
        double expect = oracle.lambda - 1.0;
        bool pass = rep.min_eigenvalue > 0.0 &&
                    std::abs(rep.min_eigenvalue - expect) <= 1e-8 * std::max(1.0, expect) &&
                    rep.morse_index_zero;
        report(12, pass,
               "morse: min eigenvalue = " + fd(rep.min_eigenvalue) + ", oracle shift = " +
                   fd(expect));
    }

    // 13. Determinism: two suite runs produce byte-identical reports.
    {
        std::string dir_a = "acceptance_suite_a", dir_b = "acceptance_suite_b";
        std::filesystem::remove_all(dir_a);
        std::filesystem::remove_all(dir_b);
        SuiteResult a = run_suite(dir_a);
        SuiteResult b = run_suite(dir_b);
        bool identical = a.files == b.files && a.all_pass && b.all_pass;
        size_t checked = 0;
        if (identical)
            for (const std::string& f : a.files) {
                if (read_text_file(dir_a + "/" + f) != read_text_file(dir_b + "/" + f)) {
                    identical = false;
                    break;
                }
                ++checked;
            }
        report(13, identical,
               "determinism: " + std::to_string(checked) + " files byte-identical, suite pass = " +
                   (a.all_pass ? "yes" : "no"));
    }

    if (failures == 0) {
        std::printf("acceptance: all 13 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criteria FAILED\n", failures);
    return 1;
}

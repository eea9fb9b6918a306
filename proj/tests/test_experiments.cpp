#include <cmath>

#include "doctest.h"

#include "piconelab/corpus.hpp"
#include "piconelab/report_io.hpp"
#include "piconelab/suite.hpp"

using namespace piconelab;

namespace {

Domain unit_iv() { return Domain::interval(0.0, 1.0); }
double pi4() { return std::pow(M_PI, 4); }

NamedField sine_field() { return {"sine_mode 1", catalog("sine_mode", {1.0}, unit_iv())}; }
NamedField one_field() { return {"1", FieldExpr::constant(1.0, 1)}; }

} // namespace

TEST_CASE("p-biharmonic field: exact fourth derivative at p = 2") {
    PBiharmonicField pbh(catalog("sine_mode", {1.0}, unit_iv()), 2.0, unit_iv());
    for (double x : {0.2, 0.5, 0.77}) {
        double want = pi4() * std::sin(M_PI * x);
        CHECK(pbh(Point::p1(x)) == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("p-biharmonic field: FD route against the analytic p = 3 value") {
    // For v = sin(pi x): |Dv|^(p-2) Dv = -(pi^2)^(p-1) s^(p-1), so
    // D(|Dv|^(p-2) Dv) = (pi^2)^p (p-1) [s^(p-1) - (p-2) s^(p-3) c^2].
    double p = 3.0;
    PBiharmonicField pbh(catalog("sine_mode", {1.0}, unit_iv()), p, unit_iv());
    for (double x : {0.3, 0.5, 0.62}) {
        double s = std::sin(M_PI * x), c = std::cos(M_PI * x);
        double want = std::pow(M_PI * M_PI, p) * (p - 1.0) *
                      (std::pow(s, p - 1.0) - (p - 2.0) * std::pow(s, p - 3.0) * c * c);
        CHECK(pbh(Point::p1(x)) == doctest::Approx(want).epsilon(1e-6));
    }
}

TEST_CASE("hardy fixture") {
    ExponentPair two(2.0);
    QuadratureRule rule;
    HardyReport rep = run_hardy(sine_field(), nonlinearity_catalog("identity", two), one_field(),
                                pi4(), two, hardy_corpus(unit_iv()), unit_iv(), rule);
    CHECK(rep.hypothesis_ok);
    CHECK(std::abs(rep.supersolution_residual_min) <= 1e-8 * pi4());
    CHECK(rep.all_pass);

    bool saw_bubble = false, saw_sine = false;
    for (const auto& row : rep.corpus) {
        CHECK(row.margin >= -1e-9 * std::max(row.lhs, 1.0));
        if (row.u_name == "bubble") {
            saw_bubble = true;
            CHECK(std::abs(row.lhs - 0.8) <= 1e-9 * 0.8);
            CHECK(row.margin > 0.0);
            CHECK_FALSE(row.diagnostic);
        }
        if (row.u_name == "sine_mode 1") {
            saw_sine = true;
            // equality case: both sides are pi^4 / 2
            CHECK(std::abs(row.lhs - row.rhs) <= 1e-9 * row.lhs);
            CHECK(row.diagnostic);
        }
    }
    CHECK(saw_bubble);
    CHECK(saw_sine);
}

TEST_CASE("hardy flags a failed supersolution hypothesis") {
    ExponentPair two(2.0);
    QuadratureRule rule;
    HardyReport rep =
        run_hardy(sine_field(), nonlinearity_catalog("identity", two), one_field(), 2.0 * pi4(),
                  two, hardy_corpus(unit_iv()), unit_iv(), rule);
    CHECK_FALSE(rep.hypothesis_ok);
    CHECK(rep.supersolution_residual_min < 0.0);
}

TEST_CASE("hardy at p = 3 exercises the finite-difference hypothesis route") {
    // No closed-form positive supersolution is on file for p != 2; the run
    // must report the failed hypothesis rather than claim the inequality.
    ExponentPair three(3.0);
    QuadratureRule rule;
    HardyReport rep = run_hardy(sine_field(), nonlinearity_catalog("power", three), one_field(),
                                1.0, three, hardy_corpus(unit_iv()), unit_iv(), rule);
    CHECK_FALSE(rep.hypothesis_ok);
    CHECK(rep.supersolution_residual_min < 0.0);
}

TEST_CASE("hardy on the unit square") {
    ExponentPair two(2.0);
    QuadratureRule rule;
    Domain sq = Domain::rectangle(0.0, 1.0, 0.0, 1.0);
    NamedField v{"sin sin", catalog("sine_mode", {1.0}, sq)};
    NamedField g{"1", FieldExpr::constant(1.0, 2)};
    double lambda = 4.0 * pi4(); // lap^2 (sin sin) = (2 pi^2)^2 sin sin
    HardyReport rep = run_hardy(v, nonlinearity_catalog("identity", two), g, lambda, two,
                                hardy_corpus(sq), sq, rule);
    CHECK(rep.hypothesis_ok);
    CHECK(rep.all_pass);
    for (const auto& row : rep.corpus)
        if (row.u_name == "sin sin") CHECK(std::abs(row.lhs - row.rhs) <= 1e-9 * row.lhs);
}

TEST_CASE("sturm fixtures") {
    ExponentPair two(2.0);
    QuadratureRule rule;
    NamedField u = sine_field();
    NamedField f1{"pi^4", FieldExpr::constant(pi4())};

    SturmReport rep =
        run_sturm(u, f1, {"pi^4+1", FieldExpr::constant(pi4() + 1.0)}, two,
                  nonlinearity_catalog("identity", two), sturm_candidates(unit_iv()), unit_iv(),
                  rule);
    CHECK(rep.contradiction_integral == doctest::Approx(-0.5).epsilon(1e-10));
    CHECK(rep.conclusion == SturmConclusion::no_positive_v_possible);
    CHECK(rep.pointwise_R_min_scaled >= -1e-10);

    // f2 = f1 + x: the integral is -int x sin^2(pi x) = -1/4
    FieldExpr f2x = FieldExpr::constant(pi4()) + FieldExpr::coordinate(0, 1);
    SturmReport rep2 = run_sturm(u, f1, {"pi^4+x", f2x}, two,
                                 nonlinearity_catalog("identity", two),
                                 sturm_candidates(unit_iv()), unit_iv(), rule);
    CHECK(rep2.contradiction_integral == doctest::Approx(-0.25).epsilon(1e-10));

    CHECK_THROWS_AS(run_sturm(u, f1, f1, two, nonlinearity_catalog("identity", two),
                              sturm_candidates(unit_iv()), unit_iv(), rule),
                    HypothesisViolation);
}

TEST_CASE("monotonicity gap matches the analytic scaling") {
    ExponentPair two(2.0);
    MonotonicityReport rep =
        run_monotonicity(unit_iv(), Domain::interval(0.0, 2.0), one_field(), two, 199);
    double expect = 15.0 * pi4() / 16.0;
    CHECK(rep.strict);
    CHECK(std::abs(rep.gap - expect) <= 0.02 * expect);

    CHECK_THROWS_AS(run_monotonicity(Domain::interval(0.0, 2.0), unit_iv(), one_field(), two, 99),
                    HypothesisViolation);
}

TEST_CASE("sturm on the unit square") {
    ExponentPair two(2.0);
    QuadratureRule rule(16, 5);
    Domain sq = Domain::rectangle(0.0, 1.0, 0.0, 1.0);
    NamedField u{"sin sin", catalog("sine_mode", {1.0}, sq)};
    NamedField f1{"4 pi^4", FieldExpr::constant(4.0 * pi4(), 2)};
    NamedField f2{"4 pi^4 + 1", FieldExpr::constant(4.0 * pi4() + 1.0, 2)};
    SturmReport rep = run_sturm(u, f1, f2, two, nonlinearity_catalog("identity", two),
                                sturm_candidates(sq), sq, rule);
    // int (f1 - f2) u^2 = -int sin^2 sin^2 = -1/4
    CHECK(rep.contradiction_integral == doctest::Approx(-0.25).epsilon(1e-10));
    CHECK(rep.conclusion == SturmConclusion::no_positive_v_possible);
}

TEST_CASE("monotonicity gap grows with the enclosing domain") {
    ExponentPair two(2.0);
    double prev = 0.0;
    for (double delta : {0.1, 0.2, 0.5}) {
        MonotonicityReport rep = run_monotonicity(unit_iv(), Domain::interval(0.0, 1.0 + delta),
                                                  one_field(), two, 99);
        CHECK(rep.gap > prev);
        prev = rep.gap;
    }
}

TEST_CASE("2-D smoke runs of the grid experiments") {
    ExponentPair two(2.0);
    Domain sq = Domain::rectangle(0.0, 1.0, 0.0, 1.0);
    NamedField g{"1", FieldExpr::constant(1.0, 2)};

    MonotonicityReport mono =
        run_monotonicity(sq, Domain::rectangle(0.0, 1.5, 0.0, 1.5), g, two, 25);
    CHECK(mono.strict);
    CHECK(mono.gap > 0.0);

    MorseReport morse = run_morse(g, nonlinearity_catalog("identity", two), sq, 25);
    CHECK(morse.morse_index_zero);
    CHECK(morse.min_eigenvalue > 0.0);

    QuadratureRule rule(16, 5);
    NamedField v{"sin sin", catalog("sine_mode", {1.0}, sq)};
    double c1 = 1.0 / (4.0 * pi4());
    ProportionalityReport prop =
        run_singular_system(v, c1, nonlinearity_catalog("identity", two), two, sq, rule);
    CHECK(std::abs(prop.c1_recovered - c1) <= 1e-12);
    CHECK(std::abs(prop.int_R) <= 1e-10);
}

TEST_CASE("singular system canonical instance and rejections") {
    ExponentPair two(2.0);
    QuadratureRule rule;
    double c1 = 1.0 / pi4();
    NonlinearityProfile f = nonlinearity_catalog("identity", two);

    ProportionalityReport rep = run_singular_system(sine_field(), c1, f, two, unit_iv(), rule);
    CHECK(std::abs(rep.c1_recovered - c1) <= 1e-12);
    CHECK(rep.residual_eq1 <= 1e-8);
    CHECK(rep.residual_eq2 <= 1e-8);
    CHECK(rep.relative_deviation <= 1e-10);
    CHECK(std::abs(rep.int_R) <= 1e-10);

    CHECK_THROWS_AS(run_singular_system(sine_field(), 2.0 * c1, f, two, unit_iv(), rule),
                    ResidualTooLarge);

    // a different v shape also breaks both equations
    FieldExpr vshape = catalog("sine_mode", {1.0}, unit_iv()) +
                       0.1 * catalog("sine_mode", {2.0}, unit_iv());
    CHECK_THROWS_AS(run_singular_system({"mixed modes", vshape}, c1, f, two, unit_iv(), rule),
                    ResidualTooLarge);
}

TEST_CASE("singular system rescaled instance") {
    ExponentPair two(2.0);
    QuadratureRule rule;
    Domain dom = Domain::interval(0.0, 2.0);
    double c1 = std::pow(M_PI / 2.0, -4.0);
    NamedField v{"sine_mode 1 on (0,2)", catalog("sine_mode", {1.0}, dom)};
    ProportionalityReport rep =
        run_singular_system(v, c1, nonlinearity_catalog("identity", two), two, dom, rule);
    CHECK(std::abs(rep.c1_recovered - c1) <= 1e-12 * c1 * 10.0 + 1e-12);
    CHECK(std::abs(rep.int_R) <= 1e-10);
}

TEST_CASE("morse fixtures") {
    ExponentPair two(2.0);
    MorseReport rep =
        run_morse(one_field(), nonlinearity_catalog("identity", two), unit_iv(), 199);
    EigenResult oracle = p2_oracle(unit_iv(), FieldExpr::constant(1.0, 1), 199);
    CHECK(rep.morse_index_zero);
    CHECK(rep.min_eigenvalue > 0.0);
    CHECK(std::abs(rep.min_eigenvalue - (oracle.lambda - 1.0)) <= 1e-8 * oracle.lambda);
    for (const auto& q : rep.quad_form) CHECK(q.ok);

    // f(y) = y^2/(1+y): f(0) = 0, f'(0) = 0, so the shift vanishes
    FieldExpr y = FieldExpr::coordinate(0, 1);
    NonlinearityProfile f0(y * y / (FieldExpr::constant(1.0) + y), "y^2/(1+y)");
    MorseReport rep0 = run_morse(one_field(), f0, unit_iv(), 199);
    CHECK(std::abs(rep0.min_eigenvalue - oracle.lambda) <= 1e-8 * oracle.lambda);

    CHECK_THROWS_AS(run_morse(one_field(), nonlinearity_catalog("linear2", two), unit_iv(), 99),
                    HypothesisViolation);

    // a = 2 pi^4 passes the hypothesis gate but the shifted operator dips
    // negative, so the index-zero flag must come back false.
    MorseReport big = run_morse({"2 pi^4", FieldExpr::constant(2.0 * pi4(), 1)},
                                nonlinearity_catalog("identity", two), unit_iv(), 199);
    CHECK_FALSE(big.morse_index_zero);
    CHECK(big.min_eigenvalue < 0.0);
}

TEST_CASE("point evals serialize to JSON with the type's field names") {
    Domain dom = unit_iv();
    PiconePointEval ev = eval_L_power(catalog("bubble", {}, dom), catalog("sine_mode", {1.0}, dom),
                                      Point::p1(0.4), ExponentPair(2.0));
    std::string j = to_json(ev);
    for (const char* key : {"\"point\"", "\"L\"", "\"R\"", "\"residual\"", "\"term_I\"",
                            "\"term_II\"", "\"term_III\"", "\"admissible\"", "\"variant\""})
        CHECK(j.find(key) != std::string::npos);
}

TEST_CASE("report serializations carry the schema marker") {
    ExponentPair two(2.0);
    QuadratureRule rule;
    HardyReport rep = run_hardy(sine_field(), nonlinearity_catalog("identity", two), one_field(),
                                pi4(), two, hardy_corpus(unit_iv()), unit_iv(), rule);
    std::string j = to_json(rep);
    CHECK(j.find("\"schema\": 1") != std::string::npos);
    CHECK(j.find("all_pass") != std::string::npos);
    std::string csv = to_csv(rep);
    CHECK(csv.find("u,lhs,rhs,margin") == 0);
}

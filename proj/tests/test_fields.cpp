#include <cmath>

#include "doctest.h"

#include "piconelab/fields.hpp"

using namespace piconelab;

TEST_CASE("conjugate exponents") {
    CHECK(ExponentPair(2.0).q == 2.0);
    CHECK(ExponentPair(3.0).q == doctest::Approx(1.5).epsilon(1e-15));
    for (double p : {1.1, 1.5, 2.0, 2.5, 3.0, 4.0, 7.3}) {
        ExponentPair e(p);
        CHECK(std::abs(1.0 / e.p + 1.0 / e.q - 1.0) <= 1e-15);
    }
    CHECK_THROWS_AS(ExponentPair(1.0), ConfigError);
    CHECK_THROWS_AS(ExponentPair(0.5), ConfigError);
}

TEST_CASE("admissible_pair on the sine mode") {
    Domain dom = Domain::interval(0.0, 1.0);
    FieldExpr v = catalog("sine_mode", {1.0}, dom);
    auto samples = interior_samples(dom, 101);
    AdmissibilityReport rep = admissible_pair(v, v, dom, samples, ExponentPair(2.0));
    CHECK(rep.ok());
    CHECK(rep.sample_count == 101);
    CHECK(rep.max_lap_v < 0.0);
    // lap v = -pi^2 v, so the largest (least negative) value sits at min v.
    CHECK(rep.max_lap_v == doctest::Approx(-M_PI * M_PI * rep.min_v).epsilon(1e-12));
}

TEST_CASE("admissible_pair flags and accepts the expected fields") {
    Domain dom = Domain::interval(0.0, 1.0);
    auto samples = interior_samples(dom, 101);
    FieldExpr x = FieldExpr::coordinate(0, 1);

    FieldExpr parab = x * (FieldExpr::constant(1.0) - x);
    AdmissibilityReport ok = admissible_pair(parab, parab, dom, samples, ExponentPair(2.0));
    CHECK(ok.ok());
    CHECK(ok.max_lap_v == doctest::Approx(-2.0).epsilon(1e-13));

    FieldExpr v2 = catalog("sine_mode", {2.0}, dom);
    AdmissibilityReport bad = admissible_pair(v2, v2, dom, samples, ExponentPair(2.0));
    CHECK(!bad.ok());
}

TEST_CASE("u-violations are subsumed by v-violations for the same field") {
    Domain dom = Domain::interval(0.0, 1.0);
    auto samples = interior_samples(dom, 257);
    for (const char* name : {"sine_mode", "bubble", "gauss_bump"}) {
        FieldExpr v = catalog(name, {}, dom);
        AdmissibilityReport rep = admissible_pair(v, v, dom, samples, ExponentPair(2.0));
        bool v_ok = true;
        for (const auto& viol : rep.violations)
            if (viol.condition == "v > 0") v_ok = false;
        if (v_ok)
            for (const auto& viol : rep.violations) CHECK(viol.condition != "u >= 0");
    }
}

TEST_CASE("admissible_pair fills the nonlinearity columns when given a profile") {
    Domain dom = Domain::interval(0.0, 1.0);
    auto samples = interior_samples(dom, 101);
    ExponentPair two(2.0);
    FieldExpr v = catalog("sine_mode", {1.0}, dom);

    NonlinearityProfile ident = nonlinearity_catalog("identity", two);
    AdmissibilityReport ok = admissible_pair(v, v, dom, samples, two, false, &ident);
    CHECK(ok.ok());
    CHECK(ok.min_f > 0.0);
    CHECK(std::abs(ok.min_C1_gap) <= 1e-12);
    CHECK(ok.max_fsecond == 0.0);

    // softplus has f'' > 0 everywhere: flagged at every sample
    NonlinearityProfile sp = nonlinearity_catalog("softplus", two);
    AdmissibilityReport bad = admissible_pair(v, v, dom, samples, two, false, &sp);
    CHECK(!bad.ok());
    CHECK(bad.max_fsecond > 0.0);
}

TEST_CASE("strict u positivity is forced for p < 2") {
    Domain dom = Domain::interval(0.0, 1.0);
    FieldExpr zero = FieldExpr::constant(0.0, 1);
    FieldExpr v = catalog("sine_mode", {1.0}, dom);
    auto samples = interior_samples(dom, 11);
    CHECK(admissible_pair(zero, v, dom, samples, ExponentPair(2.0)).ok());
    CHECK(!admissible_pair(zero, v, dom, samples, ExponentPair(1.5)).ok());
}

TEST_CASE("C1 gap values") {
    ExponentPair two(2.0), three(3.0);
    NonlinearityProfile ident = nonlinearity_catalog("identity", two);
    CHECK(nonlinearity_C1_gap(ident, 3.0, two) == 0.0);

    NonlinearityProfile pw3 = nonlinearity_catalog("power", three);
    // f = y^2: f' = 2y = 4 at y = 2; (p-1) f^((p-2)/(p-1)) = 2 (y^2)^(1/2) = 4.
    CHECK(std::abs(nonlinearity_C1_gap(pw3, 2.0, three)) <= 1e-13);

    NonlinearityProfile lin2 = nonlinearity_catalog("linear2", two);
    CHECK(nonlinearity_C1_gap(lin2, 1.0, two) == doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(nonlinearity_C1_gap(ident, -1.0, two), DomainError);
    CHECK_THROWS_AS(nonlinearity_C1_gap(ident, 1.0, two, C1Variant::statement), DomainError);
    // The statement variant is computable away from p = 2.
    double st = nonlinearity_C1_gap(pw3, 2.0, three, C1Variant::statement);
    CHECK(std::isfinite(st));
}

TEST_CASE("C1 equality family vanishes for every p") {
    for (double pv : {1.5, 2.0, 3.0, 4.0}) {
        ExponentPair p(pv);
        NonlinearityProfile f = nonlinearity_catalog("power", p);
        for (double y : {0.3, 1.0, 2.7, 9.0})
            CHECK(std::abs(nonlinearity_C1_gap(f, y, p)) <= 1e-12);
    }
}

TEST_CASE("C2 check") {
    ExponentPair two(2.0);
    CHECK(nonlinearity_C2_check(nonlinearity_catalog("identity", two), 5.0) == 0.0);
    // softplus'' = sigma (1 - sigma) = 1/4 at 0: inadmissible.
    CHECK(nonlinearity_C2_check(nonlinearity_catalog("softplus", two), 0.0) ==
          doctest::Approx(0.25).epsilon(1e-12));
    CHECK(nonlinearity_C2_check(nonlinearity_catalog("sqrt", two), 4.0) ==
          doctest::Approx(-1.0 / 32.0).epsilon(1e-12));
}

TEST_CASE("catalog fixtures") {
    Domain dom = Domain::interval(0.0, 1.0);
    CHECK(eval_value(catalog("sine_mode", {1.0}, dom), Point::p1(0.5)) ==
          doctest::Approx(1.0).epsilon(1e-15));
    CHECK(eval_value(catalog("bubble", {}, dom), Point::p1(0.5)) ==
          doctest::Approx(1.0 / 16.0).epsilon(1e-15));
    CHECK(eval_value(catalog("poly", {0.0, 0.0, 1.0}, dom), Point::p1(3.0)) == 9.0);
    CHECK_THROWS_AS(catalog("no_such_entry", {}, dom), UnknownCatalogEntry);
}

TEST_CASE("Navier traces of the sine modes vanish at the endpoints") {
    for (double L : {1.0, 2.0}) {
        Domain dom = Domain::interval(0.0, L);
        for (double k : {1.0, 2.0, 3.0}) {
            FieldExpr s = catalog("sine_mode", {k}, dom);
            for (double xb : {0.0, L}) {
                Jet2 j = eval_jet(s, Point::p1(xb));
                CHECK(std::abs(j.value) <= 1e-12);
                CHECK(std::abs(laplacian(j)) <= 1e-10);
            }
        }
        FieldExpr b = catalog("bubble", {}, dom);
        for (double xb : {0.0, L}) {
            Jet2 j = eval_jet(b, Point::p1(xb));
            CHECK(std::abs(j.value) <= 1e-12);
            CHECK(std::abs(j.grad[0]) <= 1e-12);
        }
    }
}

TEST_CASE("catalog entries parse in string form") {
    Domain dom = Domain::interval(0.0, 2.0);
    FieldExpr s = catalog_entry("sine_mode 1", dom);
    CHECK(eval_value(s, Point::p1(1.0)) == doctest::Approx(1.0).epsilon(1e-15));

    Domain rect = Domain::rectangle(0.0, 1.0, 0.0, 1.0);
    FieldExpr prod = catalog_entry("product2d (sine_mode 1) (bubble)", rect);
    double want = std::sin(M_PI * 0.25) * (0.5 * 0.5 * 0.5 * 0.5);
    CHECK(eval_value(prod, Point::p2(0.25, 0.5)) == doctest::Approx(want).epsilon(1e-14));

    FieldExpr raw = catalog_entry("(* 2 x0)", dom);
    CHECK(eval_value(raw, Point::p1(0.3)) == doctest::Approx(0.6).epsilon(1e-15));

    FieldExpr atom = catalog_entry("x0", dom);
    CHECK(eval_value(atom, Point::p1(0.3)) == 0.3);

    CHECK_THROWS_AS(catalog_entry("nope 1 2", dom), UnknownCatalogEntry);
}

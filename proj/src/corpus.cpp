#include "piconelab/corpus.hpp"

#include <random>

namespace piconelab {

Domain corpus_domain_1d() { return Domain::interval(0.0, 1.0); }
Domain corpus_domain_2d() { return Domain::rectangle(0.0, 1.0, 0.0, 1.0); }

namespace {

FieldExpr x0_1d() { return FieldExpr::coordinate(0, 1); }

NamedField named(const std::string& name, FieldExpr e) { return {name, std::move(e)}; }

} // namespace

std::vector<IdentityPair> identity_corpus_1d() {
    Domain dom = corpus_domain_1d();
    FieldExpr x = x0_1d();
    FieldExpr sine1 = catalog("sine_mode", {1.0}, dom);
    FieldExpr bubble = catalog("bubble", {}, dom);
    FieldExpr parab = x * (1.0 + (-x)); // x (1 - x)
    FieldExpr gauss = catalog("gauss_bump", {}, dom);

    std::vector<IdentityPair> pairs;
    pairs.push_back({named("bubble", bubble), named("sine_mode 1", sine1)});
    pairs.push_back({named("sine_mode 1", sine1), named("x(1-x)", parab)});
    pairs.push_back({named("x(1-x)", parab), named("2-x^2", 2.0 + (-(x * x)))});
    pairs.push_back({named("bubble", bubble), named("gauss_bump", gauss)});
    pairs.push_back({named("x^2(1-x)", x * x * (1.0 + (-x))),
                     named("sin+parabola", sine1 + parab)});
    pairs.push_back({named("(1+x)sin", (1.0 + x) * sine1),
                     named("cos(x-1/2)", cos(x - FieldExpr::constant(0.5)))});
    return pairs;
}

std::vector<IdentityPair> identity_corpus_2d() {
    Domain dom = corpus_domain_2d();
    FieldExpr x = FieldExpr::coordinate(0, 2);
    FieldExpr y = FieldExpr::coordinate(1, 2);
    FieldExpr sinsin = catalog("sine_mode", {1.0}, dom);
    FieldExpr bub2 = catalog("bubble", {}, dom);
    FieldExpr px = x * (1.0 + (-x));
    FieldExpr py = y * (1.0 + (-y));
    FieldExpr gauss2 = catalog("gauss_bump", {}, dom);

    std::vector<IdentityPair> pairs;
    pairs.push_back({named("bubble2d", bub2), named("sin sin", sinsin)});
    pairs.push_back({named("sin sin", sinsin), named("xy bilinear", px * py)});
    pairs.push_back({named("xy bilinear", px * py), named("3-x^2-y^2", 3.0 + (-(x * x)) + (-(y * y)))});
    pairs.push_back({named("bubble_x parab_y",
                           compose1(catalog("bubble", {}, corpus_domain_1d()), x) * py),
                     named("sin+bilinear", sinsin + px * py)});
    pairs.push_back({named("(2+x)sinsin", (2.0 + x) * sinsin), named("gauss2d", gauss2)});
    pairs.push_back({named("parab_x sin_y", px * compose1(catalog("sine_mode", {1.0}, corpus_domain_1d()), y)),
                     named("bilinear sum", px + py)});
    return pairs;
}

std::vector<NamedField> hardy_corpus(const Domain& dom) {
    std::vector<NamedField> corpus;
    corpus.push_back(named("bubble", catalog("bubble", {}, dom)));
    if (dom.dim == 1) {
        FieldExpr x = x0_1d();
        FieldExpr s = x - FieldExpr::constant(dom.lo[0]);
        FieldExpr t = FieldExpr::constant(dom.hi[0]) - x;
        corpus.push_back(named("quartic bubble", pow_int(s, 4) * pow_int(t, 4)));
        FieldExpr sine1 = catalog("sine_mode", {1.0}, dom);
        corpus.push_back(named("sin^2", sine1 * sine1));
        corpus.push_back(named("sine_mode 1", sine1)); // diagnostic: gradient does not vanish
    } else {
        corpus.push_back(named("sin sin", catalog("sine_mode", {1.0}, dom)));
    }
    return corpus;
}

std::vector<NamedField> sturm_candidates(const Domain& dom) {
    std::vector<NamedField> cand;
    cand.push_back(named("sine_mode 1", catalog("sine_mode", {1.0}, dom)));
    cand.push_back(named("gauss_bump", catalog("gauss_bump", {}, dom)));
    if (dom.dim == 1) {
        FieldExpr x = x0_1d();
        FieldExpr s = x - FieldExpr::constant(dom.lo[0]);
        FieldExpr t = FieldExpr::constant(dom.hi[0]) - x;
        cand.push_back(named("parabola", s * t));
        cand.push_back(named("shifted parabola", 1.0 + s * t));
    }
    return cand;
}

std::vector<Point> random_interior_points(const Domain& dom, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto unit = [&]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    std::vector<Point> pts;
    pts.reserve(static_cast<size_t>(count));
    for (int k = 0; k < count; ++k) {
        Point p;
        p.dim = dom.dim;
        for (int ax = 0; ax < dom.dim; ++ax) {
            size_t a = static_cast<size_t>(ax);
            double margin = 1e-3 * dom.length(ax);
            p.x[a] = dom.lo[a] + margin + (dom.length(ax) - 2.0 * margin) * unit();
        }
        pts.push_back(p);
    }
    return pts;
}

} // namespace piconelab

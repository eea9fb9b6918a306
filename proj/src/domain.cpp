#include "piconelab/domain.hpp"

#include <sstream>

namespace piconelab {

Domain Domain::interval(double a, double b) {
    if (!(a < b)) throw ConfigError("interval requires a < b");
    Domain d;
    d.dim = 1;
    d.lo = {a, 0.0};
    d.hi = {b, 0.0};
    return d;
}

Domain Domain::rectangle(double a1, double b1, double a2, double b2) {
    if (!(a1 < b1) || !(a2 < b2)) throw ConfigError("rectangle requires a < b on each axis");
    Domain d;
    d.dim = 2;
    d.lo = {a1, a2};
    d.hi = {b1, b2};
    return d;
}

double Domain::measure() const {
    double m = length(0);
    if (dim == 2) m *= length(1);
    return m;
}

bool Domain::contains_interior(const Point& p) const {
    if (p.dim != dim) return false;
    for (int i = 0; i < dim; ++i)
        if (!(p[i] > lo[static_cast<size_t>(i)] && p[i] < hi[static_cast<size_t>(i)])) return false;
    return true;
}

bool Domain::strictly_inside(const Domain& other) const {
    if (dim != other.dim) return false;
    bool equal = true;
    for (int i = 0; i < dim; ++i) {
        size_t k = static_cast<size_t>(i);
        if (lo[k] < other.lo[k] || hi[k] > other.hi[k]) return false;
        if (lo[k] != other.lo[k] || hi[k] != other.hi[k]) equal = false;
    }
    return !equal;
}

std::string Domain::describe() const {
    std::ostringstream os;
    if (dim == 1)
        os << "interval " << lo[0] << " " << hi[0];
    else
        os << "rectangle " << lo[0] << " " << hi[0] << " " << lo[1] << " " << hi[1];
    return os.str();
}

Domain parse_domain(const std::string& text) {
    std::istringstream is(text);
    std::string kind;
    is >> kind;
    if (kind == "interval") {
        double a, b;
        if (!(is >> a >> b)) throw ConfigError("domain: expected 'interval a b'");
        return Domain::interval(a, b);
    }
    if (kind == "rectangle") {
        double a1, b1, a2, b2;
        if (!(is >> a1 >> b1 >> a2 >> b2))
            throw ConfigError("domain: expected 'rectangle a1 b1 a2 b2'");
        return Domain::rectangle(a1, b1, a2, b2);
    }
    throw ConfigError("unknown domain kind '" + kind + "' (interval|rectangle)");
}

std::vector<Point> interior_samples(const Domain& dom, int per_axis) {
    std::vector<Point> pts;
    if (per_axis < 1) throw ConfigError("interior_samples requires per_axis >= 1");
    auto coord = [&](int axis, int i) {
        return dom.lo[static_cast<size_t>(axis)] + (i + 0.5) * dom.length(axis) / per_axis;
    };
    if (dom.dim == 1) {
        pts.reserve(static_cast<size_t>(per_axis));
        for (int i = 0; i < per_axis; ++i) pts.push_back(Point::p1(coord(0, i)));
    } else {
        pts.reserve(static_cast<size_t>(per_axis) * per_axis);
        for (int i = 0; i < per_axis; ++i)
            for (int j = 0; j < per_axis; ++j) pts.push_back(Point::p2(coord(0, i), coord(1, j)));
    }
    return pts;
}

std::vector<Point> boundary_samples(const Domain& dom, int per_edge) {
    std::vector<Point> pts;
    if (dom.dim == 1) {
        pts.push_back(Point::p1(dom.lo[0]));
        pts.push_back(Point::p1(dom.hi[0]));
        return pts;
    }
    for (int i = 0; i < per_edge; ++i) {
        double tx = dom.lo[0] + i * dom.length(0) / (per_edge - 1);
        double ty = dom.lo[1] + i * dom.length(1) / (per_edge - 1);
        pts.push_back(Point::p2(tx, dom.lo[1]));
        pts.push_back(Point::p2(tx, dom.hi[1]));
        pts.push_back(Point::p2(dom.lo[0], ty));
        pts.push_back(Point::p2(dom.hi[0], ty));
    }
    return pts;
}

} // namespace piconelab

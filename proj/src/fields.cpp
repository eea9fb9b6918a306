#include "piconelab/fields.hpp"

#include <cmath>
#include <sstream>

namespace piconelab {

ExponentPair::ExponentPair(double p_) : p(p_), q(0.0) {
    if (!(p > 1.0) || !std::isfinite(p))
        throw ConfigError("exponent p must satisfy 1 < p < inf, got " + std::to_string(p_));
    q = p / (p - 1.0);
    if (std::abs(1.0 / p + 1.0 / q - 1.0) > 1e-15)
        throw Error("conjugate exponent identity failed for p = " + std::to_string(p_));
}

bool ExponentPair::p_is_integer() const { return std::round(p) == p; }

NonlinearityProfile::NonlinearityProfile(FieldExpr f, std::string label)
    : expr_(std::move(f)), label_(std::move(label)) {
    if (expr_.dim() != 1) throw DimensionMismatch("nonlinearity must be a 1-D expression");
}

Jet2 NonlinearityProfile::jet(double y) const { return eval_jet(expr_, Point::p1(y)); }
double NonlinearityProfile::f(double y) const { return eval_value(expr_, Point::p1(y)); }
double NonlinearityProfile::fprime(double y) const { return jet(y).grad[0]; }
double NonlinearityProfile::fsecond(double y) const { return jet(y).hess[0][0]; }

double nonlinearity_C1_gap(const NonlinearityProfile& profile, double y, const ExponentPair& p,
                           C1Variant variant) {
    Jet2 j = profile.jet(y);
    if (!(j.value > 0.0))
        throw DomainError("nonlinearity " + profile.label() + " is not positive at y = " +
                          std::to_string(y));
    double e;
    if (variant == C1Variant::proof) {
        e = (p.p - 2.0) / (p.p - 1.0);
    } else {
        if (p.p == 2.0)
            throw DomainError("statement-variant exponent (p-1)/(p-2) is undefined at p = 2");
        e = (p.p - 1.0) / (p.p - 2.0);
    }
    return j.grad[0] - (p.p - 1.0) * std::pow(j.value, e);
}

double nonlinearity_C2_check(const NonlinearityProfile& profile, double y) {
    return profile.fsecond(y);
}

AdmissibilityReport admissible_pair(const FieldExpr& u, const FieldExpr& v, const Domain& domain,
                                    const std::vector<Point>& samples, const ExponentPair& p,
                                    bool strict_u_positive, const NonlinearityProfile* profile) {
    // u^(p-2) appears in the identities for p < 2, so u = 0 is not evaluable there.
    bool strict_u = strict_u_positive || p.p < 2.0;

    AdmissibilityReport rep;
    rep.sample_count = static_cast<int>(samples.size());
    rep.min_u = rep.min_v = std::numeric_limits<double>::infinity();
    rep.max_lap_v = -std::numeric_limits<double>::infinity();
    rep.min_f = rep.min_C1_gap = std::numeric_limits<double>::quiet_NaN();
    rep.max_fsecond = std::numeric_limits<double>::quiet_NaN();
    if (profile) {
        rep.min_f = rep.min_C1_gap = std::numeric_limits<double>::infinity();
        rep.max_fsecond = -std::numeric_limits<double>::infinity();
    }

    for (const Point& x : samples) {
        if (!domain.contains_interior(x))
            throw Error("admissibility sample lies outside the open interior");
        double uv = eval_value(u, x);
        Jet2 jv = eval_jet(v, x);
        double lap_v = laplacian(jv);

        if (uv < rep.min_u) rep.min_u = uv;
        if (jv.value < rep.min_v) rep.min_v = jv.value;
        if (lap_v > rep.max_lap_v) rep.max_lap_v = lap_v;

        if (strict_u ? !(uv > 0.0) : !(uv >= 0.0))
            rep.violations.push_back({x, strict_u ? "u > 0" : "u >= 0"});
        if (!(jv.value > 0.0)) rep.violations.push_back({x, "v > 0"});
        if (!(lap_v < 0.0)) rep.violations.push_back({x, "-lap v > 0"});

        if (profile) {
            Jet2 jf = profile->jet(jv.value);
            if (jf.value < rep.min_f) rep.min_f = jf.value;
            if (!(jf.value > 0.0)) {
                rep.violations.push_back({x, "f(v) > 0"});
            } else {
                double e = (p.p - 2.0) / (p.p - 1.0);
                double gap = jf.grad[0] - (p.p - 1.0) * std::pow(jf.value, e);
                if (gap < rep.min_C1_gap) rep.min_C1_gap = gap;
                // The condition is non-strict; tiny negative values from the
                // equality family y^(p-1) are rounding, not violations.
                if (gap < -1e-12 * std::max(1.0, std::abs(jf.grad[0])))
                    rep.violations.push_back({x, "f' >= (p-1) f^((p-2)/(p-1))"});
            }
            double f2 = jf.hess[0][0];
            if (f2 > rep.max_fsecond) rep.max_fsecond = f2;
            if (!(f2 <= 1e-12)) rep.violations.push_back({x, "f'' <= 0"});
        }
    }
    return rep;
}

namespace {

FieldExpr catalog_1d(const std::string& name, const std::vector<double>& params, double a,
                     double b) {
    FieldExpr x = FieldExpr::coordinate(0, 1);
    double len = b - a;
    if (name == "sine_mode") {
        double k = params.empty() ? 1.0 : params[0];
        return sin(FieldExpr::constant(k * M_PI / len) * (x - FieldExpr::constant(a)));
    }
    if (name == "bubble") {
        FieldExpr s = x - FieldExpr::constant(a);
        FieldExpr t = FieldExpr::constant(b) - x;
        return pow_int(s, 2) * pow_int(t, 2);
    }
    if (name == "gauss_bump") {
        double s = params.empty() ? len : params[0];
        FieldExpr z = (x - FieldExpr::constant(0.5 * (a + b))) / FieldExpr::constant(s);
        return exp(-(z * z));
    }
    if (name == "poly") {
        if (params.empty()) throw UnknownCatalogEntry("poly requires coefficients");
        FieldExpr acc = FieldExpr::constant(params[0]);
        for (size_t i = 1; i < params.size(); ++i)
            acc = acc + FieldExpr::constant(params[i]) * pow_int(x, static_cast<int>(i));
        return acc;
    }
    throw UnknownCatalogEntry("unknown catalog entry '" + name + "'");
}

} // namespace

FieldExpr catalog(const std::string& name, const std::vector<double>& params, const Domain& dom) {
    if (name == "product2d")
        throw UnknownCatalogEntry("product2d takes sub-entries; use catalog_entry "
                                  "(\"product2d (f) (g)\")");
    if (dom.dim == 1) return catalog_1d(name, params, dom.lo[0], dom.hi[0]);
    // poly stays a function of x0; the other entries tensorize across axes.
    if (name == "poly") {
        FieldExpr f = catalog_1d(name, params, dom.lo[0], dom.hi[0]);
        return compose1(f, FieldExpr::coordinate(0, 2));
    }
    FieldExpr fx = catalog_1d(name, params, dom.lo[0], dom.hi[0]);
    FieldExpr fy = catalog_1d(name, params, dom.lo[1], dom.hi[1]);
    return compose1(fx, FieldExpr::coordinate(0, 2)) * compose1(fy, FieldExpr::coordinate(1, 2));
}

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// Split "product2d (spec1) (spec2)" into its two parenthesized groups.
std::vector<std::string> paren_groups(const std::string& s) {
    std::vector<std::string> groups;
    int depth = 0;
    size_t start = 0;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') {
            if (depth == 0) start = i + 1;
            ++depth;
        } else if (s[i] == ')') {
            --depth;
            if (depth < 0) throw ConfigError("unbalanced ')' in catalog entry");
            if (depth == 0) groups.push_back(s.substr(start, i - start));
        }
    }
    if (depth != 0) throw ConfigError("unbalanced '(' in catalog entry");
    return groups;
}

} // namespace

FieldExpr catalog_entry(const std::string& spec_in, const Domain& dom) {
    std::string spec = trim(spec_in);
    if (spec.empty()) throw UnknownCatalogEntry("empty catalog entry");
    if (spec[0] == '(') return parse_field(spec, dom.dim);

    std::istringstream is(spec);
    std::string name;
    is >> name;
    if (name == "product2d") {
        if (dom.dim != 2) throw DimensionMismatch("product2d requires a 2-D domain");
        auto groups = paren_groups(spec.substr(name.size()));
        if (groups.size() != 2) throw ConfigError("product2d expects exactly two (entries)");
        FieldExpr fx = catalog_entry(groups[0], Domain::interval(dom.lo[0], dom.hi[0]));
        FieldExpr fy = catalog_entry(groups[1], Domain::interval(dom.lo[1], dom.hi[1]));
        return compose1(fx, FieldExpr::coordinate(0, 2)) *
               compose1(fy, FieldExpr::coordinate(1, 2));
    }
    std::vector<double> params;
    double v;
    while (is >> v) params.push_back(v);
    try {
        return catalog(name, params, dom);
    } catch (const UnknownCatalogEntry&) {
        // bare atoms ("x0", "pi", "0.5") are valid expressions too
        try {
            return parse_field(spec, dom.dim);
        } catch (const Error&) {
            throw UnknownCatalogEntry("unknown catalog entry '" + name + "'");
        }
    }
}

NonlinearityProfile nonlinearity_catalog(const std::string& name, const ExponentPair& p) {
    FieldExpr y = FieldExpr::coordinate(0, 1);
    if (name == "identity") return NonlinearityProfile(y, "identity");
    if (name == "power") return NonlinearityProfile(pow_auto(y, p.p - 1.0), "power");
    if (name == "sqrt") return NonlinearityProfile(pow_real(y, 0.5), "sqrt");
    if (name == "linear2") return NonlinearityProfile(2.0 * y, "linear2");
    if (name == "softplus")
        return NonlinearityProfile(log(1.0 + exp(y)), "softplus");
    throw UnknownCatalogEntry("unknown nonlinearity '" + name + "'");
}

} // namespace piconelab

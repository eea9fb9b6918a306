#include "piconelab/quadrature.hpp"

#include <cmath>
#include <sstream>

namespace piconelab {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw ConfigError("Gauss order must be >= 1");
    nodes.assign(static_cast<size_t>(n), 0.0);
    weights.assign(static_cast<size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        // Chebyshev initial guess, refined by Newton on P_n.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            if (n == 1) p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double pn = n == 1 ? x : p1;
            double pnm1 = n == 1 ? 1.0 : p0;
            dp = n * (x * pn - pnm1) / (x * x - 1.0);
            double dx = pn / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[static_cast<size_t>(i)] = x;
        weights[static_cast<size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    // Newton starting guesses run from +1 toward -1; store ascending.
    for (int i = 0; i < n / 2; ++i) {
        std::swap(nodes[static_cast<size_t>(i)], nodes[static_cast<size_t>(n - 1 - i)]);
        std::swap(weights[static_cast<size_t>(i)], weights[static_cast<size_t>(n - 1 - i)]);
    }
}

QuadratureRule::QuadratureRule(int panels, int order) : panels_(panels), order_(order) {
    if (panels < 1) throw ConfigError("quadrature panels must be >= 1");
    gauss_legendre(order, ref_nodes_, ref_weights_);
}

void QuadratureRule::nodes1d(double a, double b, std::vector<double>& xs,
                             std::vector<double>& ws) const {
    xs.clear();
    ws.clear();
    xs.reserve(static_cast<size_t>(panels_ * order_));
    ws.reserve(static_cast<size_t>(panels_ * order_));
    double hp = (b - a) / panels_;
    for (int pnl = 0; pnl < panels_; ++pnl) {
        double lo = a + pnl * hp;
        double mid = lo + 0.5 * hp;
        for (int k = 0; k < order_; ++k) {
            xs.push_back(mid + 0.5 * hp * ref_nodes_[static_cast<size_t>(k)]);
            ws.push_back(0.5 * hp * ref_weights_[static_cast<size_t>(k)]);
        }
    }
}

std::vector<Point> quadrature_points(const Domain& domain, const QuadratureRule& rule) {
    std::vector<double> xs, ws;
    rule.nodes1d(domain.lo[0], domain.hi[0], xs, ws);
    std::vector<Point> pts;
    if (domain.dim == 1) {
        pts.reserve(xs.size());
        for (double x : xs) pts.push_back(Point::p1(x));
        return pts;
    }
    std::vector<double> ys, wy;
    rule.nodes1d(domain.lo[1], domain.hi[1], ys, wy);
    pts.reserve(xs.size() * ys.size());
    for (double x : xs)
        for (double y : ys) pts.push_back(Point::p2(x, y));
    return pts;
}

double integrate(const std::function<double(const Point&)>& f, const Domain& domain,
                 const QuadratureRule& rule) {
    std::vector<double> xs, ws;
    rule.nodes1d(domain.lo[0], domain.hi[0], xs, ws);
    double acc = 0.0;
    if (domain.dim == 1) {
        for (size_t i = 0; i < xs.size(); ++i) acc += ws[i] * f(Point::p1(xs[i]));
        return acc;
    }
    std::vector<double> ys, wy;
    rule.nodes1d(domain.lo[1], domain.hi[1], ys, wy);
    for (size_t i = 0; i < xs.size(); ++i) {
        double row = 0.0;
        for (size_t j = 0; j < ys.size(); ++j) row += wy[j] * f(Point::p2(xs[i], ys[j]));
        acc += ws[i] * row;
    }
    return acc;
}

PiconeIntegralReport integrate_picone(const FieldExpr& u, const FieldExpr& v,
                                      const ExponentPair& p, const PiconeVariantSpec& spec,
                                      const Domain& domain, const QuadratureRule& rule) {
    auto eval_point = [&](const Point& x) -> PiconePointEval {
        switch (spec.variant) {
        case PiconeVariant::power: return eval_L_power(u, v, x, p);
        case PiconeVariant::dunninger_p2: return eval_dunninger_p2(u, v, x);
        default:
            if (!spec.profile)
                throw ConfigError("nonlinear variant requires a nonlinearity profile");
            return eval_L_nonlinear(u, v, *spec.profile, x, p, spec.form);
        }
    };

    std::vector<Point> pts = quadrature_points(domain, rule);
    std::vector<std::string> offending;
    for (const Point& x : pts) {
        bool ok = true;
        try {
            ok = eval_point(x).admissible;
        } catch (const DomainError&) {
            ok = false;
        } catch (const SingularEvaluation&) {
            ok = false;
        }
        if (!ok && offending.size() < 8) {
            std::ostringstream os;
            os << "(" << x[0];
            if (x.dim == 2) os << ", " << x[1];
            os << ")";
            offending.push_back(os.str());
        }
    }
    if (!offending.empty()) {
        std::string msg = "inadmissible quadrature nodes:";
        for (const auto& s : offending) msg += " " + s;
        throw AdmissibilityViolation(msg);
    }

    PiconeIntegralReport rep;
    rep.node_count = static_cast<int>(pts.size());
    rep.min_pointwise_L = std::numeric_limits<double>::infinity();
    rep.min_pointwise_L_scaled = std::numeric_limits<double>::infinity();
    double int_L = integrate(
        [&](const Point& x) {
            PiconePointEval ev = eval_point(x);
            if (ev.L < rep.min_pointwise_L) rep.min_pointwise_L = ev.L;
            double scaled = ev.L / ev.scale;
            if (scaled < rep.min_pointwise_L_scaled) rep.min_pointwise_L_scaled = scaled;
            return ev.L;
        },
        domain, rule);
    double int_R = integrate(
        [&](const Point& x) {
            switch (spec.variant) {
            case PiconeVariant::power: return eval_R_power(u, v, x, p);
            case PiconeVariant::dunninger_p2: return eval_dunninger_p2(u, v, x).R;
            default: return eval_R_nonlinear(u, v, *spec.profile, x, p);
            }
        },
        domain, rule);
    rep.int_L = int_L;
    rep.int_R = int_R;
    return rep;
}

} // namespace piconelab

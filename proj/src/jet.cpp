#include "piconelab/jet.hpp"

#include <cmath>

namespace piconelab {

namespace {

double ipow(double t, int k) {
    if (k < 0) return 1.0 / ipow(t, -k);
    double acc = 1.0, base = t;
    int e = k;
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

[[noreturn]] void domain_error(const char* what, const ExprHandle& n, double v) {
    throw DomainError(std::string(what) + " in subterm " + to_sexpr(n) +
                      " (base value " + std::to_string(v) + ")");
}

struct JetEvaluator {
    const Point& x;
    int dim;

    Jet2 chain(const Jet2& u, double f, double f1, double f2) const {
        Jet2 r;
        r.dim = dim;
        r.value = f;
        for (int i = 0; i < dim; ++i) r.grad[i] = f1 * u.grad[i];
        for (int i = 0; i < dim; ++i)
            for (int j = i; j < dim; ++j) {
                double h = f1 * u.hess[i][j] + f2 * u.grad[i] * u.grad[j];
                r.hess[i][j] = h;
                r.hess[j][i] = h;
            }
        return r;
    }

    Jet2 eval(const ExprHandle& n) const {
        Jet2 r;
        r.dim = dim;
        switch (n->kind) {
        case NodeKind::Constant:
            r.value = n->cvalue;
            return r;
        case NodeKind::Coordinate: {
            int ax = n->ipayload;
            if (ax >= dim)
                throw DimensionMismatch("coordinate x" + std::to_string(ax) +
                                        " evaluated at a point of dimension " + std::to_string(dim));
            r.value = x[ax];
            r.grad[ax] = 1.0;
            return r;
        }
        case NodeKind::Add: {
            Jet2 a = eval(n->a), b = eval(n->b);
            r.value = a.value + b.value;
            for (int i = 0; i < dim; ++i) r.grad[i] = a.grad[i] + b.grad[i];
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) r.hess[i][j] = a.hess[i][j] + b.hess[i][j];
            return r;
        }
        case NodeKind::Sub: {
            Jet2 a = eval(n->a), b = eval(n->b);
            r.value = a.value - b.value;
            for (int i = 0; i < dim; ++i) r.grad[i] = a.grad[i] - b.grad[i];
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) r.hess[i][j] = a.hess[i][j] - b.hess[i][j];
            return r;
        }
        case NodeKind::Mul: {
            Jet2 a = eval(n->a), b = eval(n->b);
            r.value = a.value * b.value;
            for (int i = 0; i < dim; ++i) r.grad[i] = a.value * b.grad[i] + b.value * a.grad[i];
            for (int i = 0; i < dim; ++i)
                for (int j = i; j < dim; ++j) {
                    double h = a.value * b.hess[i][j] + b.value * a.hess[i][j] +
                               a.grad[i] * b.grad[j] + a.grad[j] * b.grad[i];
                    r.hess[i][j] = h;
                    r.hess[j][i] = h;
                }
            return r;
        }
        case NodeKind::Div: {
            Jet2 a = eval(n->a), b = eval(n->b);
            if (b.value == 0.0) domain_error("division by zero", n->b, b.value);
            double q = a.value / b.value;
            r.value = q;
            for (int i = 0; i < dim; ++i) r.grad[i] = (a.grad[i] - q * b.grad[i]) / b.value;
            for (int i = 0; i < dim; ++i)
                for (int j = i; j < dim; ++j) {
                    double h = (a.hess[i][j] - q * b.hess[i][j] - r.grad[i] * b.grad[j] -
                                r.grad[j] * b.grad[i]) /
                               b.value;
                    r.hess[i][j] = h;
                    r.hess[j][i] = h;
                }
            return r;
        }
        case NodeKind::Neg: {
            Jet2 a = eval(n->a);
            r.value = -a.value;
            for (int i = 0; i < dim; ++i) r.grad[i] = -a.grad[i];
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) r.hess[i][j] = -a.hess[i][j];
            return r;
        }
        case NodeKind::PowInt: {
            Jet2 a = eval(n->a);
            int k = n->ipayload;
            if (k < 0 && a.value == 0.0) domain_error("zero base with negative power", n->a, a.value);
            double f = ipow(a.value, k);
            double f1 = k == 0 ? 0.0 : k * ipow(a.value, k - 1);
            double f2 = (k == 0 || k == 1) ? 0.0 : double(k) * (k - 1) * ipow(a.value, k - 2);
            return chain(a, f, f1, f2);
        }
        case NodeKind::PowReal: {
            Jet2 a = eval(n->a);
            if (a.value <= 0.0) domain_error("real power of non-positive base", n->a, a.value);
            double al = n->cvalue;
            double f = std::pow(a.value, al);
            double f1 = al * std::pow(a.value, al - 1.0);
            double f2 = al * (al - 1.0) * std::pow(a.value, al - 2.0);
            return chain(a, f, f1, f2);
        }
        case NodeKind::Sin: {
            Jet2 a = eval(n->a);
            double s = std::sin(a.value), c = std::cos(a.value);
            return chain(a, s, c, -s);
        }
        case NodeKind::Cos: {
            Jet2 a = eval(n->a);
            double s = std::sin(a.value), c = std::cos(a.value);
            return chain(a, c, -s, -c);
        }
        case NodeKind::Exp: {
            Jet2 a = eval(n->a);
            double f = std::exp(a.value);
            return chain(a, f, f, f);
        }
        case NodeKind::Log: {
            Jet2 a = eval(n->a);
            if (a.value <= 0.0) domain_error("log of non-positive value", n->a, a.value);
            return chain(a, std::log(a.value), 1.0 / a.value, -1.0 / (a.value * a.value));
        }
        }
        throw Error("unreachable node kind in eval");
    }

    double value(const ExprHandle& n) const {
        switch (n->kind) {
        case NodeKind::Constant: return n->cvalue;
        case NodeKind::Coordinate: {
            int ax = n->ipayload;
            if (ax >= dim)
                throw DimensionMismatch("coordinate x" + std::to_string(ax) +
                                        " evaluated at a point of dimension " + std::to_string(dim));
            return x[ax];
        }
        case NodeKind::Add: return value(n->a) + value(n->b);
        case NodeKind::Sub: return value(n->a) - value(n->b);
        case NodeKind::Mul: return value(n->a) * value(n->b);
        case NodeKind::Div: {
            double b = value(n->b);
            if (b == 0.0) domain_error("division by zero", n->b, b);
            return value(n->a) / b;
        }
        case NodeKind::Neg: return -value(n->a);
        case NodeKind::PowInt: {
            double a = value(n->a);
            if (n->ipayload < 0 && a == 0.0)
                domain_error("zero base with negative power", n->a, a);
            return ipow(a, n->ipayload);
        }
        case NodeKind::PowReal: {
            double a = value(n->a);
            if (a <= 0.0) domain_error("real power of non-positive base", n->a, a);
            return std::pow(a, n->cvalue);
        }
        case NodeKind::Sin: return std::sin(value(n->a));
        case NodeKind::Cos: return std::cos(value(n->a));
        case NodeKind::Exp: return std::exp(value(n->a));
        case NodeKind::Log: {
            double a = value(n->a);
            if (a <= 0.0) domain_error("log of non-positive value", n->a, a);
            return std::log(a);
        }
        }
        throw Error("unreachable node kind in value");
    }
};

} // namespace

Jet2 eval_jet(const FieldExpr& expr, const Point& x) {
    if (x.dim != expr.dim())
        throw DimensionMismatch("point dimension " + std::to_string(x.dim) +
                                " does not match expression dimension " +
                                std::to_string(expr.dim()));
    JetEvaluator ev{x, expr.dim()};
    return ev.eval(expr.root());
}

double eval_value(const FieldExpr& expr, const Point& x) {
    if (x.dim != expr.dim())
        throw DimensionMismatch("point dimension " + std::to_string(x.dim) +
                                " does not match expression dimension " +
                                std::to_string(expr.dim()));
    JetEvaluator ev{x, expr.dim()};
    return ev.value(expr.root());
}

double laplacian(const Jet2& j) {
    double t = j.hess[0][0];
    if (j.dim == 2) t += j.hess[1][1];
    return t;
}

FdReport fd_crosscheck(const FieldExpr& expr, const Point& x, double h) {
    if (h <= 0.0) throw Error("fd_crosscheck requires h > 0");
    Jet2 jet = eval_jet(expr, x);
    int n = expr.dim();

    auto shifted = [&](int i, double di, int j, double dj) {
        Point p = x;
        p.x[static_cast<size_t>(i)] += di;
        if (j >= 0) p.x[static_cast<size_t>(j)] += dj;
        return eval_value(expr, p);
    };

    FdReport rep;
    double f0 = eval_value(expr, x);
    for (int i = 0; i < n; ++i) {
        double fp = shifted(i, h, -1, 0.0), fm = shifted(i, -h, -1, 0.0);
        double g = (fp - fm) / (2.0 * h);
        double err = std::abs(g - jet.grad[i]);
        if (err > rep.max_abs_gradient_err) rep.max_abs_gradient_err = err;

        double hii = (fp - 2.0 * f0 + fm) / (h * h);
        double herr = std::abs(hii - jet.hess[i][i]);
        if (herr > rep.max_abs_hessian_err) rep.max_abs_hessian_err = herr;
    }
    if (n == 2) {
        double fpp = shifted(0, h, 1, h), fpm = shifted(0, h, 1, -h);
        double fmp = shifted(0, -h, 1, h), fmm = shifted(0, -h, 1, -h);
        double hij = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
        double herr = std::abs(hij - jet.hess[0][1]);
        if (herr > rep.max_abs_hessian_err) rep.max_abs_hessian_err = herr;
    }
    return rep;
}

} // namespace piconelab

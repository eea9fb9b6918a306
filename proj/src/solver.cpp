#include "piconelab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "piconelab/picone.hpp"

namespace piconelab {

Point GridFunction::node(int i, int j) const {
    double x0 = domain.lo[0] + (i + 1) * h(0);
    if (dim() == 1) return Point::p1(x0);
    double x1 = domain.lo[1] + (j + 1) * h(1);
    return Point::p2(x0, x1);
}

GridFunction GridFunction::zeros(const Domain& dom, int n) {
    if (n < 3) throw ConfigError("grid needs at least 3 interior points per axis");
    GridFunction g;
    g.domain = dom;
    g.n = n;
    g.values.assign(dom.dim == 1 ? static_cast<size_t>(n)
                                 : static_cast<size_t>(n) * static_cast<size_t>(n),
                    0.0);
    return g;
}

GridFunction GridFunction::sample(const FieldExpr& f, const Domain& dom, int n) {
    GridFunction g = zeros(dom, n);
    if (dom.dim == 1) {
        for (int i = 0; i < n; ++i) g.values[static_cast<size_t>(i)] = eval_value(f, g.node(i));
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                g.values[static_cast<size_t>(i) * n + j] = eval_value(f, g.node(i, j));
    }
    return g;
}

GridFunction discrete_laplacian(const GridFunction& u) {
    GridFunction out = GridFunction::zeros(u.domain, u.n);
    int n = u.n;
    if (u.dim() == 1) {
        double ih2 = 1.0 / (u.h(0) * u.h(0));
        for (int i = 0; i < n; ++i) {
            double left = i > 0 ? u.values[static_cast<size_t>(i - 1)] : 0.0;
            double right = i < n - 1 ? u.values[static_cast<size_t>(i + 1)] : 0.0;
            out.values[static_cast<size_t>(i)] =
                (left - 2.0 * u.values[static_cast<size_t>(i)] + right) * ih2;
        }
        return out;
    }
    double ihx2 = 1.0 / (u.h(0) * u.h(0)), ihy2 = 1.0 / (u.h(1) * u.h(1));
    auto at = [&](int i, int j) -> double {
        if (i < 0 || j < 0 || i >= n || j >= n) return 0.0;
        return u.values[static_cast<size_t>(i) * n + j];
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out.values[static_cast<size_t>(i) * n + j] =
                (at(i - 1, j) - 2.0 * at(i, j) + at(i + 1, j)) * ihx2 +
                (at(i, j - 1) - 2.0 * at(i, j) + at(i, j + 1)) * ihy2;
    return out;
}

namespace {

double cell_measure(const GridFunction& u) {
    double m = u.h(0);
    if (u.dim() == 2) m *= u.h(1);
    return m;
}

// Subgradient surrogate for |t|^(p-2) t; the clamp only guards exact zeros
// and denormal magnitudes when p < 2.
double descent_sgnpow(double t, double pm1, bool clamp) {
    if (t == 0.0) return 0.0;
    double a = std::abs(t);
    if (clamp && a < 1e-12) a = 1e-12;
    double m = std::pow(a, pm1);
    return t < 0.0 ? -m : m;
}

} // namespace

double rayleigh_quotient(const GridFunction& u, const GridFunction& g, const ExponentPair& p) {
    if (u.size() != g.size()) throw DimensionMismatch("u and g live on different grids");
    GridFunction lap = discrete_laplacian(u);
    double hn = cell_measure(u);
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < u.size(); ++i) {
        num += std::pow(std::abs(lap.values[i]), p.p);
        den += g.values[i] * std::pow(std::abs(u.values[i]), p.p);
    }
    num *= hn;
    den *= hn;
    if (!(den > 0.0)) throw ZeroDenominator("sum g |u|^p vanishes");
    return num / den;
}

// ---------------------------------------------------------------------------
// banded LU

namespace detail {

BandedMatrix::BandedMatrix(int n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), ldab_(2 * kl + ku + 1),
      ab_(static_cast<size_t>(ldab_) * static_cast<size_t>(n), 0.0),
      piv_(static_cast<size_t>(n), 0) {}

double& BandedMatrix::at(int i, int j) {
    int r = kl_ + ku_ + i - j;
    if (r < 0 || r >= ldab_ || i < 0 || i >= n_ || j < 0 || j >= n_)
        throw Error("banded matrix index outside band");
    return ab_[static_cast<size_t>(j) * ldab_ + r];
}

double BandedMatrix::at(int i, int j) const {
    int r = kl_ + ku_ + i - j;
    if (r < 0 || r >= ldab_ || i < 0 || i >= n_ || j < 0 || j >= n_) return 0.0;
    return ab_[static_cast<size_t>(j) * ldab_ + r];
}

void BandedMatrix::lu_factor() {
    int bw = kl_ + ku_;
    for (int j = 0; j < n_; ++j) {
        int imax = std::min(n_ - 1, j + kl_);
        int jp = j;
        double best = std::abs(at(j, j));
        for (int i = j + 1; i <= imax; ++i) {
            double v = std::abs(at(i, j));
            if (v > best) {
                best = v;
                jp = i;
            }
        }
        piv_[static_cast<size_t>(j)] = jp;
        if (best == 0.0) throw IterationFailure("banded LU hit an exactly singular pivot");
        int cmax = std::min(n_ - 1, j + bw);
        if (jp != j)
            for (int c = j; c <= cmax; ++c) std::swap(at(j, c), at(jp, c));
        double pivot = at(j, j);
        for (int i = j + 1; i <= imax; ++i) {
            double m = at(i, j) / pivot;
            at(i, j) = m;
            if (m != 0.0)
                for (int c = j + 1; c <= cmax; ++c) at(i, c) -= m * at(j, c);
        }
    }
    factored_ = true;
}

void BandedMatrix::lu_solve(std::vector<double>& rhs) const {
    if (!factored_) throw Error("lu_solve before lu_factor");
    if (static_cast<int>(rhs.size()) != n_) throw DimensionMismatch("rhs size mismatch");
    for (int j = 0; j < n_; ++j) {
        int jp = piv_[static_cast<size_t>(j)];
        if (jp != j) std::swap(rhs[static_cast<size_t>(j)], rhs[static_cast<size_t>(jp)]);
        int imax = std::min(n_ - 1, j + kl_);
        double xj = rhs[static_cast<size_t>(j)];
        if (xj != 0.0)
            for (int i = j + 1; i <= imax; ++i) rhs[static_cast<size_t>(i)] -= at(i, j) * xj;
    }
    int bw = kl_ + ku_;
    for (int j = n_ - 1; j >= 0; --j) {
        double xj = rhs[static_cast<size_t>(j)] / at(j, j);
        rhs[static_cast<size_t>(j)] = xj;
        int imin = std::max(0, j - bw);
        if (xj != 0.0)
            for (int i = imin; i < j; ++i) rhs[static_cast<size_t>(i)] -= at(i, j) * xj;
    }
}

BandedMatrix neg_laplacian_matrix(const GridFunction& shape) {
    int n = shape.n;
    if (shape.dim() == 1) {
        double ih2 = 1.0 / (shape.h(0) * shape.h(0));
        BandedMatrix A(n, 1, 1);
        for (int i = 0; i < n; ++i) {
            A.at(i, i) = 2.0 * ih2;
            if (i > 0) A.at(i, i - 1) = -ih2;
            if (i < n - 1) A.at(i, i + 1) = -ih2;
        }
        return A;
    }
    int nn = n * n;
    double ihx2 = 1.0 / (shape.h(0) * shape.h(0)), ihy2 = 1.0 / (shape.h(1) * shape.h(1));
    BandedMatrix A(nn, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int k = i * n + j;
            A.at(k, k) = 2.0 * ihx2 + 2.0 * ihy2;
            if (i > 0) A.at(k, k - n) = -ihx2;
            if (i < n - 1) A.at(k, k + n) = -ihx2;
            if (j > 0) A.at(k, k - 1) = -ihy2;
            if (j < n - 1) A.at(k, k + 1) = -ihy2;
        }
    return A;
}

namespace {

// M = A * A restricted to the band (A symmetric banded with half-width bw).
BandedMatrix band_square(const BandedMatrix& A, int n, int bw) {
    BandedMatrix M(n, 2 * bw, 2 * bw);
    for (int i = 0; i < n; ++i) {
        int jlo = std::max(0, i - 2 * bw), jhi = std::min(n - 1, i + 2 * bw);
        for (int j = jlo; j <= jhi; ++j) {
            int klo = std::max({0, i - bw, j - bw});
            int khi = std::min({n - 1, i + bw, j + bw});
            double s = 0.0;
            for (int k = klo; k <= khi; ++k) s += A.at(i, k) * A.at(k, j);
            M.at(i, j) = s;
        }
    }
    return M;
}

} // namespace
} // namespace detail

// ---------------------------------------------------------------------------
// descent solver

namespace {

GridFunction sample_positive_weight(const FieldExpr& g, const Domain& domain, int n) {
    GridFunction gw = GridFunction::sample(g, domain, n);
    for (double v : gw.values)
        if (!(v > 0.0))
            throw AdmissibilityViolation(
                "weight g must be positive on the interior grid (indefinite weights are "
                "outside scope); min sample " +
                std::to_string(*std::min_element(gw.values.begin(), gw.values.end())));
    return gw;
}

void normalize_b(GridFunction& u, const GridFunction& g, const ExponentPair& p, double hn) {
    double den = 0.0;
    for (size_t i = 0; i < u.size(); ++i)
        den += g.values[i] * std::pow(std::abs(u.values[i]), p.p);
    den *= hn;
    if (!(den > 0.0)) throw ZeroDenominator("normalization denominator vanished");
    double s = std::pow(den, -1.0 / p.p);
    for (double& v : u.values) v *= s;
}

void fix_sign(GridFunction& u) {
    size_t center = u.size() / 2;
    if (u.values[center] < 0.0)
        for (double& v : u.values) v = -v;
}

} // namespace

EigenResult principal_eigenvalue(const Domain& domain, const FieldExpr& g, const ExponentPair& p,
                                 int n, const EigenOptions& opts) {
    GridFunction gw = sample_positive_weight(g, domain, n);
    double hn = cell_measure(gw);
    bool clamp = p.p < 2.0;

    GridFunction u = GridFunction::sample(catalog("sine_mode", {1.0}, domain), domain, n);
    normalize_b(u, gw, p, hn);
    fix_sign(u);

    detail::BandedMatrix A = detail::neg_laplacian_matrix(u);
    A.lu_factor();
    auto precondition = [&](const std::vector<double>& r) {
        std::vector<double> d = r;
        A.lu_solve(d);
        A.lu_solve(d);
        return d;
    };

    auto quotient = [&](const GridFunction& w) {
        return rayleigh_quotient(w, gw, p);
    };

    EigenResult res;
    res.eigenfunction = u;
    double Q = quotient(u);
    res.history.push_back(Q);

    int it = 0;
    bool stalled = false;
    int plateau = 0;
    double step = opts.step0;
    double gn = std::numeric_limits<double>::infinity();
    for (; it < opts.max_iters; ++it) {
        GridFunction lap = discrete_laplacian(u);
        GridFunction s = lap;
        for (double& v : s.values) v = descent_sgnpow(v, p.p - 1.0, clamp);
        GridFunction grad_a = discrete_laplacian(s);

        double den = 0.0;
        for (size_t i = 0; i < u.size(); ++i)
            den += gw.values[i] * std::pow(std::abs(u.values[i]), p.p);
        den *= hn;

        std::vector<double> grad(u.size());
        gn = 0.0;
        for (size_t i = 0; i < u.size(); ++i) {
            double ga = p.p * hn * grad_a.values[i];
            double gb = p.p * hn * gw.values[i] * descent_sgnpow(u.values[i], p.p - 1.0, clamp);
            grad[i] = (ga - Q * gb) / den;
            gn += grad[i] * grad[i];
        }
        gn = std::sqrt(gn);
        if (gn <= opts.grad_tol) {
            res.converged = true;
            break;
        }

        std::vector<double> dir = precondition(grad);
        double m = 0.0;
        for (size_t i = 0; i < u.size(); ++i) m += grad[i] * dir[i];
        if (!(m > 0.0)) {
            dir = grad;
            m = gn * gn;
        }

        // Armijo backtracking from a warm-started step: the accepted step
        // carries over (grown 4x) so the search adapts to the preconditioned
        // direction's natural scale instead of re-probing from step0.
        double t = step;
        bool accepted = false;
        for (int bt = 0; bt < 80; ++bt) {
            GridFunction trial = u;
            for (size_t i = 0; i < u.size(); ++i) trial.values[i] -= t * dir[i];
            double qb = 0.0;
            try {
                normalize_b(trial, gw, p, hn);
                qb = quotient(trial);
            } catch (const ZeroDenominator&) {
                t *= 0.5;
                continue;
            }
            if (qb <= Q - 1e-4 * t * m) {
                u = trial;
                fix_sign(u);
                plateau = Q - qb <= 1e-14 * std::max(1.0, Q) ? plateau + 1 : 0;
                Q = qb;
                res.history.push_back(Q);
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted || plateau >= 8) {
            // No achievable Armijo decrease (or only rounding-level ones):
            // the quotient sits at its floor for this grid. For p != 2 the
            // gradient norm can stay well above grad_tol here because the
            // |lap u|^(p-2) curvature weight degenerates at the Navier
            // boundary, far outside what the p = 2 preconditioner absorbs.
            stalled = true;
            break;
        }
        step = std::min(t * 4.0, 1e12);
    }

    res.lambda = Q;
    res.eigenfunction = u;
    res.iterations = it;
    res.grad_norm = gn;
    res.converged = gn <= opts.grad_tol || stalled;
    return res;
}

// ---------------------------------------------------------------------------
// p = 2 oracle and linearized spectrum

namespace {

struct InverseIterationResult {
    double lambda = 0.0;
    std::vector<double> vec;
    int iterations = 0;
};

// Smallest eigenvalue of M x = lambda B x with M given both as a band (for
// shifted factorizations) and as a matvec (for Rayleigh quotients); B is a
// positive diagonal, or identity when empty. Fixed warm-up shift, then
// Rayleigh shifts; stops when the eigenvalue settles to 1e-12 relative.
InverseIterationResult smallest_eigenvalue(const detail::BandedMatrix& M_band, int n,
                                           const std::function<std::vector<double>(const std::vector<double>&)>& matvec,
                                           const std::vector<double>& diag_b, double sigma0,
                                           const std::vector<double>& x0) {
    auto bdot = [&](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            s += a[static_cast<size_t>(i)] * b[static_cast<size_t>(i)] *
                 (diag_b.empty() ? 1.0 : diag_b[static_cast<size_t>(i)]);
        return s;
    };
    auto rq = [&](const std::vector<double>& x) {
        std::vector<double> mx = matvec(x);
        double num = 0.0;
        for (int i = 0; i < n; ++i) num += x[static_cast<size_t>(i)] * mx[static_cast<size_t>(i)];
        return num / bdot(x, x);
    };

    std::vector<double> x = x0;
    double nrm = std::sqrt(bdot(x, x));
    for (auto& v : x) v /= nrm;
    double lambda = rq(x);

    InverseIterationResult out;
    const int warmup = 6;
    for (int it = 0; it < 100; ++it) {
        double sigma = it < warmup ? sigma0 : lambda;
        detail::BandedMatrix S = M_band;
        for (int i = 0; i < n; ++i)
            S.at(i, i) -= sigma * (diag_b.empty() ? 1.0 : diag_b[static_cast<size_t>(i)]);
        try {
            S.lu_factor();
        } catch (const IterationFailure&) {
            // Shift landed exactly on an eigenvalue; nudge and retry.
            sigma *= 1.0 + 1e-12;
            S = M_band;
            for (int i = 0; i < n; ++i)
                S.at(i, i) -= sigma * (diag_b.empty() ? 1.0 : diag_b[static_cast<size_t>(i)]);
            S.lu_factor();
        }
        std::vector<double> y(x.size());
        for (int i = 0; i < n; ++i)
            y[static_cast<size_t>(i)] =
                x[static_cast<size_t>(i)] * (diag_b.empty() ? 1.0 : diag_b[static_cast<size_t>(i)]);
        S.lu_solve(y);
        double ynrm = std::sqrt(bdot(y, y));
        if (!(ynrm > 0.0) || !std::isfinite(ynrm))
            throw IterationFailure("inverse iteration produced a degenerate vector");
        for (auto& v : y) v /= ynrm;
        x = y;
        double prev = lambda;
        lambda = rq(x);
        out.iterations = it + 1;
        if (it >= 2 && std::abs(lambda - prev) <= 1e-12 * std::max(1.0, std::abs(lambda))) break;
        if (it == 99) throw IterationFailure("inverse iteration did not settle in 100 steps");
    }
    out.lambda = lambda;
    out.vec = std::move(x);
    return out;
}

} // namespace

EigenResult p2_oracle(const Domain& domain, const FieldExpr& g, int n) {
    GridFunction gw = sample_positive_weight(g, domain, n);
    GridFunction shape = GridFunction::zeros(domain, n);
    int bw = domain.dim == 1 ? 1 : n;
    int nn = static_cast<int>(shape.size());

    detail::BandedMatrix A = detail::neg_laplacian_matrix(shape);
    detail::BandedMatrix M = detail::band_square(A, nn, bw);

    auto matvec = [&](const std::vector<double>& x) {
        GridFunction tmp = shape;
        tmp.values = x;
        GridFunction once = discrete_laplacian(tmp);
        GridFunction twice = discrete_laplacian(once);
        return twice.values;
    };

    GridFunction x0 = GridFunction::sample(catalog("sine_mode", {1.0}, domain), domain, n);
    InverseIterationResult r =
        smallest_eigenvalue(M, nn, matvec, gw.values, 0.0, x0.values);

    EigenResult res;
    res.lambda = r.lambda;
    res.iterations = r.iterations;
    res.converged = true;
    res.grad_norm = 0.0;
    res.eigenfunction = shape;
    res.eigenfunction.values = r.vec;
    ExponentPair two(2.0);
    normalize_b(res.eigenfunction, gw, two, cell_measure(gw));
    fix_sign(res.eigenfunction);
    res.history.push_back(r.lambda);
    return res;
}

double linearized_min_eigenvalue(const FieldExpr& a, double fprime0, const Domain& domain,
                                 int n) {
    GridFunction aw = GridFunction::sample(a, domain, n);
    for (double v : aw.values)
        if (!(v > 0.0))
            throw HypothesisViolation("coefficient a(x) must be positive on the interior grid");

    GridFunction shape = GridFunction::zeros(domain, n);
    int bw = domain.dim == 1 ? 1 : n;
    int nn = static_cast<int>(shape.size());

    detail::BandedMatrix A = detail::neg_laplacian_matrix(shape);
    detail::BandedMatrix M = detail::band_square(A, nn, bw);
    double max_d = 0.0;
    for (int i = 0; i < nn; ++i) {
        double d = aw.values[static_cast<size_t>(i)] * fprime0;
        M.at(i, i) -= d;
        if (d > max_d) max_d = d;
    }

    auto matvec = [&](const std::vector<double>& x) {
        GridFunction tmp = shape;
        tmp.values = x;
        GridFunction twice = discrete_laplacian(discrete_laplacian(tmp));
        for (int i = 0; i < nn; ++i)
            twice.values[static_cast<size_t>(i)] -=
                aw.values[static_cast<size_t>(i)] * fprime0 * x[static_cast<size_t>(i)];
        return twice.values;
    };

    GridFunction x0 = GridFunction::sample(catalog("sine_mode", {1.0}, domain), domain, n);
    InverseIterationResult r =
        smallest_eigenvalue(M, nn, matvec, {}, -max_d - 1.0, x0.values);
    return r.lambda;
}

} // namespace piconelab

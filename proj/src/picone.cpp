#include "piconelab/picone.hpp"

#include <cmath>
#include <cstdio>

namespace piconelab {

namespace {

// |t|^e for t >= 0 or integral e; refuses the genuinely undefined cases.
double rpow(double t, double e) {
    if (t > 0.0) return std::pow(t, e);
    if (t == 0.0) {
        if (e > 0.0) return 0.0;
        if (e == 0.0) return 1.0;
        throw SingularEvaluation("0 raised to a negative power");
    }
    if (std::round(e) == e) return std::pow(t, e);
    throw DomainError("fractional power of a negative base (value " + std::to_string(t) + ")");
}

double norm2_sq(const Jet2& a, int dim) {
    double s = a.grad[0] * a.grad[0];
    if (dim == 2) s += a.grad[1] * a.grad[1];
    return s;
}

double max_of(std::initializer_list<double> xs) {
    double m = 1.0;
    for (double v : xs)
        if (std::abs(v) > m) m = std::abs(v);
    return m;
}

void require_v_positive(double v) {
    if (!(v > 0.0)) throw DomainError("v must be positive at the evaluation point, got " +
                                      std::to_string(v));
}

void require_regular(double lap_v, const ExponentPair& p) {
    if (p.p < 2.0 && lap_v == 0.0)
        throw SingularEvaluation("|lap v|^(p-2) is singular: lap v = 0 with p < 2");
}

} // namespace

double signed_pow(double t, double e) {
    if (t == 0.0) return 0.0;
    double m = std::pow(std::abs(t), e);
    return t < 0.0 ? -m : m;
}

std::string to_string(PiconeVariant v) {
    switch (v) {
    case PiconeVariant::power: return "power";
    case PiconeVariant::nonlinear_printed: return "nonlinear_printed";
    case PiconeVariant::nonlinear_rederived: return "nonlinear_rederived";
    case PiconeVariant::dunninger_p2: return "dunninger_p2";
    }
    return "?";
}

double eval_R_power(const FieldExpr& u, const FieldExpr& v, const Point& x,
                    const ExponentPair& p) {
    Jet2 jv = eval_jet(v, x);
    require_v_positive(jv.value);
    double lap_v = laplacian(jv);
    require_regular(lap_v, p);

    FieldExpr quotient = pow_auto(u, p.p) / pow_auto(v, p.p - 1.0);
    double lap_q = laplacian(eval_jet(quotient, x));
    double lap_u = laplacian(eval_jet(u, x));
    return std::pow(std::abs(lap_u), p.p) - lap_q * signed_pow(lap_v, p.p - 1.0);
}

PiconePointEval eval_L_power(const FieldExpr& u, const FieldExpr& v, const Point& x,
                             const ExponentPair& p) {
    Jet2 ju = eval_jet(u, x);
    Jet2 jv = eval_jet(v, x);
    require_v_positive(jv.value);
    double lap_u = laplacian(ju), lap_v = laplacian(jv);
    require_regular(lap_v, p);
    if (p.p < 2.0 && !(ju.value > 0.0))
        throw SingularEvaluation("u^(p-2) is singular: u <= 0 with p < 2");

    double r = ju.value / jv.value;
    double A = std::abs(lap_u), B = std::abs(lap_v);
    double Ap = std::pow(A, p.p);
    double Bp = std::pow(B, p.p);
    double r_pm1 = rpow(r, p.p - 1.0);
    double sp_v = signed_pow(lap_v, p.p - 1.0);

    // (I): the Young grouping |Du|^p + (p-1)(u/v)^p |Dv|^p - p (u/v)^(p-1) |Dv|^(p-1) |Du|
    double term_I = Ap + (p.p - 1.0) * rpow(r, p.p) * Bp - p.p * r_pm1 * std::pow(B, p.p - 1.0) * A;
    // (II): p (u/v)^(p-1) |Dv|^(p-2) (|Du||Dv| - Du Dv)
    double term_II = p.p * r_pm1 * (A * std::pow(B, p.p - 1.0) - lap_u * sp_v);
    // (III): -p(p-1) u^(p-2) v^(1-p) Dv |Dv|^(p-2) |grad u - (u/v) grad v|^2
    double diff0 = ju.grad[0] - r * jv.grad[0];
    double diff1 = x.dim == 2 ? ju.grad[1] - r * jv.grad[1] : 0.0;
    double grad_sq = diff0 * diff0 + diff1 * diff1;
    double term_III =
        -p.p * (p.p - 1.0) * rpow(ju.value, p.p - 2.0) * rpow(jv.value, 1.0 - p.p) * sp_v * grad_sq;

    PiconePointEval ev;
    ev.point = x;
    ev.variant = PiconeVariant::power;
    ev.term_I = term_I;
    ev.term_II = term_II;
    ev.term_III = term_III;
    ev.L = term_I + term_II + term_III;
    ev.R = eval_R_power(u, v, x, p);
    ev.residual = ev.L - ev.R;
    ev.admissible = ju.value >= 0.0 && (p.p >= 2.0 || ju.value > 0.0) && jv.value > 0.0 &&
                    lap_v < 0.0;
    ev.scale = max_of({term_I, term_II, term_III, Ap, Ap - ev.R});
    return ev;
}

double eval_R_nonlinear(const FieldExpr& u, const FieldExpr& v, const NonlinearityProfile& f,
                        const Point& x, const ExponentPair& p) {
    Jet2 jv = eval_jet(v, x);
    double fv = f.f(jv.value);
    if (!(fv > 0.0))
        throw DomainError("f(v) must be positive at the evaluation point, got " +
                          std::to_string(fv));
    double lap_v = laplacian(jv);
    require_regular(lap_v, p);

    FieldExpr quotient = pow_auto(u, p.p) / compose1(f.expr(), v);
    double lap_q = laplacian(eval_jet(quotient, x));
    double lap_u = laplacian(eval_jet(u, x));
    return std::pow(std::abs(lap_u), p.p) - lap_q * signed_pow(lap_v, p.p - 1.0);
}

PiconePointEval eval_L_nonlinear(const FieldExpr& u, const FieldExpr& v,
                                 const NonlinearityProfile& f, const Point& x,
                                 const ExponentPair& p, NonlinearForm form) {
    Jet2 ju = eval_jet(u, x);
    Jet2 jv = eval_jet(v, x);
    Jet2 jf = f.jet(jv.value);
    double F = jf.value, F1 = jf.grad[0], F2 = jf.hess[0][0];
    if (!(F > 0.0))
        throw DomainError("f(v) must be positive at the evaluation point, got " +
                          std::to_string(F));
    double lap_u = laplacian(ju), lap_v = laplacian(jv);
    require_regular(lap_v, p);
    if (p.p < 2.0 && !(ju.value > 0.0))
        throw SingularEvaluation("u^(p-2) is singular: u <= 0 with p < 2");

    double uv = ju.value;
    double sp_v = signed_pow(lap_v, p.p - 1.0);
    double Ap = std::pow(std::abs(lap_u), p.p);
    double u_pm1 = rpow(uv, p.p - 1.0);
    double u_p = rpow(uv, p.p);
    double u_pm2 = rpow(uv, p.p - 2.0);
    double gu_sq = norm2_sq(ju, x.dim);
    double gv_sq = norm2_sq(jv, x.dim);

    // (I): |Du|^p + u^p f' |Dv|^p / f^2 - p u^(p-1) |Dv|^(p-2) Du Dv / f
    double term_I = Ap + u_p * F1 * std::pow(std::abs(lap_v), p.p) / (F * F) -
                    p.p * u_pm1 * lap_u * sp_v / F;

    // (II): -(1/2) Dv|Dv|^(p-2) u^(p-2) / f * [ (2 u f'/f grad v - p grad u)^2 + c |grad u|^2 ]
    // with c = p(p-2) in the rederived form and c = p(p-1) as printed.
    double w = 2.0 * uv * F1 / F;
    double s0 = w * jv.grad[0] - p.p * ju.grad[0];
    double s1 = x.dim == 2 ? w * jv.grad[1] - p.p * ju.grad[1] : 0.0;
    double square = s0 * s0 + s1 * s1;
    double bracket_base = -0.5 * sp_v * u_pm2 / F;
    double c_rederived = p.p * (p.p - 2.0);
    double c_printed = p.p * (p.p - 1.0);
    double c = form == NonlinearForm::rederived ? c_rederived : c_printed;
    double term_II = bracket_base * (square + c * gu_sq);

    // (III): u^p f'' |grad v|^2 |Dv|^(p-2) Dv / f^2
    double term_III = u_p * F2 * gv_sq * sp_v / (F * F);

    PiconePointEval ev;
    ev.point = x;
    ev.variant = form == NonlinearForm::rederived ? PiconeVariant::nonlinear_rederived
                                                  : PiconeVariant::nonlinear_printed;
    ev.term_I = term_I;
    ev.term_II = term_II;
    ev.term_III = term_III;
    ev.L = term_I + term_II + term_III;
    ev.R = eval_R_nonlinear(u, v, f, x, p);
    ev.residual = ev.L - ev.R;
    ev.printed_discrepancy = bracket_base * (c_printed - c_rederived) * gu_sq;

    bool c1_ok = false, c2_ok = F2 <= 1e-12;
    double e = (p.p - 2.0) / (p.p - 1.0);
    double gap = F1 - (p.p - 1.0) * std::pow(F, e);
    c1_ok = gap >= -1e-12 * std::max(1.0, std::abs(F1));
    ev.admissible = uv >= 0.0 && (p.p >= 2.0 || uv > 0.0) && lap_v < 0.0 && c1_ok && c2_ok;
    ev.scale = max_of({term_I, term_II, term_III, Ap, Ap - ev.R});
    return ev;
}

PiconePointEval eval_dunninger_p2(const FieldExpr& u, const FieldExpr& v, const Point& x) {
    Jet2 ju = eval_jet(u, x);
    Jet2 jv = eval_jet(v, x);
    require_v_positive(jv.value);
    double lap_u = laplacian(ju), lap_v = laplacian(jv);

    double r = ju.value / jv.value;
    double d = lap_u - r * lap_v;
    double diff0 = ju.grad[0] - r * jv.grad[0];
    double diff1 = x.dim == 2 ? ju.grad[1] - r * jv.grad[1] : 0.0;
    double grad_sq = diff0 * diff0 + diff1 * diff1;

    // The (Du - (u/v) Dv)^2 square absorbs the power form's (I)+(II); the
    // gradient square is (III) at p = 2.
    double term_I = d * d;
    double term_III = -(2.0 * lap_v / jv.value) * grad_sq;

    FieldExpr quotient = pow_int(u, 2) / v;
    double lap_q = laplacian(eval_jet(quotient, x));
    double R = lap_u * lap_u - lap_q * lap_v;

    PiconePointEval ev;
    ev.point = x;
    ev.variant = PiconeVariant::dunninger_p2;
    ev.term_I = term_I;
    ev.term_II = 0.0;
    ev.term_III = term_III;
    ev.L = term_I + term_III;
    ev.R = R;
    ev.residual = ev.L - ev.R;
    ev.admissible = jv.value > 0.0 && lap_v < 0.0;
    ev.scale = max_of({term_I, term_III, lap_u * lap_u, lap_u * lap_u - R});

    // Same algebra as the power identity at p = 2, up to rearrangement.
    PiconePointEval pw = eval_L_power(u, v, x, ExponentPair(2.0));
    if (std::abs(ev.L - pw.L) > 1e-10 * std::max(ev.scale, pw.scale))
        throw Error("dunninger L disagrees with the p = 2 power form beyond rounding");
    return ev;
}

double young_gap(double a, double b, const ExponentPair& p) {
    if (a < 0.0 || b < 0.0) throw NegativeInput("young_gap requires a >= 0 and b >= 0");
    return std::pow(a, p.p) / p.p + std::pow(b, p.q) / p.q - a * b;
}

std::string csv_header_point_eval(int dim) {
    std::string h = dim == 2 ? "x0,x1" : "x0";
    return h + ",L,R,residual,term_I,term_II,term_III,admissible,variant,scale,printed_discrepancy";
}

std::string csv_row_point_eval(const PiconePointEval& ev) {
    char buf[512];
    std::string row;
    auto put = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        row += buf;
        row += ',';
    };
    put(ev.point[0]);
    if (ev.point.dim == 2) put(ev.point[1]);
    put(ev.L);
    put(ev.R);
    put(ev.residual);
    put(ev.term_I);
    put(ev.term_II);
    put(ev.term_III);
    row += ev.admissible ? "1," : "0,";
    row += to_string(ev.variant);
    row += ',';
    put(ev.scale);
    std::snprintf(buf, sizeof buf, "%.17g", ev.printed_discrepancy);
    row += buf;
    return row;
}

} // namespace piconelab

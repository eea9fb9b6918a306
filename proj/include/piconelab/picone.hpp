#pragma once

#include <string>

#include "piconelab/fields.hpp"

namespace piconelab {

enum class PiconeVariant { power, nonlinear_printed, nonlinear_rederived, dunninger_p2 };
enum class NonlinearForm { printed, rederived };

std::string to_string(PiconeVariant v);

/// One pointwise evaluation of an identity: both sides, the residual, and the
/// proof's (I)/(II)/(III) term decomposition. All tolerance comparisons are
/// relative to `scale`, the magnitude of the largest intermediate term, so
/// that cancellation-dominated points (u = alpha v with large terms) are
/// judged against the size of the arithmetic actually performed.
struct PiconePointEval {
    Point point;
    double L = 0.0;
    double R = 0.0;
    double residual = 0.0; ///< L - R
    double term_I = 0.0;
    double term_II = 0.0;
    double term_III = 0.0;
    bool admissible = false;
    PiconeVariant variant = PiconeVariant::power;
    double scale = 1.0;
    /// nonlinear variants only: L_printed - L_rederived at this point.
    double printed_discrepancy = 0.0;
};

/// R(u,v) = |Du|^p - lap(u^p / v^(p-1)) |Dv|^(p-2) Dv, the quotient
/// differentiated exactly as an expression tree.
double eval_R_power(const FieldExpr& u, const FieldExpr& v, const Point& x,
                    const ExponentPair& p);

/// The expanded side of the power identity with the Young-grouping term
/// decomposition; residual is taken against eval_R_power.
PiconePointEval eval_L_power(const FieldExpr& u, const FieldExpr& v, const Point& x,
                             const ExponentPair& p);

/// R(u,v) = |Du|^p - lap(u^p / f(v)) |Dv|^(p-2) Dv.
double eval_R_nonlinear(const FieldExpr& u, const FieldExpr& v, const NonlinearityProfile& f,
                        const Point& x, const ExponentPair& p);

/// The expanded side of the nonlinear identity. `printed` evaluates the
/// bracket exactly as displayed (p(p-1) |grad u|^2); `rederived` uses the
/// p(p-2) coefficient forced by expanding lap(u^p/f(v)). Only the rederived
/// form satisfies L = R; the printed form's offset is reported per point as
/// printed_discrepancy.
PiconePointEval eval_L_nonlinear(const FieldExpr& u, const FieldExpr& v,
                                 const NonlinearityProfile& f, const Point& x,
                                 const ExponentPair& p, NonlinearForm form);

/// Second-order (p = 2) identity in the two displayed forms, with the grouped
/// squares on the L side. Agrees with eval_L_power at p = 2 up to rounding.
PiconePointEval eval_dunninger_p2(const FieldExpr& u, const FieldExpr& v, const Point& x);

/// a^p/p + b^q/q - ab >= 0 for a, b >= 0; zero exactly when a^p = b^q.
double young_gap(double a, double b, const ExponentPair& p);

/// sign(t) |t|^e, continuous at 0 for e > 0.
double signed_pow(double t, double e);

std::string csv_header_point_eval(int dim);
std::string csv_row_point_eval(const PiconePointEval& ev);

} // namespace piconelab

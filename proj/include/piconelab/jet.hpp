#pragma once

#include <array>

#include "piconelab/expr.hpp"

namespace piconelab {

/// Value, gradient and Hessian of a scalar field at a point. The Hessian is
/// symmetric by construction (upper triangle computed, mirrored exactly).
struct Jet2 {
    int dim = 1;
    double value = 0.0;
    std::array<double, 2> grad{0.0, 0.0};
    std::array<std::array<double, 2>, 2> hess{{{0.0, 0.0}, {0.0, 0.0}}};
};

/// Exact second-order forward-mode evaluation: value, gradient and Hessian of
/// the expression at x, with no truncation error. Throws DomainError naming
/// the offending subterm, or DimensionMismatch.
Jet2 eval_jet(const FieldExpr& expr, const Point& x);

/// Value-only evaluation (same domain checks as eval_jet).
double eval_value(const FieldExpr& expr, const Point& x);

/// Trace of the Hessian.
double laplacian(const Jet2& j);

struct FdReport {
    double max_abs_gradient_err = 0.0;
    double max_abs_hessian_err = 0.0;
};

/// Compares the jet gradient/Hessian against central finite differences of
/// step h. Independent oracle for the forward-mode rules.
FdReport fd_crosscheck(const FieldExpr& expr, const Point& x, double h);

} // namespace piconelab

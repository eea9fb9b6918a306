#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "piconelab/errors.hpp"

namespace piconelab {

/// Evaluation point in R^n, n in {1, 2}.
struct Point {
    int dim = 1;
    std::array<double, 2> x{0.0, 0.0};

    static Point p1(double x0) { return Point{1, {x0, 0.0}}; }
    static Point p2(double x0, double x1) { return Point{2, {x0, x1}}; }
    double operator[](int i) const { return x[static_cast<size_t>(i)]; }
};

enum class NodeKind {
    Constant,
    Coordinate,
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    PowInt,  ///< integer exponent, any base (base != 0 for negative exponents)
    PowReal, ///< real exponent, base must be strictly positive at evaluation
    Sin,
    Cos,
    Exp,
    Log,
};

struct ExprNode;
using ExprHandle = std::shared_ptr<const ExprNode>;

struct ExprNode {
    NodeKind kind;
    double cvalue = 0.0; ///< Constant payload, or PowReal exponent
    int ipayload = 0;    ///< Coordinate axis, or PowInt exponent
    ExprHandle a, b;
};

/// A closed-form smooth scalar field on R^n represented as an immutable
/// expression tree. Used for the test functions u, v and the weights g, a.
class FieldExpr {
public:
    FieldExpr() = default;
    FieldExpr(ExprHandle root, int dim);

    int dim() const { return dim_; }
    const ExprHandle& root() const { return root_; }
    bool valid() const { return root_ != nullptr; }

    static FieldExpr constant(double c, int dim = 1);
    static FieldExpr coordinate(int axis, int dim);

private:
    ExprHandle root_;
    int dim_ = 1;
};

FieldExpr operator+(const FieldExpr& a, const FieldExpr& b);
FieldExpr operator-(const FieldExpr& a, const FieldExpr& b);
FieldExpr operator*(const FieldExpr& a, const FieldExpr& b);
FieldExpr operator/(const FieldExpr& a, const FieldExpr& b);
FieldExpr operator-(const FieldExpr& a);
FieldExpr operator*(double c, const FieldExpr& a);
FieldExpr operator+(double c, const FieldExpr& a);

FieldExpr pow_int(const FieldExpr& a, int k);
FieldExpr pow_real(const FieldExpr& a, double alpha);
/// Integer-power node when e is an exact integer with |e| <= 64, else a
/// real-power node. Keeps u^p valid at u = 0 for integral p.
FieldExpr pow_auto(const FieldExpr& a, double e);
FieldExpr sin(const FieldExpr& a);
FieldExpr cos(const FieldExpr& a);
FieldExpr exp(const FieldExpr& a);
FieldExpr log(const FieldExpr& a);

/// outer must be 1-D; returns outer(inner(x)) with the dimension of inner.
FieldExpr compose1(const FieldExpr& outer, const FieldExpr& inner);

/// Exact derivative tree d(expr)/d x_axis. Trivial zero/one factors are
/// folded so repeated differentiation stays compact; no other rewriting.
FieldExpr derivative(const FieldExpr& e, int axis);
/// Sum of the pure second derivatives along every axis, as a tree.
FieldExpr laplacian_expr(const FieldExpr& e);

/// Parse the prefix s-expression syntax, e.g.
///   (* (sin (* pi x0)) (sin (* pi x1)))
/// Ops: + - * / neg pow powr sin cos exp log; symbols: x0 x1 pi e.
/// expected_dim = 0 infers the dimension from the highest coordinate used.
FieldExpr parse_field(const std::string& text, int expected_dim = 0);

std::string to_sexpr(const FieldExpr& e);
std::string to_sexpr(const ExprHandle& n);

} // namespace piconelab

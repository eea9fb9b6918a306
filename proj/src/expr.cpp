#include "piconelab/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace piconelab {

namespace {

ExprHandle node(NodeKind k, ExprHandle a = nullptr, ExprHandle b = nullptr) {
    auto n = std::make_shared<ExprNode>();
    n->kind = k;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

ExprHandle const_node(double c) {
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::Constant;
    n->cvalue = c;
    return n;
}

bool is_const(const ExprHandle& n, double c) {
    return n->kind == NodeKind::Constant && n->cvalue == c;
}

int max_dim(const FieldExpr& a, const FieldExpr& b) {
    return a.dim() > b.dim() ? a.dim() : b.dim();
}

} // namespace

FieldExpr::FieldExpr(ExprHandle root, int dim) : root_(std::move(root)), dim_(dim) {
    if (dim_ < 1 || dim_ > 2)
        throw DimensionMismatch("FieldExpr dimension must be 1 or 2, got " + std::to_string(dim_));
}

FieldExpr FieldExpr::constant(double c, int dim) { return FieldExpr(const_node(c), dim); }

FieldExpr FieldExpr::coordinate(int axis, int dim) {
    if (axis < 0 || axis >= dim)
        throw DimensionMismatch("coordinate axis " + std::to_string(axis) +
                                " out of range for dimension " + std::to_string(dim));
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::Coordinate;
    n->ipayload = axis;
    return FieldExpr(n, dim);
}

FieldExpr operator+(const FieldExpr& a, const FieldExpr& b) {
    return FieldExpr(node(NodeKind::Add, a.root(), b.root()), max_dim(a, b));
}
FieldExpr operator-(const FieldExpr& a, const FieldExpr& b) {
    return FieldExpr(node(NodeKind::Sub, a.root(), b.root()), max_dim(a, b));
}
FieldExpr operator*(const FieldExpr& a, const FieldExpr& b) {
    return FieldExpr(node(NodeKind::Mul, a.root(), b.root()), max_dim(a, b));
}
FieldExpr operator/(const FieldExpr& a, const FieldExpr& b) {
    return FieldExpr(node(NodeKind::Div, a.root(), b.root()), max_dim(a, b));
}
FieldExpr operator-(const FieldExpr& a) { return FieldExpr(node(NodeKind::Neg, a.root()), a.dim()); }
FieldExpr operator*(double c, const FieldExpr& a) { return FieldExpr::constant(c, a.dim()) * a; }
FieldExpr operator+(double c, const FieldExpr& a) { return FieldExpr::constant(c, a.dim()) + a; }

FieldExpr pow_int(const FieldExpr& a, int k) {
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::PowInt;
    n->ipayload = k;
    n->a = a.root();
    return FieldExpr(n, a.dim());
}

FieldExpr pow_real(const FieldExpr& a, double alpha) {
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::PowReal;
    n->cvalue = alpha;
    n->a = a.root();
    return FieldExpr(n, a.dim());
}

FieldExpr pow_auto(const FieldExpr& a, double e) {
    double r = std::round(e);
    if (r == e && std::abs(r) <= 64.0) return pow_int(a, static_cast<int>(r));
    return pow_real(a, e);
}

FieldExpr sin(const FieldExpr& a) { return FieldExpr(node(NodeKind::Sin, a.root()), a.dim()); }
FieldExpr cos(const FieldExpr& a) { return FieldExpr(node(NodeKind::Cos, a.root()), a.dim()); }
FieldExpr exp(const FieldExpr& a) { return FieldExpr(node(NodeKind::Exp, a.root()), a.dim()); }
FieldExpr log(const FieldExpr& a) { return FieldExpr(node(NodeKind::Log, a.root()), a.dim()); }

namespace {

ExprHandle substitute(const ExprHandle& n, const ExprHandle& replacement) {
    switch (n->kind) {
    case NodeKind::Constant: return n;
    case NodeKind::Coordinate: return replacement;
    default: break;
    }
    auto out = std::make_shared<ExprNode>(*n);
    if (n->a) out->a = substitute(n->a, replacement);
    if (n->b) out->b = substitute(n->b, replacement);
    return out;
}

} // namespace

FieldExpr compose1(const FieldExpr& outer, const FieldExpr& inner) {
    if (outer.dim() != 1)
        throw DimensionMismatch("compose1 requires a 1-D outer expression");
    return FieldExpr(substitute(outer.root(), inner.root()), inner.dim());
}

namespace {

// Constant-folding builders used by the derivative; they only prune exact
// 0/1 factors so derivative trees stay readable and cheap to evaluate.
ExprHandle d_add(ExprHandle a, ExprHandle b) {
    if (is_const(a, 0.0)) return b;
    if (is_const(b, 0.0)) return a;
    return node(NodeKind::Add, std::move(a), std::move(b));
}
ExprHandle d_sub(ExprHandle a, ExprHandle b) {
    if (is_const(b, 0.0)) return a;
    if (is_const(a, 0.0)) return node(NodeKind::Neg, std::move(b));
    return node(NodeKind::Sub, std::move(a), std::move(b));
}
ExprHandle d_mul(ExprHandle a, ExprHandle b) {
    if (is_const(a, 0.0) || is_const(b, 0.0)) return const_node(0.0);
    if (is_const(a, 1.0)) return b;
    if (is_const(b, 1.0)) return a;
    return node(NodeKind::Mul, std::move(a), std::move(b));
}
ExprHandle d_div(ExprHandle a, ExprHandle b) {
    if (is_const(a, 0.0)) return const_node(0.0);
    return node(NodeKind::Div, std::move(a), std::move(b));
}

ExprHandle diff(const ExprHandle& n, int axis) {
    switch (n->kind) {
    case NodeKind::Constant: return const_node(0.0);
    case NodeKind::Coordinate: return const_node(n->ipayload == axis ? 1.0 : 0.0);
    case NodeKind::Add: return d_add(diff(n->a, axis), diff(n->b, axis));
    case NodeKind::Sub: return d_sub(diff(n->a, axis), diff(n->b, axis));
    case NodeKind::Mul:
        return d_add(d_mul(diff(n->a, axis), n->b), d_mul(n->a, diff(n->b, axis)));
    case NodeKind::Div:
        // (a/b)' = a'/b - a b'/b^2
        return d_sub(d_div(diff(n->a, axis), n->b),
                     d_div(d_mul(n->a, diff(n->b, axis)), node(NodeKind::Mul, n->b, n->b)));
    case NodeKind::Neg: {
        auto da = diff(n->a, axis);
        if (is_const(da, 0.0)) return da;
        return node(NodeKind::Neg, std::move(da));
    }
    case NodeKind::PowInt: {
        int k = n->ipayload;
        if (k == 0) return const_node(0.0);
        auto base_pow = std::make_shared<ExprNode>();
        base_pow->kind = NodeKind::PowInt;
        base_pow->ipayload = k - 1;
        base_pow->a = n->a;
        return d_mul(d_mul(const_node(static_cast<double>(k)), base_pow), diff(n->a, axis));
    }
    case NodeKind::PowReal: {
        auto base_pow = std::make_shared<ExprNode>();
        base_pow->kind = NodeKind::PowReal;
        base_pow->cvalue = n->cvalue - 1.0;
        base_pow->a = n->a;
        return d_mul(d_mul(const_node(n->cvalue), base_pow), diff(n->a, axis));
    }
    case NodeKind::Sin:
        return d_mul(node(NodeKind::Cos, n->a), diff(n->a, axis));
    case NodeKind::Cos:
        return d_mul(node(NodeKind::Neg, node(NodeKind::Sin, n->a)), diff(n->a, axis));
    case NodeKind::Exp:
        return d_mul(node(NodeKind::Exp, n->a), diff(n->a, axis));
    case NodeKind::Log:
        return d_div(diff(n->a, axis), n->a);
    }
    throw Error("unreachable node kind in diff");
}

} // namespace

FieldExpr derivative(const FieldExpr& e, int axis) {
    if (axis < 0 || axis >= e.dim())
        throw DimensionMismatch("derivative axis out of range");
    return FieldExpr(diff(e.root(), axis), e.dim());
}

FieldExpr laplacian_expr(const FieldExpr& e) {
    FieldExpr acc;
    for (int ax = 0; ax < e.dim(); ++ax) {
        FieldExpr second = derivative(derivative(e, ax), ax);
        acc = acc.valid() ? acc + second : second;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// s-expression parser

namespace {

struct Tokenizer {
    const std::string& text;
    size_t pos = 0;

    explicit Tokenizer(const std::string& t) : text(t) {}

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= text.size();
    }
    std::string next() {
        skip_ws();
        if (pos >= text.size()) throw ConfigError("unexpected end of expression");
        char c = text[pos];
        if (c == '(' || c == ')') {
            ++pos;
            return std::string(1, c);
        }
        size_t start = pos;
        while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
               text[pos] != '(' && text[pos] != ')')
            ++pos;
        return text.substr(start, pos - start);
    }
};

struct Parser {
    Tokenizer tok;
    int max_axis = -1;

    explicit Parser(const std::string& t) : tok(t) {}

    ExprHandle atom(const std::string& t) {
        if (t == "pi") return const_node(M_PI);
        if (t == "e") return const_node(M_E);
        if (t.size() >= 2 && t[0] == 'x' && std::isdigit(static_cast<unsigned char>(t[1]))) {
            int axis = std::atoi(t.c_str() + 1);
            if (axis < 0 || axis > 1)
                throw ConfigError("coordinate '" + t + "' out of supported range (x0, x1)");
            if (axis > max_axis) max_axis = axis;
            auto n = std::make_shared<ExprNode>();
            n->kind = NodeKind::Coordinate;
            n->ipayload = axis;
            return n;
        }
        char* end = nullptr;
        double v = std::strtod(t.c_str(), &end);
        if (end == nullptr || *end != '\0')
            throw ConfigError("unrecognized token '" + t + "' in expression");
        return const_node(v);
    }

    ExprHandle parse() {
        std::string t = tok.next();
        if (t == ")") throw ConfigError("unexpected ')' in expression");
        if (t != "(") return atom(t);

        std::string op = tok.next();
        std::vector<ExprHandle> args;
        for (;;) {
            tok.skip_ws();
            if (tok.pos < tok.text.size() && tok.text[tok.pos] == ')') {
                ++tok.pos;
                break;
            }
            args.push_back(parse());
        }
        auto need = [&](size_t n) {
            if (args.size() != n)
                throw ConfigError("operator '" + op + "' expects " + std::to_string(n) +
                                  " argument(s), got " + std::to_string(args.size()));
        };
        auto fold = [&](NodeKind k) {
            if (args.size() < 2)
                throw ConfigError("operator '" + op + "' expects at least 2 arguments");
            ExprHandle acc = args[0];
            for (size_t i = 1; i < args.size(); ++i) acc = node(k, acc, args[i]);
            return acc;
        };
        if (op == "+") return fold(NodeKind::Add);
        if (op == "*") return fold(NodeKind::Mul);
        if (op == "-") {
            if (args.size() == 1) return node(NodeKind::Neg, args[0]);
            return fold(NodeKind::Sub);
        }
        if (op == "/") {
            need(2);
            return node(NodeKind::Div, args[0], args[1]);
        }
        if (op == "neg") {
            need(1);
            return node(NodeKind::Neg, args[0]);
        }
        if (op == "pow") {
            need(2);
            if (args[1]->kind != NodeKind::Constant)
                throw ConfigError("(pow base k) requires a literal exponent");
            double k = args[1]->cvalue;
            if (std::round(k) != k) throw ConfigError("(pow base k) requires an integer exponent");
            auto n = std::make_shared<ExprNode>();
            n->kind = NodeKind::PowInt;
            n->ipayload = static_cast<int>(k);
            n->a = args[0];
            return n;
        }
        if (op == "powr") {
            need(2);
            if (args[1]->kind != NodeKind::Constant)
                throw ConfigError("(powr base alpha) requires a literal exponent");
            auto n = std::make_shared<ExprNode>();
            n->kind = NodeKind::PowReal;
            n->cvalue = args[1]->cvalue;
            n->a = args[0];
            return n;
        }
        if (op == "sin" || op == "cos" || op == "exp" || op == "log") {
            need(1);
            NodeKind k = op == "sin"   ? NodeKind::Sin
                         : op == "cos" ? NodeKind::Cos
                         : op == "exp" ? NodeKind::Exp
                                       : NodeKind::Log;
            return node(k, args[0]);
        }
        throw ConfigError("unknown operator '" + op + "'");
    }
};

} // namespace

FieldExpr parse_field(const std::string& text, int expected_dim) {
    Parser p(text);
    ExprHandle root = p.parse();
    if (!p.tok.done()) throw ConfigError("trailing characters after expression");
    int inferred = p.max_axis + 1 < 1 ? 1 : p.max_axis + 1;
    if (expected_dim == 0) return FieldExpr(root, inferred);
    if (inferred > expected_dim)
        throw DimensionMismatch("expression uses coordinate x" + std::to_string(p.max_axis) +
                                " but declared dimension is " + std::to_string(expected_dim));
    return FieldExpr(root, expected_dim);
}

namespace {

void print_node(std::ostringstream& os, const ExprHandle& n) {
    switch (n->kind) {
    case NodeKind::Constant: os << n->cvalue; return;
    case NodeKind::Coordinate: os << "x" << n->ipayload; return;
    case NodeKind::Add:
    case NodeKind::Sub:
    case NodeKind::Mul:
    case NodeKind::Div: {
        const char* op = n->kind == NodeKind::Add   ? "+"
                         : n->kind == NodeKind::Sub ? "-"
                         : n->kind == NodeKind::Mul ? "*"
                                                    : "/";
        os << "(" << op << " ";
        print_node(os, n->a);
        os << " ";
        print_node(os, n->b);
        os << ")";
        return;
    }
    case NodeKind::Neg:
        os << "(neg ";
        print_node(os, n->a);
        os << ")";
        return;
    case NodeKind::PowInt:
        os << "(pow ";
        print_node(os, n->a);
        os << " " << n->ipayload << ")";
        return;
    case NodeKind::PowReal:
        os << "(powr ";
        print_node(os, n->a);
        os << " " << n->cvalue << ")";
        return;
    case NodeKind::Sin:
    case NodeKind::Cos:
    case NodeKind::Exp:
    case NodeKind::Log: {
        const char* op = n->kind == NodeKind::Sin   ? "sin"
                         : n->kind == NodeKind::Cos ? "cos"
                         : n->kind == NodeKind::Exp ? "exp"
                                                    : "log";
        os << "(" << op << " ";
        print_node(os, n->a);
        os << ")";
        return;
    }
    }
}

} // namespace

std::string to_sexpr(const ExprHandle& n) {
    std::ostringstream os;
    print_node(os, n);
    return os.str();
}

std::string to_sexpr(const FieldExpr& e) { return to_sexpr(e.root()); }

} // namespace piconelab

#pragma once

#include <vector>

#include "piconelab/domain.hpp"
#include "piconelab/fields.hpp"

namespace piconelab {

/// Values on the uniform interior grid of a domain; boundary values are
/// implicitly zero. n interior points per axis, spacing length/(n+1).
struct GridFunction {
    Domain domain;
    int n = 0;
    std::vector<double> values; ///< n entries in 1-D, n*n row-major in 2-D

    int dim() const { return domain.dim; }
    double h(int axis) const { return domain.length(axis) / (n + 1); }
    size_t size() const { return values.size(); }
    /// Coordinates of interior node i (1-D) or (i, j) (2-D).
    Point node(int i, int j = 0) const;

    static GridFunction zeros(const Domain& dom, int n);
    static GridFunction sample(const FieldExpr& f, const Domain& dom, int n);
};

/// 3-point (1-D) / 5-point cross (2-D) stencil with zero Dirichlet neighbors.
GridFunction discrete_laplacian(const GridFunction& u);

/// [sum |lap_h u|^p h^n] / [sum g |u|^p h^n].
double rayleigh_quotient(const GridFunction& u, const GridFunction& g, const ExponentPair& p);

struct EigenOptions {
    int max_iters = 500;
    /// Stopping threshold for the Euclidean norm of the quotient gradient.
    /// The default sits above the stencil's rounding floor at N = 399 while
    /// pinning the eigenvalue far tighter than 1e-8 relative (the quotient
    /// error is quadratic in the gradient norm).
    double grad_tol = 1e-5;
    double step0 = 1.0;
};

struct EigenResult {
    double lambda = 0.0;
    GridFunction eigenfunction;
    int iterations = 0;
    double grad_norm = 0.0;
    std::vector<double> history; ///< accepted Rayleigh values, non-increasing
    /// True when the gradient norm reached grad_tol or the quotient hit its
    /// decrease floor at this grid's working precision; false means the
    /// iteration budget ran out while still making progress.
    bool converged = false;
};

/// Principal eigenvalue of the p-biharmonic Navier problem with weight g > 0,
/// by monotone descent on the Rayleigh quotient (Armijo backtracking,
/// biharmonic-preconditioned gradient, iterates normalized and positive).
EigenResult principal_eigenvalue(const Domain& domain, const FieldExpr& g, const ExponentPair& p,
                                 int n, const EigenOptions& opts = {});

/// Independent p = 2 validator: assembles the squared Dirichlet-Laplacian
/// matrix (the Navier composition) and the diagonal weight, and computes the
/// smallest generalized eigenvalue by inverse power iteration with Rayleigh
/// shifts, to 1e-12 on the eigenvalue.
EigenResult p2_oracle(const Domain& domain, const FieldExpr& g, int n);

/// Smallest eigenvalue of (biharmonic-Navier matrix - diag(a * fprime0)).
double linearized_min_eigenvalue(const FieldExpr& a, double fprime0, const Domain& domain, int n);

namespace detail {

/// General banded matrix with kl sub- and ku superdiagonals, LAPACK-style
/// band storage with room for pivoting fill. Partial-pivoting LU.
class BandedMatrix {
public:
    BandedMatrix(int n, int kl, int ku);

    double& at(int i, int j);
    double at(int i, int j) const;
    int size() const { return n_; }

    void lu_factor();
    void lu_solve(std::vector<double>& rhs) const;

private:
    int n_, kl_, ku_, ldab_;
    bool factored_ = false;
    std::vector<double> ab_;
    std::vector<int> piv_;
};

/// Matrix of -lap_h (SPD M-matrix) for the grid, bandwidth 1 (1-D) or n (2-D).
BandedMatrix neg_laplacian_matrix(const GridFunction& shape);

} // namespace detail

} // namespace piconelab

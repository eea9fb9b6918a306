#pragma once

#include <string>
#include <vector>

#include "piconelab/quadrature.hpp"
#include "piconelab/solver.hpp"

namespace piconelab {

struct NamedField {
    std::string name;
    FieldExpr expr;
};

/// Evaluates lap(|lap v|^(p-2) lap v) pointwise: exactly (nested symbolic
/// Laplacian + jets) at p = 2, by fourth-order central differences of the
/// jet-exact field |lap v|^(p-2) lap v otherwise.
class PBiharmonicField {
public:
    PBiharmonicField(FieldExpr v, double p, const Domain& dom);
    double operator()(const Point& x) const;

private:
    FieldExpr v_;
    FieldExpr lap_v_expr_;
    double p_;
    Domain dom_;
};

// ---------------------------------------------------------------------------

struct HardyCorpusRow {
    std::string u_name;
    double lhs = 0.0;    ///< int |lap u|^p
    double rhs = 0.0;    ///< lambda int g |u|^p
    double margin = 0.0; ///< lhs - rhs
    double boundary_value_max = 0.0;
    double boundary_grad_max = 0.0;
    double boundary_lap_max = 0.0;
    bool diagnostic = false; ///< boundary-vanishing but gradient does not vanish
    bool pass = false;
};

struct HardyReport {
    double lambda = 0.0;
    double p = 2.0;
    std::string v_name, g_name, f_name;
    double supersolution_residual_min = 0.0; ///< min of lap(|lap v|^(p-2) lap v) - lambda g f(v)
    bool hypothesis_ok = false;
    std::vector<HardyCorpusRow> corpus;
    bool all_pass = false;
};

HardyReport run_hardy(const NamedField& v, const NonlinearityProfile& f, const NamedField& g,
                      double lambda, const ExponentPair& p, const std::vector<NamedField>& corpus,
                      const Domain& domain, const QuadratureRule& rule);

// ---------------------------------------------------------------------------

struct SturmCandidateRow {
    std::string v_name;
    double min_R = 0.0;
    double min_R_scaled = 0.0;
};

enum class SturmConclusion { no_positive_v_possible, inconclusive };

struct SturmReport {
    std::string u_name, f1_name, f2_name;
    double p = 2.0;
    double contradiction_integral = 0.0; ///< int (f1 - f2) u^p, must be < 0
    double u_residual_max = 0.0;
    double pointwise_R_min = 0.0;
    double pointwise_R_min_scaled = 0.0;
    std::vector<SturmCandidateRow> candidates;
    SturmConclusion conclusion = SturmConclusion::inconclusive;
};

SturmReport run_sturm(const NamedField& u, const NamedField& f1, const NamedField& f2,
                      const ExponentPair& p, const NonlinearityProfile& f,
                      const std::vector<NamedField>& v_candidates, const Domain& domain,
                      const QuadratureRule& rule);

// ---------------------------------------------------------------------------

struct MonotonicityReport {
    double p = 2.0;
    std::string g_name;
    Domain domain1, domain2;
    EigenResult result1, result2;
    double gap = 0.0;       ///< lambda1(domain1) - lambda1(domain2)
    double tolerance = 0.0; ///< combined solver tolerance the gap must exceed
    bool strict = false;
};

MonotonicityReport run_monotonicity(const Domain& domain1, const Domain& domain2,
                                    const NamedField& g, const ExponentPair& p, int n,
                                    const EigenOptions& opts = {});

// ---------------------------------------------------------------------------

struct ProportionalityReport {
    std::string v_name, f_name;
    double p = 2.0;
    double c1_input = 0.0;
    double c1_recovered = 0.0;      ///< least-squares ratio u/v over nodes
    double relative_deviation = 0.0; ///< max |u - c1 v| / max |u|
    double residual_eq1 = 0.0;       ///< normalized max residual of lap_p^2 u = f(v)
    double residual_eq2 = 0.0;       ///< normalized max residual of lap_p^2 v = f(v)^2 / u^(p-1)
    double int_R = 0.0;              ///< int R(u, v), must vanish
};

ProportionalityReport run_singular_system(const NamedField& v, double c1,
                                          const NonlinearityProfile& f, const ExponentPair& p,
                                          const Domain& domain, const QuadratureRule& rule);

// ---------------------------------------------------------------------------

struct QuadFormRow {
    std::string w_name;
    double lhs = 0.0; ///< int |lap w|^2
    double rhs = 0.0; ///< int a f'(0) w^2
    bool ok = false;
};

struct MorseReport {
    std::string a_name, f_name;
    double fprime0 = 0.0;
    double f_at_zero = 0.0;
    bool hyp_fprime0_le_1 = false;
    bool hyp_f0_zero = false;
    bool hyp_a_positive = false;
    double min_eigenvalue = 0.0;
    bool morse_index_zero = false;
    std::vector<QuadFormRow> quad_form;
};

MorseReport run_morse(const NamedField& a, const NonlinearityProfile& f, const Domain& domain,
                      int n);

} // namespace piconelab

#pragma once

#include <string>
#include <vector>

#include "piconelab/domain.hpp"
#include "piconelab/jet.hpp"

namespace piconelab {

/// Conjugate exponents p, q with 1/p + 1/q = 1.
struct ExponentPair {
    double p;
    double q;

    explicit ExponentPair(double p_);
    /// True when p is exactly an integer (selects integer-power tree nodes).
    bool p_is_integer() const;
};

/// The nonlinearity f of the nonlinear Picone identity, with f' and f''
/// obtained from jets of its 1-D expression.
class NonlinearityProfile {
public:
    NonlinearityProfile(FieldExpr f, std::string label);

    double f(double y) const;
    double fprime(double y) const;
    double fsecond(double y) const;
    /// f, f', f'' in one jet evaluation.
    Jet2 jet(double y) const;

    const FieldExpr& expr() const { return expr_; }
    const std::string& label() const { return label_; }

private:
    FieldExpr expr_;
    std::string label_;
};

/// Which exponent the C1 admissibility condition uses. The lemma's proof and
/// the application theorems use (p-2)/(p-1); the lemma statement prints
/// (p-1)/(p-2). `proof` is the default everywhere.
enum class C1Variant { proof, statement };

/// f'(y) - (p-1) f(y)^e with e per variant. Nonnegative means admissible at y.
double nonlinearity_C1_gap(const NonlinearityProfile& profile, double y, const ExponentPair& p,
                           C1Variant variant = C1Variant::proof);

/// f''(y); admissible when <= 0.
double nonlinearity_C2_check(const NonlinearityProfile& profile, double y);

struct SampleViolation {
    Point point;
    std::string condition;
};

/// Extrema of every hypothesis quantity over a sample set, plus the list of
/// samples violating a strict inequality. The f-columns are NaN unless a
/// nonlinearity was supplied.
struct AdmissibilityReport {
    int sample_count = 0;
    double min_u = 0.0;
    double min_v = 0.0;
    double max_lap_v = 0.0; ///< must be negative
    double min_f = 0.0;
    double min_C1_gap = 0.0;
    double max_fsecond = 0.0;
    std::vector<SampleViolation> violations;

    bool ok() const { return violations.empty(); }
};

/// Checks u >= 0 (> 0 when strict_u_positive; forced automatically for p < 2),
/// v > 0 and -lap v > 0 at every sample. With a profile, additionally checks
/// f(v) > 0, the C1 gap >= 0 and f'' <= 0 along the sampled v values.
AdmissibilityReport admissible_pair(const FieldExpr& u, const FieldExpr& v, const Domain& domain,
                                    const std::vector<Point>& samples, const ExponentPair& p,
                                    bool strict_u_positive = false,
                                    const NonlinearityProfile* profile = nullptr);

/// Named catalog of test fields. Entries: sine_mode(k), bubble, gauss_bump,
/// poly(c0 c1 ...), product2d. 1-D entries tensorize on rectangles except
/// poly, which stays a function of x0.
FieldExpr catalog(const std::string& name, const std::vector<double>& params, const Domain& dom);

/// String form used by the CLI: "bubble", "sine_mode 2", "poly 0 0 1", or
/// "product2d (sine_mode 1) (bubble)". A leading '(' that is not a product2d
/// argument list is parsed as a raw s-expression instead.
FieldExpr catalog_entry(const std::string& spec, const Domain& dom);

/// Nonlinearities by name: identity (y), power (y^(p-1)), sqrt (y^(1/2)),
/// linear2 (2y), softplus (log(1+exp y)).
NonlinearityProfile nonlinearity_catalog(const std::string& name, const ExponentPair& p);

} // namespace piconelab

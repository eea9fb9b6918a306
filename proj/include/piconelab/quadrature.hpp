#pragma once

#include <functional>
#include <vector>

#include "piconelab/domain.hpp"
#include "piconelab/picone.hpp"

namespace piconelab {

/// Composite tensor-product Gauss-Legendre rule: `panels` equal panels per
/// axis, `order` nodes per panel. Weights are positive and sum to the domain
/// measure.
class QuadratureRule {
public:
    explicit QuadratureRule(int panels = 32, int order = 5);

    int panels() const { return panels_; }
    int order() const { return order_; }

    /// Composite nodes/weights over [a, b], fixed left-to-right order.
    void nodes1d(double a, double b, std::vector<double>& xs, std::vector<double>& ws) const;

private:
    int panels_;
    int order_;
    std::vector<double> ref_nodes_;   // on (-1, 1)
    std::vector<double> ref_weights_; // sum to 2
};

/// Gauss-Legendre nodes and weights on (-1, 1) by Newton iteration on the
/// Legendre recurrence.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

double integrate(const std::function<double(const Point&)>& f, const Domain& domain,
                 const QuadratureRule& rule);

/// All quadrature nodes of the tensor rule, in summation order.
std::vector<Point> quadrature_points(const Domain& domain, const QuadratureRule& rule);

struct PiconeIntegralReport {
    double int_L = 0.0;
    double int_R = 0.0;
    double min_pointwise_L = 0.0;
    double min_pointwise_L_scaled = 0.0; ///< min over nodes of L / scale
    int node_count = 0;
};

struct PiconeVariantSpec {
    PiconeVariant variant = PiconeVariant::power;
    NonlinearForm form = NonlinearForm::rederived;
    const NonlinearityProfile* profile = nullptr; ///< nonlinear variants only
};

/// Quadrature of both identity sides over the domain. Throws
/// AdmissibilityViolation (listing offending nodes) if any quadrature node
/// fails the pointwise hypotheses.
PiconeIntegralReport integrate_picone(const FieldExpr& u, const FieldExpr& v,
                                      const ExponentPair& p, const PiconeVariantSpec& spec,
                                      const Domain& domain, const QuadratureRule& rule);

} // namespace piconelab

#pragma once

// Numerical function-space machinery: Lp and Sobolev norms over implicit
// domains, finite differences with domain guards, averaged and sup moduli of
// smoothness, Nikolskii/Besov class norms on a dyadic t-grid, a catalog of
// closed-form test functions, and log-log rate fitting.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "field.hpp"
#include "geometry.hpp"
#include "quadrature.hpp"

namespace bsq {

using ScalarFn = std::function<double(const double*)>;
// evaluator with exact partial derivatives: f(x, lambda) = (D^lambda f)(x)
using DerivFn = std::function<double(const double*, const Index&)>;

struct SmoothnessClass {
    double alpha = 1.0;
    double p = 2.0;
    double theta = std::numeric_limits<double>::infinity();  // infinity marks Nikolskii

    int l() const;  // smallest integer strictly above alpha
    bool nikolskii() const { return std::isinf(theta); }
    void validate() const;  // alpha > 0, 1 < p < infinity, theta in [1, infinity]
};

// difference order l(alpha) = min{m in N : alpha < m}
int difference_order(double alpha);

struct RateFit {
    std::vector<double> levels;
    std::vector<double> values;
    double slope = 0.0;
    double intercept = 0.0;
    double max_residual = 0.0;
};

struct TestFunction {
    std::string tag;
    int d = 1;
    double alpha_hint = 0.0;  // nominal smoothness; experiments measure their own
    DerivFn deriv;

    double eval(const double* x) const { return deriv(x, zero_index(d)); }
    double eval(const std::vector<double>& x) const { return eval(x.data()); }
    ScalarFn fn() const {
        auto dv = deriv;
        Index z = zero_index(d);
        return [dv, z](const double* x) { return dv(x, z); };
    }
};

TestFunction make_poly_testfn(int d, int degree, std::uint64_t seed);
TestFunction make_trig_testfn(int d, double freq);
// (x_1 - c)_+^beta, one-sided power cusp along the first axis
TestFunction make_cusp_testfn(int d, double beta, double c);
// sign(x_1 - c) |x_1 - c|^beta, two-sided
TestFunction make_step_testfn(int d, double beta, double c);

// norm machinery ------------------------------------------------------------

// interior cells by tensor Gauss, boundary cells by midpoint rule on dyadic
// subcells kept when their center lies in D; p = infinity takes the max of
// |f| over the same node set
double lp_norm(const ScalarFn& f, const Domain& D, double p, const QuadratureSpec& quad);

// max-form Sobolev norm: max of the L_q term and the |lambda| = morder terms
double sobolev_norm(const DerivFn& f, const Domain& D, double q, int morder,
                    const QuadratureSpec& quad);

// Lp norm of a spline field over all of R^d: knot-aligned tiling of the
// support, Gauss per cell (exact for even integer p)
double field_lp_norm(const SplineField& F, double p, int nodes_per_axis = 0);

// (Delta_xi^l f)(x) when the whole difference segment stays in D, else empty;
// the guard samples x + t*l*xi at 8 equispaced t in [0,1]
std::optional<double> difference(const ScalarFn& f, const std::vector<double>& xi, int l,
                                 const std::vector<double>& x, const Domain& D);

// averaged modulus: p-mean over seeded low-discrepancy shifts xi in tB^d of
// |Delta_xi^l f|_{L_p(D_{l xi})}; the (2t)^{-d} normalization cancels against
// the quasi Monte Carlo volume factor
double modulus_avg(const ScalarFn& f, const Domain& D, int l, double t, double p,
                   const QuadratureSpec& quad);

// sup modulus lower bound: max over a deterministic per-axis grid joined with
// the same low-discrepancy shift set (so modulus_avg <= modulus_sup pointwise)
double modulus_sup(const ScalarFn& f, const Domain& D, int l, double t, double p,
                   const QuadratureSpec& quad);

// (h_{delta,x0} f)(x) = f(x0 + delta x)
ScalarFn affine_pullback(const ScalarFn& f, double delta, const std::vector<double>& x0);

// Nikolskii: max(|f|_p, max_j t_j^-alpha Omega'(t_j)) over t_j = 2^-j;
// Besov: dyadic block Riemann sum of the t-integral plus the analytic tail
double class_norm(const ScalarFn& f, const Domain& D, const SmoothnessClass& cls,
                  const QuadratureSpec& quad, int j_min = 0, int j_max = 10);

// fitted exponent of Omega'^l(f, t) ~ t^alpha over t = 2^-j; throws when the
// modulus degenerates (polynomial annihilation)
double measure_smoothness(const ScalarFn& f, const Domain& D, double p, int l,
                          const QuadratureSpec& quad, int j_min = 2, int j_max = 6);

// least squares of log2(value) against level
RateFit fit_rate(const std::vector<double>& levels, const std::vector<double>& values);

}  // namespace bsq

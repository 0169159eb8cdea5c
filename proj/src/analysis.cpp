#include "analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bspline.hpp"
#include "rng.hpp"

namespace bsq {

int difference_order(double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("difference_order: alpha must be positive");
    // smallest integer strictly above alpha; at integer alpha this is alpha+1
    return (int)std::floor(alpha) + 1;
}

int SmoothnessClass::l() const { return difference_order(alpha); }

void SmoothnessClass::validate() const {
    if (!(alpha > 0.0)) throw std::invalid_argument("class.alpha: must be positive");
    if (!(p > 1.0) || std::isinf(p))
        throw std::invalid_argument("class.p: class norms require 1 < p < infinity");
    if (!(theta >= 1.0)) throw std::invalid_argument("class.theta: must be >= 1 (or infinity)");
}

// test functions -------------------------------------------------------------

TestFunction make_poly_testfn(int d, int degree, std::uint64_t seed) {
    Rng rng(seed);
    Polynomial p(d, degree);
    for (const Index& lam : simplex_indices(d, degree)) p.set_coeff(lam, rng.uniform(-1.0, 1.0));
    TestFunction f;
    f.tag = "polynomial";
    f.d = d;
    f.alpha_hint = double(degree) + 1.0;  // annihilated by differences of order > degree
    f.deriv = [p](const double* x, const Index& lam) { return p.derivative(lam).eval(x); };
    return f;
}

TestFunction make_trig_testfn(int d, double freq) {
    TestFunction f;
    f.tag = "tensor-trig";
    f.d = d;
    f.alpha_hint = 1e9;  // smooth; moduli saturate at the difference order
    f.deriv = [d, freq](const double* x, const Index& lam) {
        double v = 1.0;
        for (int j = 0; j < d; ++j) {
            // derivative of sin(freq x + j) of order r is freq^r sin(... + r pi/2)
            double arg = freq * x[j] + double(j) + double(lam[j]) * M_PI / 2.0;
            v *= std::pow(freq, double(lam[j])) * std::sin(arg);
        }
        return v;
    };
    return f;
}

namespace {

// r-th derivative of the one-sided power u_+^beta at u, zero for u <= 0
double onesided_power(double u, double beta, int r) {
    if (u <= 0.0) return 0.0;
    double c = 1.0;
    for (int i = 0; i < r; ++i) c *= beta - double(i);
    return c * std::pow(u, beta - double(r));
}

}  // namespace

TestFunction make_cusp_testfn(int d, double beta, double c) {
    if (!(beta > 0.0)) throw std::invalid_argument("cusp test function: beta must be positive");
    TestFunction f;
    f.tag = "cusp";
    f.d = d;
    f.alpha_hint = beta;  // in L_p terms the measured exponent is beta + 1/p
    f.deriv = [beta, c, d](const double* x, const Index& lam) {
        for (int j = 1; j < d; ++j)
            if (lam[j] != 0) return 0.0;
        return onesided_power(x[0] - c, beta, lam[0]);
    };
    return f;
}

TestFunction make_step_testfn(int d, double beta, double c) {
    if (!(beta > 0.0)) throw std::invalid_argument("step test function: beta must be positive");
    TestFunction f;
    f.tag = "step-smoothed";
    f.d = d;
    f.alpha_hint = beta;
    f.deriv = [beta, c, d](const double* x, const Index& lam) {
        for (int j = 1; j < d; ++j)
            if (lam[j] != 0) return 0.0;
        double u = x[0] - c;
        // sign(u)|u|^beta = u_+^beta - (-u)_+^beta; chain rule brings (-1)^r
        double a = onesided_power(u, beta, lam[0]);
        double b = onesided_power(-u, beta, lam[0]);
        return a - (lam[0] % 2 == 0 ? b : -b);
    };
    return f;
}

// norms ----------------------------------------------------------------------

namespace {

struct NodeSet {
    std::vector<std::vector<double>> points;
    std::vector<double> weights;  // volumes times rule weights
};

// deterministic node layout for integrals over D: knot tiling at grid_level,
// Gauss inside, midpoint subcells at the boundary
NodeSet domain_nodes(const Domain& D, const QuadratureSpec& quad) {
    NodeSet ns;
    const int d = D.dim();
    const int g = quad.grid_level;
    const int n = quad.gauss_nodes > 0 ? quad.gauss_nodes : 4;
    const GaussRule& rule = gauss_rule(n);

    const double scale = std::ldexp(1.0, g);
    Index lo(d), hi(d);
    for (int j = 0; j < d; ++j) {
        lo[j] = (int)std::floor(D.bbox().lo[j] * scale) - 1;
        hi[j] = (int)std::ceil(D.bbox().hi[j] * scale) + 1;
    }
    for (const Index& nu : box_indices(lo, hi)) {
        Box cell = cell_box(g, nu);
        if (!D.box_meets(cell)) continue;
        if (D.box_inside(cell)) {
            double vol = 1.0;
            for (int j = 0; j < d; ++j) vol *= cell.hi[j] - cell.lo[j];
            std::vector<int> idx(d, 0);
            while (true) {
                std::vector<double> x(d);
                double w = vol;
                for (int j = 0; j < d; ++j) {
                    x[j] = cell.lo[j] + (cell.hi[j] - cell.lo[j]) * rule.nodes[idx[j]];
                    w *= rule.weights[idx[j]];
                }
                ns.points.push_back(std::move(x));
                ns.weights.push_back(w);
                int j = d - 1;
                while (j >= 0 && idx[j] == n - 1) idx[j--] = 0;
                if (j < 0) break;
                ++idx[j];
            }
        } else {
            // boundary cell: midpoint rule on the dyadic subcells whose
            // center lies in D
            const int b = quad.boundary_depth;
            const int sub = 1 << b;
            double subvol = 1.0;
            for (int j = 0; j < d; ++j) subvol *= (cell.hi[j] - cell.lo[j]) / double(sub);
            std::vector<int> idx(d, 0);
            while (true) {
                std::vector<double> x(d);
                for (int j = 0; j < d; ++j)
                    x[j] = cell.lo[j] +
                           (cell.hi[j] - cell.lo[j]) * (double(idx[j]) + 0.5) / double(sub);
                if (D.contains(x.data())) {
                    ns.points.push_back(std::move(x));
                    ns.weights.push_back(subvol);
                }
                int j = d - 1;
                while (j >= 0 && idx[j] == sub - 1) idx[j--] = 0;
                if (j < 0) break;
                ++idx[j];
            }
        }
    }
    return ns;
}

double nodes_norm(const NodeSet& ns, const ScalarFn& f, double p) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (const auto& x : ns.points) m = std::max(m, std::abs(f(x.data())));
        return m;
    }
    long double s = 0.0L;
    for (size_t i = 0; i < ns.points.size(); ++i)
        s += (long double)(ns.weights[i] * std::pow(std::abs(f(ns.points[i].data())), p));
    return std::pow(double(s), 1.0 / p);
}

}  // namespace

double lp_norm(const ScalarFn& f, const Domain& D, double p, const QuadratureSpec& quad) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
    return nodes_norm(domain_nodes(D, quad), f, p);
}

double sobolev_norm(const DerivFn& f, const Domain& D, double q, int morder,
                    const QuadratureSpec& quad) {
    if (morder < 0) throw std::invalid_argument("sobolev_norm: derivative order must be >= 0");
    NodeSet ns = domain_nodes(D, quad);
    Index z = zero_index(D.dim());
    double norm = nodes_norm(ns, [&](const double* x) { return f(x, z); }, q);
    for (const Index& lam : simplex_indices(D.dim(), morder)) {
        if (order(lam) != morder) continue;
        norm = std::max(norm, nodes_norm(ns, [&](const double* x) { return f(x, lam); }, q));
    }
    return norm;
}

double field_lp_norm(const SplineField& F, double p, int nodes_per_axis) {
    if (!(p >= 1.0)) throw std::invalid_argument("field_lp_norm: p must be >= 1");
    if (F.coeffs().empty()) return 0.0;
    const int d = F.dim();
    const int m = F.order();
    Index lo = F.coeffs().begin()->first, hi = lo;
    for (const auto& [nu, poly] : F.coeffs())
        for (int j = 0; j < d; ++j) {
            lo[j] = std::min(lo[j], nu[j]);
            hi[j] = std::max(hi[j], nu[j] + m);  // last knot cell of the support
        }
    int n = nodes_per_axis > 0 ? nodes_per_axis : m + F.degree() + 2;
    const GaussRule& rule = gauss_rule(n);
    const double h = std::ldexp(1.0, -F.level());
    double cellvol = std::pow(h, double(d));

    double sup = 0.0;
    long double sum = 0.0L;
    std::vector<double> x(d);
    for (const Index& nu : box_indices(lo, hi)) {
        std::vector<int> idx(d, 0);
        while (true) {
            double w = cellvol;
            for (int j = 0; j < d; ++j) {
                x[j] = h * (double(nu[j]) + rule.nodes[idx[j]]);
                w *= rule.weights[idx[j]];
            }
            double v = std::abs(F.eval(x.data()));
            if (std::isinf(p))
                sup = std::max(sup, v);
            else
                sum += (long double)(w * std::pow(v, p));
            int j = d - 1;
            while (j >= 0 && idx[j] == n - 1) idx[j--] = 0;
            if (j < 0) break;
            ++idx[j];
        }
    }
    return std::isinf(p) ? sup : std::pow(double(sum), 1.0 / p);
}

std::optional<double> difference(const ScalarFn& f, const std::vector<double>& xi, int l,
                                 const std::vector<double>& x, const Domain& D) {
    if (l < 1) throw std::invalid_argument("difference: order must be >= 1");
    const int d = (int)x.size();
    std::vector<double> y(d);
    for (int s = 0; s < 8; ++s) {
        double t = double(s) / 7.0;
        for (int j = 0; j < d; ++j) y[j] = x[j] + t * double(l) * xi[j];
        if (!D.contains(y.data())) return std::nullopt;
    }
    double sum = 0.0;
    for (int k = 0; k <= l; ++k) {
        for (int j = 0; j < d; ++j) y[j] = x[j] + double(k) * xi[j];
        double sign = (l - k) % 2 == 0 ? 1.0 : -1.0;
        sum += sign * double(binomial(l, k)) * f(y.data());
    }
    return sum;
}

namespace {

// shared inner norm: |Delta_xi^l f|_{L_p(D_{l xi})} over the fixed node set
double inner_difference_norm(const ScalarFn& f, const Domain& D, const NodeSet& ns,
                             const std::vector<double>& xi, int l, double p) {
    long double s = 0.0L;
    double sup = 0.0;
    for (size_t i = 0; i < ns.points.size(); ++i) {
        auto dv = difference(f, xi, l, ns.points[i], D);
        if (!dv) continue;  // outside the guarded set D_{l xi}
        if (std::isinf(p))
            sup = std::max(sup, std::abs(*dv));
        else
            s += (long double)(ns.weights[i] * std::pow(std::abs(*dv), p));
    }
    return std::isinf(p) ? sup : std::pow(double(s), 1.0 / p);
}

std::vector<std::vector<double>> halton_shifts(int d, double t, int count, std::uint64_t seed) {
    Halton h(d, seed);
    std::vector<std::vector<double>> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        std::vector<double> u = h();
        for (double& v : u) v = t * (2.0 * v - 1.0);
        out.push_back(std::move(u));
    }
    return out;
}

}  // namespace

double modulus_avg(const ScalarFn& f, const Domain& D, int l, double t, double p,
                   const QuadratureSpec& quad) {
    if (!(t > 0.0)) throw std::invalid_argument("modulus_avg: t must be positive");
    if (std::isinf(p)) throw std::invalid_argument("modulus_avg: requires p < infinity");
    NodeSet ns = domain_nodes(D, quad);
    auto shifts = halton_shifts(D.dim(), t, quad.mc_samples, quad.seed);
    long double s = 0.0L;
    for (const auto& xi : shifts) {
        double v = inner_difference_norm(f, D, ns, xi, l, p);
        s += (long double)std::pow(v, p);
    }
    // quasi Monte Carlo over tB^d: the (2t)^{-d} normalization cancels the
    // ball volume, leaving the plain p-mean over shifts
    return std::pow(double(s) / double(shifts.size()), 1.0 / p);
}

double modulus_sup(const ScalarFn& f, const Domain& D, int l, double t, double p,
                   const QuadratureSpec& quad) {
    if (!(t > 0.0)) throw std::invalid_argument("modulus_sup: t must be positive");
    NodeSet ns = domain_nodes(D, quad);
    const int d = D.dim();
    auto shifts = halton_shifts(d, t, quad.mc_samples, quad.seed);
    const int g = std::max(quad.sup_grid, 2);
    std::vector<int> idx(d, 0);
    while (true) {
        std::vector<double> xi(d);
        for (int j = 0; j < d; ++j) xi[j] = t * (2.0 * double(idx[j]) / double(g - 1) - 1.0);
        shifts.push_back(std::move(xi));
        int j = d - 1;
        while (j >= 0 && idx[j] == g - 1) idx[j--] = 0;
        if (j < 0) break;
        ++idx[j];
    }
    double m = 0.0;
    for (const auto& xi : shifts) m = std::max(m, inner_difference_norm(f, D, ns, xi, l, p));
    return m;
}

ScalarFn affine_pullback(const ScalarFn& f, double delta, const std::vector<double>& x0) {
    if (!(delta > 0.0)) throw std::invalid_argument("affine_pullback: delta must be positive");
    return [f, delta, x0](const double* x) {
        std::vector<double> y(x0.size());
        for (size_t j = 0; j < x0.size(); ++j) y[j] = x0[j] + delta * x[j];
        return f(y.data());
    };
}

double class_norm(const ScalarFn& f, const Domain& D, const SmoothnessClass& cls,
                  const QuadratureSpec& quad, int j_min, int j_max) {
    cls.validate();
    if (j_min > j_max) throw std::invalid_argument("class_norm: empty t-grid");
    const int l = cls.l();
    double base = lp_norm(f, D, cls.p, quad);

    std::vector<double> omega(j_max + 1, 0.0);
    for (int j = j_min; j <= j_max; ++j)
        omega[j] = modulus_avg(f, D, l, std::ldexp(1.0, -j), cls.p, quad);

    if (cls.nikolskii()) {
        double semi = 0.0;
        for (int j = j_min; j <= j_max; ++j)
            semi = std::max(semi, std::pow(std::ldexp(1.0, -j), -cls.alpha) * omega[j]);
        return std::max(base, semi);
    }

    // Besov: sum over dyadic blocks [2^-(j+1), 2^-j], each valued at its left
    // endpoint, plus the closed-form tail over t >= 2^-j_min where the
    // modulus is replaced by its ceiling 2^l |f|_p
    const double ta = cls.theta * cls.alpha;
    auto block_integral = [ta](double a, double b) {
        return (std::pow(a, -ta) - std::pow(b, -ta)) / ta;
    };
    long double sum = 0.0L;
    for (int j = j_min; j < j_max; ++j) {
        double a = std::ldexp(1.0, -(j + 1)), b = std::ldexp(1.0, -j);
        sum += (long double)(std::pow(omega[j + 1], cls.theta) * block_integral(a, b));
    }
    double ceiling = std::pow(2.0, double(l)) * base;
    double tmin = std::ldexp(1.0, -j_min);
    sum += (long double)(std::pow(ceiling, cls.theta) * std::pow(tmin, -ta) / ta);
    double semi = std::pow(double(sum), 1.0 / cls.theta);
    return std::max(base, semi);
}

double measure_smoothness(const ScalarFn& f, const Domain& D, double p, int l,
                          const QuadratureSpec& quad, int j_min, int j_max) {
    std::vector<double> levels, values;
    for (int j = j_min; j <= j_max; ++j) {
        double t = std::ldexp(1.0, -j);
        double w = modulus_avg(f, D, l, t, p, quad);
        if (!(w > 1e-13))
            throw std::runtime_error(
                "measure_smoothness: modulus vanishes on the grid (input is annihilated by "
                "differences of this order)");
        levels.push_back(std::log2(t));
        values.push_back(w);
    }
    return fit_rate(levels, values).slope;
}

RateFit fit_rate(const std::vector<double>& levels, const std::vector<double>& values) {
    if (levels.size() != values.size())
        throw std::invalid_argument("fit_rate: levels and values must pair up");
    if (levels.size() < 3) throw std::invalid_argument("fit_rate: needs at least 3 points");
    RateFit fit;
    fit.levels = levels;
    fit.values = values;
    const int n = (int)levels.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (int i = 0; i < n; ++i) {
        if (!(values[i] > 0.0)) throw std::invalid_argument("fit_rate: values must be positive");
        double y = std::log2(values[i]);
        sx += levels[i];
        sy += y;
        sxx += levels[i] * levels[i];
        sxy += levels[i] * y;
    }
    double det = double(n) * sxx - sx * sx;
    if (std::abs(det) < 1e-12) throw std::invalid_argument("fit_rate: degenerate level set");
    fit.slope = (double(n) * sxy - sx * sy) / det;
    fit.intercept = (sy * sxx - sx * sxy) / det;
    for (int i = 0; i < n; ++i) {
        double r = std::log2(values[i]) - (fit.slope * levels[i] + fit.intercept);
        fit.max_residual = std::max(fit.max_residual, std::abs(r));
    }
    return fit;
}

}  // namespace bsq

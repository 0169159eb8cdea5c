#include "operators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "projection.hpp"
#include "rng.hpp"

namespace bsq {

// ---------------------------------------------------------------------------
// extension

double ExtensionResult::eval(const double* x) const {
    double v = base.eval(x);
    for (const auto& Fk : details) v += Fk.eval(x);
    return v;
}

ScalarFn ExtensionResult::fn() const {
    const ExtensionResult* self = this;
    return [self](const double* x) { return self->eval(x); };
}

ExtensionResult extend(const ScalarFn& f, const Domain& D, const SmoothnessClass& cls, int m,
                       int K0, int k_max, const QuadratureSpec& quad) {
    cls.validate();
    const int l = cls.l();
    if (m < l)
        throw std::invalid_argument("extend: spline order m must satisfy l(alpha) <= m");
    if (k_max < K0) throw std::invalid_argument("extend: k_max must be >= K0");

    ExtensionResult out;
    out.K0 = K0;
    out.k_max = k_max;
    out.base = quasi_interpolant(f, D, K0, l, m, quad);
    SplineField prev = out.base;
    for (int k = K0 + 1; k <= k_max; ++k) {
        SplineField cur = quasi_interpolant(f, D, k, l, m, quad);
        SplineField det = cur;
        det.axpy(-1.0, two_scale_refine(prev, D));
        out.details.push_back(std::move(det));
        prev = std::move(cur);
    }
    return out;
}

// ---------------------------------------------------------------------------
// sampling recovery

std::vector<double> SampleSet::point(size_t cell_i, size_t mu_i) const {
    const Index& nu = cells[cell_i];
    const Index& mu = mus[mu_i];
    const double h = std::ldexp(1.0, -k);
    std::vector<double> x(d);
    for (int j = 0; j < d; ++j)
        x[j] = h * (double(nu[j]) + 0.25 + 0.5 * double(mu[j]) / double(l));
    return x;
}

SampleSet sample_points(const Domain& D, int k, int l) {
    if (l < 1) throw std::invalid_argument("sample_points: degree parameter l must be >= 1");
    SampleSet s;
    s.d = D.dim();
    s.k = k;
    s.l = l;
    s.cells = interior_cells(D, k);
    if (s.cells.empty())
        throw std::runtime_error("sample_points: no interior cells at this level");
    s.mus = simplex_indices(s.d, l - 1);
    return s;
}

void fill_samples(SampleSet& s, const ScalarFn& f) {
    s.values.resize(s.count());
    for (size_t ci = 0; ci < s.cells.size(); ++ci)
        for (size_t mi = 0; mi < s.mus.size(); ++mi)
            s.values[ci * s.mus.size() + mi] = f(s.point(ci, mi).data());
}

SplineField recovery(const SampleSet& s, const Domain& D, int m) {
    if (s.values.size() != s.count())
        throw std::invalid_argument("recovery: sample values missing (call fill_samples)");
    if (m < s.l) throw std::invalid_argument("recovery: spline order m must satisfy l <= m");
    const int d = s.d, k = s.k, l = s.l;

    // per interior cell: R t = sum_mu t_mu pi_mu(2l 2^k (x - x0)), with x0 the
    // mu = 0 sample point; the substitution puts the samples on the integer
    // lattice where pi_mu is the Lagrange basis
    const auto basis = lagrange_basis(d, l - 1);
    const double scale = 2.0 * double(l) * std::ldexp(1.0, k);
    std::map<Index, Polynomial> local;
    for (size_t ci = 0; ci < s.cells.size(); ++ci) {
        const Index& nu = s.cells[ci];
        Polynomial R = Polynomial::constant(d, 0.0);
        for (size_t mi = 0; mi < s.mus.size(); ++mi) {
            double t = s.value(ci, mi);
            if (t != 0.0) R += t * basis[mi];
        }
        std::vector<double> sc(d, scale), sh(d);
        for (int j = 0; j < d; ++j) sh[j] = -(2.0 * double(l) * double(nu[j]) + 0.5 * double(l));
        local.emplace(nu, R.affine_substitute(sc, sh));
    }

    LevelCells cells(D, k, m);
    SplineField F(d, m, k, l - 1);
    for (const Index& nu : cells.active()) F.set_coeff(nu, local.at(cells.nearest(nu)));
    return F;
}

// ---------------------------------------------------------------------------
// Stechkin operator

StechkinOperator::StechkinOperator(const Domain& D, int k, int l, int m, Index lambda,
                                   QuadratureSpec quad)
    : D_(&D), k_(k), l_(l), m_(m), lambda_(std::move(lambda)), quad_(std::move(quad)) {
    if ((int)lambda_.size() != D_->dim())
        throw std::invalid_argument("stechkin: lambda dimension mismatch");
    for (int v : lambda_)
        if (v < 0) throw std::invalid_argument("stechkin: lambda must be nonnegative");
    if (order(lambda_) > m_)
        throw std::invalid_argument("stechkin: |lambda| must not exceed the spline order m");
}

SplineField StechkinOperator::interpolant(const ScalarFn& f) const {
    return quasi_interpolant(f, *D_, k_, l_, m_, quad_);
}

double StechkinOperator::norm_probe(double s, double q, int trials, std::uint64_t seed) const {
    Rng rng(seed);
    const int d = D_->dim();
    const double fmax = std::ldexp(1.0, k_ + 1);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        // rough input: three-term trig mixture with frequencies up to 2^{k+1}
        std::vector<double> w(3), ph(3), amp(3);
        for (int i = 0; i < 3; ++i) {
            w[i] = rng.uniform(1.0, fmax);
            ph[i] = rng.uniform(0.0, 6.28);
            amp[i] = rng.uniform(-1.0, 1.0);
        }
        auto f = [&](const double* x) {
            double acc = 0.0;
            for (int i = 0; i < 3; ++i) {
                double dot = 0.0;
                for (int j = 0; j < d; ++j) dot += x[j] * (j == 0 ? 1.0 : 0.7);
                acc += amp[i] * std::sin(M_PI * w[i] * dot + ph[i]);
            }
            return acc;
        };
        SplineField F = interpolant(f);
        double num =
            lp_norm([&](const double* x) { return F.eval(x, lambda_); }, *D_, q, quad_);
        double den = lp_norm(f, *D_, s, quad_);
        if (den > 1e-12) worst = std::max(worst, num / den);
    }
    return worst;
}

double StechkinOperator::error_probe(const TestFunction& f, double q) const {
    SplineField F = interpolant(f.fn());
    return lp_norm(
        [&](const double* x) { return f.deriv(x, lambda_) - F.eval(x, lambda_); }, *D_, q, quad_);
}

// ---------------------------------------------------------------------------
// rate experiments

namespace {

// family smoothness driving the expected slopes: the slowest member governs;
// measured with the same difference order l the operators saturate at
double family_alpha_hat(const std::vector<TestFunction>& family, const Domain& D, double p,
                        int l, const QuadratureSpec& quad) {
    double a = std::numeric_limits<double>::infinity();
    bool any = false;
    for (const auto& f : family) {
        try {
            a = std::min(a, measure_smoothness(f.fn(), D, p, l, quad));
            any = true;
        } catch (const std::runtime_error&) {
            // annihilated member (polynomial below the difference order)
        }
    }
    if (!any)
        throw std::runtime_error(
            "rate experiment: every family member is annihilated by the difference order; "
            "no measurable smoothness");
    return a;
}

bool finish_fit(RateReport& rep, const std::vector<double>& xs, const std::vector<double>& es,
                double noise_floor) {
    double emax = 0.0;
    for (double e : es) emax = std::max(emax, e);
    if (emax <= noise_floor) {
        rep.degenerate = true;
        rep.pass = true;
        rep.note = "degenerate: below noise floor";
        return false;
    }
    RateFit fit = fit_rate(xs, es);
    rep.fitted = fit.slope;
    rep.pass = std::abs(rep.fitted - rep.expected) <= rep.tolerance;
    return true;
}

}  // namespace

RateReport approx_rate_experiment(const Domain& D, const std::vector<TestFunction>& family,
                                  double p, int l, int m, const std::vector<int>& levels,
                                  double tolerance, const QuadratureSpec& quad) {
    if (family.empty()) throw std::invalid_argument("rate experiment: empty test family");
    if (levels.size() < 3) throw std::invalid_argument("rate experiment: needs >= 3 levels");
    RateReport rep;
    rep.kind = "approx";
    rep.tolerance = tolerance;

    std::vector<double> xs, es;
    for (int k : levels) {
        RateRow row;
        row.level = k;
        for (const auto& f : family) {
            SplineField F = quasi_interpolant(f.fn(), D, k, l, m, quad);
            row.n = double(F.coeffs().size());
            ScalarFn fe = f.fn();
            double err =
                lp_norm([&](const double* x) { return fe(x) - F.eval(x); }, D, p, quad);
            row.error = std::max(row.error, err);
            row.norm = std::max(row.norm, lp_norm([&](const double* x) { return F.eval(x); },
                                                  D, p, quad));
        }
        rep.rows.push_back(row);
        xs.push_back(double(k));
        es.push_back(row.error);
    }

    double noise = 1e-11;
    for (const auto& row : rep.rows) noise = std::max(noise, 1e-11 * row.norm);
    if (!finish_fit(rep, xs, es, noise)) return rep;

    rep.alpha_hat = family_alpha_hat(family, D, p, l, quad);
    rep.expected = -rep.alpha_hat;
    rep.pass = std::abs(rep.fitted - rep.expected) <= tolerance;
    return rep;
}

RateReport recovery_rate_experiment(const Domain& D, const std::vector<TestFunction>& family,
                                    double p, double q, int morder, int l, int m,
                                    const std::vector<int>& levels, double tolerance,
                                    const QuadratureSpec& quad) {
    if (family.empty()) throw std::invalid_argument("rate experiment: empty test family");
    if (levels.size() < 3) throw std::invalid_argument("rate experiment: needs >= 3 levels");
    const int d = D.dim();
    RateReport rep;
    rep.kind = "recovery";
    rep.tolerance = tolerance;
    rep.alpha_hat = family_alpha_hat(family, D, p, l, quad);
    // guard the theorem hypothesis: alpha - morder - (d/p - d/q)_+ > 0
    double excess = rep.alpha_hat - double(morder) -
                    std::max(0.0, double(d) / p - double(d) / q);
    if (!(excess > 0.0))
        throw std::invalid_argument(
            "recovery rate requires alpha - morder - (d/p - d/q)_+ > 0; measured alpha fails it");
    rep.expected = -excess / double(d);

    std::vector<double> xs, es;
    for (int k : levels) {
        SampleSet s = sample_points(D, k, l);
        RateRow row;
        row.level = k;
        row.n = double(s.count());
        for (const auto& f : family) {
            fill_samples(s, f.fn());
            SplineField F = recovery(s, D, m);
            double err;
            if (morder == 0) {
                ScalarFn fe = f.fn();
                err = lp_norm([&](const double* x) { return fe(x) - F.eval(x); }, D, q, quad);
            } else {
                DerivFn diff = [&](const double* x, const Index& lam) {
                    return f.deriv(x, lam) - F.eval(x, lam);
                };
                err = sobolev_norm(diff, D, q, morder, quad);
            }
            row.error = std::max(row.error, err);
            row.norm = std::max(row.norm, field_lp_norm(F, std::isinf(q) ? 2.0 : q));
        }
        rep.rows.push_back(row);
        xs.push_back(std::log2(row.n));
        es.push_back(row.error);
    }
    finish_fit(rep, xs, es, 1e-11);
    return rep;
}

RateReport stechkin_rate_experiment(const Domain& D, const std::vector<TestFunction>& family,
                                    const Index& lambda, double p, double q, double s, int l,
                                    int m, const std::vector<int>& levels, double tolerance,
                                    const QuadratureSpec& quad) {
    if (family.empty()) throw std::invalid_argument("rate experiment: empty test family");
    if (levels.size() < 3) throw std::invalid_argument("rate experiment: needs >= 3 levels");
    const int d = D.dim();
    const int lam_order = order(lambda);
    const double tau = double(lam_order) + std::max(0.0, double(d) / s - double(d) / q);
    if (!(tau > 0.0))
        throw std::invalid_argument(
            "stechkin rate requires |lambda| + (d/s - d/q)_+ > 0; the operator scale is flat");

    RateReport rep;
    rep.kind = "stechkin";
    rep.tolerance = tolerance;
    rep.alpha_hat = family_alpha_hat(family, D, p, l, quad);
    const double gamma =
        rep.alpha_hat - double(lam_order) - std::max(0.0, double(d) / p - double(d) / q);
    if (!(gamma > 0.0))
        throw std::invalid_argument(
            "stechkin rate requires alpha - |lambda| - (d/p - d/q)_+ > 0; measured alpha fails it");
    rep.expected = -gamma / tau;

    std::vector<double> xs, es;
    for (int k : levels) {
        StechkinOperator V(D, k, l, m, lambda, quad);
        RateRow row;
        row.level = k;
        row.norm = V.norm_probe(s, q, 6, quad.seed + (std::uint64_t)k);
        for (const auto& f : family) row.error = std::max(row.error, V.error_probe(f, q));
        rep.rows.push_back(row);
        xs.push_back(std::log2(row.norm));
        es.push_back(row.error);
    }
    finish_fit(rep, xs, es, 1e-11);
    return rep;
}

RateReport extension_rate_experiment(const Domain& D, const std::vector<TestFunction>& family,
                                     const SmoothnessClass& cls, int m, int K0,
                                     const std::vector<int>& kmax_levels, double tolerance,
                                     const QuadratureSpec& quad) {
    if (family.empty()) throw std::invalid_argument("rate experiment: empty test family");
    if (kmax_levels.size() < 3) throw std::invalid_argument("rate experiment: needs >= 3 levels");
    cls.validate();
    const int l = cls.l();
    RateReport rep;
    rep.kind = "extension";
    rep.tolerance = tolerance;
    rep.alpha_hat = family_alpha_hat(family, D, cls.p, l, quad);
    rep.expected = -rep.alpha_hat;

    std::vector<double> xs, es;
    for (int kmax : kmax_levels) {
        RateRow row;
        row.level = kmax;
        // on D the extension telescopes to the finest quasi-interpolant
        for (const auto& f : family) {
            SplineField F = quasi_interpolant(f.fn(), D, kmax, l, m, quad);
            row.n = double(F.coeffs().size());
            ScalarFn fe = f.fn();
            row.error = std::max(
                row.error, lp_norm([&](const double* x) { return fe(x) - F.eval(x); }, D,
                                   cls.p, quad));
        }
        rep.rows.push_back(row);
        xs.push_back(double(kmax));
        es.push_back(row.error);
    }
    finish_fit(rep, xs, es, 1e-11);

    // boundedness surrogate: the class-norm ratio |Ef| / |f| must stay in a
    // narrow band across the family (the theorem's constant is not computable)
    const int kr = kmax_levels.front();
    const double pad = double(m + 1) * std::ldexp(1.0, -K0);
    std::vector<double> lo = D.bbox().lo, hi = D.bbox().hi;
    for (int j = 0; j < D.dim(); ++j) {
        lo[j] -= pad;
        hi[j] += pad;
    }
    DomainPtr big = make_box(lo, hi);
    rep.ratio_min = std::numeric_limits<double>::infinity();
    for (const auto& f : family) {
        ExtensionResult E = extend(f.fn(), D, cls, m, K0, kr, quad);
        double num = class_norm(E.fn(), *big, cls, quad);
        double den = class_norm(f.fn(), D, cls, quad);
        if (!(den > 0.0)) continue;
        double r = num / den;
        rep.ratio_max = std::max(rep.ratio_max, r);
        rep.ratio_min = std::min(rep.ratio_min, r);
    }
    if (!std::isfinite(rep.ratio_min)) rep.ratio_min = 0.0;
    return rep;
}

}  // namespace bsq

#pragma once

// The headline constructions: the multiscale extension operator (base level
// plus detail series), point-sample recovery through per-cell Lagrange
// interpolation, the derivative-of-interpolant operator for the Stechkin
// tradeoff, and the rate experiments that check the predicted slopes.

#include <cstdint>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "field.hpp"
#include "geometry.hpp"
#include "multiscale.hpp"

namespace bsq {

// ---------------------------------------------------------------------------
// extension

struct ExtensionResult {
    int K0 = 0;
    int k_max = 0;
    SplineField base;                  // quasi-interpolant at K0
    std::vector<SplineField> details;  // levels K0+1 .. k_max

    // base(x) + sum of details(x); on D this telescopes to the finest
    // quasi-interpolant, off D it is the spline continuation
    double eval(const double* x) const;
    double eval(const std::vector<double>& x) const { return eval(x.data()); }
    ScalarFn fn() const;
};

ExtensionResult extend(const ScalarFn& f, const Domain& D, const SmoothnessClass& cls, int m,
                       int K0, int k_max, const QuadratureSpec& quad);

// ---------------------------------------------------------------------------
// sampling recovery

struct SampleSet {
    int d = 0, k = 0, l = 0;
    std::vector<Index> cells;   // interior cells, sorted
    std::vector<Index> mus;     // integer simplex lattice of degree l-1
    std::vector<double> values; // f at point(ci, mi), mi fastest

    size_t count() const { return cells.size() * mus.size(); }
    // x = 2^-k (nu + e/4 + mu/(2l))
    std::vector<double> point(size_t cell_i, size_t mu_i) const;
    double value(size_t cell_i, size_t mu_i) const { return values[cell_i * mus.size() + mu_i]; }
};

// the point skeleton; values remain empty until fill_samples
SampleSet sample_points(const Domain& D, int k, int l);
void fill_samples(SampleSet& s, const ScalarFn& f);

// spline field built from the n(k,D) point values alone
SplineField recovery(const SampleSet& s, const Domain& D, int m);

// ---------------------------------------------------------------------------
// Stechkin operator V f = D^lambda (E_k f) restricted to D

class StechkinOperator {
  public:
    // the domain must outlive the operator
    StechkinOperator(const Domain& D, int k, int l, int m, Index lambda, QuadratureSpec quad);

    int level() const { return k_; }
    const Index& lambda() const { return lambda_; }

    SplineField interpolant(const ScalarFn& f) const;  // E_k f
    // measured lower bound for |V|_{L_s -> L_q} over seeded rough inputs
    double norm_probe(double s, double q, int trials, std::uint64_t seed) const;
    // |D^lambda f - V f|_{L_q(D)} for a catalog function with exact derivatives
    double error_probe(const TestFunction& f, double q) const;

  private:
    const Domain* D_;
    int k_, l_, m_;
    Index lambda_;
    QuadratureSpec quad_;
};

// ---------------------------------------------------------------------------
// rate experiments

struct RateRow {
    double level = 0.0;   // k, or k_max for extension
    double n = 0.0;       // sample/coefficient count where meaningful
    double error = 0.0;   // max over the test family
    double norm = 0.0;    // companion quantity (field norm, probe norm, ratio)
};

struct RateReport {
    std::string kind;
    std::vector<RateRow> rows;
    double alpha_hat = 0.0;   // measured family smoothness driving `expected`
    double expected = 0.0;
    double fitted = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    bool degenerate = false;  // errors at the noise floor, slope not meaningful
    // extension kind: spread of class-norm ratios |Ef| / |f| over the family
    double ratio_max = 0.0;
    double ratio_min = 0.0;
    std::string note;
};

// max over the family of |f - E_k f|_{L_p(D)} per level; slope vs k
RateReport approx_rate_experiment(const Domain& D, const std::vector<TestFunction>& family,
                                  double p, int l, int m, const std::vector<int>& levels,
                                  double tolerance, const QuadratureSpec& quad);

// recovery error in W_q^morder against the sample count n; slope vs log2 n
RateReport recovery_rate_experiment(const Domain& D, const std::vector<TestFunction>& family,
                                    double p, double q, int morder, int l, int m,
                                    const std::vector<int>& levels, double tolerance,
                                    const QuadratureSpec& quad);

// error_probe against norm_probe across levels; slope vs log2 norm
RateReport stechkin_rate_experiment(const Domain& D, const std::vector<TestFunction>& family,
                                    const Index& lambda, double p, double q, double s, int l,
                                    int m, const std::vector<int>& levels, double tolerance,
                                    const QuadratureSpec& quad);

// restriction residual against k_max plus class-norm ratio stability
RateReport extension_rate_experiment(const Domain& D, const std::vector<TestFunction>& family,
                                     const SmoothnessClass& cls, int m, int K0,
                                     const std::vector<int>& kmax_levels, double tolerance,
                                     const QuadratureSpec& quad);

}  // namespace bsq

#pragma once

// Quasi-interpolation and the two-scale machinery: the refinement parity
// stencil, E_k (local projection over nearest interior cells), H_k
// (prolongation to the next level), the detail operator E_k - H_{k-1}E_{k-1},
// and the per-color coefficient discretization.

#include <functional>
#include <vector>

#include "bspline.hpp"
#include "field.hpp"
#include "geometry.hpp"
#include "quadrature.hpp"

namespace bsq {

// subdivision stencil: a level-(k+1) shift nu draws from parents (nu - m)/2
// over the parity-matched m in {0..m+1}^d, with product weights
class ParityStencil {
  public:
    ParityStencil(int m, int d);

    int order() const { return m_; }
    int dim() const { return d_; }

    struct Entry {
        Index parent;
        double weight;
    };
    std::vector<Entry> parents(const Index& nu) const;

    // the same weights in exact arithmetic; their sum is exactly 1
    Rational exact_weight_sum(const Index& nu) const;

  private:
    int m_, d_;
    std::vector<Rational> axis_;  // a_mu, mu = 0..m+1
};

using ScalarFn = std::function<double(const double*)>;

// E_k f: coefficient at nu is the projection of f over the nearest interior
// cell; coefficients have total degree <= l-1; requires 1 <= l <= m
SplineField quasi_interpolant(const ScalarFn& f, const Domain& D, int k, int l, int m,
                              const QuadratureSpec& quad);

// H_k F at level k+1 over the active shifts of D; restriction to D unchanged
SplineField two_scale_refine(const SplineField& F, const Domain& D);

// E_k f - H_{k-1} E_{k-1} f, a level-k field
SplineField detail(const ScalarFn& f, const Domain& D, int k, int l, int m,
                   const QuadratureSpec& quad);

// coefficient values {f_nu(2^-k(nu + lambda))} for nu in the color class,
// lambda over the integer simplex lattice of the field's degree; lex order
std::vector<double> discretize_color(const SplineField& F, const Index& sigma);

// inverse of the per-cell evaluation: rebuild the field from the vector
SplineField undiscretize_color(const std::vector<double>& values, const std::vector<Index>& shifts,
                               const Index& sigma, int d, int m, int k, int degree);

}  // namespace bsq

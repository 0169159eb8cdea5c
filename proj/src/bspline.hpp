#pragma once

// Cardinal B-splines psi^m on [0, m+1], built once by exact symbolic
// convolution with the unit box, plus the tensor/scaled-shift evaluations and
// the two-scale refinement weights.
//
// Knot convention: piece j owns [j, j+1). With that convention the integer
// translates sum to 1 pointwise even for the m = 0 indicator (the identity is
// an almost-everywhere statement; the half-open choice picks a consistent
// representative).

#include <boost/rational.hpp>

#include <vector>

#include "multiindex.hpp"

namespace bsq {

using Rational = boost::rational<long long>;

class CardinalBSpline {
  public:
    // exact convolution build; desk-scale cap keeps the rationals in range
    explicit CardinalBSpline(int m);

    int order() const { return m_; }

    // (d/dx)^r psi^m at x; pieces are half-open, zero outside [0, m+1)
    double eval(double x, int r = 0) const;

    // exact monomial coefficients of piece j (valid on [j, j+1))
    const std::vector<std::vector<Rational>>& exact_pieces() const { return exact_; }

    // process-wide cache, keyed by order
    static const CardinalBSpline& get(int m);

  private:
    int m_;
    std::vector<std::vector<Rational>> exact_;        // exact_[j][i] * x^i
    std::vector<std::vector<std::vector<double>>> dpieces_;  // [r][j][i]
};

// a_mu = 2^-m C(m+1, mu) for mu = 0..m+1 (exact; dyadic, so double-safe too)
std::vector<Rational> refinement_coeffs(int m);

// psi^{m,d}(x) = prod_j psi^m(x_j)
double tensor_bspline(int m, int d, const double* x);

// D^lambda g_{k,nu}^{m,d}(x) = 2^{k|lambda|} prod_j (psi^m)^{(lambda_j)}(2^k x_j - nu_j);
// pass lambda = nullptr for plain evaluation
double basis_eval(int m, int d, int k, const Index& nu, const double* x, const Index* lambda = nullptr);

// residual psi^{m,d}(x) - sum_mu A_mu^{m,d} psi^{m,d}(2x - mu)
double refinement_check(int m, int d, const double* x);

}  // namespace bsq

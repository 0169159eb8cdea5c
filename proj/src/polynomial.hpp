#pragma once

// Dense multivariate polynomials in the monomial basis, total degree bounded.
// The spaces in play are tiny (dimension C(l+d,d), at most a few dozen), so a
// flat sorted term list plus dense linear algebra is the whole story.

#include <utility>
#include <vector>

#include "multiindex.hpp"

namespace bsq {

class Polynomial {
  public:
    Polynomial() : dim_(1), degree_(0) {}
    Polynomial(int dim, int degree);

    static Polynomial constant(int dim, double c);

    int dim() const { return dim_; }
    int degree() const { return degree_; }

    double coeff(const Index& lambda) const;
    void set_coeff(const Index& lambda, double a);
    void add_coeff(const Index& lambda, double a);

    const std::vector<std::pair<Index, double>>& terms() const { return terms_; }

    double eval(const double* x) const;
    double eval(const std::vector<double>& x) const { return eval(x.data()); }

    Polynomial derivative(const Index& lambda) const;

    // p(x) with x_j = scale_j * y_j + shift_j, as a polynomial in y.
    Polynomial affine_substitute(const std::vector<double>& scale,
                                 const std::vector<double>& shift) const;

    Polynomial& operator+=(const Polynomial& q);
    Polynomial& operator-=(const Polynomial& q);
    Polynomial& operator*=(double c);

    double max_abs_coeff() const;
    bool is_zero() const { return terms_.empty(); }

    // product over axes of univariate polynomials given by coefficient arrays
    // (coeffs[j][i] multiplies y_j^i)
    static Polynomial tensor_from_univariate(const std::vector<std::vector<double>>& coeffs);

  private:
    int dim_;
    int degree_;
    std::vector<std::pair<Index, double>> terms_;  // lexicographically sorted, nonzero
};

inline Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
inline Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
inline Polynomial operator*(double c, Polynomial p) { return p *= c; }

// Unique p in P^{l,d} matching the given values on the lattice
// {lambda in Z_+^d : |lambda| <= l}; values must follow simplex_indices(d, l)
// order. Dense solve with partial pivoting.
Polynomial lattice_interpolate(int d, int l, const std::vector<double>& values);

// Cardinal basis {pi_mu} on the same lattice: pi_mu(mu') = delta.
std::vector<Polynomial> lagrange_basis(int d, int l);

}  // namespace bsq

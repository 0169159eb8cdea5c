#pragma once

// Spline fields: level-k linear combinations of scaled shifted B-splines with
// polynomial coefficients, f(x) = sum_nu f_nu(x) g_{k,nu}(x). Evaluation
// gathers only the (m+1)^d shifts whose support contains x.

#include <iosfwd>
#include <map>

#include "multiindex.hpp"
#include "polynomial.hpp"

namespace bsq {

class SplineField {
  public:
    SplineField() = default;
    SplineField(int d, int m, int k, int degree);

    int dim() const { return d_; }
    int order() const { return m_; }
    int level() const { return k_; }
    int degree() const { return degree_; }

    const std::map<Index, Polynomial>& coeffs() const { return coeffs_; }
    bool active(const Index& nu) const { return coeffs_.count(nu) != 0; }
    // missing shifts read as the zero polynomial
    const Polynomial& coeff(const Index& nu) const;
    void set_coeff(const Index& nu, Polynomial p);

    double eval(const double* x) const;
    double eval(const std::vector<double>& x) const { return eval(x.data()); }
    // D^lambda of the sum by the Leibniz rule; requires lambda_j <= m per axis
    double eval(const double* x, const Index& lambda) const;
    double eval(const std::vector<double>& x, const Index& lambda) const {
        return eval(x.data(), lambda);
    }

    // this += a * other; levels, orders and dimensions must agree
    void axpy(double a, const SplineField& other);

    // restriction to the residue class sigma + (m+1)Z^d
    SplineField color_part(const Index& sigma) const;

    double max_abs_coeff() const;

    // versioned text format, %.17g, records in sorted order (byte-stable)
    void dump(std::ostream& os) const;
    static SplineField load(std::istream& is);

  private:
    int d_ = 0, m_ = 0, k_ = 0, degree_ = 0;
    Polynomial zero_;
    std::map<Index, Polynomial> coeffs_;
};

}  // namespace bsq

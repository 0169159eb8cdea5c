#pragma once

// Local polynomial projection: the L2(Q)-orthogonal projector onto total
// degree <= l over an axis-aligned box, realized in an orthonormal shifted
// Legendre tensor frame with tensor Gauss quadrature.

#include <cstdint>
#include <functional>
#include <vector>

#include "geometry.hpp"
#include "polynomial.hpp"
#include "quadrature.hpp"

namespace bsq {

// coefficients of sqrt(2n+1) * P_n(2u - 1) in powers of u (orthonormal on [0,1])
std::vector<double> shifted_legendre(int n);

class LocalProjector {
  public:
    // nodes come from spec.gauss_nodes when set (validated against the
    // exactness floor 2n-1 >= 2*degree+2), else degree+2
    LocalProjector(Box box, int degree, const QuadratureSpec& spec);

    const Box& box() const { return box_; }
    int degree() const { return degree_; }
    int nodes() const { return nodes_; }

    // orthonormal basis polynomials in global coordinates, simplex order
    const std::vector<Polynomial>& basis() const { return basis_; }

    Polynomial project(const std::function<double(const double*)>& f) const;
    Polynomial project(const Polynomial& p) const;

    // L2(Q) norm of a polynomial, exact at this rule for degree <= 2*nodes-1
    double l2_norm(const Polynomial& p) const;

  private:
    Box box_;
    int degree_;
    int nodes_;
    std::vector<Polynomial> basis_;
    // per-node data for the projection loop: abscissas and w * phi values
    std::vector<std::vector<double>> node_x_;
    std::vector<double> node_w_;
    std::vector<std::vector<double>> node_phi_;  // [node][basis]
};

// measured sup of |Pf|_p / |f|_p over seeded rough test functions
double stability_probe(const LocalProjector& P, double p, int trials, std::uint64_t seed);

}  // namespace bsq

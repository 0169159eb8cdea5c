#pragma once

// Gauss-Legendre rules on the unit interval, tensor integration over boxes,
// and the quadrature configuration shared by projection and norm code.

#include <cstdint>
#include <functional>
#include <vector>

#include "geometry.hpp"

namespace bsq {

struct QuadratureSpec {
    int gauss_nodes = 0;       // per-axis rule size; 0 picks degree + 2 at the use site
    int grid_level = 4;        // dyadic tiling level for norm integrals over a domain
    int boundary_depth = 3;    // extra subdivision depth for cells crossing the boundary
    int mc_samples = 1024;     // low-discrepancy shift samples for the averaged modulus
    int sup_grid = 5;          // per-axis grid density for the sup modulus
    std::uint64_t seed = 1;

    void validate() const;  // throws std::invalid_argument naming the bad field
};

struct GaussRule {
    std::vector<double> nodes;    // in (0,1)
    std::vector<double> weights;  // sum to 1
};

// cached n-point rule on [0,1]; exact for polynomials of degree 2n-1
const GaussRule& gauss_rule(int n);

// smallest rule size meeting the exactness floor 2n-1 >= 2*degree + 2
int gauss_size_for_degree(int degree);

// tensor product integral of f over an axis-aligned box, n nodes per axis
double integrate_box(const Box& b, int n, const std::function<double(const double*)>& f);

}  // namespace bsq

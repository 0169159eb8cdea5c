#include "quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace bsq {

void QuadratureSpec::validate() const {
    if (gauss_nodes < 0 || gauss_nodes > 64)
        throw std::invalid_argument("quadrature.gauss_nodes: expected 0 (auto) or 1..64");
    if (grid_level < 0 || grid_level > 12)
        throw std::invalid_argument("quadrature.grid_level: expected 0..12");
    if (boundary_depth < 0 || boundary_depth > 12)
        throw std::invalid_argument("quadrature.boundary_depth: expected 0..12");
    if (mc_samples < 1)
        throw std::invalid_argument("quadrature.mc_samples: expected >= 1");
    if (sup_grid < 1)
        throw std::invalid_argument("quadrature.sup_grid: expected >= 1");
}

namespace {

// Legendre P_n and P_n' at x by the three-term recurrence
std::pair<double, double> legendre(int n, double x) {
    double p0 = 1.0, p1 = x;
    for (int j = 2; j <= n; ++j) {
        double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / double(j);
        p0 = p1;
        p1 = p2;
    }
    double dp = n * (x * p1 - p0) / (x * x - 1.0);
    return {p1, dp};
}

GaussRule build_rule(int n) {
    GaussRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Newton from the Chebyshev-like initial guess; converges in a few steps
        double x = std::cos(M_PI * (double(i) + 0.75) / (double(n) + 0.5));
        for (int it = 0; it < 100; ++it) {
            auto [p, dp] = legendre(n, x);
            double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        auto [p, dp] = legendre(n, x);
        (void)p;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.nodes[i] = 0.5 * (x + 1.0);
        r.weights[i] = 0.5 * w;
    }
    // enforce exact symmetry: average mirrored pairs
    for (int i = 0, j = n - 1; i < j; ++i, --j) {
        double c = 0.5 * (r.nodes[i] + (1.0 - r.nodes[j]));
        r.nodes[i] = c;
        r.nodes[j] = 1.0 - c;
        double w = 0.5 * (r.weights[i] + r.weights[j]);
        r.weights[i] = r.weights[j] = w;
    }
    if (n % 2 == 1) r.nodes[n / 2] = 0.5;
    return r;
}

}  // namespace

const GaussRule& gauss_rule(int n) {
    if (n < 1 || n > 64) throw std::invalid_argument("gauss_rule: size must be 1..64");
    static std::map<int, GaussRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
    return it->second;
}

int gauss_size_for_degree(int degree) {
    if (degree < 0) throw std::invalid_argument("gauss_size_for_degree: degree must be >= 0");
    return degree + 2;  // 2n - 1 = 2*degree + 3 >= 2*degree + 2
}

double integrate_box(const Box& b, int n, const std::function<double(const double*)>& f) {
    const int d = b.dim();
    const GaussRule& rule = gauss_rule(n);
    std::vector<double> x(d);
    std::vector<int> idx(d, 0);
    double vol = 1.0;
    for (int j = 0; j < d; ++j) vol *= b.hi[j] - b.lo[j];
    long double sum = 0.0L;
    while (true) {
        double w = 1.0;
        for (int j = 0; j < d; ++j) {
            x[j] = b.lo[j] + (b.hi[j] - b.lo[j]) * rule.nodes[idx[j]];
            w *= rule.weights[idx[j]];
        }
        sum += (long double)(w * f(x.data()));
        int j = d - 1;
        while (j >= 0 && idx[j] == n - 1) idx[j--] = 0;
        if (j < 0) break;
        ++idx[j];
    }
    return double(sum) * vol;
}

}  // namespace bsq

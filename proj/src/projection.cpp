#include "projection.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "rng.hpp"

namespace bsq {

std::vector<double> shifted_legendre(int n) {
    if (n < 0) throw std::invalid_argument("shifted_legendre: degree must be >= 0");
    // recurrence on [0,1]: (j+1) P_{j+1} = (2j+1)(2u-1) P_j - j P_{j-1}
    std::vector<std::vector<double>> P(n + 1);
    P[0] = {1.0};
    if (n >= 1) P[1] = {-1.0, 2.0};
    for (int j = 1; j < n; ++j) {
        std::vector<double> next(j + 2, 0.0);
        for (int i = 0; i <= j; ++i) {
            next[i + 1] += (2.0 * j + 1.0) * 2.0 * P[j][i];
            next[i] -= (2.0 * j + 1.0) * P[j][i];
        }
        for (int i = 0; i < j; ++i) next[i] -= double(j) * P[j - 1][i];
        for (double& c : next) c /= double(j + 1);
        P[j + 1] = std::move(next);
    }
    double s = std::sqrt(2.0 * n + 1.0);
    for (double& c : P[n]) c *= s;
    return P[n];
}

LocalProjector::LocalProjector(Box box, int degree, const QuadratureSpec& spec)
    : box_(std::move(box)), degree_(degree) {
    if (degree_ < 0) throw std::invalid_argument("projector degree must be >= 0");
    const int d = box_.dim();
    double vol = 1.0;
    for (int j = 0; j < d; ++j) {
        if (!(box_.hi[j] > box_.lo[j]))
            throw std::invalid_argument("projector box is degenerate");
        vol *= box_.hi[j] - box_.lo[j];
    }

    nodes_ = spec.gauss_nodes > 0 ? spec.gauss_nodes : gauss_size_for_degree(degree_);
    if (2 * nodes_ - 1 < 2 * degree_ + 2)
        throw std::invalid_argument(
            "quadrature.gauss_nodes: a rule of size n is exact to degree 2n-1; "
            "projection onto degree " + std::to_string(degree_) + " needs at least " +
            std::to_string(2 * degree_ + 2));

    // orthonormal frame in global coordinates: tensor shifted Legendre in
    // u_j = (x_j - lo_j)/(hi_j - lo_j), restricted to total degree
    std::vector<std::vector<double>> leg(degree_ + 1);
    for (int n = 0; n <= degree_; ++n) leg[n] = shifted_legendre(n);
    std::vector<double> scale(d), shift(d);
    for (int j = 0; j < d; ++j) {
        double w = box_.hi[j] - box_.lo[j];
        scale[j] = 1.0 / w;
        shift[j] = -box_.lo[j] / w;
    }
    const double nrm = 1.0 / std::sqrt(vol);
    for (const Index& lambda : simplex_indices(d, degree_)) {
        std::vector<std::vector<double>> uni(d);
        for (int j = 0; j < d; ++j) uni[j] = leg[lambda[j]];
        Polynomial phi = Polynomial::tensor_from_univariate(uni).affine_substitute(scale, shift);
        phi *= nrm;
        basis_.push_back(std::move(phi));
    }

    const GaussRule& rule = gauss_rule(nodes_);
    std::vector<int> idx(d, 0);
    while (true) {
        std::vector<double> x(d);
        double w = vol;
        for (int j = 0; j < d; ++j) {
            x[j] = box_.lo[j] + (box_.hi[j] - box_.lo[j]) * rule.nodes[idx[j]];
            w *= rule.weights[idx[j]];
        }
        std::vector<double> phis(basis_.size());
        for (size_t b = 0; b < basis_.size(); ++b) phis[b] = basis_[b].eval(x.data());
        node_x_.push_back(std::move(x));
        node_w_.push_back(w);
        node_phi_.push_back(std::move(phis));
        int j = d - 1;
        while (j >= 0 && idx[j] == nodes_ - 1) idx[j--] = 0;
        if (j < 0) break;
        ++idx[j];
    }
}

Polynomial LocalProjector::project(const std::function<double(const double*)>& f) const {
    std::vector<long double> c(basis_.size(), 0.0L);
    for (size_t q = 0; q < node_x_.size(); ++q) {
        double fv = f(node_x_[q].data());
        double wf = node_w_[q] * fv;
        for (size_t b = 0; b < basis_.size(); ++b) c[b] += (long double)(wf * node_phi_[q][b]);
    }
    Polynomial out = Polynomial::constant(box_.dim(), 0.0);
    for (size_t b = 0; b < basis_.size(); ++b) out += double(c[b]) * basis_[b];
    return out;
}

Polynomial LocalProjector::project(const Polynomial& p) const {
    return project([&](const double* x) { return p.eval(x); });
}

double LocalProjector::l2_norm(const Polynomial& p) const {
    long double s = 0.0L;
    for (size_t q = 0; q < node_x_.size(); ++q) {
        double v = p.eval(node_x_[q].data());
        s += (long double)(node_w_[q] * v * v);
    }
    return std::sqrt(std::max(0.0, double(s)));
}

double stability_probe(const LocalProjector& P, double p, int trials, std::uint64_t seed) {
    if (!(p >= 1.0)) throw std::invalid_argument("stability_probe: p must be >= 1");
    const Box& Q = P.box();
    const int d = Q.dim();
    Rng rng(seed);
    double worst = 0.0;

    // dense midpoint grid for the p-norms of non-polynomial inputs
    const int g = 24;
    std::vector<std::vector<double>> grid;
    std::vector<int> idx(d, 0);
    while (true) {
        std::vector<double> x(d);
        for (int j = 0; j < d; ++j)
            x[j] = Q.lo[j] + (Q.hi[j] - Q.lo[j]) * (double(idx[j]) + 0.5) / double(g);
        grid.push_back(std::move(x));
        int j = d - 1;
        while (j >= 0 && idx[j] == g - 1) idx[j--] = 0;
        if (j < 0) break;
        ++idx[j];
    }
    double cellvol = 1.0;
    for (int j = 0; j < d; ++j) cellvol *= (Q.hi[j] - Q.lo[j]) / double(g);

    auto grid_norm = [&](const std::function<double(const double*)>& f) {
        if (std::isinf(p)) {
            double m = 0.0;
            for (const auto& x : grid) m = std::max(m, std::abs(f(x.data())));
            return m;
        }
        long double s = 0.0L;
        for (const auto& x : grid) s += (long double)std::pow(std::abs(f(x.data())), p);
        return std::pow(double(s) * cellvol, 1.0 / p);
    };

    for (int t = 0; t < trials; ++t) {
        // rough input: trig mixture with a seeded jump line across the box
        std::vector<double> freq(d), phase(d), amp(3);
        for (int j = 0; j < d; ++j) {
            freq[j] = rng.uniform(1.0, 9.0);
            phase[j] = rng.uniform(0.0, 6.28);
        }
        for (double& a : amp) a = rng.uniform(-1.0, 1.0);
        double cut = rng.uniform(Q.lo[0] + 0.2 * (Q.hi[0] - Q.lo[0]),
                                 Q.lo[0] + 0.8 * (Q.hi[0] - Q.lo[0]));
        double scale = 2.0 / (Q.hi[0] - Q.lo[0]);
        auto f = [&](const double* x) {
            double v = amp[2] * (x[0] > cut ? 1.0 : -1.0);
            for (int j = 0; j < d; ++j)
                v += (j == 0 ? amp[0] : amp[1]) * std::sin(freq[j] * scale * x[j] + phase[j]);
            return v;
        };
        Polynomial Pf = P.project(f);

        double num, den;
        if (p == 2.0) {
            // same-rule Bessel pairing keeps the ratio <= 1 up to roundoff
            num = P.l2_norm(Pf);
            long double s = 0.0L;
            const GaussRule& rule = gauss_rule(P.nodes());
            std::vector<int> ix(d, 0);
            double vol = 1.0;
            for (int j = 0; j < d; ++j) vol *= Q.hi[j] - Q.lo[j];
            while (true) {
                std::vector<double> x(d);
                double w = vol;
                for (int j = 0; j < d; ++j) {
                    x[j] = Q.lo[j] + (Q.hi[j] - Q.lo[j]) * rule.nodes[ix[j]];
                    w *= rule.weights[ix[j]];
                }
                double v = f(x.data());
                s += (long double)(w * v * v);
                int j = d - 1;
                while (j >= 0 && ix[j] == P.nodes() - 1) ix[j--] = 0;
                if (j < 0) break;
                ++ix[j];
            }
            den = std::sqrt(std::max(0.0, double(s)));
        } else {
            num = grid_norm([&](const double* x) { return Pf.eval(x); });
            den = grid_norm(f);
        }
        if (den > 1e-12) worst = std::max(worst, num / den);
    }
    return worst;
}

}  // namespace bsq

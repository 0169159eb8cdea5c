#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "projection.hpp"
#include "quadrature.hpp"
#include "rng.hpp"

using namespace bsq;

TEST_CASE("gauss rule nodes and weights on the unit interval") {
    // classical (-1,1) values mapped by x -> (1+x)/2, w -> w/2
    GaussRule g3 = gauss_rule(3);
    REQUIRE(g3.nodes.size() == 3);
    std::vector<std::pair<double, double>> s3;
    for (int i = 0; i < 3; ++i) s3.push_back({g3.nodes[i], g3.weights[i]});
    std::sort(s3.begin(), s3.end());
    CHECK(s3[0].first == doctest::Approx((1.0 - 0.774596669241483) / 2.0).epsilon(1e-14));
    CHECK(s3[1].first == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(s3[2].first == doctest::Approx((1.0 + 0.774596669241483) / 2.0).epsilon(1e-14));
    CHECK(s3[0].second == doctest::Approx(5.0 / 18.0).epsilon(1e-14));
    CHECK(s3[1].second == doctest::Approx(8.0 / 18.0).epsilon(1e-14));

    GaussRule g4 = gauss_rule(4);
    std::vector<std::pair<double, double>> s4;
    for (int i = 0; i < 4; ++i) s4.push_back({g4.nodes[i], g4.weights[i]});
    std::sort(s4.begin(), s4.end());
    CHECK(s4[0].first == doctest::Approx((1.0 - 0.861136311594053) / 2.0).epsilon(1e-13));
    CHECK(s4[1].first == doctest::Approx((1.0 - 0.339981043584856) / 2.0).epsilon(1e-13));
    CHECK(s4[0].second == doctest::Approx(0.347854845137454 / 2.0).epsilon(1e-13));
    CHECK(s4[3].second == doctest::Approx(0.347854845137454 / 2.0).epsilon(1e-13));

    // symmetry is enforced exactly
    for (int n = 2; n <= 12; ++n) {
        GaussRule g = gauss_rule(n);
        double wsum = 0.0;
        for (int i = 0; i < n; ++i) {
            CHECK(g.nodes[i] == 1.0 - g.nodes[n - 1 - i]);
            CHECK(g.weights[i] == g.weights[n - 1 - i]);
            wsum += g.weights[i];
        }
        CHECK(wsum == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("gauss rule integrates to its exactness degree") {
    // n nodes are exact through degree 2n-1
    for (int n = 1; n <= 6; ++n) {
        GaussRule g = gauss_rule(n);
        for (int deg = 0; deg <= 2 * n - 1; ++deg) {
            double got = 0.0;
            for (int i = 0; i < n; ++i) got += g.weights[i] * std::pow(g.nodes[i], deg);
            CHECK(got == doctest::Approx(1.0 / (deg + 1)).epsilon(1e-13));
        }
    }
}

TEST_CASE("tensor quadrature over a box") {
    Box b{{0.0, 1.0}, {1.0, 3.0}};
    double got = integrate_box(b, 3, [](const double* x) { return x[0] * x[1]; });
    CHECK(got == doctest::Approx(2.0).epsilon(1e-14));

    double vol = integrate_box(b, 2, [](const double*) { return 1.0; });
    CHECK(vol == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("quadrature spec validation names the offending field") {
    QuadratureSpec q;
    q.gauss_nodes = -2;
    CHECK_THROWS_WITH_AS(q.validate(), doctest::Contains("quadrature.gauss_nodes"),
                         std::invalid_argument);
    q = QuadratureSpec{};
    q.mc_samples = 0;
    CHECK_THROWS_WITH_AS(q.validate(), doctest::Contains("quadrature.mc_samples"),
                         std::invalid_argument);
}

TEST_CASE("projector reproduces polynomials of its degree") {
    Rng rng(13);
    QuadratureSpec quad;
    for (int d = 1; d <= 2; ++d)
        for (int deg = 0; deg <= 3; ++deg) {
            Box b{std::vector<double>(d, 0.25), std::vector<double>(d, 0.75)};
            LocalProjector P(b, deg, quad);
            Polynomial p(d, deg);
            for (const Index& lam : simplex_indices(d, deg))
                p.set_coeff(lam, rng.uniform(-1.0, 1.0));
            Polynomial diff = P.project(p) - p;
            CHECK(diff.max_abs_coeff() <= 1e-11);
        }
}

TEST_CASE("projection is idempotent and orthogonal") {
    QuadratureSpec quad;
    Box b{{0.3, 0.25}, {0.8, 0.9}};
    LocalProjector P(b, 2, quad);
    auto f = [](const double* x) { return std::sin(3.0 * x[0]) * std::exp(x[1]); };

    Polynomial pf = P.project(f);
    Polynomial pp = P.project(pf);
    CHECK((pp - pf).max_abs_coeff() <= 1e-11);

    // Pythagoras against perturbed competitors: ||f-q||^2 >= ||f-Pf||^2
    Rng rng(29);
    auto residual_norm = [&](const Polynomial& q) {
        double s = integrate_box(b, 8, [&](const double* x) {
            double r = f(x) - q.eval(x);
            return r * r;
        });
        return std::sqrt(s);
    };
    double best = residual_norm(pf);
    for (int trial = 0; trial < 5; ++trial) {
        Polynomial q = pf;
        for (const Index& lam : simplex_indices(2, 2))
            q.add_coeff(lam, rng.uniform(-0.1, 0.1));
        CHECK(residual_norm(q) >= best - 1e-10);
    }
}

TEST_CASE("projection contracts in the discrete l2 pairing") {
    QuadratureSpec quad;
    Box b{{0.0}, {0.5}};
    LocalProjector P(b, 3, quad);
    double c = stability_probe(P, 2.0, 30, 99);
    CHECK(c <= 1.0 + 1e-9);
    CHECK(c > 0.5);  // rough inputs are not annihilated
}

TEST_CASE("insufficient quadrature for the degree is rejected") {
    QuadratureSpec quad;
    quad.gauss_nodes = 2;  // exact to degree 3 only
    Box b{{0.0}, {1.0}};
    CHECK_THROWS_WITH_AS(LocalProjector(b, 3, quad), doctest::Contains("gauss_nodes"),
                         std::invalid_argument);
    CHECK_THROWS_AS(LocalProjector(b, -1, quad), std::invalid_argument);
}

TEST_CASE("orthonormal basis under the box measure") {
    QuadratureSpec quad;
    Box b{{0.2, 0.1}, {0.9, 0.7}};
    LocalProjector P(b, 2, quad);
    const auto& basis = P.basis();
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = i; j < basis.size(); ++j) {
            double ip = integrate_box(b, 4, [&](const double* x) {
                return basis[i].eval(x) * basis[j].eval(x);
            });
            double want = (i == j) ? 1.0 : 0.0;
            CHECK(std::abs(ip - want) <= 1e-11);
        }
}

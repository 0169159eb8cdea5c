#include "doctest.h"

#include <cmath>

#include "polynomial.hpp"
#include "rng.hpp"

using namespace bsq;

TEST_CASE("evaluation and coefficient access") {
    Polynomial p(2, 2);
    p.set_coeff({0, 0}, 1.0);
    p.set_coeff({1, 0}, -2.0);
    p.set_coeff({0, 1}, 3.0);
    p.set_coeff({1, 1}, 0.5);

    double x[] = {2.0, -1.0};
    CHECK(p.eval(x) == doctest::Approx(1.0 - 4.0 - 3.0 - 1.0).epsilon(1e-15));
    CHECK(p.coeff({1, 0}) == -2.0);
    CHECK(p.coeff({2, 0}) == 0.0);

    p.set_coeff({1, 0}, 0.0);
    CHECK(p.coeff({1, 0}) == 0.0);
    CHECK_THROWS_AS(p.set_coeff({2, 1}, 1.0), std::invalid_argument);
}

TEST_CASE("derivative of a monomial mixture") {
    // p = x^2 y + 4 y^2, dp/dx = 2 x y, d2p/dxdy = 2 x
    Polynomial p(2, 3);
    p.set_coeff({2, 1}, 1.0);
    p.set_coeff({0, 2}, 4.0);

    Polynomial px = p.derivative({1, 0});
    Polynomial pxy = p.derivative({1, 1});
    double x[] = {3.0, 5.0};
    CHECK(px.eval(x) == doctest::Approx(2.0 * 3.0 * 5.0));
    CHECK(pxy.eval(x) == doctest::Approx(6.0));
    CHECK(p.derivative({0, 3}).is_zero());
}

TEST_CASE("affine substitution composes with evaluation") {
    Rng rng(11);
    Polynomial p(2, 3);
    for (const Index& lam : simplex_indices(2, 3)) p.set_coeff(lam, rng.uniform(-1.0, 1.0));

    std::vector<double> scale = {2.0, -0.5};
    std::vector<double> shift = {0.25, 1.5};
    Polynomial q = p.affine_substitute(scale, shift);

    for (int i = 0; i < 20; ++i) {
        double y[] = {rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
        double x[] = {scale[0] * y[0] + shift[0], scale[1] * y[1] + shift[1]};
        CHECK(q.eval(y) == doctest::Approx(p.eval(x)).epsilon(1e-12));
    }
}

TEST_CASE("arithmetic matches pointwise arithmetic") {
    Rng rng(7);
    Polynomial p(2, 2), q(2, 2);
    for (const Index& lam : simplex_indices(2, 2)) {
        p.set_coeff(lam, rng.uniform(-1.0, 1.0));
        q.set_coeff(lam, rng.uniform(-1.0, 1.0));
    }
    Polynomial s = p + q;
    Polynomial d = p - q;
    Polynomial t = 3.0 * p;
    for (int i = 0; i < 10; ++i) {
        double x[] = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        CHECK(s.eval(x) == doctest::Approx(p.eval(x) + q.eval(x)).epsilon(1e-13));
        CHECK(d.eval(x) == doctest::Approx(p.eval(x) - q.eval(x)).epsilon(1e-13));
        CHECK(t.eval(x) == doctest::Approx(3.0 * p.eval(x)).epsilon(1e-13));
    }
    Polynomial z = p - p;
    CHECK(z.is_zero());
}

TEST_CASE("tensor product from univariate factors") {
    // (1 + 2u)(3 - v^2) expanded
    Polynomial p = Polynomial::tensor_from_univariate({{1.0, 2.0}, {3.0, 0.0, -1.0}});
    double x[] = {0.5, 2.0};
    CHECK(p.eval(x) == doctest::Approx((1.0 + 1.0) * (3.0 - 4.0)).epsilon(1e-15));
    CHECK(p.coeff({1, 2}) == doctest::Approx(-2.0));
    CHECK(p.degree() == 3);
}

TEST_CASE("lattice interpolation reproduces polynomials exactly") {
    Rng rng(23);
    for (int d = 1; d <= 3; ++d)
        for (int l = 0; l <= 3; ++l) {
            Polynomial p(d, l);
            for (const Index& lam : simplex_indices(d, l))
                p.set_coeff(lam, rng.uniform(-1.0, 1.0));

            std::vector<double> vals;
            for (const Index& mu : simplex_indices(d, l)) {
                std::vector<double> x(mu.begin(), mu.end());
                vals.push_back(p.eval(x));
            }
            Polynomial q = lattice_interpolate(d, l, vals);
            Polynomial diff = p - q;
            CHECK(diff.max_abs_coeff() <= 1e-10);
        }
}

TEST_CASE("lagrange basis is cardinal on the simplex lattice") {
    for (int d = 1; d <= 2; ++d)
        for (int l = 1; l <= 3; ++l) {
            auto basis = lagrange_basis(d, l);
            auto lattice = simplex_indices(d, l);
            REQUIRE(basis.size() == lattice.size());
            for (size_t b = 0; b < basis.size(); ++b)
                for (size_t i = 0; i < lattice.size(); ++i) {
                    std::vector<double> x(lattice[i].begin(), lattice[i].end());
                    double want = (b == i) ? 1.0 : 0.0;
                    CHECK(basis[b].eval(x) == doctest::Approx(want).epsilon(1e-10));
                }
        }
}

TEST_CASE("multiindex helpers") {
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(0, 0) == 1);
    CHECK(multi_binomial({2, 1}, {1, 1}) == 2);
    CHECK(order(Index{2, 0, 3}) == 5);
    CHECK(linf_dist({0, 0}, {2, -1}) == 2);

    auto box = box_indices(Index{0, 0}, Index{1, 2});
    CHECK(box.size() == 6);  // both ends inclusive

    auto simplex = simplex_indices(2, 2);
    CHECK(simplex.size() == 6);  // C(2+2, 2)
}

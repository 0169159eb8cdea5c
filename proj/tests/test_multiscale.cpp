#include "doctest.h"

#include <cmath>

#include "multiscale.hpp"
#include "projection.hpp"
#include "rng.hpp"

using namespace bsq;

TEST_CASE("parity stencil weights") {
    // order 1, one axis: child nu collects a_{nu - 2n} from parent n,
    // a = (1/2, 1, 1/2)
    ParityStencil st(1, 1);
    auto parents0 = st.parents(Index{0});
    REQUIRE(parents0.size() == 2);
    double wsum = 0.0;
    for (const auto& e : parents0) {
        CHECK((e.parent == Index{0} || e.parent == Index{-1}));
        CHECK(e.weight == doctest::Approx(0.5));
        wsum += e.weight;
    }
    CHECK(wsum == doctest::Approx(1.0));

    auto parents1 = st.parents(Index{1});
    REQUIRE(parents1.size() == 1);
    CHECK(parents1[0].parent == Index{0});
    CHECK(parents1[0].weight == doctest::Approx(1.0));

    Rng rng(17);
    for (int m = 0; m <= 4; ++m)
        for (int d = 1; d <= 3; ++d) {
            ParityStencil s(m, d);
            for (int i = 0; i < 50; ++i) {
                Index nu(d);
                for (int& v : nu) v = (int)rng.uniform_int(-30, 30);
                CHECK(s.exact_weight_sum(nu) == Rational(1));
            }
        }
}

TEST_CASE("two-scale refinement preserves the field on the domain") {
    Rng rng(31);
    for (const DomainPtr& D : {make_cube(2), make_ball({0.5, 0.5}, 0.5)}) {
        const int k = 3, m = 2;
        SplineField F(2, m, k, 1);
        for (const Index& nu : active_cells(*D, k, m)) {
            Polynomial p(2, 1);
            for (const Index& lam : simplex_indices(2, 1))
                p.set_coeff(lam, rng.uniform(-1.0, 1.0));
            F.set_coeff(nu, p);
        }
        SplineField HF = two_scale_refine(F, *D);
        CHECK(HF.level() == k + 1);
        int found = 0;
        while (found < 150) {
            std::vector<double> x = {rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0)};
            if (!D->contains(x.data())) continue;
            ++found;
            CHECK(HF.eval(x) == doctest::Approx(F.eval(x)).epsilon(1e-11));
        }
    }
}

TEST_CASE("quasi-interpolant reproduces its polynomial space") {
    Rng rng(37);
    QuadratureSpec quad;
    for (int d = 1; d <= 2; ++d)
        for (int l = 1; l <= 3; ++l) {
            DomainPtr D = make_cube(d);
            Polynomial p(d, l - 1);
            for (const Index& lam : simplex_indices(d, l - 1))
                p.set_coeff(lam, rng.uniform(-1.0, 1.0));
            auto f = [&](const double* x) { return p.eval(x); };
            SplineField E = quasi_interpolant(f, *D, 3, l, l, quad);
            CHECK(E.degree() == l - 1);
            for (int i = 0; i < 80; ++i) {
                std::vector<double> x(d);
                for (double& v : x) v = rng.uniform(0.0, 1.0);
                double ref = p.eval(x);
                CHECK(std::abs(E.eval(x) - ref) <= 1e-8 * (1.0 + std::abs(ref)));
            }
        }
}

TEST_CASE("interpolant coefficients are cellwise projections") {
    QuadratureSpec quad;
    DomainPtr D = make_cube(1);
    auto f = [](const double* x) { return std::sin(5.0 * x[0]); };
    const int k = 3, l = 2, m = 2;
    SplineField E = quasi_interpolant(f, *D, k, l, m, quad);

    // on an interior cell the redirection is the identity, so the
    // coefficient is the projection over that very cell
    Index nu = {3};
    LocalProjector P(cell_box(k, nu), l - 1, quad);
    Polynomial diff = E.coeff(nu) - P.project(f);
    CHECK(diff.max_abs_coeff() <= 1e-12);

    // a boundary shift borrows the projection of its nearest interior cell
    auto interior = interior_cells(*D, k);
    Index edge = {-2};
    Index target = nearest_interior(interior, edge);
    CHECK(target == Index{1});
    LocalProjector Pt(cell_box(k, target), l - 1, quad);
    Polynomial diff2 = E.coeff(edge) - Pt.project(f);
    CHECK(diff2.max_abs_coeff() <= 1e-12);
}

TEST_CASE("interpolation below the start level is rejected") {
    QuadratureSpec quad;
    DomainPtr D = make_lshape();  // no interior cells at level 2
    auto f = [](const double* x) { return x[0]; };
    CHECK_THROWS_AS(quasi_interpolant(f, *D, 2, 2, 2, quad), std::runtime_error);
    CHECK_THROWS_AS(quasi_interpolant(f, *D, 3, 0, 2, quad), std::invalid_argument);
    CHECK_THROWS_AS(quasi_interpolant(f, *D, 3, 3, 2, quad), std::invalid_argument);
}

TEST_CASE("detail vanishes on polynomials and not on rough functions") {
    QuadratureSpec quad;
    DomainPtr D = make_cube(1);
    auto poly = [](const double* x) { return 1.0 - 2.0 * x[0]; };
    SplineField dp = detail(poly, *D, 3, 2, 2, quad);
    CHECK(dp.max_abs_coeff() <= 1e-10);

    auto cusp = [](const double* x) {
        double u = x[0] - 0.5;
        return u > 0.0 ? std::pow(u, 0.75) : 0.0;
    };
    SplineField dc = detail(cusp, *D, 3, 2, 2, quad);
    CHECK(dc.max_abs_coeff() > 1e-3);
}

TEST_CASE("color discretization round trips through lattice interpolation") {
    Rng rng(43);
    QuadratureSpec quad;
    DomainPtr D = make_cube(2);
    const int k = 3, m = 1, degree = 1;
    SplineField F(2, m, k, degree);
    Index sigma = {1, 0};
    for (const Index& nu : active_cells(*D, k, m)) {
        bool in_color = true;
        for (int j = 0; j < 2; ++j)
            if (((nu[j] % (m + 1)) + m + 1) % (m + 1) != sigma[j]) in_color = false;
        if (!in_color) continue;
        Polynomial p(2, degree);
        for (const Index& lam : simplex_indices(2, degree))
            p.set_coeff(lam, rng.uniform(-1.0, 1.0));
        F.set_coeff(nu, p);
    }

    auto values = discretize_color(F, sigma);
    std::vector<Index> shifts;
    for (const auto& [nu, p] : F.coeffs()) shifts.push_back(nu);
    SplineField G = undiscretize_color(values, shifts, sigma, 2, m, k, degree);

    REQUIRE(G.coeffs().size() == F.coeffs().size());
    for (const auto& [nu, p] : F.coeffs()) {
        Polynomial diff = p - G.coeff(nu);
        CHECK(diff.max_abs_coeff() <= 1e-9);
    }

    Index bad = {0, 1};
    CHECK_THROWS_AS(discretize_color(F, bad), std::invalid_argument);
}

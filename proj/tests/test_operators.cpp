#include "doctest.h"

#include <cmath>

#include "operators.hpp"
#include "rng.hpp"

using namespace bsq;

TEST_CASE("sample point layout and counts") {
    DomainPtr I1 = make_cube(1);
    SampleSet s = sample_points(*I1, 3, 2);
    CHECK(s.mus.size() == 2);                      // integer simplex, degree 1
    CHECK(s.cells.size() == 6);                    // interior cells of (0,1) at level 3
    CHECK(s.count() == 12);

    // x = 2^-k (nu + 1/4 + mu/(2l)), here nu = 1, mu = 1, k = 3, l = 2
    size_t ci = 0;
    while (s.cells[ci] != Index{1}) ++ci;
    size_t mi = 0;
    while (s.mus[mi] != Index{1}) ++mi;
    auto x = s.point(ci, mi);
    CHECK(x[0] == doctest::Approx(0.1875).epsilon(1e-15));

    DomainPtr I2 = make_cube(2);
    SampleSet s2 = sample_points(*I2, 3, 2);
    CHECK(s2.mus.size() == 3);                     // {(0,0),(1,0),(0,1)}
    CHECK(s2.cells.size() == 36);
    CHECK(s2.count() == 108);
}

TEST_CASE("recovery reproduces low-degree polynomials from samples") {
    Rng rng(61);
    for (int d = 1; d <= 2; ++d) {
        DomainPtr D = make_cube(d);
        Polynomial p(d, 1);
        for (const Index& lam : simplex_indices(d, 1)) p.set_coeff(lam, rng.uniform(-1.0, 1.0));
        auto f = [&](const double* x) { return p.eval(x); };

        SampleSet s = sample_points(*D, 3, 2);
        fill_samples(s, f);
        SplineField F = recovery(s, *D, 2);
        for (int i = 0; i < 100; ++i) {
            std::vector<double> x(d);
            for (double& v : x) v = rng.uniform(0.0, 1.0);
            CHECK(std::abs(F.eval(x) - p.eval(x)) <= 1e-10);
        }
    }
}

TEST_CASE("recovery interpolates its own samples") {
    DomainPtr I1 = make_cube(1);
    TestFunction f = make_cusp_testfn(1, 0.75, 0.5);
    SampleSet s = sample_points(*I1, 4, 2);
    fill_samples(s, f.fn());
    SplineField F = recovery(s, *I1, 2);
    for (size_t ci = 0; ci < s.cells.size(); ++ci)
        for (size_t mi = 0; mi < s.mus.size(); ++mi) {
            auto x = s.point(ci, mi);
            CHECK(std::abs(F.coeff(s.cells[ci]).eval(x.data()) - s.value(ci, mi)) <= 1e-9);
        }
}

TEST_CASE("operators are linear") {
    Rng rng(67);
    QuadratureSpec quad;
    DomainPtr I1 = make_cube(1);
    TestFunction f = make_cusp_testfn(1, 0.75, 0.4);
    TestFunction g = make_trig_testfn(1, 2.0);
    const double a = 1.5, b = -0.75;
    auto combo = [&](const double* x) { return a * f.eval(x) + b * g.eval(x); };

    SplineField Ef = quasi_interpolant(f.fn(), *I1, 3, 2, 2, quad);
    SplineField Eg = quasi_interpolant(g.fn(), *I1, 3, 2, 2, quad);
    SplineField Ec = quasi_interpolant(combo, *I1, 3, 2, 2, quad);
    SplineField lin(1, 2, 3, 1);
    lin.axpy(a, Ef);
    lin.axpy(b, Eg);
    for (int i = 0; i < 50; ++i) {
        std::vector<double> x = {rng.uniform(0.0, 1.0)};
        CHECK(Ec.eval(x) == doctest::Approx(lin.eval(x)).epsilon(1e-9));
    }

    SampleSet sf = sample_points(*I1, 3, 2);
    SampleSet sg = sf, sc = sf;
    fill_samples(sf, f.fn());
    fill_samples(sg, g.fn());
    fill_samples(sc, combo);
    SplineField Rf = recovery(sf, *I1, 2);
    SplineField Rg = recovery(sg, *I1, 2);
    SplineField Rc = recovery(sc, *I1, 2);
    for (int i = 0; i < 50; ++i) {
        std::vector<double> x = {rng.uniform(0.0, 1.0)};
        CHECK(Rc.eval(x) ==
              doctest::Approx(a * Rf.eval(x) + b * Rg.eval(x)).epsilon(1e-9));
    }
}

TEST_CASE("extension telescopes on the domain and vanishes far away") {
    QuadratureSpec quad;
    DomainPtr I1 = make_cube(1);
    TestFunction f = make_cusp_testfn(1, 0.75, 0.5);
    SmoothnessClass cls;
    cls.alpha = 1.25;
    cls.p = 2.0;

    ExtensionResult E = extend(f.fn(), *I1, cls, 2, 2, 5, quad);
    CHECK(E.K0 == 2);
    CHECK(E.k_max == 5);
    CHECK(E.base.level() == 2);
    CHECK(E.details.size() == 3);

    SplineField fine = quasi_interpolant(f.fn(), *I1, 5, 2, 2, quad);
    Rng rng(71);
    for (int i = 0; i < 150; ++i) {
        std::vector<double> x = {rng.uniform(0.0, 1.0)};
        CHECK(std::abs(E.eval(x) - fine.eval(x)) <= 1e-10);
    }

    double pad = 3.0 * 0.25 + 1e-6;  // (m+1) cells at the base level
    for (double v : {-pad - 0.01, 1.0 + pad + 0.01}) {
        std::vector<double> x = {v};
        CHECK(E.eval(x) == 0.0);
    }

    CHECK_THROWS_AS(extend(f.fn(), *I1, cls, 1, 2, 5, quad), std::invalid_argument);
    CHECK_THROWS_AS(extend(f.fn(), *I1, cls, 2, 4, 3, quad), std::invalid_argument);
}

TEST_CASE("stechkin operator reproduces derivatives of low-degree polynomials") {
    QuadratureSpec quad;
    DomainPtr I1 = make_cube(1);
    StechkinOperator V(*I1, 4, 2, 2, Index{1}, quad);

    auto f = [](const double* x) { return 2.0 + 3.0 * x[0]; };
    SplineField F = V.interpolant(f);
    Rng rng(73);
    for (int i = 0; i < 50; ++i) {
        std::vector<double> x = {rng.uniform(0.0, 1.0)};
        CHECK(F.eval(x, Index{1}) == doctest::Approx(3.0).epsilon(1e-8));
    }

    CHECK_THROWS_AS(StechkinOperator(*I1, 4, 2, 2, Index{3}, quad), std::invalid_argument);
    CHECK_THROWS_AS(StechkinOperator(*I1, 4, 2, 2, Index{-1}, quad), std::invalid_argument);
}

TEST_CASE("rate experiments: degenerate flag and hypothesis guards") {
    QuadratureSpec quad;
    DomainPtr I1 = make_cube(1);

    std::vector<TestFunction> polys = {make_poly_testfn(1, 1, 3)};
    RateReport deg = approx_rate_experiment(*I1, polys, 2.0, 2, 2, {3, 4, 5}, 0.25, quad);
    CHECK(deg.degenerate);
    CHECK(deg.pass);
    CHECK(deg.note == "degenerate: below noise floor");

    std::vector<TestFunction> rough = {make_cusp_testfn(1, 0.2, 0.5)};
    CHECK_THROWS_WITH_AS(
        recovery_rate_experiment(*I1, rough, 2.0, 2.0, 1, 2, 2, {3, 4, 5}, 0.3, quad),
        doctest::Contains("recovery rate requires"), std::invalid_argument);

    std::vector<TestFunction> fam = {make_cusp_testfn(1, 0.75, 0.5)};
    CHECK_THROWS_WITH_AS(
        stechkin_rate_experiment(*I1, fam, Index{0}, 2.0, 2.0, 2.0, 2, 2, {3, 4, 5}, 0.3,
                                 quad),
        doctest::Contains("stechkin rate requires"), std::invalid_argument);
}

TEST_CASE("approximation errors decrease and the report exposes counts") {
    QuadratureSpec quad;
    DomainPtr I1 = make_cube(1);
    std::vector<TestFunction> fam = {make_cusp_testfn(1, 0.75, 0.5)};
    RateReport rep = approx_rate_experiment(*I1, fam, 2.0, 2, 2, {3, 4, 5}, 0.35, quad);
    REQUIRE(rep.rows.size() == 3);
    CHECK(rep.rows[0].error > rep.rows[1].error);
    CHECK(rep.rows[1].error > rep.rows[2].error);
    for (const auto& row : rep.rows) CHECK(row.n > 0);
    CHECK(rep.pass);
    CHECK(rep.alpha_hat == doctest::Approx(1.25).epsilon(0.05));
}

#include "doctest.h"

#include <cmath>

#include "geometry.hpp"
#include "rng.hpp"

using namespace bsq;

TEST_CASE("cube cell counts follow the closed form") {
    for (int d = 1; d <= 2; ++d) {
        DomainPtr D = make_cube(d);
        for (int k = 2; k <= 4; ++k) {
            for (int m = 0; m <= 2; ++m) {
                double expect = std::pow(double((1 << k) + m), d);
                CHECK(active_cells(*D, k, m).size() == (size_t)llround(expect));
            }
            double expect_in = std::pow(double((1 << k) - 2), d);
            CHECK(interior_cells(*D, k).size() == (size_t)llround(expect_in));
        }
    }
}

TEST_CASE("ball cell counts") {
    DomainPtr D = make_ball({0.5, 0.5}, 0.5);
    CHECK(active_cells(*D, 2, 1).size() == 25);
    CHECK(active_cells(*D, 2, 2).size() == 36);
    CHECK(interior_cells(*D, 2).size() == 4);
    CHECK(active_cells(*D, 3, 1).size() == 77);
    CHECK(active_cells(*D, 3, 2).size() == 96);
    CHECK(interior_cells(*D, 3).size() == 32);
    CHECK(active_cells(*D, 4, 1).size() == 257);
    CHECK(active_cells(*D, 4, 2).size() == 292);
    CHECK(interior_cells(*D, 4).size() == 164);
}

TEST_CASE("lshape cell counts") {
    DomainPtr D = make_lshape();
    CHECK(active_cells(*D, 2, 2).size() == 32);
    CHECK(interior_cells(*D, 2).size() == 0);
    CHECK(active_cells(*D, 3, 2).size() == 84);
    CHECK(interior_cells(*D, 3).size() == 20);
    CHECK(active_cells(*D, 4, 2).size() == 260);
    CHECK(interior_cells(*D, 4).size() == 132);
}

TEST_CASE("staircase cell counts and membership") {
    DomainPtr D = make_staircase();
    CHECK(active_cells(*D, 2, 2).size() == 50);
    CHECK(interior_cells(*D, 2).size() == 4);
    CHECK(active_cells(*D, 3, 2).size() == 138);
    CHECK(interior_cells(*D, 3).size() == 44);
    CHECK(active_cells(*D, 4, 2).size() == 442);
    CHECK(interior_cells(*D, 4).size() == 252);

    // steps have height equal to the power of two at the left edge
    double in1[] = {0.3, 0.2};
    double out1[] = {0.3, 0.3};
    double in2[] = {1.5, 0.9};
    double out2[] = {0.1, 0.09};
    CHECK(D->contains(in1));
    CHECK(!D->contains(out1));
    CHECK(D->contains(in2));
    CHECK(!D->contains(out2));
}

TEST_CASE("nearest interior cell uses the smallest distance then lexicographic order") {
    DomainPtr D = make_cube(2);
    auto interior = interior_cells(*D, 2);
    CHECK(nearest_interior(interior, Index{0, 0}) == Index{1, 1});
    CHECK(nearest_interior(interior, Index{0, 1}) == Index{1, 1});  // tie: (1,1) vs (1,2)
    CHECK(nearest_interior(interior, Index{3, 3}) == Index{2, 2});
    CHECK(nearest_interior(interior, Index{1, 2}) == Index{1, 2});  // fixed point inside
}

TEST_CASE("segment chain walks the expected cells") {
    std::vector<double> x0 = {0.5};
    std::vector<double> xi = {2.0};
    CubeChain chain = segment_chain(0, x0, xi);
    REQUIRE(chain.cells.size() == 3);
    CHECK(chain.cells[0] == Index{0});
    CHECK(chain.cells[1] == Index{1});
    CHECK(chain.cells[2] == Index{2});
    CHECK(chain.length() == 2);
    ChainCheck res = verify_chain(chain, x0, xi);
    CHECK(res.ok);
    CHECK(res.bound_ratio <= 1.0);
}

TEST_CASE("entry cell on a knot with negative direction picks the lower cell") {
    std::vector<double> x0 = {1.0};
    std::vector<double> xi = {-0.5};
    CubeChain chain = segment_chain(0, x0, xi);
    CHECK(chain.cells.front() == Index{0});
}

TEST_CASE("chain fuzz: exact validity and the length bound") {
    Rng rng(41);
    double worst = 0.0;
    for (int i = 0; i < 3000; ++i) {
        int d = 1 + (int)rng.uniform_int(0, 2);
        int k = (int)rng.uniform_int(0, 6);
        std::vector<double> x0(d), xi(d);
        for (double& v : x0) v = rng.uniform(-2.0, 2.0);
        for (double& v : xi) v = rng.uniform(-3.0, 3.0);
        CubeChain chain = segment_chain(k, x0, xi);
        ChainCheck res = verify_chain(chain, x0, xi);
        REQUIRE(res.ok);
        worst = std::max(worst, res.bound_ratio);
    }
    CHECK(worst <= 1.0);
}

TEST_CASE("interior chains cross the staircase with few segments") {
    DomainPtr D = make_staircase();
    EtypeReport rep = etype_probe(*D, 2, 4, 3, 12, 1);
    CHECK(rep.ok);
    CHECK(rep.K0 == 2);
    for (const auto& lv : rep.levels) {
        CHECK(lv.failures == 0);
        CHECK(lv.kappa_used <= 3);
    }
    CHECK(rep.gamma <= 8);
}

TEST_CASE("interior chain between lshape arms") {
    DomainPtr D = make_lshape();
    // two interior cells at level 3 on opposite sides of the notch
    Index a = {1, 5};
    Index b = {5, 1};
    InteriorChain ic = interior_chain(*D, 3, a, b, 3);
    REQUIRE(ic.found);
    REQUIRE(ic.kappa >= 0);
    CHECK(ic.chain.k == 3 + ic.kappa);
    // endpoints are descendants of the requested cells at the refined level
    for (int j = 0; j < 2; ++j) {
        int front_parent = ic.chain.cells.front()[j] >> ic.kappa;
        int back_parent = ic.chain.cells.back()[j] >> ic.kappa;
        CHECK(front_parent == a[j]);
        CHECK(back_parent == b[j]);
    }
    for (const Index& nu : ic.chain.cells) {
        Box bx = cell_box(ic.chain.k, nu);
        CHECK(D->box_inside(bx));
    }
}

TEST_CASE("color classes partition the active set") {
    DomainPtr D = make_cube(2);
    auto cells = active_cells(*D, 2, 1);
    auto classes = color_classes(cells, 1);
    CHECK(classes.size() == 4);
    size_t total = 0;
    for (const auto& [sigma, members] : classes) {
        total += members.size();
        for (const Index& nu : members)
            for (int j = 0; j < 2; ++j)
                CHECK(((nu[j] % 2) + 2) % 2 == sigma[j]);
    }
    CHECK(total == cells.size());
}

TEST_CASE("cell and support boxes") {
    Box cb = cell_box(2, Index{3, -1});
    CHECK(cb.lo[0] == doctest::Approx(0.75));
    CHECK(cb.hi[0] == doctest::Approx(1.0));
    CHECK(cb.lo[1] == doctest::Approx(-0.25));

    Box sb = support_box(2, Index{0, 0}, 2);
    CHECK(sb.hi[0] == doctest::Approx(0.75));  // (m+1) cells wide
}

TEST_CASE("box predicates on the ball") {
    DomainPtr D = make_ball({0.5, 0.5}, 0.5);
    Box inside{{0.4, 0.4}, {0.6, 0.6}};
    Box crossing{{0.8, 0.4}, {1.1, 0.6}};
    Box outside{{1.2, 1.2}, {1.4, 1.4}};
    CHECK(D->box_inside(inside));
    CHECK(!D->box_inside(crossing));
    CHECK(D->box_meets(crossing));
    CHECK(!D->box_meets(outside));
}

TEST_CASE("shift guard and scaled domains") {
    DomainPtr cube = make_cube(2);
    DomainPtr guard = make_shift_guard(cube, {0.5, 0.0});
    double a[] = {0.3, 0.5};
    double b[] = {0.6, 0.5};
    CHECK(guard->contains(a));
    CHECK(!guard->contains(b));

    DomainPtr scaled = make_scaled(make_cube(1), {2.0}, 0.5);
    double c[] = {2.25};
    double d2[] = {1.9};
    CHECK(scaled->contains(c));
    CHECK(!scaled->contains(d2));
}

TEST_CASE("querying an empty interior set is rejected") {
    DomainPtr D = make_lshape();
    auto interior = interior_cells(*D, 2);
    REQUIRE(interior.empty());
    CHECK_THROWS_AS(nearest_interior(interior, Index{0, 0}), std::runtime_error);
}

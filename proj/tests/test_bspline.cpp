#include "doctest.h"

#include <cmath>

#include "bspline.hpp"
#include "rng.hpp"

using namespace bsq;

TEST_CASE("piecewise values at rational points") {
    const CardinalBSpline& psi2 = CardinalBSpline::get(2);
    const CardinalBSpline& psi3 = CardinalBSpline::get(3);

    CHECK(psi2.eval(0.5) == doctest::Approx(1.0 / 8.0).epsilon(1e-15));
    CHECK(psi2.eval(1.5) == doctest::Approx(3.0 / 4.0).epsilon(1e-15));
    CHECK(psi2.eval(1.0) == doctest::Approx(1.0 / 2.0).epsilon(1e-15));
    CHECK(psi3.eval(2.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(psi3.eval(1.5) == doctest::Approx(23.0 / 48.0).epsilon(1e-15));

    const CardinalBSpline& psi4 = CardinalBSpline::get(4);
    CHECK(psi4.eval(2.5) == doctest::Approx(115.0 / 192.0).epsilon(1e-15));
}

TEST_CASE("derivative values at rational points") {
    const CardinalBSpline& psi2 = CardinalBSpline::get(2);
    const CardinalBSpline& psi3 = CardinalBSpline::get(3);

    CHECK(psi2.eval(0.5, 1) == doctest::Approx(1.0 / 2.0).epsilon(1e-15));
    CHECK(psi2.eval(1.0, 1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(psi3.eval(1.5, 2) == doctest::Approx(-1.0 / 2.0).epsilon(1e-15));
    CHECK_THROWS_AS(psi2.eval(1.0, 3), std::invalid_argument);
}

TEST_CASE("exact piece table for order two") {
    // pieces: x^2/2, -x^2 + 3x - 3/2, x^2/2 - 3x + 9/2
    const auto& pieces = CardinalBSpline::get(2).exact_pieces();
    REQUIRE(pieces.size() == 3);
    CHECK(pieces[0] == std::vector<Rational>{Rational(0), Rational(0), Rational(1, 2)});
    CHECK(pieces[1] ==
          std::vector<Rational>{Rational(-3, 2), Rational(3), Rational(-1)});
    CHECK(pieces[2] ==
          std::vector<Rational>{Rational(9, 2), Rational(-3), Rational(1, 2)});
}

TEST_CASE("support, symmetry, and unit mass") {
    Rng rng(3);
    for (int m = 0; m <= 4; ++m) {
        const CardinalBSpline& psi = CardinalBSpline::get(m);
        CHECK(psi.eval(-0.25) == 0.0);
        CHECK(psi.eval(double(m) + 1.25) == 0.0);
        CHECK(psi.eval(double(m + 1) / 2.0) > 0.0);

        for (int i = 0; i < 50; ++i) {
            double x = rng.uniform(0.0, double(m + 1));
            CHECK(psi.eval(x) ==
                  doctest::Approx(psi.eval(double(m + 1) - x)).epsilon(1e-13));
        }

        // exact mass via the antiderivative of each rational piece
        Rational mass(0);
        const auto& pieces = psi.exact_pieces();
        for (size_t j = 0; j < pieces.size(); ++j) {
            Rational seg(0);
            for (size_t i = 0; i < pieces[j].size(); ++i) {
                Rational lo(1), hi(1);
                for (size_t r = 0; r <= i; ++r) {
                    lo *= Rational((long long)j);
                    hi *= Rational((long long)j + 1);
                }
                seg += pieces[j][i] * (hi - lo) / Rational((long long)i + 1);
            }
            mass += seg;
        }
        CHECK(mass == Rational(1));
    }
}

TEST_CASE("refinement coefficients and residual") {
    CHECK(refinement_coeffs(2) == std::vector<Rational>{Rational(1, 4), Rational(3, 4),
                                                        Rational(3, 4), Rational(1, 4)});
    CHECK(refinement_coeffs(0) == std::vector<Rational>{Rational(1), Rational(1)});

    Rng rng(5);
    double worst = 0.0;
    for (int m = 0; m <= 4; ++m)
        for (int d = 1; d <= 2; ++d)
            for (int i = 0; i < 200; ++i) {
                std::vector<double> x(d);
                for (double& v : x) v = rng.uniform(-1.0, double(m) + 2.0);
                worst = std::max(worst, refinement_check(m, d, x.data()));
            }
    CHECK(worst <= 1e-12);
}

TEST_CASE("tensor and scaled-shift evaluation") {
    const CardinalBSpline& psi2 = CardinalBSpline::get(2);
    double x2[] = {0.5, 1.5};
    CHECK(tensor_bspline(2, 2, x2) ==
          doctest::Approx(psi2.eval(0.5) * psi2.eval(1.5)).epsilon(1e-15));

    // g_{k,nu}(x) = psi(2^k x - nu), with the 2^{k|lambda|} chain factor on
    // derivatives
    double x = 0.375;  // 4x - 1 = 0.5
    Index nu = {1};
    CHECK(basis_eval(2, 1, 2, nu, &x) == doctest::Approx(1.0 / 8.0).epsilon(1e-15));
    Index lam = {1};
    CHECK(basis_eval(2, 1, 2, nu, &x, &lam) == doctest::Approx(4.0 * 0.5).epsilon(1e-15));

    // zero outside the scaled support
    double far = 1.5;
    CHECK(basis_eval(2, 1, 2, nu, &far) == 0.0);
}

TEST_CASE("partition of unity for integer translates") {
    Rng rng(9);
    for (int m = 0; m <= 3; ++m)
        for (int d = 1; d <= 2; ++d)
            for (int k : {0, 3}) {
                for (int i = 0; i < 100; ++i) {
                    std::vector<double> x(d);
                    for (double& v : x) v = rng.uniform(-1.0, 1.0);
                    const double scale = std::ldexp(1.0, k);
                    Index base(d);
                    for (int j = 0; j < d; ++j) base[j] = (int)std::floor(scale * x[j]);
                    double sum = 0.0;
                    for (const Index& off : box_indices(d, -m, 0)) {
                        Index nu(d);
                        for (int j = 0; j < d; ++j) nu[j] = base[j] + off[j];
                        sum += basis_eval(m, d, k, nu, x.data());
                    }
                    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
                }
            }
}

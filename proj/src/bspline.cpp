#include "bspline.hpp"

#include <array>
#include <cmath>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace bsq {

namespace {

using RPoly = std::vector<Rational>;  // coefficient of x^i at position i

// antiderivative with zero constant term
RPoly antiderivative(const RPoly& p) {
    RPoly out(p.size() + 1, Rational(0));
    for (size_t i = 0; i < p.size(); ++i) out[i + 1] = p[i] / Rational((long long)i + 1);
    return out;
}

Rational eval_at(const RPoly& p, const Rational& x) {
    Rational acc(0);
    for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return acc;
}

// p(x - 1) expanded in powers of x
RPoly shift_minus_one(const RPoly& p) {
    RPoly out(p.size(), Rational(0));
    for (size_t i = 0; i < p.size(); ++i) {
        // (x - 1)^i = sum_r C(i,r) x^r (-1)^{i-r}
        for (size_t r = 0; r <= i; ++r) {
            long long sign = ((i - r) % 2 == 0) ? 1 : -1;
            out[r] += p[i] * Rational(sign * binomial((int)i, (int)r));
        }
    }
    return out;
}

RPoly rpoly_add(RPoly a, const RPoly& b) {
    if (b.size() > a.size()) a.resize(b.size(), Rational(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    return a;
}

}  // namespace

CardinalBSpline::CardinalBSpline(int m) : m_(m) {
    if (m < 0 || m > 8) throw std::invalid_argument("CardinalBSpline: order must lie in 0..8");

    // convolution recursion: psi^q(x) = integral of psi^{q-1} over [x-1, x]
    std::vector<RPoly> pieces = {RPoly{Rational(1)}};
    for (int q = 1; q <= m; ++q) {
        std::vector<RPoly> next(q + 1);
        for (int j = 0; j <= q; ++j) {
            RPoly acc;  // piece on [j, j+1)
            if (j - 1 >= 0 && j - 1 < (int)pieces.size()) {
                // integral of the previous piece j-1 over [x-1, j]
                RPoly A = antiderivative(pieces[j - 1]);
                Rational upper = eval_at(A, Rational(j));
                RPoly tail = shift_minus_one(A);  // A(x-1)
                for (auto& c : tail) c = -c;
                tail = rpoly_add(tail, RPoly{upper});
                acc = rpoly_add(acc, tail);
            }
            if (j < (int)pieces.size()) {
                // integral of piece j over [j, x]
                RPoly A = antiderivative(pieces[j]);
                Rational lower = eval_at(A, Rational(j));
                acc = rpoly_add(acc, rpoly_add(A, RPoly{-lower}));
            }
            next[j] = std::move(acc);
        }
        pieces = std::move(next);
    }
    exact_ = std::move(pieces);

    // derivative piece tables in double, orders 0..m
    dpieces_.resize(m_ + 1);
    std::vector<std::vector<double>> cur(exact_.size());
    for (size_t j = 0; j < exact_.size(); ++j) {
        cur[j].resize(exact_[j].size());
        for (size_t i = 0; i < exact_[j].size(); ++i)
            cur[j][i] = boost::rational_cast<double>(exact_[j][i]);
    }
    dpieces_[0] = cur;
    for (int r = 1; r <= m_; ++r) {
        for (auto& piece : cur) {
            std::vector<double> d(piece.size() > 1 ? piece.size() - 1 : 0);
            for (size_t i = 1; i < piece.size(); ++i) d[i - 1] = piece[i] * double(i);
            piece = std::move(d);
        }
        dpieces_[r] = cur;
    }
}

double CardinalBSpline::eval(double x, int r) const {
    if (r < 0 || r > m_)
        throw std::invalid_argument("CardinalBSpline::eval: derivative order exceeds spline order");
    if (x < 0.0 || x >= double(m_ + 1)) return 0.0;
    int j = (int)std::floor(x);
    if (j > m_) return 0.0;  // guards x just below m+1 rounding up
    const auto& piece = dpieces_[r][j];
    double acc = 0.0;
    for (size_t i = piece.size(); i-- > 0;) acc = acc * x + piece[i];
    return acc;
}

const CardinalBSpline& CardinalBSpline::get(int m) {
    static std::array<std::unique_ptr<CardinalBSpline>, 9> cache;
    static std::mutex mu;
    if (m < 0 || m > 8) throw std::invalid_argument("CardinalBSpline: order must lie in 0..8");
    std::lock_guard<std::mutex> lock(mu);
    if (!cache[m]) cache[m] = std::make_unique<CardinalBSpline>(m);
    return *cache[m];
}

std::vector<Rational> refinement_coeffs(int m) {
    if (m < 0) throw std::invalid_argument("refinement_coeffs: order must be nonnegative");
    std::vector<Rational> a(m + 2);
    Rational scale(1, 1LL << m);
    for (int mu = 0; mu <= m + 1; ++mu) a[mu] = scale * Rational(binomial(m + 1, mu));
    return a;
}

double tensor_bspline(int m, int d, const double* x) {
    const auto& psi = CardinalBSpline::get(m);
    double acc = 1.0;
    for (int j = 0; j < d; ++j) {
        acc *= psi.eval(x[j]);
        if (acc == 0.0) return 0.0;
    }
    return acc;
}

double basis_eval(int m, int d, int k, const Index& nu, const double* x, const Index* lambda) {
    const auto& psi = CardinalBSpline::get(m);
    const double scale = std::ldexp(1.0, k);
    double acc = 1.0;
    int total = 0;
    for (int j = 0; j < d; ++j) {
        int r = lambda ? (*lambda)[j] : 0;
        if (r > m)
            throw std::invalid_argument("basis_eval: derivative order exceeds spline order on an axis");
        total += r;
        acc *= psi.eval(scale * x[j] - double(nu[j]), r);
        if (acc == 0.0) return 0.0;
    }
    return std::ldexp(acc, k * total);
}

double refinement_check(int m, int d, const double* x) {
    const auto a = refinement_coeffs(m);
    std::vector<double> ad(a.size());
    for (size_t i = 0; i < a.size(); ++i) ad[i] = boost::rational_cast<double>(a[i]);

    double lhs = tensor_bspline(m, d, x);
    double rhs = 0.0;
    Index mu = zero_index(d);
    std::vector<double> y(d);
    while (true) {
        double w = 1.0;
        for (int j = 0; j < d; ++j) w *= ad[mu[j]];
        for (int j = 0; j < d; ++j) y[j] = 2.0 * x[j] - double(mu[j]);
        rhs += w * tensor_bspline(m, d, y.data());
        int j = d - 1;
        while (j >= 0 && mu[j] == m + 1) mu[j--] = 0;
        if (j < 0) break;
        ++mu[j];
    }
    return lhs - rhs;
}

}  // namespace bsq

#include "polynomial.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bsq {

Polynomial::Polynomial(int dim, int degree) : dim_(dim), degree_(degree) {
    if (dim < 1) throw std::invalid_argument("Polynomial: dim must be >= 1");
    if (degree < -1) throw std::invalid_argument("Polynomial: degree must be >= -1");
}

Polynomial Polynomial::constant(int dim, double c) {
    Polynomial p(dim, 0);
    p.set_coeff(zero_index(dim), c);
    return p;
}

double Polynomial::coeff(const Index& lambda) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), lambda,
                               [](const auto& t, const Index& k) { return t.first < k; });
    return (it != terms_.end() && it->first == lambda) ? it->second : 0.0;
}

void Polynomial::set_coeff(const Index& lambda, double a) {
    if ((int)lambda.size() != dim_)
        throw std::invalid_argument("Polynomial::set_coeff: index dimension mismatch");
    if (order(lambda) > degree_)
        throw std::invalid_argument("Polynomial::set_coeff: order exceeds degree bound");
    auto it = std::lower_bound(terms_.begin(), terms_.end(), lambda,
                               [](const auto& t, const Index& k) { return t.first < k; });
    if (it != terms_.end() && it->first == lambda) {
        if (a == 0.0)
            terms_.erase(it);
        else
            it->second = a;
    } else if (a != 0.0) {
        terms_.insert(it, {lambda, a});
    }
}

void Polynomial::add_coeff(const Index& lambda, double a) { set_coeff(lambda, coeff(lambda) + a); }

double Polynomial::eval(const double* x) const {
    double acc = 0.0;
    for (const auto& [lambda, a] : terms_) {
        double t = a;
        for (int j = 0; j < dim_; ++j)
            for (int i = 0; i < lambda[j]; ++i) t *= x[j];
        acc += t;
    }
    return acc;
}

Polynomial Polynomial::derivative(const Index& lambda) const {
    if ((int)lambda.size() != dim_)
        throw std::invalid_argument("Polynomial::derivative: index dimension mismatch");
    int newdeg = std::max(degree_ - order(lambda), -1);
    Polynomial out(dim_, newdeg);
    if (newdeg < 0) return out;
    for (const auto& [mu, a] : terms_) {
        if (!componentwise_le(lambda, mu)) continue;  // term annihilated
        double c = a;
        Index rest = mu;
        for (int j = 0; j < dim_; ++j) {
            for (int i = 0; i < lambda[j]; ++i) c *= double(mu[j] - i);
            rest[j] -= lambda[j];
        }
        out.add_coeff(rest, c);
    }
    return out;
}

Polynomial Polynomial::affine_substitute(const std::vector<double>& scale,
                                         const std::vector<double>& shift) const {
    if ((int)scale.size() != dim_ || (int)shift.size() != dim_)
        throw std::invalid_argument("Polynomial::affine_substitute: dimension mismatch");
    Polynomial out(dim_, degree_);
    for (const auto& [lambda, a] : terms_) {
        // expand prod_j (scale_j y_j + shift_j)^{lambda_j}; the total order can
        // only drop, so the degree bound carries over unchanged
        std::vector<std::vector<double>> axis(dim_);
        for (int j = 0; j < dim_; ++j) {
            axis[j].resize(lambda[j] + 1);
            for (int i = 0; i <= lambda[j]; ++i)
                axis[j][i] = double(binomial(lambda[j], i)) * std::pow(scale[j], i) *
                             std::pow(shift[j], lambda[j] - i);
        }
        Index idx = zero_index(dim_);
        while (true) {
            double c = a;
            for (int j = 0; j < dim_; ++j) c *= axis[j][idx[j]];
            if (c != 0.0) out.add_coeff(idx, c);
            int j = dim_ - 1;
            while (j >= 0 && idx[j] == lambda[j]) idx[j--] = 0;
            if (j < 0) break;
            ++idx[j];
        }
    }
    return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& q) {
    if (q.dim_ != dim_) throw std::invalid_argument("Polynomial::operator+=: dimension mismatch");
    degree_ = std::max(degree_, q.degree_);
    for (const auto& [lambda, a] : q.terms_) add_coeff(lambda, a);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& q) {
    if (q.dim_ != dim_) throw std::invalid_argument("Polynomial::operator-=: dimension mismatch");
    degree_ = std::max(degree_, q.degree_);
    for (const auto& [lambda, a] : q.terms_) add_coeff(lambda, -a);
    return *this;
}

Polynomial& Polynomial::operator*=(double c) {
    if (c == 0.0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.second *= c;
    return *this;
}

double Polynomial::max_abs_coeff() const {
    double r = 0.0;
    for (const auto& t : terms_) r = std::max(r, std::abs(t.second));
    return r;
}

Polynomial Polynomial::tensor_from_univariate(const std::vector<std::vector<double>>& coeffs) {
    const int d = (int)coeffs.size();
    int deg = 0;
    for (const auto& c : coeffs) deg += (int)c.size() - 1;
    Polynomial out(d, deg);
    Index idx = zero_index(d);
    while (true) {
        double c = 1.0;
        for (int j = 0; j < d; ++j) c *= coeffs[j][idx[j]];
        if (c != 0.0) out.add_coeff(idx, c);
        int j = d - 1;
        while (j >= 0 && idx[j] + 1 == (int)coeffs[j].size()) idx[j--] = 0;
        if (j < 0) break;
        ++idx[j];
    }
    return out;
}

Polynomial lattice_interpolate(int d, int l, const std::vector<double>& values) {
    const auto lam = simplex_indices(d, l);
    const auto n = (Eigen::Index)lam.size();
    if (values.size() != lam.size())
        throw std::invalid_argument("lattice_interpolate: expected " + std::to_string(lam.size()) +
                                    " values, got " + std::to_string(values.size()));
    Eigen::MatrixXd V(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c) {
            double m = 1.0;
            for (int j = 0; j < d; ++j)
                for (int i = 0; i < lam[c][j]; ++i) m *= double(lam[r][j]);
            V(r, c) = m;
        }
    Eigen::Map<const Eigen::VectorXd> y(values.data(), n);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(V);
    Eigen::VectorXd a = lu.solve(y);
    // the lattice system is provably nonsingular; a failed solve means a bug
    if (!a.allFinite() || (V * a - y).lpNorm<Eigen::Infinity>() > 1e-6 * (1.0 + y.lpNorm<Eigen::Infinity>()))
        throw std::logic_error("lattice_interpolate: singular lattice system (implementation bug)");
    Polynomial p(d, l);
    for (Eigen::Index c = 0; c < n; ++c)
        if (a(c) != 0.0) p.set_coeff(lam[c], a(c));
    return p;
}

std::vector<Polynomial> lagrange_basis(int d, int l) {
    const auto lam = simplex_indices(d, l);
    std::vector<Polynomial> basis;
    basis.reserve(lam.size());
    std::vector<double> e(lam.size(), 0.0);
    for (size_t m = 0; m < lam.size(); ++m) {
        e[m] = 1.0;
        basis.push_back(lattice_interpolate(d, l, e));
        e[m] = 0.0;
    }
    return basis;
}

}  // namespace bsq

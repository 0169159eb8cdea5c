#include "field.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "bspline.hpp"

namespace bsq {

SplineField::SplineField(int d, int m, int k, int degree)
    : d_(d), m_(m), k_(k), degree_(degree), zero_(Polynomial::constant(d, 0.0)) {
    if (d < 1 || m < 0 || k < 0 || degree < 0)
        throw std::invalid_argument("spline field: bad shape parameters");
}

const Polynomial& SplineField::coeff(const Index& nu) const {
    auto it = coeffs_.find(nu);
    return it == coeffs_.end() ? zero_ : it->second;
}

void SplineField::set_coeff(const Index& nu, Polynomial p) {
    if ((int)nu.size() != d_) throw std::invalid_argument("spline field: index dimension mismatch");
    coeffs_[nu] = std::move(p);
}

double SplineField::eval(const double* x) const {
    const double scale = std::ldexp(1.0, k_);
    Index base(d_);
    for (int j = 0; j < d_; ++j) base[j] = (int)std::floor(scale * x[j]);
    double sum = 0.0;
    Index nu(d_);
    Index off(d_, -m_);
    while (true) {
        for (int j = 0; j < d_; ++j) nu[j] = base[j] + off[j];
        auto it = coeffs_.find(nu);
        if (it != coeffs_.end()) {
            double g = basis_eval(m_, d_, k_, nu, x);
            if (g != 0.0) sum += it->second.eval(x) * g;
        }
        int j = d_ - 1;
        while (j >= 0 && off[j] == 0) off[j--] = -m_;
        if (j < 0) break;
        ++off[j];
    }
    return sum;
}

double SplineField::eval(const double* x, const Index& lambda) const {
    if ((int)lambda.size() != d_)
        throw std::invalid_argument("spline field: derivative index dimension mismatch");
    if (bsq::order(lambda) == 0) return eval(x);
    for (int j = 0; j < d_; ++j)
        if (lambda[j] < 0 || lambda[j] > m_)
            throw std::invalid_argument("spline field: derivative order exceeds spline order");

    const double scale = std::ldexp(1.0, k_);
    Index base(d_);
    for (int j = 0; j < d_; ++j) base[j] = (int)std::floor(scale * x[j]);

    // Leibniz split: D^lambda (f_nu g_nu) = sum_{mu <= lambda} C(lambda,mu)
    // (D^mu f_nu)(D^(lambda-mu) g_nu)
    const std::vector<Index> mus = box_indices(zero_index(d_), lambda);

    double sum = 0.0;
    Index nu(d_);
    Index off(d_, -m_);
    while (true) {
        for (int j = 0; j < d_; ++j) nu[j] = base[j] + off[j];
        auto it = coeffs_.find(nu);
        if (it != coeffs_.end()) {
            for (const Index& mu : mus) {
                Index rest(d_);
                for (int j = 0; j < d_; ++j) rest[j] = lambda[j] - mu[j];
                double g = basis_eval(m_, d_, k_, nu, x, &rest);
                if (g == 0.0) continue;
                sum += multi_binomial(lambda, mu) * it->second.derivative(mu).eval(x) * g;
            }
        }
        int j = d_ - 1;
        while (j >= 0 && off[j] == 0) off[j--] = -m_;
        if (j < 0) break;
        ++off[j];
    }
    return sum;
}

void SplineField::axpy(double a, const SplineField& other) {
    if (d_ != other.d_ || m_ != other.m_ || k_ != other.k_)
        throw std::invalid_argument("spline field: axpy shape mismatch");
    degree_ = std::max(degree_, other.degree_);
    for (const auto& [nu, p] : other.coeffs_) {
        auto it = coeffs_.find(nu);
        if (it == coeffs_.end())
            coeffs_.emplace(nu, a * p);
        else
            it->second += a * p;
    }
}

SplineField SplineField::color_part(const Index& sigma) const {
    SplineField out(d_, m_, k_, degree_);
    const int mod = m_ + 1;
    for (const auto& [nu, p] : coeffs_) {
        bool match = true;
        for (int j = 0; j < d_; ++j)
            if (((nu[j] % mod) + mod) % mod != sigma[j]) {
                match = false;
                break;
            }
        if (match) out.coeffs_.emplace(nu, p);
    }
    return out;
}

double SplineField::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [nu, p] : coeffs_) m = std::max(m, p.max_abs_coeff());
    return m;
}

void SplineField::dump(std::ostream& os) const {
    char buf[64];
    os << "bsqfield 1\n";
    os << d_ << ' ' << m_ << ' ' << k_ << ' ' << degree_ << ' ' << coeffs_.size() << '\n';
    for (const auto& [nu, p] : coeffs_) {
        for (int j = 0; j < d_; ++j) os << nu[j] << (j + 1 < d_ ? ' ' : '\t');
        os << p.terms().size();
        for (const auto& [lam, c] : p.terms()) {
            os << '\t';
            for (int j = 0; j < d_; ++j) os << lam[j] << ' ';
            std::snprintf(buf, sizeof buf, "%.17g", c);
            os << buf;
        }
        os << '\n';
    }
}

SplineField SplineField::load(std::istream& is) {
    std::string magic;
    int version = 0;
    is >> magic >> version;
    if (magic != "bsqfield" || version != 1)
        throw std::runtime_error("field dump: unknown format header");
    int d, m, k, degree;
    size_t n;
    if (!(is >> d >> m >> k >> degree >> n))
        throw std::runtime_error("field dump: truncated shape line");
    SplineField out(d, m, k, degree);
    for (size_t i = 0; i < n; ++i) {
        Index nu(d);
        for (int j = 0; j < d; ++j)
            if (!(is >> nu[j])) throw std::runtime_error("field dump: truncated record");
        size_t nt;
        if (!(is >> nt)) throw std::runtime_error("field dump: truncated record");
        Polynomial p(d, degree);
        for (size_t t = 0; t < nt; ++t) {
            Index lam(d);
            double c;
            for (int j = 0; j < d; ++j)
                if (!(is >> lam[j])) throw std::runtime_error("field dump: truncated term");
            if (!(is >> c)) throw std::runtime_error("field dump: truncated term");
            p.set_coeff(lam, c);
        }
        out.coeffs_.emplace(std::move(nu), std::move(p));
    }
    return out;
}

}  // namespace bsq

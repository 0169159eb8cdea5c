#include "multiscale.hpp"

#include <cassert>
#include <cmath>
#include <map>
#include <stdexcept>

#include "projection.hpp"

namespace bsq {

ParityStencil::ParityStencil(int m, int d) : m_(m), d_(d), axis_(refinement_coeffs(m)) {
    if (d < 1) throw std::invalid_argument("parity stencil: dimension must be >= 1");
}

std::vector<ParityStencil::Entry> ParityStencil::parents(const Index& nu) const {
    if ((int)nu.size() != d_) throw std::invalid_argument("parity stencil: index dimension mismatch");
    // per axis, the admissible offsets share the parity of nu_j
    std::vector<std::vector<int>> offsets(d_);
    for (int j = 0; j < d_; ++j)
        for (int mm = 0; mm <= m_ + 1; ++mm)
            if (((nu[j] - mm) % 2 + 2) % 2 == 0) offsets[j].push_back(mm);

    std::vector<Entry> out;
    std::vector<int> pick(d_, 0);
    while (true) {
        Entry e;
        e.parent.resize(d_);
        double w = 1.0;
        for (int j = 0; j < d_; ++j) {
            int mm = offsets[j][pick[j]];
            e.parent[j] = (nu[j] - mm) / 2;
            w *= boost::rational_cast<double>(axis_[mm]);
        }
        e.weight = w;
        out.push_back(std::move(e));
        int j = d_ - 1;
        while (j >= 0 && pick[j] == (int)offsets[j].size() - 1) pick[j--] = 0;
        if (j < 0) break;
        ++pick[j];
    }
    return out;
}

Rational ParityStencil::exact_weight_sum(const Index& nu) const {
    Rational sum(1);
    for (int j = 0; j < d_; ++j) {
        Rational axis_sum(0);
        for (int mm = 0; mm <= m_ + 1; ++mm)
            if (((nu[j] - mm) % 2 + 2) % 2 == 0) axis_sum += axis_[mm];
        sum *= axis_sum;
    }
    return sum;
}

SplineField quasi_interpolant(const ScalarFn& f, const Domain& D, int k, int l, int m,
                              const QuadratureSpec& quad) {
    if (l < 1) throw std::invalid_argument("quasi_interpolant: degree parameter l must be >= 1");
    if (m < l)
        throw std::invalid_argument("quasi_interpolant: spline order m must satisfy l <= m");
    LevelCells cells(D, k, m);
    if (cells.interior().empty())
        throw std::runtime_error(
            "quasi_interpolant: no interior cells at this level (below the start level of the domain)");

    SplineField F(D.dim(), m, k, l - 1);
    // one projection per distinct interior target; shifts sharing a target
    // reuse the polynomial
    std::map<Index, Polynomial> projected;
    for (const Index& nu : cells.active()) {
        const Index& target = cells.nearest(nu);
        auto it = projected.find(target);
        if (it == projected.end()) {
            LocalProjector P(cell_box(k, target), l - 1, quad);
            it = projected.emplace(target, P.project(f)).first;
        }
        F.set_coeff(nu, it->second);
    }
    return F;
}

SplineField two_scale_refine(const SplineField& F, const Domain& D) {
    const int m = F.order();
    ParityStencil stencil(m, F.dim());
    SplineField out(F.dim(), m, F.level() + 1, F.degree());
    for (const Index& nu : active_cells(D, F.level() + 1, m)) {
        Polynomial c = Polynomial::constant(F.dim(), 0.0);
        for (const auto& e : stencil.parents(nu))
            if (F.active(e.parent)) c += e.weight * F.coeff(e.parent);
        out.set_coeff(nu, std::move(c));
    }
    return out;
}

SplineField detail(const ScalarFn& f, const Domain& D, int k, int l, int m,
                   const QuadratureSpec& quad) {
    if (k < 1) throw std::invalid_argument("detail: needs the coarser level k-1 >= 0");
    SplineField fine = quasi_interpolant(f, D, k, l, m, quad);
    SplineField coarse = quasi_interpolant(f, D, k - 1, l, m, quad);
#ifndef NDEBUG
    // every parity parent of an active child has a support superset, so it
    // must be active at the coarse level
    ParityStencil stencil(m, D.dim());
    for (const auto& [nu, p] : fine.coeffs())
        for (const auto& e : stencil.parents(nu)) assert(coarse.active(e.parent));
#endif
    SplineField refined = two_scale_refine(coarse, D);
    fine.axpy(-1.0, refined);
    return fine;
}

std::vector<double> discretize_color(const SplineField& F, const Index& sigma) {
    const int d = F.dim();
    const int mod = F.order() + 1;
    if ((int)sigma.size() != d)
        throw std::invalid_argument("discretize_color: color dimension mismatch");
    const double h = std::ldexp(1.0, -F.level());
    const auto lattice = simplex_indices(d, F.degree());
    std::vector<double> out;
    out.reserve(F.coeffs().size() * lattice.size());
    std::vector<double> x(d);
    for (const auto& [nu, p] : F.coeffs()) {
        for (int j = 0; j < d; ++j)
            if (((nu[j] % mod) + mod) % mod != sigma[j])
                throw std::invalid_argument("discretize_color: field carries a shift outside the color class");
        for (const Index& lam : lattice) {
            for (int j = 0; j < d; ++j) x[j] = h * double(nu[j] + lam[j]);
            out.push_back(p.eval(x.data()));
        }
    }
    return out;
}

SplineField undiscretize_color(const std::vector<double>& values, const std::vector<Index>& shifts,
                               const Index& sigma, int d, int m, int k, int degree) {
    const auto lattice = simplex_indices(d, degree);
    if (values.size() != shifts.size() * lattice.size())
        throw std::invalid_argument("undiscretize_color: value count does not match shifts");
    const int mod = m + 1;
    SplineField F(d, m, k, degree);
    std::vector<double> scale(d, std::ldexp(1.0, k));
    size_t pos = 0;
    for (const Index& nu : shifts) {
        for (int j = 0; j < d; ++j)
            if (((nu[j] % mod) + mod) % mod != sigma[j])
                throw std::invalid_argument("undiscretize_color: shift outside the color class");
        std::vector<double> vals(values.begin() + pos, values.begin() + pos + lattice.size());
        pos += lattice.size();
        // local coordinates y = 2^k x - nu place the samples on the integer lattice
        Polynomial q = lattice_interpolate(d, degree, vals);
        std::vector<double> shift(d);
        for (int j = 0; j < d; ++j) shift[j] = -double(nu[j]);
        F.set_coeff(nu, q.affine_substitute(scale, shift));
    }
    return F;
}

}  // namespace bsq

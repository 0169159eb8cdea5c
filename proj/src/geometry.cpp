#include "geometry.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <deque>
#include <limits>
#include <set>
#include <stdexcept>

#include "rng.hpp"

namespace bsq {

// ---------------------------------------------------------------------------
// predicate fallbacks

bool Domain::box_inside(const Box& b) const {
    // conservative rejection: every grid point (corners included) must pass
    const int n = std::max(sample_grid, 2);
    const int d = dim_;
    std::vector<double> x(d);
    std::vector<int> idx(d, 0);
    while (true) {
        for (int j = 0; j < d; ++j)
            x[j] = b.lo[j] + (b.hi[j] - b.lo[j]) * double(idx[j]) / double(n - 1);
        if (!contains(x.data())) return false;
        int j = d - 1;
        while (j >= 0 && idx[j] == n - 1) idx[j--] = 0;
        if (j < 0) break;
        ++idx[j];
    }
    return true;
}

bool Domain::box_meets(const Box& b) const {
    const int n = std::max(sample_grid, 2);
    const int d = dim_;
    std::vector<double> x(d);
    std::vector<int> idx(d, 0);
    while (true) {
        for (int j = 0; j < d; ++j)
            x[j] = b.lo[j] + (b.hi[j] - b.lo[j]) * (double(idx[j]) + 0.5) / double(n);
        if (contains(x.data())) return true;
        int j = d - 1;
        while (j >= 0 && idx[j] == n - 1) idx[j--] = 0;
        if (j < 0) break;
        ++idx[j];
    }
    return false;
}

// ---------------------------------------------------------------------------
// catalog

namespace {

class CubeDomain final : public Domain {
  public:
    explicit CubeDomain(int d)
        : Domain(d, Box{std::vector<double>(d, 0.0), std::vector<double>(d, 1.0)}, "unit-cube", true) {}

    bool contains(const double* x) const override {
        for (int j = 0; j < dim_; ++j)
            if (!(x[j] > 0.0 && x[j] < 1.0)) return false;
        return true;
    }

    bool box_inside(const Box& b) const override {
        for (int j = 0; j < dim_; ++j)
            if (!(b.lo[j] > 0.0 && b.hi[j] < 1.0)) return false;
        return true;
    }

    bool box_meets(const Box& b) const override {
        for (int j = 0; j < dim_; ++j)
            if (!(b.hi[j] > 0.0 && b.lo[j] < 1.0)) return false;
        return true;
    }
};

class BoxDomain final : public Domain {
  public:
    explicit BoxDomain(Box b) : Domain(b.dim(), b, "box", true), b_(std::move(b)) {
        for (int j = 0; j < dim_; ++j)
            if (!(b_.hi[j] > b_.lo[j])) throw std::invalid_argument("box domain: degenerate box");
    }

    bool contains(const double* x) const override {
        for (int j = 0; j < dim_; ++j)
            if (!(x[j] > b_.lo[j] && x[j] < b_.hi[j])) return false;
        return true;
    }

    bool box_inside(const Box& c) const override {
        for (int j = 0; j < dim_; ++j)
            if (!(c.lo[j] > b_.lo[j] && c.hi[j] < b_.hi[j])) return false;
        return true;
    }

    bool box_meets(const Box& c) const override {
        for (int j = 0; j < dim_; ++j)
            if (!(c.hi[j] > b_.lo[j] && c.lo[j] < b_.hi[j])) return false;
        return true;
    }

  private:
    Box b_;
};

class BallDomain final : public Domain {
  public:
    BallDomain(std::vector<double> c, double r)
        : Domain((int)c.size(), ball_box(c, r), "ball", true), c_(std::move(c)), r2_(r * r) {
        if (r <= 0.0) throw std::invalid_argument("ball domain: radius must be positive");
    }

    bool contains(const double* x) const override {
        double s = 0.0;
        for (int j = 0; j < dim_; ++j) s += (x[j] - c_[j]) * (x[j] - c_[j]);
        return s < r2_;
    }

    bool box_inside(const Box& b) const override {
        double s = 0.0;  // farthest corner
        for (int j = 0; j < dim_; ++j) {
            double v = std::max(std::abs(b.lo[j] - c_[j]), std::abs(b.hi[j] - c_[j]));
            s += v * v;
        }
        return s < r2_;
    }

    bool box_meets(const Box& b) const override {
        double s = 0.0;  // nearest point of the box
        for (int j = 0; j < dim_; ++j) {
            double v = std::clamp(c_[j], b.lo[j], b.hi[j]) - c_[j];
            s += v * v;
        }
        return s < r2_;
    }

  private:
    static Box ball_box(const std::vector<double>& c, double r) {
        Box b{c, c};
        for (size_t j = 0; j < c.size(); ++j) {
            b.lo[j] -= r;
            b.hi[j] += r;
        }
        return b;
    }

    std::vector<double> c_;
    double r2_;
};

// unit square minus the closed upper-right quadrant [1/2,1]^2
class LShapeDomain final : public Domain {
  public:
    LShapeDomain() : Domain(2, Box{{0.0, 0.0}, {1.0, 1.0}}, "l-shape", true) {}

    bool contains(const double* x) const override {
        if (!(x[0] > 0.0 && x[0] < 1.0 && x[1] > 0.0 && x[1] < 1.0)) return false;
        return x[0] < 0.5 || x[1] < 0.5;
    }

    bool box_inside(const Box& b) const override {
        for (int j = 0; j < 2; ++j)
            if (!(b.lo[j] > 0.0 && b.hi[j] < 1.0)) return false;
        return !(b.hi[0] >= 0.5 && b.hi[1] >= 0.5);
    }

    bool box_meets(const Box& b) const override {
        double l0 = std::max(b.lo[0], 0.0), l1 = std::max(b.lo[1], 0.0);
        double h0 = std::min(b.hi[0], 1.0), h1 = std::min(b.hi[1], 1.0);
        if (!(l0 < h0 && l1 < h1)) return false;
        return l0 < 0.5 || l1 < 0.5;
    }
};

// interior of the union of squares [2^-j, 2^-j+1] x [0, 2^-j], j = 0,1,2,...
// descending to the origin; e-type but not Lipschitz.
class StaircaseDomain final : public Domain {
  public:
    StaircaseDomain() : Domain(2, Box{{0.0, 0.0}, {2.0, 1.0}}, "staircase", true) {}

    // admissible height at abscissa t: 2^-j on (2^-j, 2^-j+1], halved exactly
    // at the shared edges t = 2^-j, zero outside (0, 2)
    static double height(double t) {
        if (t <= 0.0 || t >= 2.0) return 0.0;
        int e = 0;
        double man = std::frexp(t, &e);  // t = man * 2^e, man in [0.5, 1)
        return man == 0.5 ? 0.5 * t : std::ldexp(1.0, e - 1);
    }

    bool contains(const double* x) const override {
        return x[1] > 0.0 && x[1] < height(x[0]);
    }

    bool box_inside(const Box& b) const override {
        // the height profile is nondecreasing, so the left edge binds
        return b.lo[0] > 0.0 && b.hi[0] < 2.0 && b.lo[1] > 0.0 && b.hi[1] < height(b.lo[0]);
    }

    bool box_meets(const Box& b) const override {
        if (b.hi[1] <= 0.0 || b.lo[0] >= 2.0 || b.hi[0] <= 0.0) return false;
        double hmax = b.hi[0] >= 2.0 ? 1.0 : height(b.hi[0]);
        return b.lo[1] < hmax;
    }
};

class ScaledDomain final : public Domain {
  public:
    ScaledDomain(DomainPtr inner, std::vector<double> shift, double delta)
        : Domain(inner->dim(), scaled_box(*inner, shift, delta),
                 "scaled:" + inner->tag(), inner->exact_oracle()),
          inner_(std::move(inner)), shift_(std::move(shift)), delta_(delta) {
        if (delta <= 0.0) throw std::invalid_argument("scaled domain: delta must be positive");
    }

    bool contains(const double* x) const override {
        std::vector<double> y(dim_);
        for (int j = 0; j < dim_; ++j) y[j] = (x[j] - shift_[j]) / delta_;
        return inner_->contains(y.data());
    }

    bool box_inside(const Box& b) const override { return inner_->box_inside(pull(b)); }
    bool box_meets(const Box& b) const override { return inner_->box_meets(pull(b)); }

  private:
    static Box scaled_box(const Domain& inner, const std::vector<double>& shift, double delta) {
        Box b = inner.bbox();
        for (int j = 0; j < inner.dim(); ++j) {
            b.lo[j] = shift[j] + delta * b.lo[j];
            b.hi[j] = shift[j] + delta * b.hi[j];
        }
        return b;
    }

    Box pull(const Box& b) const {
        Box r = b;
        for (int j = 0; j < dim_; ++j) {
            r.lo[j] = (b.lo[j] - shift_[j]) / delta_;
            r.hi[j] = (b.hi[j] - shift_[j]) / delta_;
        }
        return r;
    }

    DomainPtr inner_;
    std::vector<double> shift_;
    double delta_;
};

class ShiftGuardDomain final : public Domain {
  public:
    ShiftGuardDomain(DomainPtr base, std::vector<double> h, int samples)
        : Domain(base->dim(), base->bbox(), "guard:" + base->tag(), base->exact_oracle()),
          base_(std::move(base)), h_(std::move(h)), samples_(std::max(samples, 2)) {}

    bool contains(const double* x) const override {
        std::vector<double> y(dim_);
        for (int s = 0; s < samples_; ++s) {
            double t = double(s) / double(samples_ - 1);
            for (int j = 0; j < dim_; ++j) y[j] = x[j] + t * h_[j];
            if (!base_->contains(y.data())) return false;
        }
        return true;
    }

    // shifted-box conjunction: necessary for the true guard, exact when the
    // base domain is convex
    bool box_inside(const Box& b) const override {
        Box y = b;
        for (int s = 0; s < samples_; ++s) {
            double t = double(s) / double(samples_ - 1);
            for (int j = 0; j < dim_; ++j) {
                y.lo[j] = b.lo[j] + t * h_[j];
                y.hi[j] = b.hi[j] + t * h_[j];
            }
            if (!base_->box_inside(y)) return false;
        }
        return true;
    }

    bool box_meets(const Box& b) const override {
        Box y = b;
        for (int s = 0; s < samples_; ++s) {
            double t = double(s) / double(samples_ - 1);
            for (int j = 0; j < dim_; ++j) {
                y.lo[j] = b.lo[j] + t * h_[j];
                y.hi[j] = b.hi[j] + t * h_[j];
            }
            if (!base_->box_meets(y)) return false;
        }
        return true;
    }

  private:
    DomainPtr base_;
    std::vector<double> h_;
    int samples_;
};

}  // namespace

DomainPtr make_cube(int d) { return std::make_shared<CubeDomain>(d); }

DomainPtr make_box(const std::vector<double>& lo, const std::vector<double>& hi) {
    return std::make_shared<BoxDomain>(Box{lo, hi});
}

DomainPtr make_ball(const std::vector<double>& center, double radius) {
    return std::make_shared<BallDomain>(center, radius);
}

DomainPtr make_lshape() { return std::make_shared<LShapeDomain>(); }

DomainPtr make_staircase() { return std::make_shared<StaircaseDomain>(); }

DomainPtr make_scaled(DomainPtr inner, const std::vector<double>& shift, double delta) {
    return std::make_shared<ScaledDomain>(std::move(inner), shift, delta);
}

DomainPtr make_shift_guard(DomainPtr base, const std::vector<double>& h, int samples) {
    return std::make_shared<ShiftGuardDomain>(std::move(base), h, samples);
}

// ---------------------------------------------------------------------------
// cells

Box cell_box(int k, const Index& nu) {
    const double h = std::ldexp(1.0, -k);
    Box b;
    b.lo.resize(nu.size());
    b.hi.resize(nu.size());
    for (size_t j = 0; j < nu.size(); ++j) {
        b.lo[j] = h * double(nu[j]);
        b.hi[j] = h * double(nu[j] + 1);
    }
    return b;
}

Box support_box(int k, const Index& nu, int m) {
    const double h = std::ldexp(1.0, -k);
    Box b;
    b.lo.resize(nu.size());
    b.hi.resize(nu.size());
    for (size_t j = 0; j < nu.size(); ++j) {
        b.lo[j] = h * double(nu[j]);
        b.hi[j] = h * double(nu[j] + m + 1);
    }
    return b;
}

namespace {

// lexicographic scan over the bbox-induced index range
template <typename Pred>
std::vector<Index> scan_cells(const Domain& D, int k, int pad, Pred&& keep) {
    const int d = D.dim();
    const double scale = std::ldexp(1.0, k);
    Index lo(d), hi(d);
    for (int j = 0; j < d; ++j) {
        lo[j] = (int)std::floor(D.bbox().lo[j] * scale) - pad;
        hi[j] = (int)std::ceil(D.bbox().hi[j] * scale) + 1;
    }
    std::vector<Index> out;
    for (Index nu : box_indices(lo, hi))
        if (keep(nu)) out.push_back(std::move(nu));
    return out;
}

}  // namespace

std::vector<Index> active_cells(const Domain& D, int k, int m) {
    if (k < 0) throw std::invalid_argument("active_cells: level must be nonnegative");
    auto cells = scan_cells(D, k, m + 1,
                            [&](const Index& nu) { return D.box_meets(support_box(k, nu, m)); });
    if (cells.empty())
        throw std::runtime_error("active_cells: no basis support meets the domain (bbox mismatch?)");
    return cells;
}

std::vector<Index> interior_cells(const Domain& D, int k) {
    if (k < 0) throw std::invalid_argument("interior_cells: level must be nonnegative");
    return scan_cells(D, k, 1, [&](const Index& nu) { return D.box_inside(cell_box(k, nu)); });
}

Index nearest_interior(const std::vector<Index>& interior_sorted, const Index& nu) {
    if (interior_sorted.empty())
        throw std::runtime_error("nearest_interior: no interior cells at this level");
    // the list is lexicographically sorted, so keeping strict improvements
    // yields the lexicographically smallest minimizer
    const Index* best = &interior_sorted.front();
    int bestd = linf_dist(*best, nu);
    for (const auto& cand : interior_sorted) {
        int dd = linf_dist(cand, nu);
        if (dd < bestd) {
            best = &cand;
            bestd = dd;
        }
    }
    return *best;
}

LevelCells::LevelCells(const Domain& D, int k, int m)
    : k_(k), active_(active_cells(D, k, m)), interior_(interior_cells(D, k)) {}

const Index& LevelCells::nearest(const Index& nu) const {
    auto it = memo_.find(nu);
    if (it == memo_.end())
        it = memo_.emplace(nu, nearest_interior(interior_, nu)).first;
    return it->second;
}

// ---------------------------------------------------------------------------
// segment chains

namespace {

// cell owning the walk position: on a face, the direction sign decides
Index entry_cell(int k, const std::vector<double>& x, const std::vector<double>& xi) {
    const double scale = std::ldexp(1.0, k);
    Index nu(x.size());
    for (size_t j = 0; j < x.size(); ++j) {
        double y = scale * x[j];
        double f = std::floor(y);
        if (y == f && xi[j] < 0.0) f -= 1.0;
        nu[j] = (int)f;
    }
    return nu;
}

}  // namespace

CubeChain segment_chain(int k, const std::vector<double>& x0, const std::vector<double>& xi) {
    const int d = (int)x0.size();
    const double h = std::ldexp(1.0, -k);

    CubeChain out;
    out.k = k;
    Index cur = entry_cell(k, x0, xi);
    out.cells.push_back(cur);
    out.touched.push_back(cur);

    double ninf = 0.0;
    for (double v : xi) ninf = std::max(ninf, std::abs(v));
    // generous cap; the proven bound is ~ d (2^k |xi| + 1) transitions
    const long long cap = 16LL * d * (long long)(std::ldexp(ninf, k) + 2.0);

    for (long long guard = 0; guard <= cap; ++guard) {
        // earliest parameter at which the segment leaves the closed cell
        double tstar = std::numeric_limits<double>::infinity();
        for (int j = 0; j < d; ++j) {
            if (xi[j] == 0.0) continue;
            double face = xi[j] > 0.0 ? h * double(cur[j] + 1) : h * double(cur[j]);
            double t = (face - x0[j]) / xi[j];
            tstar = std::min(tstar, t);
        }
        if (!(tstar <= 1.0)) break;  // endpoint reached inside the current cell

        // cross every face attaining the exit parameter, one axis at a time
        Index prev = cur;
        for (int j = 0; j < d; ++j) {
            if (xi[j] == 0.0) continue;
            double face = xi[j] > 0.0 ? h * double(cur[j] + 1) : h * double(cur[j]);
            if ((face - x0[j]) / xi[j] != tstar) continue;
            int sgn = xi[j] > 0.0 ? 1 : -1;
            cur[j] += sgn;
            out.moves.push_back({j, sgn});
            out.cells.push_back(cur);
            assert(linf_dist(cur, prev) <= 1);  // neighbor property of shared-point cells
        }
        out.touched.push_back(cur);
    }
    return out;
}

ChainCheck verify_chain(const CubeChain& c, const std::vector<double>& x0,
                        const std::vector<double>& xi) {
    ChainCheck res;
    const int d = (int)x0.size();
    const double scale = std::ldexp(1.0, c.k);
    const double tol = 1e-9;

    if (c.cells.empty()) {
        res.reason = "empty chain";
        return res;
    }
    if (c.cells.size() != c.moves.size() + 1) {
        res.reason = "cells/moves size mismatch";
        return res;
    }
    for (size_t i = 0; i < c.moves.size(); ++i) {
        Index expect = c.cells[i];
        expect[c.moves[i].first] += c.moves[i].second;
        if (std::abs(c.moves[i].second) != 1 || expect != c.cells[i + 1]) {
            res.reason = "non-unit step at position " + std::to_string(i);
            return res;
        }
    }

    auto inside_closed = [&](const Index& nu, const std::vector<double>& pt) {
        for (int j = 0; j < d; ++j) {
            double y = scale * pt[j];
            if (y < double(nu[j]) - tol || y > double(nu[j] + 1) + tol) return false;
        }
        return true;
    };
    std::vector<double> x1(d);
    for (int j = 0; j < d; ++j) x1[j] = x0[j] + xi[j];
    if (!inside_closed(c.cells.front(), x0)) {
        res.reason = "start point not in first cell";
        return res;
    }
    if (!inside_closed(c.cells.back(), x1)) {
        res.reason = "end point not in last cell";
        return res;
    }

    // every touched cell must actually meet the segment (interval test), and
    // every chain cell must sit within distance 1 of some touched cell
    for (const auto& nu : c.touched) {
        double lo = 0.0, hi = 1.0;
        for (int j = 0; j < d; ++j) {
            double a = double(nu[j]) / scale - x0[j];
            double b = double(nu[j] + 1) / scale - x0[j];
            if (xi[j] == 0.0) {
                if (x0[j] < double(nu[j]) / scale - tol || x0[j] > double(nu[j] + 1) / scale + tol) {
                    lo = 1.0;
                    hi = 0.0;
                }
                continue;
            }
            double ta = a / xi[j], tb = b / xi[j];
            if (ta > tb) std::swap(ta, tb);
            lo = std::max(lo, ta);
            hi = std::min(hi, tb);
        }
        if (lo > hi + tol) {
            res.reason = "touched cell misses the segment";
            return res;
        }
    }
    for (const auto& nu : c.cells) {
        bool near_touched = false;
        for (const auto& t : c.touched)
            if (linf_dist(nu, t) <= 1) {
                near_touched = true;
                break;
            }
        if (!near_touched) {
            res.reason = "chain cell farther than 1 from every touched cell";
            return res;
        }
    }

    double ninf = 0.0;
    for (double v : xi) ninf = std::max(ninf, std::abs(v));
    double bound = 4.0 * double(d) * double(d) * (std::ldexp(ninf, c.k) + 1.0);
    res.bound_ratio = double(c.length()) / bound;
    if (res.bound_ratio > 1.0) {
        res.reason = "length bound exceeded";
        return res;
    }
    res.ok = true;
    return res;
}

// ---------------------------------------------------------------------------
// interior chains and the e-type probe

namespace {

std::vector<double> cell_center(int k, const Index& nu) {
    const double h = std::ldexp(1.0, -k);
    std::vector<double> c(nu.size());
    for (size_t j = 0; j < nu.size(); ++j) c[j] = h * (double(nu[j]) + 0.5);
    return c;
}

bool chain_inside(const Domain& D, const CubeChain& chain) {
    for (const auto& nu : chain.cells)
        if (!D.box_inside(cell_box(chain.k, nu))) return false;
    return true;
}

// breadth-first search over interior cells at level K from start to goal;
// deterministic neighbor order (axis ascending, minus before plus)
bool bfs_chain(const Domain& D, int K, const Index& start, const Index& goal, CubeChain& out) {
    const int d = (int)start.size();
    std::map<Index, Index> parent;
    std::deque<Index> queue;
    parent[start] = start;
    queue.push_back(start);
    const size_t cap = 400000;
    while (!queue.empty() && parent.size() < cap) {
        Index cur = queue.front();
        queue.pop_front();
        if (cur == goal) break;
        for (int j = 0; j < d; ++j)
            for (int sgn : {-1, +1}) {
                Index nb = cur;
                nb[j] += sgn;
                if (parent.count(nb)) continue;
                if (!D.box_inside(cell_box(K, nb))) continue;
                parent[nb] = cur;
                queue.push_back(nb);
            }
    }
    if (!parent.count(goal)) return false;
    std::vector<Index> path;
    for (Index cur = goal; cur != parent[cur]; cur = parent[cur]) path.push_back(cur);
    path.push_back(start);
    std::reverse(path.begin(), path.end());
    out.k = K;
    out.cells = path;
    out.touched = path;
    out.moves.clear();
    for (size_t i = 1; i < path.size(); ++i)
        for (int j = 0; j < d; ++j)
            if (path[i][j] != path[i - 1][j]) out.moves.push_back({j, path[i][j] - path[i - 1][j]});
    return true;
}

}  // namespace

InteriorChain interior_chain(const Domain& D, int k, const Index& nu, const Index& nu2,
                             int kappa_max) {
    if (!D.box_inside(cell_box(k, nu)) || !D.box_inside(cell_box(k, nu2)))
        throw std::invalid_argument("interior_chain: endpoints must be interior cells");

    InteriorChain result;
    const auto c0 = cell_center(k, nu);
    const auto c1 = cell_center(k, nu2);
    std::vector<double> xi(c0.size());
    for (size_t j = 0; j < c0.size(); ++j) xi[j] = c1[j] - c0[j];

    for (int kappa = 0; kappa <= kappa_max; ++kappa) {
        const int K = k + kappa;
        CubeChain chain = segment_chain(K, c0, xi);
        if (chain_inside(D, chain)) {
            result.found = true;
            result.kappa = kappa;
            result.chain = std::move(chain);
            return result;
        }
    }
    // straight segments can leave a nonconvex domain at every refinement;
    // fall back to a certified shortest axis path over interior subcells
    for (int kappa = 0; kappa <= kappa_max; ++kappa) {
        const int K = k + kappa;
        Index start = entry_cell(K, c0, xi);
        Index goal = entry_cell(K, c1, xi);
        if (!D.box_inside(cell_box(K, start)) || !D.box_inside(cell_box(K, goal))) continue;
        CubeChain chain;
        if (bfs_chain(D, K, start, goal, chain)) {
            result.found = true;
            result.kappa = kappa;
            result.via_search = true;
            result.chain = std::move(chain);
            return result;
        }
    }
    return result;
}

EtypeReport etype_probe(const Domain& D, int k_min, int k_max, int kappa_max, int pair_budget,
                        std::uint64_t seed) {
    EtypeReport report;
    for (int k = k_min; k <= k_max; ++k) {
        EtypeLevelReport lv;
        lv.k = k;
        // condition (1) quantifies over cells meeting D, i.e. the m = 0 family
        std::vector<Index> meeting = active_cells(D, k, 0);
        std::vector<Index> interior = interior_cells(D, k);
        lv.active = meeting.size();
        lv.interior = interior.size();
        if (interior.empty()) {
            lv.failures = (int)meeting.size();
            report.levels.push_back(lv);
            continue;
        }
        for (const auto& nu : meeting)
            lv.gamma = std::max(lv.gamma, linf_dist(nu, nearest_interior(interior, nu)) + 1);

        Rng rng(seed + (std::uint64_t)k * 7919);
        std::vector<std::pair<Index, Index>> pairs;
        pairs.push_back({interior.front(), interior.back()});
        for (int i = 1; i < pair_budget; ++i) {
            const auto& a = interior[(size_t)rng.uniform_int(0, (long long)interior.size() - 1)];
            const auto& b = interior[(size_t)rng.uniform_int(0, (long long)interior.size() - 1)];
            pairs.push_back({a, b});
        }
        for (const auto& [a, b] : pairs) {
            if (a == b) continue;
            InteriorChain ic = interior_chain(D, k, a, b, kappa_max);
            if (!ic.found) {
                ++lv.failures;
                continue;
            }
            lv.kappa_used = std::max(lv.kappa_used, ic.kappa);
            lv.c0 = std::max(lv.c0, double(ic.chain.length()) / double(std::max(1, linf_dist(a, b))));
        }
        report.levels.push_back(lv);
    }

    auto passes = [](const EtypeLevelReport& lv) { return lv.interior > 0 && lv.failures == 0; };
    for (size_t i = 0; i < report.levels.size(); ++i) {
        bool all = true;
        for (size_t j = i; j < report.levels.size(); ++j) all = all && passes(report.levels[j]);
        if (all) {
            report.K0 = report.levels[i].k;
            report.ok = true;
            for (size_t j = i; j < report.levels.size(); ++j) {
                report.gamma = std::max(report.gamma, report.levels[j].gamma);
                report.c0 = std::max(report.c0, report.levels[j].c0);
            }
            break;
        }
    }
    return report;
}

std::map<Index, std::vector<Index>> color_classes(const std::vector<Index>& cells, int m) {
    if (m < 0) throw std::invalid_argument("color_classes: order must be nonnegative");
    const int mod = m + 1;
    std::map<Index, std::vector<Index>> classes;
    for (const auto& nu : cells) {
        Index sigma(nu.size());
        for (size_t j = 0; j < nu.size(); ++j) sigma[j] = ((nu[j] % mod) + mod) % mod;
        classes[sigma].push_back(nu);
    }
    return classes;
}

}  // namespace bsq

#pragma once

// Domains and dyadic cell machinery: the catalog of test domains with exact
// closed-box containment/intersection oracles, the active and interior index
// families at a dyadic level, the nearest-interior-cell map, axis-step cube
// chains along segments, interior-to-interior chains, and the empirical
// e-type probe that estimates the domain constants.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "multiindex.hpp"

namespace bsq {

struct Box {
    std::vector<double> lo, hi;
    int dim() const { return (int)lo.size(); }
};

class Domain {
  public:
    virtual ~Domain() = default;

    int dim() const { return dim_; }
    const Box& bbox() const { return bbox_; }
    const std::string& tag() const { return tag_; }
    bool exact_oracle() const { return exact_; }

    virtual bool contains(const double* x) const = 0;
    bool contains(const std::vector<double>& x) const { return contains(x.data()); }

    // closed axis-aligned box tests; defaults fall back to deterministic grid
    // sampling of the predicate (a sampled hit is definitive for "meets",
    // rejection is conservative for "inside")
    virtual bool box_inside(const Box& b) const;
    virtual bool box_meets(const Box& b) const;

    // sampling density for the predicate fallback: points per axis
    int sample_grid = 16;

  protected:
    Domain(int d, Box bbox, std::string tag, bool exact)
        : dim_(d), bbox_(std::move(bbox)), tag_(std::move(tag)), exact_(exact) {}

    int dim_;
    Box bbox_;
    std::string tag_;
    bool exact_;
};

using DomainPtr = std::shared_ptr<const Domain>;

DomainPtr make_cube(int d);
DomainPtr make_box(const std::vector<double>& lo, const std::vector<double>& hi);
DomainPtr make_ball(const std::vector<double>& center, double radius);
DomainPtr make_lshape();
DomainPtr make_staircase();
DomainPtr make_scaled(DomainPtr inner, const std::vector<double>& shift, double delta);

// the difference-guard domain D_h = {x in D : x + t h in D for t in [0,1]},
// realized through membership checks at `samples` equispaced t values
DomainPtr make_shift_guard(DomainPtr base, const std::vector<double>& h, int samples = 8);

// closed cell / support box of g_{k,nu}^{m,d} as coordinate boxes
Box cell_box(int k, const Index& nu);
Box support_box(int k, const Index& nu, int m);

// N_k^{d,m,D}: nu whose basis support meets D (lexicographically sorted)
std::vector<Index> active_cells(const Domain& D, int k, int m);

// script-N_k(D): nu with closed cell inside D (sorted; may be empty)
std::vector<Index> interior_cells(const Domain& D, int k);

// l-infinity minimizer over a sorted interior list, lexicographic tie-break
Index nearest_interior(const std::vector<Index>& interior_sorted, const Index& nu);

// per-level cell bundle with a memoized nearest-interior map
class LevelCells {
  public:
    LevelCells(const Domain& D, int k, int m);

    int level() const { return k_; }
    const std::vector<Index>& active() const { return active_; }
    const std::vector<Index>& interior() const { return interior_; }
    const Index& nearest(const Index& nu) const;

  private:
    int k_;
    std::vector<Index> active_;
    std::vector<Index> interior_;
    mutable std::map<Index, Index> memo_;
};

struct CubeChain {
    int k = 0;                              // cell level
    std::vector<Index> cells;               // nu^0 .. nu^J
    std::vector<std::pair<int, int>> moves; // (axis, +-1) per step
    std::vector<Index> touched;             // cells met by the segment, walk order

    int length() const { return (int)moves.size(); }
};

// axis-step chain along the segment x0 -> x0 + xi at level k
CubeChain segment_chain(int k, const std::vector<double>& x0, const std::vector<double>& xi);

struct ChainCheck {
    bool ok = false;
    std::string reason;
    double bound_ratio = 0.0;  // J / (4 d^2 (2^k |xi|_inf + 1))
};

// exact validity audit: unit steps, endpoint membership, proximity to the
// segment, and the length bound
ChainCheck verify_chain(const CubeChain& c, const std::vector<double>& x0,
                        const std::vector<double>& xi);

struct InteriorChain {
    bool found = false;
    int kappa = -1;   // refinement levels added
    bool via_search = false;  // straight segment failed, used path search
    CubeChain chain;  // at level k + kappa, all closed cells inside D
};

InteriorChain interior_chain(const Domain& D, int k, const Index& nu, const Index& nu2,
                             int kappa_max = 3);

struct EtypeLevelReport {
    int k = 0;
    size_t active = 0;     // cells meeting D
    size_t interior = 0;   // closed cells inside D
    int gamma = 0;         // max over active cells of |nu - nearest| + 1
    double c0 = 0.0;       // max J / |nu - nu'| over sampled pairs
    int kappa_used = 0;
    int failures = 0;      // pairs with no certified chain
};

struct EtypeReport {
    std::vector<EtypeLevelReport> levels;
    int K0 = -1;    // first level from which every probed level passes
    bool ok = false;
    int gamma = 0;  // max over passing levels
    double c0 = 0.0;
};

EtypeReport etype_probe(const Domain& D, int k_min, int k_max, int kappa_max = 3,
                        int pair_budget = 24, std::uint64_t seed = 1);

// residue classes sigma + (m+1)Z^d restricted to the given cells
std::map<Index, std::vector<Index>> color_classes(const std::vector<Index>& cells, int m);

}  // namespace bsq

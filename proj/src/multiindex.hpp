#pragma once

// Small integer-vector helpers shared across the library: multi-indices of
// derivatives, lattice shifts of dyadic cells, and enumeration of the index
// sets behind the polynomial spaces (total order <= l) and box stencils.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace bsq {

using Index = std::vector<int>;

inline int order(const Index& a) {
    return std::accumulate(a.begin(), a.end(), 0);
}

inline Index zero_index(int d) { return Index(static_cast<size_t>(d), 0); }

inline bool componentwise_le(const Index& a, const Index& b) {
    if (a.size() != b.size()) return false;
    for (size_t j = 0; j < a.size(); ++j)
        if (a[j] > b[j]) return false;
    return true;
}

inline int linf_dist(const Index& a, const Index& b) {
    int r = 0;
    for (size_t j = 0; j < a.size(); ++j) {
        int v = a[j] > b[j] ? a[j] - b[j] : b[j] - a[j];
        if (v > r) r = v;
    }
    return r;
}

// All lambda in Z_+^d with |lambda| <= l, in lexicographic order.
inline std::vector<Index> simplex_indices(int d, int l) {
    if (d < 1 || l < 0) throw std::invalid_argument("simplex_indices: d >= 1, l >= 0 required");
    std::vector<Index> out;
    Index cur(static_cast<size_t>(d), 0);
    while (true) {
        if (order(cur) <= l) out.push_back(cur);
        // odometer over {0..l}^d, skipping overweight tails early would be a
        // micro-optimization; the sets are tiny at desk scale
        int j = d - 1;
        while (j >= 0 && cur[j] == l) cur[j--] = 0;
        if (j < 0) break;
        ++cur[j];
    }
    return out;
}

// All nu with lo_j <= nu_j <= hi_j per axis, lexicographic.
inline std::vector<Index> box_indices(const Index& lo, const Index& hi) {
    const int d = static_cast<int>(lo.size());
    std::vector<Index> out;
    Index cur = lo;
    if (!componentwise_le(lo, hi)) return out;
    while (true) {
        out.push_back(cur);
        int j = d - 1;
        while (j >= 0 && cur[j] == hi[j]) cur[j] = lo[j], --j;
        if (j < 0) break;
        ++cur[j];
    }
    return out;
}

inline std::vector<Index> box_indices(int d, int lo, int hi) {
    return box_indices(Index(static_cast<size_t>(d), lo), Index(static_cast<size_t>(d), hi));
}

inline long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    if (k > n - k) k = n - k;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// C(lambda, mu) = product of per-axis binomials (Leibniz weights).
inline double multi_binomial(const Index& lambda, const Index& mu) {
    double r = 1.0;
    for (size_t j = 0; j < lambda.size(); ++j)
        r *= static_cast<double>(binomial(lambda[j], mu[j]));
    return r;
}

}  // namespace bsq

#include "runner.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "analysis.hpp"
#include "bspline.hpp"
#include "geometry.hpp"
#include "multiscale.hpp"
#include "operators.hpp"
#include "projection.hpp"
#include "rng.hpp"

namespace bsq {

const char* const kCommands[6] = {"selftest",       "verify-domain", "rates-approx",
                                  "rates-recovery", "stechkin",      "extend"};

namespace {

// ---------------------------------------------------------------------------
// config access with precise field paths

const Json* cfg_find(const Json& c, const std::string& path) {
    const Json* cur = &c;
    size_t start = 0;
    while (start <= path.size()) {
        size_t dot = path.find('.', start);
        std::string key = path.substr(start, dot == std::string::npos ? dot : dot - start);
        if (!cur->is_object() || !cur->contains(key)) return nullptr;
        cur = &(*cur)[key];
        if (dot == std::string::npos) break;
        start = dot + 1;
    }
    return cur;
}

double cfg_num(const Json& c, const std::string& path, double def) {
    const Json* v = cfg_find(c, path);
    if (!v) return def;
    if (!v->is_number()) throw std::invalid_argument("config." + path + ": expected a number");
    return v->get<double>();
}

int cfg_int(const Json& c, const std::string& path, int def) {
    const Json* v = cfg_find(c, path);
    if (!v) return def;
    if (!v->is_number_integer())
        throw std::invalid_argument("config." + path + ": expected an integer");
    return v->get<int>();
}

bool cfg_bool(const Json& c, const std::string& path, bool def) {
    const Json* v = cfg_find(c, path);
    if (!v) return def;
    if (!v->is_boolean()) throw std::invalid_argument("config." + path + ": expected a boolean");
    return v->get<bool>();
}

std::string cfg_str(const Json& c, const std::string& path, const std::string& def) {
    const Json* v = cfg_find(c, path);
    if (!v) return def;
    if (!v->is_string()) throw std::invalid_argument("config." + path + ": expected a string");
    return v->get<std::string>();
}

// p, q, s accept numbers or the strings "inf"/"infinity"
double cfg_exponent(const Json& c, const std::string& path, double def) {
    const Json* v = cfg_find(c, path);
    if (!v) return def;
    if (v->is_string()) {
        std::string s = v->get<std::string>();
        if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
        throw std::invalid_argument("config." + path + ": expected a number or \"inf\"");
    }
    if (!v->is_number()) throw std::invalid_argument("config." + path + ": expected a number");
    double x = v->get<double>();
    if (!(x >= 1.0)) throw std::invalid_argument("config." + path + ": expected >= 1");
    return x;
}

std::vector<double> cfg_vec(const Json& c, const std::string& path) {
    const Json* v = cfg_find(c, path);
    if (!v || !v->is_array())
        throw std::invalid_argument("config." + path + ": expected an array of numbers");
    std::vector<double> out;
    for (const auto& e : *v) {
        if (!e.is_number())
            throw std::invalid_argument("config." + path + ": expected an array of numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

DomainPtr parse_domain(const Json& c) {
    std::string type = cfg_str(c, "domain.type", "cube");
    if (type == "cube") {
        int d = cfg_int(c, "domain.dim", 1);
        if (d < 1 || d > 4) throw std::invalid_argument("config.domain.dim: expected 1..4");
        return make_cube(d);
    }
    if (type == "box") {
        auto lo = cfg_vec(c, "domain.lo");
        auto hi = cfg_vec(c, "domain.hi");
        if (lo.size() != hi.size() || lo.empty())
            throw std::invalid_argument("config.domain.lo/hi: dimension mismatch");
        return make_box(lo, hi);
    }
    if (type == "ball") {
        auto center = cfg_vec(c, "domain.center");
        double r = cfg_num(c, "domain.radius", 0.5);
        if (!(r > 0.0)) throw std::invalid_argument("config.domain.radius: expected > 0");
        return make_ball(center, r);
    }
    if (type == "lshape") return make_lshape();
    if (type == "staircase") return make_staircase();
    throw std::invalid_argument(
        "config.domain.type: expected one of cube, box, ball, lshape, staircase");
}

QuadratureSpec parse_quad(const Json& c, std::uint64_t seed) {
    QuadratureSpec q;
    q.gauss_nodes = cfg_int(c, "quadrature.gauss_nodes", 0);
    q.grid_level = cfg_int(c, "quadrature.grid_level", 4);
    q.boundary_depth = cfg_int(c, "quadrature.boundary_depth", 3);
    q.mc_samples = cfg_int(c, "quadrature.mc_samples", 1024);
    q.sup_grid = cfg_int(c, "quadrature.sup_grid", 5);
    q.seed = seed;
    q.validate();
    return q;
}

std::vector<TestFunction> parse_family(const Json& c, int d, std::uint64_t seed) {
    const Json* fam = cfg_find(c, "family");
    std::vector<TestFunction> out;
    if (!fam) {
        // default family: one-sided cusps at staggered anchors plus the
        // two-sided variant, all of the same nominal roughness
        out.push_back(make_cusp_testfn(d, 0.75, 0.35));
        out.push_back(make_cusp_testfn(d, 0.75, 0.55));
        out.push_back(make_step_testfn(d, 0.75, 0.45));
        return out;
    }
    if (!fam->is_array() || fam->empty())
        throw std::invalid_argument("config.family: expected a nonempty array");
    int i = 0;
    for (const auto& e : *fam) {
        std::string where = "family[" + std::to_string(i++) + "]";
        std::string type = cfg_str(e, "type", "");
        if (type == "cusp")
            out.push_back(make_cusp_testfn(d, cfg_num(e, "beta", 0.75), cfg_num(e, "anchor", 0.5)));
        else if (type == "step")
            out.push_back(make_step_testfn(d, cfg_num(e, "beta", 0.75), cfg_num(e, "anchor", 0.5)));
        else if (type == "trig")
            out.push_back(make_trig_testfn(d, cfg_num(e, "freq", 3.0)));
        else if (type == "poly")
            out.push_back(make_poly_testfn(d, cfg_int(e, "degree", 1),
                                           seed + (std::uint64_t)cfg_int(e, "seed", i)));
        else
            throw std::invalid_argument("config." + where +
                                        ".type: expected one of cusp, step, trig, poly");
    }
    return out;
}

std::vector<int> parse_levels(const Json& c, int def_min, int def_max) {
    int kmin = cfg_int(c, "levels.min", def_min);
    int kmax = cfg_int(c, "levels.max", def_max);
    if (kmin < 0 || kmax < kmin)
        throw std::invalid_argument("config.levels: expected 0 <= min <= max");
    std::vector<int> out;
    for (int k = kmin; k <= kmax; ++k) out.push_back(k);
    return out;
}

// ---------------------------------------------------------------------------
// formatting

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Check {
    std::string name;
    double value = 0.0;
    double bound = 0.0;
    bool pass = false;
};

Json checks_report(const std::string& command, std::uint64_t seed, const Json& config,
                   const std::vector<Check>& checks, bool& all_pass) {
    all_pass = true;
    Json rep;
    rep["command"] = command;
    rep["version"] = 1;
    rep["seed"] = seed;
    Json arr = Json::array();
    for (const auto& ch : checks) {
        all_pass = all_pass && ch.pass;
        Json e;
        e["name"] = ch.name;
        e["value"] = ch.value;
        e["bound"] = ch.bound;
        e["pass"] = ch.pass;
        arr.push_back(e);
    }
    rep["pass"] = all_pass;
    rep["checks"] = arr;
    rep["config"] = config;
    return rep;
}

std::string checks_table(const std::vector<Check>& checks) {
    std::string t = "check,value,bound,pass\n";
    for (const auto& ch : checks)
        t += ch.name + "," + fmt(ch.value) + "," + fmt(ch.bound) + "," +
             (ch.pass ? "1" : "0") + "\n";
    return t;
}

Json rate_report(const std::string& command, std::uint64_t seed, const Json& config,
                 const RateReport& r) {
    Json rep;
    rep["command"] = command;
    rep["version"] = 1;
    rep["seed"] = seed;
    rep["kind"] = r.kind;
    rep["alpha_hat"] = r.alpha_hat;
    rep["expected"] = r.expected;
    rep["fitted"] = r.fitted;
    rep["tolerance"] = r.tolerance;
    rep["pass"] = r.pass;
    rep["degenerate"] = r.degenerate;
    if (!r.note.empty()) rep["note"] = r.note;
    if (r.ratio_max > 0.0) {
        rep["ratio_max"] = r.ratio_max;
        rep["ratio_min"] = r.ratio_min;
    }
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        Json e;
        e["level"] = row.level;
        e["n"] = row.n;
        e["error"] = row.error;
        e["norm"] = row.norm;
        rows.push_back(e);
    }
    rep["rows"] = rows;
    rep["config"] = config;
    return rep;
}

std::string rate_table(const RateReport& r) {
    std::string t = "level,n,error,norm,expected,fitted\n";
    for (const auto& row : r.rows)
        t += fmt(row.level) + "," + fmt(row.n) + "," + fmt(row.error) + "," + fmt(row.norm) +
             "," + fmt(r.expected) + "," + fmt(r.fitted) + "\n";
    return t;
}

// shared smoothness resolution: explicit alpha from the config, or measured
// from the first applicable family member
double resolve_alpha(const Json& c, const std::vector<TestFunction>& family, const Domain& D,
                     double p, int l, const QuadratureSpec& quad) {
    const Json* a = cfg_find(c, "alpha");
    if (a && a->is_number()) {
        double v = a->get<double>();
        if (!(v > 0.0)) throw std::invalid_argument("config.alpha: expected > 0");
        return v;
    }
    if (a && a->is_string() && a->get<std::string>() != "measure")
        throw std::invalid_argument("config.alpha: expected a number or \"measure\"");
    for (const auto& f : family) {
        try {
            return measure_smoothness(f.fn(), D, p, l, quad);
        } catch (const std::runtime_error&) {
        }
    }
    throw std::invalid_argument(
        "config.alpha: \"measure\" failed, every family member is annihilated at this order");
}

// ---------------------------------------------------------------------------
// selftest

std::vector<Check> run_selftest_checks(std::uint64_t seed, const QuadratureSpec& quad_in) {
    std::vector<Check> checks;
    Rng rng(seed);

    {  // subdivision identity of the scaled B-spline against its children
        Check ch{"refinement-residual", 0.0, 1e-12, false};
        for (int m = 0; m <= 4; ++m)
            for (int d = 1; d <= 2; ++d)
                for (int i = 0; i < 100; ++i) {
                    std::vector<double> x(d);
                    for (double& v : x) v = rng.uniform(-1.0, double(m) + 2.0);
                    ch.value = std::max(ch.value, refinement_check(m, d, x.data()));
                }
        ch.pass = ch.value <= ch.bound;
        checks.push_back(ch);
    }

    {  // shifted basis sums to one everywhere
        Check ch{"partition-of-unity", 0.0, 1e-12, false};
        for (int m = 0; m <= 3; ++m)
            for (int d = 1; d <= 2; ++d)
                for (int k : {2, 4})
                    for (int i = 0; i < 60; ++i) {
                        std::vector<double> x(d);
                        for (double& v : x) v = rng.uniform(0.0, 1.0);
                        const double scale = std::ldexp(1.0, k);
                        Index base(d);
                        for (int j = 0; j < d; ++j) base[j] = (int)std::floor(scale * x[j]);
                        double sum = 0.0;
                        for (const Index& off : box_indices(d, -m, 0)) {
                            Index nu(d);
                            for (int j = 0; j < d; ++j) nu[j] = base[j] + off[j];
                            sum += basis_eval(m, d, k, nu, x.data());
                        }
                        ch.value = std::max(ch.value, std::abs(sum - 1.0));
                    }
        ch.pass = ch.value <= ch.bound;
        checks.push_back(ch);
    }

    {  // parity weight sums are exactly one in rational arithmetic
        Check ch{"weight-normalization", 0.0, 0.0, true};
        for (int m = 0; m <= 4 && ch.pass; ++m)
            for (int d = 1; d <= 3 && ch.pass; ++d) {
                ParityStencil st(m, d);
                for (int i = 0; i < 100; ++i) {
                    Index nu(d);
                    for (int& v : nu) v = (int)rng.uniform_int(-20, 20);
                    if (st.exact_weight_sum(nu) != Rational(1)) {
                        ch.pass = false;
                        ch.value = 1.0;
                        break;
                    }
                }
            }
        checks.push_back(ch);
    }

    QuadratureSpec quad = quad_in;

    {  // prolongation leaves the restriction to the domain unchanged
        Check ch{"two-scale-exactness", 0.0, 1e-10, false};
        std::vector<DomainPtr> doms = {make_cube(2), make_ball({0.5, 0.5}, 0.5)};
        for (const auto& D : doms) {
            const int k = 3, m = 2;
            SplineField F(2, m, k, 1);
            for (const Index& nu : active_cells(*D, k, m)) {
                Polynomial p(2, 1);
                p.set_coeff({0, 0}, rng.uniform(-1.0, 1.0));
                p.set_coeff({1, 0}, rng.uniform(-1.0, 1.0));
                p.set_coeff({0, 1}, rng.uniform(-1.0, 1.0));
                F.set_coeff(nu, p);
            }
            SplineField HF = two_scale_refine(F, *D);
            int found = 0;
            while (found < 120) {
                std::vector<double> x = {rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0)};
                if (!D->contains(x.data())) continue;
                ++found;
                ch.value = std::max(ch.value, std::abs(HF.eval(x) - F.eval(x)));
            }
        }
        ch.pass = ch.value <= ch.bound;
        checks.push_back(ch);
    }

    {  // quasi-interpolation reproduces its polynomial space on the domain
        Check ch{"polynomial-reproduction", 0.0, 1e-8, false};
        for (int l = 1; l <= 3; ++l)
            for (int d = 1; d <= 2; ++d) {
                DomainPtr D = make_cube(d);
                Polynomial p(d, l - 1);
                for (const Index& lam : simplex_indices(d, l - 1))
                    p.set_coeff(lam, rng.uniform(-1.0, 1.0));
                SplineField E = quasi_interpolant([&](const double* x) { return p.eval(x); },
                                                  *D, 3, l, l, quad);
                SplineField Edet = detail([&](const double* x) { return p.eval(x); }, *D, 3, l,
                                          l, quad);
                for (int i = 0; i < 100; ++i) {
                    std::vector<double> x(d);
                    for (double& v : x) v = rng.uniform(0.0, 1.0);
                    double ref = p.eval(x);
                    double rel = 1.0 + std::abs(ref);
                    ch.value = std::max(ch.value, std::abs(E.eval(x) - ref) / rel);
                    ch.value = std::max(ch.value, std::abs(Edet.eval(x)) / rel);
                }
            }
        ch.pass = ch.value <= ch.bound;
        checks.push_back(ch);
    }

    {  // base plus detail series telescopes to the finest interpolant on D
        Check ch{"telescoping-identity", 0.0, 1e-10, false};
        DomainPtr D = make_cube(1);
        TestFunction f = make_cusp_testfn(1, 0.75, 0.5);
        SmoothnessClass cls;
        cls.alpha = 1.25;
        cls.p = 2.0;
        ExtensionResult E = extend(f.fn(), *D, cls, 2, 2, 5, quad);
        SplineField fine = quasi_interpolant(f.fn(), *D, 5, cls.l(), 2, quad);
        for (int i = 0; i < 200; ++i) {
            std::vector<double> x = {rng.uniform(0.0, 1.0)};
            ch.value = std::max(ch.value, std::abs(E.eval(x) - fine.eval(x)));
        }
        ch.pass = ch.value <= ch.bound;
        checks.push_back(ch);

        // compact support of the continuation
        Check sup{"extension-compact-support", 0.0, 0.0, true};
        double pad = 3.0 * std::ldexp(1.0, -2) + 1e-9;
        for (double x0 : {-pad - 0.05, 1.0 + pad + 0.05}) {
            std::vector<double> x = {x0};
            sup.value = std::max(sup.value, std::abs(E.eval(x)));
        }
        sup.pass = sup.value == 0.0;
        checks.push_back(sup);

        // approximation error decreases strictly with the level for the cusp
        Check mono{"error-monotone-in-level", 0.0, 0.0, true};
        double prev = std::numeric_limits<double>::infinity();
        for (int k = 3; k <= 5; ++k) {
            SplineField Ek = quasi_interpolant(f.fn(), *D, k, cls.l(), 2, quad);
            ScalarFn fe = f.fn();
            double err =
                lp_norm([&](const double* x) { return fe(x) - Ek.eval(x); }, *D, 2.0, quad);
            if (err >= prev) mono.pass = false;
            mono.value = err;
            prev = err;
        }
        checks.push_back(mono);
    }

    {  // segment chains: exact audits and the length ceiling
        Check ch{"chain-fuzz", 0.0, 1.0, false};
        bool allok = true;
        for (int i = 0; i < 2000; ++i) {
            int d = 1 + (int)rng.uniform_int(0, 2);
            int k = (int)rng.uniform_int(0, 6);
            std::vector<double> x0(d), xi(d);
            for (double& v : x0) v = rng.uniform(-2.0, 2.0);
            for (double& v : xi) v = rng.uniform(-3.0, 3.0);
            CubeChain chain = segment_chain(k, x0, xi);
            ChainCheck res = verify_chain(chain, x0, xi);
            allok = allok && res.ok;
            ch.value = std::max(ch.value, res.bound_ratio);
        }
        ch.pass = allok && ch.value <= ch.bound;
        checks.push_back(ch);
    }

    {  // interior connectivity of the staircase domain
        DomainPtr D = make_staircase();
        EtypeReport rep = etype_probe(*D, 2, 4, 3, 12, seed);
        Check ch{"staircase-interior-chains", 0.0, 3.0, false};
        int kap = 0;
        for (const auto& lv : rep.levels) kap = std::max(kap, lv.kappa_used);
        ch.value = double(kap);
        ch.pass = rep.ok && kap <= 3;
        checks.push_back(ch);
    }

    {  // cube probe: boundary cells see an interior cell within two steps
        DomainPtr D = make_cube(2);
        EtypeReport rep = etype_probe(*D, 2, 4, 3, 12, seed);
        Check ch{"cube-probe-gamma", double(rep.gamma), 2.0, rep.ok && rep.gamma <= 2};
        checks.push_back(ch);
    }

    {  // norm closed forms
        QuadratureSpec fine = quad;
        fine.grid_level = 5;
        fine.boundary_depth = 6;
        Check one{"lpnorm-constant-one", 0.0, 1e-10, false};
        for (int d = 1; d <= 2; ++d) {
            DomainPtr D = make_cube(d);
            double v = lp_norm([](const double*) { return 1.0; }, *D, d == 1 ? 2.0 : 1.0, fine);
            one.value = std::max(one.value, std::abs(v - 1.0));
        }
        one.pass = one.value <= one.bound;
        checks.push_back(one);

        Check lin{"lpnorm-linear-closed-form", 0.0, 1e-8, false};
        DomainPtr I = make_cube(1);
        double v = lp_norm([](const double* x) { return x[0]; }, *I, 2.0, fine);
        lin.value = std::abs(v - 1.0 / std::sqrt(3.0));
        lin.pass = lin.value <= lin.bound;
        checks.push_back(lin);
    }

    {  // averaged modulus of the identity map against its closed form
        DomainPtr I = make_cube(1);
        double t = 0.25;
        double expected = t / 2.0 - t * t / 3.0;
        double got = modulus_avg([](const double* x) { return x[0]; }, *I, 1, t, 1.0, quad);
        Check ch{"modulus-closed-form", std::abs(got - expected) / expected, 2e-3, false};
        ch.pass = ch.value <= ch.bound;
        checks.push_back(ch);
    }

    {  // averaged modulus never exceeds the sup modulus on shared nodes
        DomainPtr I = make_cube(1);
        TestFunction f = make_cusp_testfn(1, 0.6, 0.45);
        Check ch{"modulus-avg-below-sup", 0.0, 0.0, true};
        double prev_sup = 0.0;
        for (double t : {0.125, 0.25, 0.5}) {
            double a = modulus_avg(f.fn(), *I, 2, t, 2.0, quad);
            double s = modulus_sup(f.fn(), *I, 2, t, 2.0, quad);
            if (a > s + 1e-15) ch.pass = false;
            if (s + 1e-15 < prev_sup) ch.pass = false;  // sup monotone in t
            prev_sup = s;
            ch.value = std::max(ch.value, a - s);
        }
        checks.push_back(ch);
    }

    {  // orthogonal projection contracts in L2
        QuadratureSpec q2 = quad;
        Box B{{0.3, 0.25}, {0.8, 0.9}};
        LocalProjector P(B, 2, q2);
        double c = stability_probe(P, 2.0, 20, seed + 17);
        Check ch{"projector-l2-contraction", c, 1.0 + 1e-9, c <= 1.0 + 1e-9};
        checks.push_back(ch);
    }

    {  // coefficient discretization: normalized ratio stays in a narrow band
        DomainPtr D = make_cube(2);
        const int m = 1, degree = 1;
        Index sigma = {0, 0};
        Check ch{"discretization-band", 0.0, 4.0, true};
        for (double p : {1.0, 2.0, std::numeric_limits<double>::infinity()}) {
            double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
            for (int k = 2; k <= 5; ++k) {
                SplineField F(2, m, k, degree);
                Rng crng(seed + (std::uint64_t)k * 131);
                for (const Index& nu : active_cells(*D, k, m)) {
                    bool in_color = true;
                    for (int j = 0; j < 2; ++j)
                        if (((nu[j] % (m + 1)) + m + 1) % (m + 1) != sigma[j]) in_color = false;
                    if (!in_color) continue;
                    Polynomial poly(2, degree);
                    for (const Index& lam : simplex_indices(2, degree))
                        poly.set_coeff(lam, crng.uniform(-1.0, 1.0));
                    F.set_coeff(nu, poly);
                }
                auto vec = discretize_color(F, sigma);
                double ell;
                if (std::isinf(p)) {
                    ell = 0.0;
                    for (double v : vec) ell = std::max(ell, std::abs(v));
                } else {
                    long double s = 0.0L;
                    for (double v : vec) s += std::pow(std::abs(v), p);
                    ell = std::pow(double(s), 1.0 / p);
                }
                double scale = std::isinf(p) ? 1.0 : std::pow(2.0, -double(k) * 2.0 / p);
                double ratio = scale * ell / field_lp_norm(F, p);
                lo = std::min(lo, ratio);
                hi = std::max(hi, ratio);
            }
            ch.value = std::max(ch.value, hi / lo);
        }
        ch.pass = ch.value <= ch.bound;
        checks.push_back(ch);
    }

    {  // recovery interpolates its own samples on interior cells
        DomainPtr I = make_cube(1);
        TestFunction f = make_cusp_testfn(1, 0.75, 0.5);
        SampleSet s = sample_points(*I, 3, 2);
        fill_samples(s, f.fn());
        SplineField F = recovery(s, *I, 2);
        Check ch{"recovery-interpolation-identity", 0.0, 1e-9, false};
        for (size_t ci = 0; ci < s.cells.size(); ++ci)
            for (size_t mi = 0; mi < s.mus.size(); ++mi) {
                auto x = s.point(ci, mi);
                double rv = F.coeff(s.cells[ci]).eval(x.data());
                ch.value = std::max(ch.value, std::abs(rv - s.value(ci, mi)));
            }
        ch.pass = ch.value <= ch.bound;
        checks.push_back(ch);
    }

    {  // field derivatives match central differences at smooth points
        DomainPtr I = make_cube(1);
        TestFunction f = make_trig_testfn(1, 3.0);
        SplineField F = quasi_interpolant(f.fn(), *I, 3, 3, 3, quad);
        Check ch{"field-derivative-consistency", 0.0, 1e-5, false};
        const double h = 1e-6;
        Index lam = {1};
        for (int i = 0; i < 50; ++i) {
            std::vector<double> x = {rng.uniform(0.1, 0.9)};
            // keep the stencil inside one knot cell so the field is smooth there
            double cell = std::floor(x[0] * 8.0);
            if (x[0] * 8.0 - cell < 0.01 || x[0] * 8.0 - cell > 0.99) continue;
            std::vector<double> xp = {x[0] + h}, xm = {x[0] - h};
            double fd = (F.eval(xp) - F.eval(xm)) / (2.0 * h);
            double an = F.eval(x, lam);
            ch.value = std::max(ch.value, std::abs(fd - an) / (1.0 + std::abs(an)));
        }
        ch.pass = ch.value <= ch.bound;
        checks.push_back(ch);
    }

    {  // field dump round trip is exact
        DomainPtr D = make_cube(2);
        SplineField F(2, 2, 3, 1);
        for (const Index& nu : active_cells(*D, 3, 2)) {
            Polynomial p(2, 1);
            for (const Index& lam : simplex_indices(2, 1))
                p.set_coeff(lam, rng.uniform(-1.0, 1.0));
            F.set_coeff(nu, p);
        }
        std::stringstream ss;
        F.dump(ss);
        SplineField G = SplineField::load(ss);
        std::stringstream ss2;
        G.dump(ss2);
        Check ch{"field-dump-roundtrip", ss.str() == ss2.str() ? 0.0 : 1.0, 0.0, false};
        ch.pass = ch.value == 0.0;
        checks.push_back(ch);
    }

    return checks;
}

RunResult cmd_selftest(const Json& c, std::uint64_t seed) {
    QuadratureSpec quad = parse_quad(c, seed);
    auto checks = run_selftest_checks(seed, quad);
    RunResult out;
    bool pass = false;
    out.report = checks_report("selftest", seed, c, checks, pass);
    out.table = checks_table(checks);
    out.exit_code = pass ? 0 : 1;
    return out;
}

// ---------------------------------------------------------------------------
// verify-domain

RunResult cmd_verify_domain(const Json& c, std::uint64_t seed) {
    DomainPtr D = parse_domain(c);
    auto levels = parse_levels(c, 2, 4);
    int kappa_max = cfg_int(c, "kappa_max", 3);
    int pairs = cfg_int(c, "pair_budget", 24);
    EtypeReport rep = etype_probe(*D, levels.front(), levels.back(), kappa_max, pairs, seed);

    RunResult out;
    Json r;
    r["command"] = "verify-domain";
    r["version"] = 1;
    r["seed"] = seed;
    r["domain"] = D->tag();
    r["ok"] = rep.ok;
    r["K0"] = rep.K0;
    r["gamma"] = rep.gamma;
    r["c0"] = rep.c0;
    Json lv = Json::array();
    std::string table = "k,active,interior,gamma,c0,kappa_used,failures\n";
    for (const auto& e : rep.levels) {
        Json je;
        je["k"] = e.k;
        je["active"] = e.active;
        je["interior"] = e.interior;
        je["gamma"] = e.gamma;
        je["c0"] = e.c0;
        je["kappa_used"] = e.kappa_used;
        je["failures"] = e.failures;
        lv.push_back(je);
        table += std::to_string(e.k) + "," + std::to_string(e.active) + "," +
                 std::to_string(e.interior) + "," + std::to_string(e.gamma) + "," + fmt(e.c0) +
                 "," + std::to_string(e.kappa_used) + "," + std::to_string(e.failures) + "\n";
    }
    r["levels"] = lv;
    r["config"] = c;
    out.report = r;
    out.table = table;
    out.exit_code = rep.ok ? 0 : 1;
    return out;
}

// ---------------------------------------------------------------------------
// rate commands

RunResult cmd_rates_approx(const Json& c, std::uint64_t seed) {
    DomainPtr D = parse_domain(c);
    QuadratureSpec quad = parse_quad(c, seed);
    int l = cfg_int(c, "l", 2);
    int m = cfg_int(c, "m", l);
    double p = cfg_exponent(c, "p", 2.0);
    auto family = parse_family(c, D->dim(), seed);
    auto levels = parse_levels(c, 3, 6);
    double tol = cfg_num(c, "tolerance", 0.25);
    RateReport rep = approx_rate_experiment(*D, family, p, l, m, levels, tol, quad);

    RunResult out;
    out.report = rate_report("rates-approx", seed, c, rep);
    out.table = rate_table(rep);
    out.exit_code = rep.pass ? 0 : 1;
    return out;
}

RunResult cmd_rates_recovery(const Json& c, std::uint64_t seed) {
    DomainPtr D = parse_domain(c);
    QuadratureSpec quad = parse_quad(c, seed);
    const int d = D->dim();
    int l = cfg_int(c, "l", 2);
    int m = cfg_int(c, "m", l);
    int morder = cfg_int(c, "sobolev_order", 0);
    double p = cfg_exponent(c, "p", 2.0);
    double q = cfg_exponent(c, "q", p);
    auto family = parse_family(c, d, seed);
    auto levels = parse_levels(c, 3, 6);
    double tol = cfg_num(c, "tolerance", 0.3);
    if (morder < 0 || morder > m)
        throw std::invalid_argument("config.sobolev_order: expected 0 <= order <= m");

    // reject impossible targets up front when alpha is given explicitly:
    // the recovery theorem needs alpha - order - (d/p - d/q)_+ > 0
    const Json* a = cfg_find(c, "alpha");
    if (a && a->is_number()) {
        double alpha = a->get<double>();
        double excess =
            alpha - double(morder) - std::max(0.0, double(d) / p - double(d) / q);
        if (!(excess > 0.0))
            throw std::invalid_argument(
                "config.alpha: recovery rate requires alpha - sobolev_order - (d/p - d/q)_+ > 0");
    }

    RateReport rep =
        recovery_rate_experiment(*D, family, p, q, morder, l, m, levels, tol, quad);

    RunResult out;
    out.report = rate_report("rates-recovery", seed, c, rep);
    out.table = rate_table(rep);
    out.exit_code = rep.pass ? 0 : 1;
    return out;
}

RunResult cmd_stechkin(const Json& c, std::uint64_t seed) {
    DomainPtr D = parse_domain(c);
    QuadratureSpec quad = parse_quad(c, seed);
    const int d = D->dim();
    int l = cfg_int(c, "l", 2);
    int m = cfg_int(c, "m", l);
    double p = cfg_exponent(c, "p", 2.0);
    double q = cfg_exponent(c, "q", p);
    double s = cfg_exponent(c, "s", p);
    Index lambda(d, 0);
    if (cfg_find(c, "lambda")) {
        auto lv = cfg_vec(c, "lambda");
        if ((int)lv.size() != d)
            throw std::invalid_argument("config.lambda: expected an array of length dim");
        for (int j = 0; j < d; ++j) lambda[j] = (int)lv[j];
    } else {
        lambda[0] = 1;
    }
    auto family = parse_family(c, d, seed);
    auto levels = parse_levels(c, 3, 6);
    double tol = cfg_num(c, "tolerance", 0.3);

    const Json* a = cfg_find(c, "alpha");
    if (a && a->is_number()) {
        double alpha = a->get<double>();
        double gamma = alpha - double(order(lambda)) -
                       std::max(0.0, double(d) / p - double(d) / q);
        if (!(gamma > 0.0))
            throw std::invalid_argument(
                "config.alpha: stechkin rate requires alpha - |lambda| - (d/p - d/q)_+ > 0");
    }

    RateReport rep =
        stechkin_rate_experiment(*D, family, lambda, p, q, s, l, m, levels, tol, quad);

    RunResult out;
    out.report = rate_report("stechkin", seed, c, rep);
    out.table = rate_table(rep);
    out.exit_code = rep.pass ? 0 : 1;
    return out;
}

RunResult cmd_extend(const Json& c, std::uint64_t seed) {
    DomainPtr D = parse_domain(c);
    QuadratureSpec quad = parse_quad(c, seed);
    auto family = parse_family(c, D->dim(), seed);
    auto levels = parse_levels(c, 3, 6);
    double tol = cfg_num(c, "tolerance", 0.3);

    SmoothnessClass cls;
    cls.p = cfg_exponent(c, "p", 2.0);
    const Json* th = cfg_find(c, "theta");
    cls.theta = th ? cfg_exponent(c, "theta", 2.0) : std::numeric_limits<double>::infinity();
    int l_for_measure = cfg_int(c, "l", 2);
    cls.alpha = resolve_alpha(c, family, *D, cls.p, l_for_measure, quad);
    cls.validate();
    int m = cfg_int(c, "m", cls.l());
    int K0 = cfg_int(c, "k0", 2);

    RateReport rep =
        extension_rate_experiment(*D, family, cls, m, K0, levels, tol, quad);

    RunResult out;
    out.report = rate_report("extend", seed, c, rep);
    out.report["alpha"] = cls.alpha;
    out.report["K0"] = K0;
    out.table = rate_table(rep);
    if (cfg_bool(c, "emit_field", false)) {
        ExtensionResult E = extend(family.front().fn(), *D, cls, m, K0, levels.front(), quad);
        std::stringstream ss;
        E.base.dump(ss);
        out.field_dump = ss.str();
    }
    out.exit_code = rep.pass ? 0 : 1;
    return out;
}

}  // namespace

RunResult run_command(const std::string& command, const Json& config, std::uint64_t seed_override,
                      bool has_seed) {
    if (!config.is_object()) throw std::invalid_argument("config: expected a JSON object");
    int version = cfg_int(config, "version", 1);
    if (version != 1) throw std::invalid_argument("config.version: expected 1");
    std::uint64_t seed = has_seed ? seed_override : (std::uint64_t)cfg_int(config, "seed", 1);

    Json echo = config;
    echo["seed"] = seed;

    if (command == "selftest") return cmd_selftest(echo, seed);
    if (command == "verify-domain") return cmd_verify_domain(echo, seed);
    if (command == "rates-approx") return cmd_rates_approx(echo, seed);
    if (command == "rates-recovery") return cmd_rates_recovery(echo, seed);
    if (command == "stechkin") return cmd_stechkin(echo, seed);
    if (command == "extend") return cmd_extend(echo, seed);
    throw std::invalid_argument(
        "command: expected one of selftest, verify-domain, rates-approx, rates-recovery, "
        "stechkin, extend");
}

namespace {

void write_atomic(const std::filesystem::path& path, const std::string& payload) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        os << payload;
        if (!os.good()) throw std::runtime_error("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace

DomainPtr domain_from_json(const Json& spec) {
    Json c;
    c["domain"] = spec;
    try {
        return parse_domain(c);
    } catch (const std::invalid_argument& e) {
        std::string msg = e.what();
        const std::string pre = "config.";
        if (msg.rfind(pre, 0) == 0) msg = msg.substr(pre.size());
        throw std::invalid_argument(msg);
    }
}

void write_artifacts(const RunResult& res, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::filesystem::path dir(out_dir);
    write_atomic(dir / "report.json", res.report.dump(2) + "\n");
    write_atomic(dir / "table.csv", res.table);
    if (!res.field_dump.empty()) write_atomic(dir / "field.dump", res.field_dump);
}

int run_to_directory(const std::string& command, const std::string& config_path,
                     const std::string& out_dir, std::uint64_t seed_override, bool has_seed,
                     std::string& error_out) {
    error_out.clear();
    Json config;
    try {
        std::ifstream is(config_path);
        if (!is) {
            error_out = "cannot read config file: " + config_path;
            return 2;
        }
        config = Json::parse(is);
    } catch (const std::exception& e) {
        error_out = std::string("config parse error: ") + e.what();
        return 2;
    }

    try {
        RunResult res = run_command(command, config, seed_override, has_seed);
        write_artifacts(res, out_dir);
        return res.exit_code;
    } catch (const std::exception& e) {
        error_out = e.what();
        return 2;
    }
}

}  // namespace bsq

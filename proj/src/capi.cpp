#include "bsq.h"

#include <cstring>
#include <exception>
#include <new>
#include <sstream>
#include <stdexcept>
#include <string>

#include "analysis.hpp"
#include "geometry.hpp"
#include "multiscale.hpp"
#include "operators.hpp"
#include "runner.hpp"

struct bsq_domain {
    bsq::DomainPtr ptr;
};

// a field handle holds either a plain spline field or a full multiscale
// continuation; eval dispatches on which one is set
struct bsq_field {
    bsq::SplineField plain;
    bsq::ExtensionResult ext;
    bool is_ext = false;

    int dim() const { return is_ext ? ext.base.dim() : plain.dim(); }
    double eval(const double* x) const { return is_ext ? ext.eval(x) : plain.eval(x); }
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

bsq_status from_exception() {
    try {
        throw;
    } catch (const std::invalid_argument& e) {
        set_error(e.what());
        return BSQ_ERROR_INVALID_ARGUMENT;
    } catch (const nlohmann::json::exception& e) {
        set_error(e.what());
        return BSQ_ERROR_INVALID_ARGUMENT;
    } catch (const std::bad_alloc&) {
        set_error("out of memory");
        return BSQ_ERROR_RUNTIME;
    } catch (const std::exception& e) {
        set_error(e.what());
        return BSQ_ERROR_RUNTIME;
    } catch (...) {
        set_error("unknown error");
        return BSQ_ERROR_RUNTIME;
    }
}

char* copy_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

bsq::ScalarFn wrap(bsq_scalar_fn f, void* ctx, int dim) {
    return [f, ctx, dim](const double* x) { return f(x, dim, ctx); };
}

}  // namespace

extern "C" {

const char* bsq_version(void) { return "1.0.0"; }

const char* bsq_last_error(void) { return g_last_error.c_str(); }

void bsq_string_free(char* s) { delete[] s; }

bsq_status bsq_domain_create(const char* json_spec, bsq_domain** out) {
    if (!json_spec || !out) {
        set_error("null argument");
        return BSQ_ERROR_INVALID_ARGUMENT;
    }
    *out = nullptr;
    try {
        bsq::Json spec = bsq::Json::parse(json_spec);
        auto* h = new bsq_domain{bsq::domain_from_json(spec)};
        *out = h;
        return BSQ_OK;
    } catch (...) {
        return from_exception();
    }
}

void bsq_domain_destroy(bsq_domain* D) { delete D; }

int bsq_domain_dim(const bsq_domain* D) { return D ? D->ptr->dim() : 0; }

int bsq_domain_contains(const bsq_domain* D, const double* x) {
    if (!D || !x) return 0;
    return D->ptr->contains(x) ? 1 : 0;
}

bsq_status bsq_field_interpolant(const bsq_domain* D, int k, int l, int m, bsq_scalar_fn f,
                                 void* ctx, bsq_field** out) {
    if (!D || !f || !out) {
        set_error("null argument");
        return BSQ_ERROR_INVALID_ARGUMENT;
    }
    *out = nullptr;
    try {
        bsq::QuadratureSpec quad;
        auto* h = new bsq_field;
        h->plain = bsq::quasi_interpolant(wrap(f, ctx, D->ptr->dim()), *D->ptr, k, l, m, quad);
        *out = h;
        return BSQ_OK;
    } catch (...) {
        return from_exception();
    }
}

bsq_status bsq_field_extend(const bsq_domain* D, double alpha, double p, int m, int k0,
                            int k_max, bsq_scalar_fn f, void* ctx, bsq_field** out) {
    if (!D || !f || !out) {
        set_error("null argument");
        return BSQ_ERROR_INVALID_ARGUMENT;
    }
    *out = nullptr;
    try {
        bsq::SmoothnessClass cls;
        cls.alpha = alpha;
        cls.p = p;
        bsq::QuadratureSpec quad;
        auto* h = new bsq_field;
        h->ext = bsq::extend(wrap(f, ctx, D->ptr->dim()), *D->ptr, cls, m, k0, k_max, quad);
        h->is_ext = true;
        *out = h;
        return BSQ_OK;
    } catch (...) {
        return from_exception();
    }
}

bsq_status bsq_field_refine(const bsq_field* F, const bsq_domain* D, bsq_field** out) {
    if (!F || !D || !out) {
        set_error("null argument");
        return BSQ_ERROR_INVALID_ARGUMENT;
    }
    if (F->is_ext) {
        set_error("refine expects a plain field, not a continuation");
        return BSQ_ERROR_INVALID_ARGUMENT;
    }
    *out = nullptr;
    try {
        auto* h = new bsq_field;
        h->plain = bsq::two_scale_refine(F->plain, *D->ptr);
        *out = h;
        return BSQ_OK;
    } catch (...) {
        return from_exception();
    }
}

void bsq_field_destroy(bsq_field* F) { delete F; }

bsq_status bsq_field_eval(const bsq_field* F, const double* x, double* out) {
    if (!F || !x || !out) {
        set_error("null argument");
        return BSQ_ERROR_INVALID_ARGUMENT;
    }
    try {
        *out = F->eval(x);
        return BSQ_OK;
    } catch (...) {
        return from_exception();
    }
}

bsq_status bsq_field_eval_deriv(const bsq_field* F, const double* x, const int* lambda,
                                double* out) {
    if (!F || !x || !lambda || !out) {
        set_error("null argument");
        return BSQ_ERROR_INVALID_ARGUMENT;
    }
    if (F->is_ext) {
        set_error("derivatives are available on plain fields only");
        return BSQ_ERROR_INVALID_ARGUMENT;
    }
    try {
        bsq::Index lam(lambda, lambda + F->plain.dim());
        *out = F->plain.eval(x, lam);
        return BSQ_OK;
    } catch (...) {
        return from_exception();
    }
}

bsq_status bsq_field_dump(const bsq_field* F, char** out) {
    if (!F || !out) {
        set_error("null argument");
        return BSQ_ERROR_INVALID_ARGUMENT;
    }
    if (F->is_ext) {
        set_error("dump is available on plain fields only");
        return BSQ_ERROR_INVALID_ARGUMENT;
    }
    *out = nullptr;
    try {
        std::ostringstream ss;
        F->plain.dump(ss);
        *out = copy_string(ss.str());
        return BSQ_OK;
    } catch (...) {
        return from_exception();
    }
}

bsq_status bsq_field_load(const char* text, bsq_field** out) {
    if (!text || !out) {
        set_error("null argument");
        return BSQ_ERROR_INVALID_ARGUMENT;
    }
    *out = nullptr;
    try {
        std::istringstream ss{std::string(text)};
        auto* h = new bsq_field;
        h->plain = bsq::SplineField::load(ss);
        *out = h;
        return BSQ_OK;
    } catch (...) {
        return from_exception();
    }
}

bsq_status bsq_run(const char* command, const char* config_json, const char* out_dir,
                   uint64_t seed, int has_seed, char** report_json_out) {
    if (!command || !config_json) {
        set_error("null argument");
        return BSQ_ERROR_INVALID_ARGUMENT;
    }
    if (report_json_out) *report_json_out = nullptr;
    try {
        bsq::Json config = bsq::Json::parse(config_json);
        bsq::RunResult res = bsq::run_command(command, config, seed, has_seed != 0);
        if (out_dir) {
            try {
                bsq::write_artifacts(res, out_dir);
            } catch (const std::exception& e) {
                set_error(e.what());
                return BSQ_ERROR_IO;
            }
        }
        if (report_json_out) *report_json_out = copy_string(res.report.dump(2) + "\n");
        return res.exit_code == 0 ? BSQ_OK : BSQ_ERROR_CHECKS_FAILED;
    } catch (const bsq::Json::parse_error& e) {
        set_error(std::string("config parse error: ") + e.what());
        return BSQ_ERROR_INVALID_ARGUMENT;
    } catch (...) {
        return from_exception();
    }
}

}  // extern "C"

/* Exercises the shared-library interface end to end from plain C. */

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "bsq.h"

static int failures = 0;

static void expect(int cond, const char* what) {
    if (!cond) {
        ++failures;
        fprintf(stderr, "FAIL: %s (last error: %s)\n", what, bsq_last_error());
    }
}

static double linear_fn(const double* x, int dim, void* ctx) {
    (void)ctx;
    double acc = 1.0;
    int j;
    for (j = 0; j < dim; ++j) acc += (j + 1) * x[j];
    return acc;
}

static double cusp_fn(const double* x, int dim, void* ctx) {
    (void)dim;
    (void)ctx;
    double u = x[0] - 0.5;
    return u > 0.0 ? pow(u, 0.75) : 0.0;
}

int main(void) {
    expect(bsq_version() != NULL && strlen(bsq_version()) > 0, "version string");

    /* --- domains ------------------------------------------------------ */
    bsq_domain* ball = NULL;
    expect(bsq_domain_create("{\"type\":\"ball\",\"center\":[0.5,0.5],\"radius\":0.5}",
                             &ball) == BSQ_OK,
           "ball create");
    expect(bsq_domain_dim(ball) == 2, "ball dim");
    {
        double inside[2] = {0.5, 0.6};
        double outside[2] = {0.99, 0.99};
        expect(bsq_domain_contains(ball, inside) == 1, "ball contains center-ish point");
        expect(bsq_domain_contains(ball, outside) == 0, "ball excludes corner");
    }

    bsq_domain* bad = NULL;
    expect(bsq_domain_create("{\"type\":\"pentagon\"}", &bad) ==
               BSQ_ERROR_INVALID_ARGUMENT,
           "unknown domain type rejected");
    expect(strlen(bsq_last_error()) > 0, "error message populated");
    expect(bsq_domain_create("not json", &bad) == BSQ_ERROR_INVALID_ARGUMENT,
           "malformed json rejected");

    bsq_domain* cube = NULL;
    expect(bsq_domain_create("{\"type\":\"cube\",\"dim\":1}", &cube) == BSQ_OK,
           "cube create");

    /* --- interpolation reproduces a linear function -------------------- */
    bsq_field* F = NULL;
    expect(bsq_field_interpolant(cube, 3, 2, 2, linear_fn, NULL, &F) == BSQ_OK,
           "interpolant build");
    {
        int i;
        for (i = 0; i <= 10; ++i) {
            double x = 0.05 + 0.09 * i;
            double got = 0.0, want = 1.0 + x;
            expect(bsq_field_eval(F, &x, &got) == BSQ_OK, "field eval status");
            expect(fabs(got - want) <= 1e-8, "linear reproduction");
        }
    }
    {
        double x = 0.4, got = 0.0;
        int lambda[1] = {1};
        expect(bsq_field_eval_deriv(F, &x, lambda, &got) == BSQ_OK, "deriv eval status");
        expect(fabs(got - 1.0) <= 1e-8, "derivative of linear reproduction");
    }

    /* --- dump / load round trip ---------------------------------------- */
    {
        char* text = NULL;
        bsq_field* G = NULL;
        expect(bsq_field_dump(F, &text) == BSQ_OK, "dump");
        expect(text != NULL && strncmp(text, "bsqfield 1", 10) == 0, "dump header");
        expect(bsq_field_load(text, &G) == BSQ_OK, "load");
        {
            double x = 0.3, a = 0.0, b = 0.0;
            bsq_field_eval(F, &x, &a);
            bsq_field_eval(G, &x, &b);
            expect(a == b, "round trip evaluates identically");
        }
        bsq_string_free(text);
        bsq_field_destroy(G);
    }

    /* --- refinement keeps values on the domain ------------------------- */
    {
        bsq_field* H = NULL;
        expect(bsq_field_refine(F, cube, &H) == BSQ_OK, "refine");
        {
            double x = 0.55, a = 0.0, b = 0.0;
            bsq_field_eval(F, &x, &a);
            bsq_field_eval(H, &x, &b);
            expect(fabs(a - b) <= 1e-10, "refined field agrees on the domain");
        }
        bsq_field_destroy(H);
    }

    /* --- extension: telescoping inside, zero far outside ---------------- */
    {
        bsq_field* E = NULL;
        expect(bsq_field_extend(cube, 1.25, 2.0, 2, 2, 4, cusp_fn, NULL, &E) == BSQ_OK,
               "extend");
        {
            double x = -2.5, got = 1.0;
            bsq_field_eval(E, &x, &got);
            expect(got == 0.0, "extension vanishes far from the domain");
            x = 0.7;
            bsq_field_eval(E, &x, &got);
            expect(fabs(got - cusp_fn(&x, 1, NULL)) <= 0.05, "extension tracks f inside");
        }
        expect(bsq_field_refine(E, cube, &E) == BSQ_ERROR_INVALID_ARGUMENT,
               "refine rejects continuations");
        bsq_field_destroy(E);
    }

    /* --- runner --------------------------------------------------------- */
    {
        char* report = NULL;
        bsq_status rc = bsq_run("selftest",
                                "{\"quadrature\":{\"mc_samples\":128}}", NULL, 1, 1,
                                &report);
        expect(rc == BSQ_OK, "selftest passes");
        expect(report != NULL && strstr(report, "\"pass\": true") != NULL,
               "report carries the verdict");
        bsq_string_free(report);

        rc = bsq_run("no-such-command", "{}", NULL, 0, 0, NULL);
        expect(rc == BSQ_ERROR_INVALID_ARGUMENT, "unknown command rejected");
        rc = bsq_run("selftest", "]", NULL, 0, 0, NULL);
        expect(rc == BSQ_ERROR_INVALID_ARGUMENT, "bad config json rejected");
        rc = bsq_run("rates-approx",
                     "{\"l\":5,\"m\":2}", NULL, 0, 0, NULL);
        expect(rc == BSQ_ERROR_INVALID_ARGUMENT, "theorem hypothesis violation rejected");
    }

    bsq_field_destroy(F);
    bsq_domain_destroy(cube);
    bsq_domain_destroy(ball);
    bsq_domain_destroy(bad);

    if (failures == 0) {
        printf("capi: all checks passed\n");
        return 0;
    }
    printf("capi: %d checks failed\n", failures);
    return 1;
}

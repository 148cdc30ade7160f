#include <stdio.h>
#include <string.h>
#include "tinv.h"

#define CHECK(cond) do { if (!(cond)) { fprintf(stderr, "line %d: %s\n", __LINE__, #cond); return 1; } } while (0)

int main(void) {
    TinvQz t;
    CHECK(tinv_t_pullback(33, 3, TINV_METHOD_SERIES, &t) == TINV_STATUS_OK);
    CHECK(t.num == 1 && t.den == 15);

    CHECK(tinv_t_pullback(2, 1, TINV_METHOD_CLOSED, &t) == TINV_STATUS_INVALID_INPUT);
    CHECK(tinv_last_error() != NULL && strlen(tinv_last_error()) > 0);

    int64_t lambda[4] = {2, 1, 1, 2};
    int64_t p[2] = {0, 0};
    TinvCoboundary *cb = NULL;
    CHECK(tinv_coboundary_new(lambda, p, 2, &cb) == TINV_STATUS_OK);
    size_t len = 0;
    int64_t factors[4];
    CHECK(tinv_coboundary_group(cb, factors, 4, &len) == TINV_STATUS_OK);
    CHECK(len == 1 && factors[0] == 3);

    TinvQlf *q = NULL;
    CHECK(tinv_qlf_from_coboundary(cb, &q) == TINV_STATUS_OK);
    bool iso = false;
    CHECK(tinv_qlf_isomorphic(q, q, &iso) == TINV_STATUS_OK && iso);
    tinv_qlf_free(q);
    tinv_coboundary_free(cb);

    TinvKsBit bit;
    CHECK(tinv_exotic_ks(4, 2, true, &bit) == TINV_STATUS_OK && bit == TINV_KS_BIT_ONE);
    printf("ok %s\n", tinv_version());
    return 0;
}

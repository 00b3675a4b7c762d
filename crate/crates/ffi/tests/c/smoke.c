#include <math.h>
#include <stdio.h>
#include <string.h>

#include "hybridcomb.h"

#define CHECK(cond)                                                   \
    do {                                                              \
        if (!(cond)) {                                                \
            fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
            return 1;                                                 \
        }                                                             \
    } while (0)

int main(void) {
    HcComb *comb = NULL;
    CHECK(hc_comb_new_one(-0.5, 0.0, 1.0, &comb) == HC_STATUS_OK);

    HcBandList *bands = NULL;
    CHECK(hc_bands(comb, NAN, 100.0, 16, &bands) == HC_STATUS_OK);
    CHECK(hc_band_list_len(bands) > 2);

    HcBand b;
    CHECK(hc_band_list_get(bands, 0, &b) == HC_STATUS_OK);
    CHECK(b.lower < 0.0 && b.upper > 0.0);
    CHECK(b.lower_kind == HC_EDGE_KIND_PLUS);

    double q[16], eps[16];
    CHECK(hc_band_list_samples(bands, 0, q, eps, 16) == HC_STATUS_OK);
    double f = 0.0;
    CHECK(hc_transfer_half_trace(comb, eps[5], &f) == HC_STATUS_OK);
    CHECK(fabs(f - cos(q[5])) < 1e-9);

    CHECK(hc_band_list_get(bands, 1000, &b) == HC_STATUS_OUT_OF_RANGE);
    CHECK(strlen(hc_last_error()) > 0);

    hc_band_list_free(bands);
    hc_comb_free(comb);

    CHECK(hc_comb_new_two(-5.0, 0.0, -6.0, 0.0, 1.0, 1.0, &comb) == HC_STATUS_INVALID_PARAMETER);
    printf("ok\n");
    return 0;
}

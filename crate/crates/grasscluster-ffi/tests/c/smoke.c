#include <stdio.h>
#include "grasscluster.h"

int main(void) {
    const uint32_t e[4] = {2, 1, 1, 0};
    GcPlanePartition *p = NULL, *q = NULL;
    uint32_t out[4];
    if (gc_pp_new(2, 2, e, &p) != GC_STATUS_OK) return 10;
    if (gc_pp_eta(p, 2, 1, &q) != GC_STATUS_OK) return 11;
    if (gc_pp_entries(q, out, 4) != GC_STATUS_OK) return 12;
    if (out[0] != 1 || out[1] != 1 || out[2] != 1 || out[3] != 1) return 13;
    gc_pp_free(p);
    gc_pp_free(q);

    GcCspReport *r = NULL;
    bool all = false;
    if (gc_csp_verify(3, 3, 2, 0, &r) != GC_STATUS_OK) return 14;
    if (gc_csp_all_equal(r, &all) != GC_STATUS_OK || !all) return 15;
    gc_csp_free(r);

    if (gc_pp_new(0, 2, e, &p) != GC_STATUS_DIMENSION) return 16;
    if (gc_last_error() == NULL) return 17;
    printf("ok\n");
    return 0;
}

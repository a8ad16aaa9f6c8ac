#include <stdio.h>
#include "helgason_moire.h"
int main(void) {
    HmComplex z = {0.3, -0.2}, w;
    if (hm_helgason_wave(2.0, 0.0, z, &w) != HM_STATUS_OK) return 1;
    HmField *f = NULL;
    if (hm_field_create(10, 16, 1.0, true, &f) != HM_STATUS_OK) return 2;
    size_t n = 0; hm_field_len(f, &n);
    HmComplex bad = {2.0, 0.0};
    HmStatus s = hm_spherical(1.0, bad, &w);
    printf("version %s wave %.6f%+.6fi nodes %zu status %d msg %s\n", hm_version(), w.re, w.im, n, (int)s, hm_last_error());
    hm_field_free(f);
    return 0;
}

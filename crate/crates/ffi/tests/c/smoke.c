#include <stdio.h>
#include <string.h>

#include "morava_hopf.h"

static int failures = 0;

static void expect(int ok, const char *what) {
    if (!ok) {
        fprintf(stderr, "failed: %s (%s)\n", what, mh_last_error());
        failures++;
    }
}

int main(void) {
    MhPresentation *p = NULL;
    expect(mh_presentation_new(MH_THEORY_PERIODIC, 2, 7, &p) == MH_STATUS_OK, "new K(2), m=7");
    uint64_t rank = 0;
    expect(mh_presentation_rank(p, &rank) == MH_STATUS_OK && rank == 8, "rank 8");
    char *text = NULL;
    expect(mh_reduced_comul(p, 3, &text) == MH_STATUS_OK, "comul e3");
    expect(text != NULL && strcmp(text, "v^1*e3 (x) e3") == 0, "comul text");
    mh_string_free(text);
    expect(mh_verify(p, MH_SUITE_BIIDEALS, NULL) == MH_STATUS_OK, "bi-ideal suite");
    mh_presentation_free(p);

    size_t count = 0;
    expect(mh_idempotents(3, 15, &count, NULL) == MH_STATUS_OK && count == 4, "idempotents n=3, m=15");
    uint32_t j[] = {1};
    char *doc = NULL;
    expect(mh_jinv(2, 9, j, 1, &doc) == MH_STATUS_INVALID_INPUT, "inadmissible J");
    expect(strstr(mh_last_error(), "2, 4") != NULL, "witness indices");
    expect(mh_presentation_new(MH_THEORY_CONNECTIVE, 9, 7, &p) == MH_STATUS_INVALID_INPUT, "height out of range");

    if (failures == 0) {
        printf("ok\n");
    }
    return failures == 0 ? 0 : 1;
}

#include <stdio.h>
#include <string.h>

#include "wavinv.h"

int main(void) {
    WavinvFunction *f = NULL;
    if (wavinv_construct("psi", 3, &f) != WAVINV_STATUS_OK) return 10;

    bool overall = false;
    char *report = NULL;
    if (wavinv_verify(f, &overall, &report) != WAVINV_STATUS_OK || !overall) return 11;
    wavinv_string_free(report);

    char *label = NULL;
    if (wavinv_classify(f, &label) != WAVINV_STATUS_OK) return 12;
    int ok = strstr(label, "\"class\":\"M_1\"") != NULL;
    printf("%s\n", label);
    wavinv_string_free(label);
    wavinv_free(f);
    if (!ok) return 13;

    if (wavinv_construct("psi", 2, &f) != WAVINV_STATUS_DOMAIN) return 14;
    if (wavinv_last_error() == NULL) return 15;
    return 0;
}

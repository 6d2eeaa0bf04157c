#include <stdio.h>
#include <string.h>
#include "rinehart.h"

int main(void) {
    RhProblem *p = NULL;
    char *out = NULL;
    if (rh_problem_preset("square-zero", &p) != RH_STATUS_OK) return 1;
    if (rh_divide(p, "x", "y", 5, &out) != RH_STATUS_OK) return 2;
    if (strstr(out, "\"verdict\": \"infeasible\"") == NULL) return 3;
    rh_string_free(out);
    if (rh_divide(p, "x", "nope", 5, &out) != RH_STATUS_INPUT_ERROR) return 4;
    if (strstr(rh_last_error_message(), "nope") == NULL) return 5;
    rh_problem_free(p);
    if (rh_theorem1(0, 3, &out) != RH_STATUS_OK) return 6;
    rh_string_free(out);
    puts("ok");
    return 0;
}

#include <stdio.h>
#include <string.h>

#include "torsig.h"

#define CHECK(cond)                                                   \
    do {                                                              \
        if (!(cond)) {                                                \
            fprintf(stderr, "%s:%d: %s (%s)\n", __FILE__, __LINE__,   \
                    #cond, torsig_last_error());                      \
            return 1;                                                 \
        }                                                             \
    } while (0)

int main(void) {
    TorsigKnot *knot = NULL;
    int64_t v = 0;

    CHECK(torsig_knot_new(4, 6, &knot) == TORSIG_STATUS_NOT_COPRIME);
    CHECK(knot == NULL);
    CHECK(strstr(torsig_last_error(), "coprime") != NULL);

    CHECK(torsig_knot_new(12, 5, &knot) == TORSIG_STATUS_OK);
    CHECK(torsig_knot_p(knot) == 5 && torsig_knot_q(knot) == 12);
    CHECK(torsig_classical_signature(knot, &v) == TORSIG_STATUS_OK && v == 28);
    CHECK(torsig_max_signature(knot, &v) == TORSIG_STATUS_OK && v == 30);
    CHECK(torsig_max_cyclic_sum(knot, &v) == TORSIG_STATUS_OK && v == 1);
    CHECK(torsig_g4_lower_bound(knot, &v) == TORSIG_STATUS_OK && v == 15);

    int8_t seq[8];
    size_t len = 0;
    CHECK(torsig_balanced_sequence(knot, seq, 8, &len) == TORSIG_STATUS_OK);
    CHECK(len == 4 && seq[0] == 1 && seq[1] == -1 && seq[2] == 1 && seq[3] == -1);
    torsig_knot_free(knot);

    CHECK(torsig_knot_new(4, 7, &knot) == TORSIG_STATUS_OK);
    CHECK(torsig_lt_signature(knot, 1, 4, &v) == TORSIG_STATUS_OK && v == 10);
    CHECK(torsig_lt_signature(knot, 5, 4, &v) == TORSIG_STATUS_OUT_OF_RANGE);
    CHECK(torsig_lt_signature_str(knot, "0.25", &v) == TORSIG_STATUS_PARSE);

    TorsigStepFunction *sf = NULL;
    CHECK(torsig_step_function_new(knot, &sf) == TORSIG_STATUS_OK);
    CHECK(torsig_step_function_max(sf, &v) == TORSIG_STATUS_OK && v == 14);
    size_t n = torsig_step_function_len(sf);
    CHECK(n > 0);
    uint64_t num, den;
    CHECK(torsig_step_function_breakpoint(sf, 0, &num, &den, &v) == TORSIG_STATUS_OK);
    CHECK(num == 1 && den == 28);
    CHECK(torsig_step_function_interval_value(sf, n, &v) == TORSIG_STATUS_OK && v == 0);
    CHECK(torsig_step_function_interval_value(sf, n + 1, &v) == TORSIG_STATUS_OUT_OF_RANGE);
    torsig_step_function_free(sf);
    torsig_knot_free(knot);

    printf("ok %s\n", torsig_version());
    return 0;
}

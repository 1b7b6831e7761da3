#include <stdio.h>
#include <string.h>
#include "glink.h"

int main(void) {
    GlinkDiagram *d = NULL;
    if (glink_diagram_from_braid("strands=1;", &d) != GLINK_STATUS_OK) return 10;
    char *s = NULL;
    if (glink_invariant(d, 3, GLINK_GAUGE_GL, &s) != GLINK_STATUS_OK) return 11;
    int bad = strcmp(s, "q^2 + 1 + q^-2") != 0;
    printf("%s\n", s);
    glink_string_free(s);
    glink_diagram_free(d);
    if (bad) return 12;
    if (glink_diagram_from_braid("strands=0; s9", &d) != GLINK_STATUS_PARSE && glink_last_error() == NULL) return 13;
    return 0;
}

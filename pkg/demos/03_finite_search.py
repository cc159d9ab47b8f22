# Exhaustive checks on small carriers, and the finite product-of-quotients search.
#
# Run:  python demos/03_finite_search.py
# NBHD_LAB_THREADS=4 fans the search out over processes.

import json

from nbhd_lab.enumerate import (
    check_coreflection,
    check_final_lift_universal,
    check_initial_lift_universal,
    check_product_universal,
    search_product_quotient,
)

for report in (
    check_final_lift_universal(3, 2),
    check_initial_lift_universal(3, 2),
    check_product_universal(2),
    check_coreflection(2),
):
    print(f"{report.name:28s} violations={len(report.counterexamples)} counts={report.counts}")

# On carriers of at most two points every product of quotient maps stays
# quotient, under both product conventions.
for mode in ("cylinder", "box"):
    r = search_product_quotient(2, 2, mode)
    print(json.dumps({"mode": mode, "certified_none": r.certified_none, **r.counts}))

# The map R x Q -> R/Z x Q that collapses the integers, checked exactly.
#
# Run:  python demos/04_counterexample.py

from fractions import Fraction as F

from nbhd_lab.continuum import (
    INTEGER_CLASS,
    BoxSpec,
    EpsFamily,
    PaperConfig,
    PointRQ,
    decide_box_containment,
    membership_Aq,
    membership_Bq,
    membership_PhiAq,
    run_paper_verification,
    witness_product_side,
)

q = F(0)

# A_q is a row of boxes around the integers whose heights 1/(1+|z|) shrink.
for p in [PointRQ(F(0), F(9, 10)), PointRQ(F(3), F(1, 5)), PointRQ(F(3), F(1, 3)), PointRQ(F(5, 2), F(0))]:
    print(f"({p.x}, {p.r}): in A_q {membership_Aq(q, p)}, in B_q {membership_Bq(q, p)}")

# The collapsed class [0] sees every z at once: its slice of the image is |r - q| < 1.
print("([0], 1/2) in image:", membership_PhiAq(q, INTEGER_CLASS, F(1, 2)))

# Quotient side: around each (z, q) a box of height 1/(1+|z|) fits inside A_q + B_q ...
for z in (0, 1, 10, 1000):
    print(f"z={z}: box of height 1/{1 + z} contained:", bool(decide_box_containment(q, z, F(1, 2), F(1, 1 + z))))
# ... but nothing taller does.
d = decide_box_containment(q, 2, F(1, 2), F(1, 2))
print("z=2, height 1/2:", bool(d), "witness", d.witness)

# Product side: every box around ([0], q) leaks out of the image, however thin.
for delta in (F(1), F(1, 10), F(1, 1000)):
    c, r = witness_product_side(q, BoxSpec(EpsFamily(F(1, 100)), delta))
    print(f"delta={delta}: witness ({c.x}, {r}) outside the image")

report = run_paper_verification(PaperConfig(samples=20_000))
for chk in report.checks:
    print(chk.name, "pass" if chk.passed else "FAIL", chk.details)
print("overall:", report.to_dict()["overall"])

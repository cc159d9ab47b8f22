# Initial lifts (products), final lifts (quotients), and the quotient test.
#
# Run:  python demos/02_lifts_and_quotients.py

from nbhd_lab import (
    BOX,
    CYLINDER,
    Carrier,
    NbdStructure,
    SpaceMap,
    is_continuous,
    is_quotient_map,
    product_space,
    quotient_structure,
    structure_leq,
    upward_closure,
)

X, Y = Carrier("abc"), Carrier("uv")
f = SpaceMap(X, Y, {"a": "u", "b": "u", "c": "v"})

# Quotient of the discrete space by collapsing a and b.
disc = NbdStructure.discrete(X)
q = quotient_structure(f, disc)
print("quotient structure:", q)
print("f continuous into it:", is_continuous(f, disc, q))
print("f quotient onto it:  ", is_quotient_map(f, disc, q))
print("f quotient onto indiscrete:", is_quotient_map(f, disc, NbdStructure.indiscrete(Y)))

# A coarser domain: two lines through a, and c only sees {b,c}.
nu = NbdStructure(X, {
    "a": upward_closure(X, [{"a", "b"}, {"a", "c"}]),
    "b": upward_closure(X, [{"b"}]),
    "c": upward_closure(X, [{"b", "c"}]),
})
print("quotient of the coarser domain:", quotient_structure(f, nu))

# Products: cylinders give the categorical product, boxes a finer structure.
A, B = Carrier("ab"), Carrier("uv")
d1, d2 = NbdStructure.discrete(A), NbdStructure.discrete(B)
cyl, box = product_space(d1, d2, CYLINDER), product_space(d1, d2, BOX)
print("cylinder stack at (a,u):", cyl(("a", "u")).text())
print("box stack at (a,u):     ", box(("a", "u")).text())
print("cylinder <= box:", structure_leq(cyl, box), "| equal:", cyl == box)

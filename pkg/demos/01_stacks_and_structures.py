# p-stacks and neighborhood structures on a three-point set.
#
# Run:  python demos/01_stacks_and_structures.py

from nbhd_lab import (
    Carrier,
    NbdStructure,
    is_nbd_stack,
    is_pretopological,
    pretop_modification,
    refines,
    satisfies_pip,
    structure_join,
    structure_leq,
    structure_meet,
    upward_closure,
)
from nbhd_lab.enumerate import enumerate_nbd_stacks, enumerate_structures

X = Carrier("abc")

# A stack is stored as its minimal sets; membership means "contains one of them".
s = upward_closure(X, [{"a", "b"}, {"a", "c"}])
print("stack:", s.text())
print("  contains {a,b,c}?", {"a", "b", "c"} in s)
print("  contains {a}?    ", {"a"} in s)
print("  pairwise intersecting:", satisfies_pip(s), "| neighborhood stack at a:", is_nbd_stack(s, "a"))

# Two lines through a: a p-stack that is not a filter, since {a,b} & {a,c} = {a} is missing.
principal = upward_closure(X, [{"a"}])
print("principal at a refines it:", refines(principal, s))

# Every neighborhood stack at one point of a 3-point set.
for st in enumerate_nbd_stacks(X, "a"):
    print("  ", st.text())
print("structures on X:", len(enumerate_structures(X)))

# The lattice of structures: discrete on top, indiscrete at the bottom.
nu = NbdStructure(X, {"a": s, "b": upward_closure(X, [{"b"}]), "c": upward_closure(X, [{"a", "b", "c"}])})
top, bot = NbdStructure.discrete(X), NbdStructure.indiscrete(X)
print("bot <= nu <= top:", structure_leq(bot, nu), structure_leq(nu, top))
print("meet with top:", structure_meet([nu, top]) == nu, "| join with bot:", structure_join([nu, bot]) == nu)

# The pretopological modification closes each stack under intersection.
print("pretopological?", is_pretopological(nu))
print("modified:", pretop_modification(nu))

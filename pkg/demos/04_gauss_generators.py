"""Gauss decomposition of T(u) and generators of twisted Yangians of sp2.

Run: python3 demos/04_gauss_generators.py
"""
from twyang import drinfeld as dr
from twyang.polyrat import U
from twyang.reps import SP2, rep_for

t = rep_for(SP2, 2)
g = dr.gauss_decompose(t.value(U), 8)
print("f^(0) =")
print(g.coef("f", 0).pretty())
rep = dr.check_gauss_relations(g, 4)
print("Gauss relations up to u^-4:", "all pass" if rep.ok else "FAIL")

for fn in ("phi_generators", "phi_plus_generators", "phi_minus_generators"):
    rep = getattr(dr, fn)(t, 4).report
    print("%-22s %3d checks  %s" % (fn, len(rep), "pass" if rep.ok else "FAIL"))

# the alternative G(h) image breaks the relations
rep = dr.phi_minus_generators(t, 4, literal_gh=True).report
print()
print("alternative G(h): failing checks")
for c in rep.failures:
    print("   ", c.case_id)

a, b = rep_for(SP2, 1, start=1), rep_for(SP2, 1, start=2)
print()
print(dr.check_coproduct(a, b, 3).summary())

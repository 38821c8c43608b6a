"""Low-rank coincidences: Y(2) -> X(sp2), X(so3) and Y(2) (x) Y(2) -> X(so4).

Run: python3 demos/03_isomorphisms.py
"""
from twyang import isomaps
from twyang.polyrat import U
from twyang.reps import Y2, qdet2, rep_for, z_series_scalar
from twyang.tensorops import chain_scalar

t = rep_for(Y2, 1)
for name in ("psi1", "psi2_hat"):
    T, rep = getattr(isomaps, name)(t)
    print("%s: %d checks, %s" % (name, len(rep), "all pass" if rep.ok else "FAILURES"))
    for c in rep:
        print("   ", c.status, c.case_id)

T, _ = isomaps.psi1(t)
print()
print("z(u) of the transported rep:", z_series_scalar(T))
print("qdet T(u/2 + 1)           :", chain_scalar(qdet2(t, U / 2 + 1)))

tA, tB = rep_for(Y2, 1, start=1), rep_for(Y2, 1, start=2)
print()
for which in ("DIII", "D0", "DI"):
    rep = isomaps.so4_embeddings(tA, tB, which, 4)
    print("so4 %-4s embedding: %2d checks, %s" % (which, len(rep), "pass" if rep.ok else "FAIL"))

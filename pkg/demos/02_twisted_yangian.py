"""S(u) = T(u - kappa/2) K T(-u + kappa/2)^t on a two-site sp2 representation.

Run: python3 demos/02_twisted_yangian.py
"""
from twyang.polyrat import U
from twyang.reps import SP2, check_rtt, rep_for
from twyang.rkmat import PairType
from twyang.twistgen import build_s, check_reflection_eq, check_symmetry, z_w_qdet_sdet

t = rep_for(SP2, 2)                 # evaluation reps at symbolic points a1, a2
print("T(u) on", t.legs, "points", [str(p) for p in t.points])
print(check_rtt(t).summary())

for pair in ("CI:1", "C0:2"):
    pt = PairType.parse(pair)
    S = build_s(t, pt)
    print()
    print("%s  K =" % pair)
    print(pt.K(U).pretty())
    print("reflection equation:", "holds" if check_reflection_eq(S).ok else "FAILS")
    print("symmetry relation  :", "holds" if check_symmetry(S).ok else "FAILS")
    vals, rep = z_w_qdet_sdet(S)
    print("S(u)S(-u) = w(u) I, w even:", "yes" if rep.ok else "no")

# on one site w(u) is short enough to read
vals, _ = z_w_qdet_sdet(build_s(rep_for(SP2, 1), "CI:1"))
print()
print("one site, CI:1: w(u) =", vals["w"])

# flipping the sign in the symmetry relation is detected
bad = check_symmetry(build_s(t, "CI:1"), paren=1)
print()
print("CI:1 with the wrong symmetry sign:", "fails" if not bad.ok else "passes (unexpected)")
print("  witness:", bad.failures[0].witness[:100])

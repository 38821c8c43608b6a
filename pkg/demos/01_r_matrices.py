"""R-matrices of gl_N and of so_N / sp_N, and the Yang-Baxter equation.

Run: python3 demos/01_r_matrices.py
"""
from twyang.polyrat import U
from twyang.rkmat import ALGEBRAS, Algebra, check_qybe, rv_matrix, rv_matrix_and_factorizations

print("kind-b R for sp2 at u (labels -1, 1):")
print(Algebra.parse("sp2").R(U).pretty())
print()

for name in ALGEBRAS:
    rep = check_qybe(name)
    alg = Algebra.parse(name)
    print("%-4s kappa=%-4s YBE %s" % (name, alg.kappa, "holds" if rep.ok else "FAILS"))

# so3 sits inside C2 (x) C2; its R-matrix is a product of four gl2 R-matrices
print()
print("R_V(u) on the three-dimensional summand:")
print(rv_matrix(U).pretty())
print(rv_matrix_and_factorizations().summary())

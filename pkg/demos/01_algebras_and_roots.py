"""
Lie superalgebras and their roots
=================================

Build gl(2|1) from elementary matrices, check the super Jacobi identity,
then split it into root spaces for the diagonal Cartan subalgebra.
"""

from chevsuper import analyze, build
from chevsuper.liesuper import verify_jacobi

g = build("gl", 2, 1)
print(g.name, "has superdimension", g.super_dim())

# every basis triple, exact rationals, no tolerance
print("Jacobi holds:", verify_jacobi(g).passed)

rd = analyze(g)
for r in rd.roots:
    sign = "+" if rd.is_positive(r) else "-"
    print(f"  {sign} {r.label():>14}  sigma={rd.sigma(r):+d}")

# one odd root per odd basis vector: this count N drives the rest of the package
print("N =", len(rd.odd_roots), "and dim g1 =", len(g.odd_indices()))

# sl(2|2) has a centre and is deliberately refused
try:
    build("sl", 2, 2)
except ValueError as exc:
    print("sl(2|2):", exc)

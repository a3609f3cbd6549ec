"""
Chevalley bases
===============

Propose a Chevalley basis, verify the four axioms exactly, and watch the
verifier catch a damaged basis.
"""

from chevsuper import analyze, build, propose_basis, structure_constants, verify_chevalley
from chevsuper.chevalley import chevalley_superalgebra

for family, m, n in [("gl", 2, 1), ("sl", 3, 1), ("osp", 1, 2), ("osp", 2, 2)]:
    g = build(family, m, n)
    basis = propose_basis(g, analyze(g))
    rep = verify_chevalley(basis)
    table = structure_constants(basis)
    biggest = max(abs(c) for c in table.c.values())
    closed = chevalley_superalgebra(basis).closed
    print(f"{g.name:>10}: axioms pass={rep.passed}  max|c|={biggest}  closed over Z={closed}")

# double one root vector of gl(2|1); the report names the culprit
g = build("gl", 2, 1)
rd = analyze(g)
basis = propose_basis(g, rd)
alpha = rd.roots[0]
broken = basis.with_root_vector(alpha, [2 * x for x in basis.X(alpha)])
rep = verify_chevalley(broken)
print("\nafter doubling X" + alpha.label(), "->", rep.passed)
for f in rep.failures[:3]:
    print("  ", f)

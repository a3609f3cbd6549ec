"""
Supergroup points over a Grassmann algebra
==========================================

Words in the one-parameter generators are evaluated on the induced
gl(2|1) module with parameters in the Grassmann algebra on four generators.
Each point then factors uniquely as an even point times an ordered product
of odd one-parameter elements.
"""

import time

from chevsuper import analyze, build, induce, natural_even_module, propose_basis
from chevsuper.superarith import Grassmann
from chevsuper.supergroup import (
    almost_split_decompose,
    even_projection,
    evaluate_word,
    factor_point,
    random_word,
    recompose,
    x_odd,
)

g = build("gl", 2, 1)
rd = analyze(g)
V = induce(g, propose_basis(g, rd), natural_even_module(g))
q = 4

# two odd elements in the wrong order pick up an even correction term
# proportional to θ1θ2 times the bracket of their root vectors
t1, t2 = Grassmann.generator(q, 1), Grassmann.generator(q, 2)
o = V.order
print("odd order:", [r.label() for r in o])
point = x_odd(V, o[2], t1) @ x_odd(V, o[0], t2)
fp = factor_point(point, V)
print("coordinates:", [repr(t) for t in fp.theta])
print("even part is the identity:", fp.g0.is_identity())
print("monomials in the even part:", fp.g0.nonzero_masks())

t0 = time.perf_counter()
agree = 0
for seed in range(20):
    w = random_word(rd, q, 8, seed)
    G = evaluate_word(w, V)
    fp = factor_point(G, V)
    agree += recompose(fp, V) == G and factor_point(recompose(fp, V), V) == fp
    assert G.body() == even_projection(w, V)
    assert almost_split_decompose(G).projection_consistent
print(f"{agree}/20 random words factor and recompose exactly ({time.perf_counter() - t0:.1f}s)")

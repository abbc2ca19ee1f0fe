"""Two routes to the same number for the one-vertex quiver.

The left side sums fixed points on both sides of the wall. The right side
expands the wall-crossing formula with the gamma series read off from the
sharpened quiver. They are computed by unrelated code paths.
"""

from wallcross import adjoint_experiment, to_text
from wallcross.localization import single_vertex_gamma

g = single_vertex_gamma(4)
print("gamma:", [to_text(g[d]) for d in range(5)])

for r in range(1, 4):
    for a0 in range(0, r + 1):
        res = adjoint_experiment(r, a0)
        print(f"r={r} alpha0={a0}  lhs={to_text(res.lhs):8s} rhs={to_text(res.rhs):8s} {res.equal}")

"""Picking stability parameters on both sides of a wall."""

from wallcross import EnhancedDim, StabilityParam, Wall, builders, find_parameters
from wallcross.stability import wall_crossing_context

# one vertex, dimension 2, wall at beta = 1
flag = EnhancedDim.full({"0": 2}, "0")
choice = find_parameters(Wall({"0": 1}), 1, flag, StabilityParam({"0": 0}))
print("zeta+ :", choice.zeta_plus)
print("zeta- :", choice.zeta_minus)
print("eta   :", [str(e) for e in choice.eta])
tp, tm = choice.integral_thetas()
print("theta+:", tp.as_dict("0"))
print("theta-:", tm.as_dict("0"))
print("D     :", choice.D * choice.scale)

# the blow-up quiver with a two-vertex wall; the context fills in theta and D
ctx = wall_crossing_context(builders.blowup(2), {"0": 2, "1": 1}, {"0": 1, "1": 0})
print()
print("beta_bar:", ctx.beta_bar)
print("theta+  :", ctx.theta_plus)
print("theta-  :", ctx.theta_minus)
print("D       :", ctx.D)

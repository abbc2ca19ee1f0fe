"""Residues at infinity and fixed-point sums on Grassmannians and flags."""

from math import comb

from wallcross import (THETA, ab_integrate, flag_model, grassmannian_model, parse,
                       residue_at_infinity, to_text)

# a simple pole at v = a has residue 1 at infinity
f = parse("1/(v - a)")
print("Res 1/(v-a)      =", to_text(residue_at_infinity(f, "v")))

# two poles: the answer is the sum of the finite residues
g = parse("v^2/((v - a)*(v - b)*(v - c))")
print("Res v^2/(...)    =", to_text(residue_at_infinity(g, "v")))

# polynomials carry no residue at infinity
print("Res v^3 + v      =", to_text(residue_at_infinity(parse("v^3 + v"), "v")))

# Euler characteristic of Gr(k, n) from the theta-twisted tangent class
for n in range(1, 5):
    row = [to_text(ab_integrate(grassmannian_model(k, n), "tangent")) for k in range(n + 1)]
    print(f"n={n}", row, [comb(n, k) for k in range(n + 1)])

# the full flag variety of C^3 has six fixed points
model = flag_model((1, 2), 3)
print("points on Fl(1,2;3):", len(model.points))
print("chi(Fl(1,2;3))     :", to_text(ab_integrate(model, "tangent")))

# each fixed point contributes a rational function, but the sum has no poles
value = ab_integrate(grassmannian_model(1, 3), "tangent + taut*")
print("Gr(1,3), T + S*    :", to_text(value))
print("denominator        :", to_text(value.denominator))
print("theta appears      :", THETA in value.variables())

"""Decomposition data and the coefficients they contribute across a wall."""

from wallcross import (BETA_BAR, GammaSeries, Polynomial, WallData, all_dec_sets, dec_sets,
                       grouped_by_k, iterate_recursion, to_text, wall_cross_terms)

# sets of {1,2,3} split into two ordered blocks of size 1 with decreasing minima
for datum in dec_sets(3, 1, 2):
    print(datum, "left over:", datum.infinity)

print("all data for alpha0=4, beta0=1:", len(all_dec_sets(4, 1)))
print("all data for alpha0=6, beta0=2:", len(all_dec_sets(6, 2)))

# coefficients with a free gamma series g1, g2, ... and symbolic beta_bar
data = WallData(3, 1, Polynomial.var(BETA_BAR))
terms = wall_cross_terms(data, GammaSeries.symbolic())
for t in terms:
    print(f"{str(t.datum):24s} k={t.k}  {to_text(t.coefficient)}")

print()
for k, c in grouped_by_k(terms).items():
    print(f"k={k}: {to_text(c)}")

# stepping through the recursion one block at a time lands on the same numbers
stepped = iterate_recursion(data, GammaSeries.symbolic())
print("recursion agrees:", stepped == {t.datum: t.coefficient for t in terms})

# with the handsaw series the coefficients become polynomials in theta and eps
for t in wall_cross_terms(WallData(2, 1, 2), GammaSeries.handsaw()):
    print(t.datum, to_text(t.coefficient))

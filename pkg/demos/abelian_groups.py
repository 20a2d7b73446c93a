"""Finite abelian groups acting diagonally, and the valuation obstruction.

Run: python3 demos/abelian_groups.py
"""
from edval import AbelianGroupSpec, abelian_obstruction_check, ed_abelian, parse_laurent

for moduli in ([2, 4], [6, 10, 15], [4, 8, 8], [7]):
    g = AbelianGroupSpec.from_moduli(moduli)
    print(f"Z/{' x Z/'.join(map(str, moduli))}: invariant factors {g.invariant_factors}, ed = {ed_abelian(moduli)}")

# an equivariant self-map of the (Z/2)^2 representation; its valuation
# matrix is the identity mod 2, so the image cannot collapse
names = "x1,x2"
fs = [parse_laurent("x1 + x1^3*x2^2", names), parse_laurent("x2 + x1^2*x2", names)]
rep = abelian_obstruction_check([2, 2], fs, 2)
print("equivariant:", rep.equivariant)
print("valuation matrix:")
print(rep.valuation_matrix)
print("identity mod 2:", rep.identity_mod_p, " rank mod 2:", rep.rank_mod_p, " rank:", rep.rank)

# a map that breaks equivariance is reported term by term
bad = [parse_laurent("x1^2", names), parse_laurent("x2", names)]
print("violations:", abelian_obstruction_check([2, 2], bad, 2).violations)

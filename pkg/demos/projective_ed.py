"""Projective orbits: append a column of ones and read off the divisors.

Run: python3 demos/projective_ed.py
"""
from edval import ed_hypersurface, ed_projective, ed_torus, elementary_divisors, extend_projective

for e in ([[2], [3]], [[-2], [3]], [[4], [6]]):
    ext = extend_projective(e)
    print(f"E = {e}: extended {ext.tolist()}, divisors {elementary_divisors(ext)},"
          f" ed = {ed_projective(e)} (affine ed {ed_torus(e)})")

print("rigid hypersurfaces of degree d in P^(m-1)")
for m in range(1, 6):
    print(f"m = {m}:", [ed_hypersurface(m, d) for d in range(1, 5)])

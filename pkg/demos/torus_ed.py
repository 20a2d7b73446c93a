"""Essential dimension of torus-orbit functors from their exponent matrix.

Run: python3 demos/torus_ed.py
"""
from edval import cd_torus, ed_forms, ed_torus, elementary_divisors, forms_matrix

# weights (4, 6) of G_m on the coefficients of y^2 = x^3 + a x + b
e = [[4], [6]]
print("elliptic curves: divisors", elementary_divisors(e), " ed =", ed_torus(e), " cd =", cd_torus(e))

# binary quadratic forms up to diagonal scaling
print("forms(2, 2) matrix:")
print(forms_matrix(2, 2))

print(" m | ed of rigid quadratic forms")
for m in range(1, 7):
    print(f"{m:2d} | {ed_forms(m, 2)}")

print("degree table, m down, d across")
print("   " + " ".join(f"{d:4d}" for d in range(1, 5)))
for m in range(1, 6):
    print(f"{m:2d} " + " ".join(f"{ed_forms(m, d):4d}" for d in range(1, 5)))

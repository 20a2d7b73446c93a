"""Smith normal form of a small integer matrix, and what the divisors say.

Run: python3 demos/smith_form.py
"""
from edval import IntMatrix, det, rank_mod, rank_rational, smith_normal_form

a = IntMatrix([[6, 4, 2], [3, 9, 12], [1, 1, 1]])
s = smith_normal_form(a)

print("A =")
print(a)
print("P =")
print(s.p)
print("Q =")
print(s.q)
print("P A Q =")
print(s.p @ a @ s.q)
print("divisors:", s.divisors)

# P and Q are unimodular, so |det A| is the product of the divisors
prod = 1
for d in s.divisors:
    prod *= d
print("|det A| =", abs(det(a)), "product of divisors =", prod)

# rank mod m drops exactly where m starts dividing the running products
for m in (2, 3, 5, 7):
    print(f"rank over Q = {rank_rational(a)}, rank mod {m} = {rank_mod(a, m)}")

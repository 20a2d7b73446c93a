"""Lex-min monomial valuations on Laurent polynomials.

Run: python3 demos/valuations.py
"""
from edval import (
    RationalFunction,
    initial_exponent,
    parse_laurent,
    shift_center,
    uniformizer_change_matrix,
    valuation,
    valuation_in_parameters,
    valuation_matrix,
)

V = "x1,x2"
f = parse_laurent("x1^2*x2^-1 + 5*x1^3", V)
g = parse_laurent("x2 - 1/2*x1*x2^3", V)
print("f =", f, "   v(f) =", valuation(f), "   initial =", initial_exponent(f))
print("g =", g, "   v(g) =", valuation(g))
print("v(f g) =", valuation(f * g), "(sum of the two)")
print("v(f / g) =", valuation(RationalFunction(f, g)))

# valuation at a point other than the origin: recenter first
h = parse_laurent("x1^2 - 2*x1 + 1 + x2", V)
print("h centered at (1, 0):", shift_center(h, [1, 0]), "  value", valuation(shift_center(h, [1, 0])))

# switching to parameters t = x^C with C unit upper triangular
c = [[1, 2], [0, 1]]
a = uniformizer_change_matrix(c)
print("C =", c, " A =", a.tolist())
print("value of f in the new parameters:", valuation_in_parameters(f, c), "= v(f) A")

print("valuation matrix of (f, g):")
print(valuation_matrix([f, g]))

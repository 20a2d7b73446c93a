"""Independence certificates: monomial combinations with a diagonal valuation block.

Run: python3 demos/certificates.py
"""
from edval import construct_independent, parse_laurent, valuation_matrix

names = "x1,x2,x3"
fs = [
    parse_laurent("x1*x2 + x3^4", names),
    parse_laurent("x1^2*x2^3", names),
    parse_laurent("x1^3*x2^4 - x2^7", names),
    parse_laurent("x2*x3^-1 + x2^2", names),
]
v = valuation_matrix(fs)
print("valuation matrix:")
print(v)

cert = construct_independent(v)
print("rank", cert.size, " rows used", cert.row_select, " pivot columns", cert.col_select)
print("lambda =", cert.lam)
print("Lambda =")
print(cert.lambda_mat)
print("valuations of g = f^Lambda:")
print(cert.g_exponents)

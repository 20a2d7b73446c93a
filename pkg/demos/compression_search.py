"""Search small exponent grids for the best monomial compression.

The search minimises rank(I + E U) over integer U with entries in
[-bound, bound]; the minimum matches the closed form n - #(divisors equal to 1).

Run: python3 demos/compression_search.py
"""
import time

from edval import compression_search, ed_torus, forms_matrix

cases = {
    "elliptic": [[4], [6]],
    "forms(2,2)": forms_matrix(2, 2),
    "identity(3)": [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
    "[[2,2],[2,2]]": [[2, 2], [2, 2]],
}
for name, e in cases.items():
    t = time.perf_counter()
    w = compression_search(e, 6)
    dt = time.perf_counter() - t
    print(f"{name:14s} min rank {w.achieved_rank}  closed form {ed_torus(e)}  nodes {w.nodes:6d}  {dt:.3f}s")
    print("  witness U =", w.u.tolist())

# brute force agrees where it is cheap
w = compression_search([[2, 2], [2, 2]], 3, exhaustive=True)
print("exhaustive [[2,2],[2,2]] at bound 3:", w.achieved_rank, "after", w.nodes, "grid points")

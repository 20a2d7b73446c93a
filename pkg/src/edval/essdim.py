"""Essential dimension of torus orbits, rigid forms and finite abelian groups.

A torus ``T = G_m^m`` acting on ``A^n`` through characters is described by an
integer ``n x m`` exponent matrix ``E`` (row ``i`` lists the exponents of
``chi_i``).  The essential dimension of the orbit functor is ``n - l`` where
``l`` is the number of unit elementary divisors of ``E``.  Everything in this
module reduces to that count, except :func:`compression_search`, which
computes the same number the long way round and is used as an oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .intmat import (
    IntMatrix,
    ShapeError,
    as_intmatrix,
    det,
    elementary_divisors,
    left_kernel_basis,
    rank_mod,
    rank_rational,
    smith_normal_form,
)
from .laurent import LaurentPoly, valuation_matrix


# ---------------------------------------------------------------------------
# specs


@dataclass(frozen=True)
class TorusActionSpec:
    """Diagonal torus action on ``A^n`` given by its exponent matrix."""

    e: IntMatrix

    def __post_init__(self):
        object.__setattr__(self, "e", as_intmatrix(self.e))

    @property
    def n(self) -> int:
        return self.e.rows

    @property
    def m(self) -> int:
        return self.e.cols


def _spec(spec) -> TorusActionSpec:
    return spec if isinstance(spec, TorusActionSpec) else TorusActionSpec(as_intmatrix(spec))


@dataclass(frozen=True)
class FormsSpec:
    """Degree ``d`` forms on an ``m``-dimensional space with fixed coordinate lines."""

    m: int
    d: int

    def __post_init__(self):
        if self.m < 1 or self.d < 1:
            raise ValueError(f"need m >= 1 and d >= 1, got m={self.m}, d={self.d}")

    @property
    def n_coeffs(self) -> int:
        return math.comb(self.m + self.d - 1, self.d)


@dataclass(frozen=True)
class AbelianGroupSpec:
    """``Z/moduli[0] x Z/moduli[1] x ...`` with its invariant factors."""

    moduli: tuple[int, ...]
    invariant_factors: tuple[int, ...]

    @classmethod
    def from_moduli(cls, moduli: Sequence[int]) -> AbelianGroupSpec:
        moduli = tuple(int(x) for x in moduli)
        bad = [x for x in moduli if x <= 0]
        if bad:
            raise ValueError(f"moduli must be >= 1 for a finite group, got {bad[0]}")
        divs = elementary_divisors(IntMatrix.diag(moduli))
        return cls(moduli, tuple(x for x in divs if x > 1))

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def order(self) -> int:
        return math.prod(self.moduli)


# ---------------------------------------------------------------------------
# closed formulas


def ed_torus(spec) -> int:
    """``n`` minus the number of unit elementary divisors of ``E``.

    >>> ed_torus([[4], [6]])   # elliptic curves y^2 = x^3 + a x + b
    2
    """
    spec = _spec(spec)
    return spec.n - smith_normal_form(spec.e).ones_count


def extend_projective(e) -> IntMatrix:
    """Append a column of ones (the scaling action on projective space)."""
    e = as_intmatrix(e)
    return e.hstack(IntMatrix([[1] for _ in range(e.rows)], cols=1))


def ed_projective(spec) -> int:
    spec = _spec(spec)
    if spec.n < 1:
        raise ValueError("projective action needs at least one coordinate")
    return ed_torus(extend_projective(spec.e))


def cd_torus(spec) -> int:
    """Canonical dimension ``r - l``: the rank of the kernel of the action."""
    snf = smith_normal_form(_spec(spec).e)
    return snf.rank - snf.ones_count


def _compositions(d: int, m: int):
    if m == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _compositions(d - first, m - 1):
            yield (first,) + rest


def forms_matrix(m: int, d: int) -> IntMatrix:
    """Exponent matrix of the torus acting on coefficients of degree-``d`` forms.

    Rows are the compositions of ``d`` into ``m`` parts in decreasing lex
    order, from ``(d, 0, ..., 0)`` down to ``(0, ..., 0, d)``.
    """
    FormsSpec(m, d)
    return IntMatrix(list(_compositions(d, m)), cols=m)


def ed_forms(m: int, d: int) -> int:
    return ed_torus(forms_matrix(m, d))


def ed_hypersurface(m: int, d: int) -> int:
    return ed_projective(forms_matrix(m, d))


def ed_abelian(moduli: Sequence[int]) -> int:
    """Rank of a finite abelian group given as a product of cyclic groups."""
    return AbelianGroupSpec.from_moduli(moduli).rank


def rank_lower_bound(spec, u) -> int:
    """``rank(I + E @ u)``, the valuation rank reached by parameters with values ``u``."""
    spec = _spec(spec)
    u = as_intmatrix(u)
    if u.shape != (spec.m, spec.n):
        raise ShapeError(f"u must be {spec.m}x{spec.n}, got {u.shape}")
    return rank_rational(IntMatrix.identity(spec.n) + spec.e @ u)


# ---------------------------------------------------------------------------
# search oracle


@dataclass(frozen=True)
class CompressionWitness:
    u: IntMatrix
    achieved_rank: int
    fs_exponents: IntMatrix
    nodes: int = 0
    exhaustive: bool = False


def _level_annihilators(e: IntMatrix) -> list[list[list[int]]]:
    # z[k] spans the annihilator of columns k.. of e; z[m] is the identity
    n, m = e.shape
    out = []
    for k in range(m):
        out.append(left_kernel_basis(e.submatrix(range(n), range(k, m))).tolist())
    out.append(IntMatrix.identity(n).tolist())
    return out


def _projected_rank(z: list[list[int]], cols: list[list[int]]) -> int:
    if not z or not cols:
        return 0
    rows = [[sum(a * b for a, b in zip(zr, c)) for c in cols] for zr in z]
    return rank_rational(rows)


def compression_search(spec, bound: int, *, exhaustive: bool = False) -> CompressionWitness:
    """Minimise ``rank(I + E @ U)`` over integer ``m x n`` matrices with ``|U| <= bound``.

    Taking ``t_j = x^(U[j])`` turns every ``f_i = x_i * chi_i(t)`` into a
    Laurent monomial with exponent matrix ``I + E U``, and the transcendence
    degree of monomials is the rank of their exponent matrix.  The witness
    returned is the lexicographically first ``U`` (row-major) among the
    minimisers.

    The default is a depth-first walk in that lex order which cuts a branch
    only when a proven lower bound on every completion is not below the best
    rank found so far.  Fixing rows ``0..k-1`` of ``U`` leaves the rest
    contributing only columns in ``W = span(E[:, k:])``, so the rank of
    ``I + E U`` modulo ``W`` bounds every completion from below; columns that
    are already complete in the current row can be reduced modulo the
    smaller ``span(E[:, k+1:])``.  ``exhaustive=True`` visits every grid
    point instead.
    """
    spec = _spec(spec)
    if bound < 0:
        raise ValueError("bound must be >= 0")
    e = spec.e
    n, m = e.shape
    ident = IntMatrix.identity(n)
    if m == 0 or n == 0:
        return CompressionWitness(IntMatrix.zeros(m, n), n, ident, nodes=1, exhaustive=True)

    values = range(-bound, bound + 1)
    ecols = [list(e.col(j)) for j in range(m)]

    if exhaustive:
        best_rank, best_u, count = n + 1, None, 0
        for flat in product(values, repeat=m * n):
            count += 1
            u = [flat[j * n:(j + 1) * n] for j in range(m)]
            mat = [[int(i == c) + sum(ecols[j][i] * u[j][c] for j in range(m)) for c in range(n)] for i in range(n)]
            r = rank_rational(mat)
            if r < best_rank:
                best_rank, best_u = r, u
        u = IntMatrix(best_u, cols=n)
        return CompressionWitness(u, best_rank, ident + e @ u, nodes=count, exhaustive=True)

    z = _level_annihilators(e)
    cols = [[int(i == c) for i in range(n)] for c in range(n)]  # columns of I + E U
    u = [[0] * n for _ in range(m)]
    state = {"best": n + 1, "witness": None, "nodes": 0}

    def lower_bound(idx: int) -> int:
        k, p = divmod(idx, n)
        if k == m:
            return rank_rational([[cols[c][i] for c in range(n)] for i in range(n)])
        b = _projected_rank(z[k], cols)
        if p:
            b = max(b, _projected_rank(z[k + 1], cols[:p]))
        return b

    def visit(idx: int):
        state["nodes"] += 1
        b = lower_bound(idx)
        if b >= state["best"]:
            return
        if idx == m * n:
            state["best"] = b
            state["witness"] = [row[:] for row in u]
            return
        k, c = divmod(idx, n)
        ek = ecols[k]
        col = cols[c]
        for v in values:
            u[k][c] = v
            for i in range(n):
                col[i] += v * ek[i]
            visit(idx + 1)
            for i in range(n):
                col[i] -= v * ek[i]
            if state["best"] == 0:
                break
        u[k][c] = 0

    visit(0)
    w = IntMatrix(state["witness"], cols=n)
    return CompressionWitness(w, state["best"], ident + e @ w, nodes=state["nodes"])


# ---------------------------------------------------------------------------
# independence certificates


@dataclass(frozen=True)
class IndependenceCertificate:
    """Monomials ``g_j = prod_i f_i^Lambda[j][i]`` with independent values.

    ``g_exponents = lambda_mat @ v``; on ``col_select`` it equals
    ``lam * I`` and row ``j`` vanishes left of ``col_select[j]``.
    """

    lam: int
    lambda_mat: IntMatrix
    row_select: tuple[int, ...]
    col_select: tuple[int, ...]
    g_exponents: IntMatrix

    @property
    def size(self) -> int:
        return len(self.row_select)


def _adjugate(a: IntMatrix) -> IntMatrix:
    s = a.rows
    if s == 1:
        return IntMatrix([[1]])
    out = [[0] * s for _ in range(s)]
    idx = range(s)
    for i in idx:
        for j in idx:
            minor = a.submatrix([r for r in idx if r != j], [c for c in idx if c != i])
            out[i][j] = (-1) ** (i + j) * det(minor)
    return IntMatrix(out, cols=s)


def construct_independent(v) -> IndependenceCertificate:
    """Build ``Lambda = (lam * Vt^-1 | 0)`` for a maximal nonsingular block ``Vt``.

    Rows are chosen greedily from the top, then pivot columns greedily from
    the left, so ``Lambda @ v`` restricted to the chosen rows is ``lam``
    times the reduced row echelon form.
    """
    v = as_intmatrix(v)
    if v.is_zero():
        raise ValueError("the zero matrix has no independent rows")
    rows: list[int] = []
    for i in range(v.rows):
        if rank_rational([v.row(r) for r in rows + [i]]) == len(rows) + 1:
            rows.append(i)
    s = len(rows)
    cols: list[int] = []
    for j in range(v.cols):
        sub = [[v[r, c] for c in cols + [j]] for r in rows]
        if rank_rational(sub) == len(cols) + 1:
            cols.append(j)
            if len(cols) == s:
                break
    vt = v.submatrix(rows, cols)
    dt = det(vt)
    lam = abs(dt)
    scaled_inv = _adjugate(vt) * (1 if dt > 0 else -1)   # lam * vt^-1
    lam_mat = [[0] * v.rows for _ in range(s)]
    for j in range(s):
        for t, r in enumerate(rows):
            lam_mat[j][r] = scaled_inv[j, t]
    lm = IntMatrix(lam_mat, cols=v.rows)
    return IndependenceCertificate(lam, lm, tuple(rows), tuple(cols), lm @ v)


# ---------------------------------------------------------------------------
# finite abelian groups


@dataclass(frozen=True)
class ObstructionReport:
    """Outcome of :func:`abelian_obstruction_check`.

    When the map is not equivariant, ``violations`` lists
    ``(j, exponent)`` pairs and the remaining fields are ``None``.
    """

    equivariant: bool
    violations: tuple = ()
    valuation_matrix: IntMatrix | None = None
    identity_mod_p: bool | None = None
    rank_mod_p: int | None = None
    rank: int | None = None
    details: dict = field(default_factory=dict)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % q for q in range(2, math.isqrt(p) + 1))


def abelian_obstruction_check(moduli: Sequence[int], map_polys: Sequence[LaurentPoly], p: int) -> ObstructionReport:
    """Check the valuation obstruction for a candidate compression.

    ``Z/d_1 x ... x Z/d_n`` acts on ``A^n`` by ``x_i -> zeta_i x_i``.  A
    polynomial map ``f`` commuting with that action needs every term of
    ``f_j`` to have ``e_j = 1`` and ``e_i = 0 (mod d_i)`` for ``i != j``.
    Reducing mod a prime ``p`` dividing every ``d_i`` the value matrix of
    ``f`` becomes the identity, so it has full rank and ``f`` cannot
    compress.

    The congruence for ``i != j`` is taken mod ``d_i``, the modulus of the
    coordinate actually being scaled; mod ``p`` this is the same condition
    either way.
    """
    moduli = [int(x) for x in moduli]
    n = len(moduli)
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    for d in moduli:
        if d < 1 or d % p:
            raise ValueError(f"p = {p} does not divide modulus {d}")
    if len(map_polys) != n:
        raise ShapeError(f"need {n} polynomials, got {len(map_polys)}")
    for j, f in enumerate(map_polys):
        if f.nvars != n:
            raise ShapeError(f"polynomial {j} uses {f.nvars} variables, expected {n}")
        if f.is_zero():
            raise ValueError(f"polynomial {j} is zero")
        if not f.is_polynomial():
            raise ValueError(f"polynomial {j} has negative exponents")

    violations = []
    for j, f in enumerate(map_polys):
        for e in f.exponents():
            ok = all((e[i] - (1 if i == j else 0)) % moduli[i] == 0 for i in range(n))
            if not ok:
                violations.append((j, e))
    if violations:
        return ObstructionReport(False, tuple(violations))

    vm = valuation_matrix(list(map_polys), nvars=n)
    ident = IntMatrix.identity(n)
    is_id = vm.reduce_mod(p) == ident
    return ObstructionReport(
        True,
        (),
        valuation_matrix=vm,
        identity_mod_p=is_id,
        rank_mod_p=rank_mod(vm, p),
        rank=rank_rational(vm),
    )


def valuation_rank(fs: Sequence[LaurentPoly]) -> int:
    """Rank of the value matrix: a lower bound on ``trdeg k(f_1, ..., f_r)``."""
    return rank_rational(valuation_matrix(fs))

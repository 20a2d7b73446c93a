"""Laurent polynomials over Q and the lexicographic monomial valuation.

On ``k(x1, ..., xn)`` the chain of coordinate subspaces
``{x1 = 0} > {x1 = x2 = 0} > ...`` with parameters ``x1, ..., xn`` gives a
valuation with values in ``Z^n`` ordered lexicographically.  For a Laurent
polynomial it is just the lex-smallest exponent among its terms.  Exponent
vectors are plain tuples of ints, whose built-in comparison is already the
lexicographic order.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Mapping, Sequence, Union

from .intmat import IntMatrix, ShapeError, as_intmatrix

ExponentVector = tuple  # tuple[int, ...]
Coefficient = Union[int, Fraction]


class ExpressionError(ValueError):
    """Syntax or name error in a Laurent expression.

    ``pos`` is the 0-based offset into the text, ``line``/``column`` are
    1-based.
    """

    def __init__(self, message: str, text: str, pos: int):
        before = text[:pos]
        self.pos = pos
        self.line = before.count("\n") + 1
        self.column = pos - (before.rfind("\n") + 1) + 1
        super().__init__(f"{message} at line {self.line}, column {self.column}")


class LaurentPoly:
    """Finite sum of ``c * x^e`` with ``c`` a nonzero rational, ``e`` in Z^n.

    Terms are kept sorted by exponent (lex increasing), so the first term
    carries the valuation and the last carries the initial exponent.
    """

    __slots__ = ("_n", "_terms", "_dict")

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], Coefficient] | None = None):
        if nvars < 0:
            raise ValueError("nvars must be >= 0")
        acc: dict[tuple, Fraction] = {}
        for exp, c in (terms or {}).items():
            key = tuple(operator.index(e) for e in exp)
            if len(key) != nvars:
                raise ShapeError(f"exponent {key} has length {len(key)}, expected {nvars}")
            acc[key] = acc.get(key, Fraction(0)) + Fraction(c)
        self._n = nvars
        self._terms = tuple(sorted((k, v) for k, v in acc.items() if v != 0))
        self._dict = dict(self._terms)

    @classmethod
    def _from_sorted(cls, nvars, items):
        obj = cls.__new__(cls)
        obj._n = nvars
        obj._terms = tuple(items)
        obj._dict = dict(obj._terms)
        return obj

    @classmethod
    def constant(cls, nvars: int, c: Coefficient = 1) -> LaurentPoly:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, exponent: Sequence[int], c: Coefficient = 1) -> LaurentPoly:
        return cls(len(exponent), {tuple(exponent): c})

    @classmethod
    def variable(cls, i: int, nvars: int) -> LaurentPoly:
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @property
    def nvars(self) -> int:
        return self._n

    @property
    def terms(self) -> dict[tuple, Fraction]:
        return dict(self._dict)

    def items(self):
        return self._terms

    def exponents(self) -> list[tuple]:
        return [e for e, _ in self._terms]

    def coefficient(self, exponent: Sequence[int]) -> Fraction:
        return self._dict.get(tuple(exponent), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_polynomial(self) -> bool:
        return all(x >= 0 for e, _ in self._terms for x in e)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(self._n, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._n == other._n and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self._n, self._terms))

    def _coerce(self, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            if other._n != self._n:
                raise ShapeError(f"variable counts differ: {self._n} vs {other._n}")
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(self._n, other)
        return NotImplemented

    def __add__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._dict)
        for e, c in other._terms:
            acc[e] = acc.get(e, 0) + c
        return LaurentPoly(self._n, acc)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._from_sorted(self._n, [(e, -c) for e, c in self._terms])

    def __sub__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> LaurentPoly:
        return (-self) + other

    def __mul__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: dict[tuple, Fraction] = {}
        for e, c in self._terms:
            for f, d in other._terms:
                k = tuple(x + y for x, y in zip(e, f))
                acc[k] = acc.get(k, 0) + c * d
        return LaurentPoly(self._n, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentPoly:
        k = operator.index(k)
        if k < 0:
            if not self.is_monomial():
                raise ValueError("negative powers only exist for monomials")
            (e, c), = self._terms
            return LaurentPoly(self._n, {tuple(k * x for x in e): c ** k})
        result = LaurentPoly.constant(self._n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverted_exponents(self) -> LaurentPoly:
        """``f(1/x1, ..., 1/xn)``."""
        return LaurentPoly(self._n, {tuple(-x for x in e): c for e, c in self._terms})

    def to_string(self, names: Sequence[str] | None = None) -> str:
        if names is None:
            names = default_names(self._n)
        if len(names) != self._n:
            raise ShapeError("wrong number of variable names")
        if not self._terms:
            return "0"
        parts = []
        for idx, (e, c) in enumerate(self._terms):
            factors = []
            for name, x in zip(names, e):
                if x == 1:
                    factors.append(name)
                elif x:
                    factors.append(f"{name}^{x}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = f"{mag}*" + "*".join(factors)
            if idx == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"LaurentPoly({self._n}, {self.to_string()!r})"


def default_names(n: int) -> list[str]:
    return [f"x{i + 1}" for i in range(n)]


@dataclass(frozen=True)
class RationalFunction:
    """Quotient of two Laurent polynomials in the same variables."""

    numerator: LaurentPoly
    denominator: LaurentPoly

    def __post_init__(self):
        if self.denominator.is_zero():
            raise ZeroDivisionError("denominator is the zero polynomial")
        if self.numerator.nvars != self.denominator.nvars:
            raise ShapeError("numerator and denominator use different variable counts")

    @property
    def nvars(self) -> int:
        return self.numerator.nvars


# ---------------------------------------------------------------------------
# parsing

def _tokenize(text: str):
    toks = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            toks.append(("num", text[i:j], i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(("ident", text[i:j], i))
            i = j
        elif ch in "+-*/^":
            toks.append((ch, ch, i))
            i += 1
        else:
            raise ExpressionError(f"unexpected character {ch!r}", text, i)
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, names: Sequence[str]):
        self.text = text
        self.index = {name: i for i, name in enumerate(names)}
        self.n = len(names)
        self.toks = _tokenize(text)
        self.k = 0

    def peek(self):
        return self.toks[self.k]

    def take(self, kind=None):
        tok = self.toks[self.k]
        if kind is not None and tok[0] != kind:
            want = {"num": "a number", "ident": "a variable", "end": "end of input"}.get(kind, repr(kind))
            got = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ExpressionError(f"expected {want}, found {got}", self.text, tok[2])
        self.k += 1
        return tok

    def sint(self) -> int:
        neg = False
        if self.peek()[0] == "-":
            self.take()
            neg = True
        v = int(self.take("num")[1])
        return -v if neg else v

    def poly(self) -> dict:
        acc: dict[tuple, Fraction] = {}
        sign = 1
        if self.peek()[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        while True:
            e, c = self.term()
            acc[e] = acc.get(e, 0) + sign * c
            kind = self.peek()[0]
            if kind in ("+", "-"):
                sign = -1 if self.take()[0] == "-" else 1
                continue
            self.take("end")
            return acc

    def term(self):
        exp = [0] * self.n
        coef = Fraction(1)
        kind = self.peek()[0]
        if kind in ("num", "-"):
            num = self.sint()
            den = 1
            if self.peek()[0] == "/":
                self.take()
                tok = self.take("num")
                den = int(tok[1])
                if den == 0:
                    raise ExpressionError("zero denominator", self.text, tok[2])
            coef = Fraction(num, den)
        else:
            self.factor(exp)
        while self.peek()[0] == "*":
            self.take()
            self.factor(exp)
        return tuple(exp), coef

    def factor(self, exp):
        tok = self.take("ident")
        if tok[1] not in self.index:
            raise ExpressionError(f"unknown variable {tok[1]!r}", self.text, tok[2])
        power = 1
        if self.peek()[0] == "^":
            self.take()
            power = self.sint()
        exp[self.index[tok[1]]] += power


def parse_laurent(text: str, vars: Sequence[str] | str) -> LaurentPoly:
    """Parse a Laurent polynomial in the named variables.

    ``vars`` is an ordered list of names or a comma-separated string; the
    exponent vector follows that order.

    >>> parse_laurent("x1^2*x2^-1 + 5*x1^3", "x1,x2").terms
    {(2, -1): Fraction(1, 1), (3, 0): Fraction(5, 1)}
    """
    names = parse_varlist(vars) if isinstance(vars, str) else _check_names(list(vars))
    if not text.strip():
        raise ExpressionError("empty expression", text, 0)
    return LaurentPoly(len(names), _Parser(text, names).poly())


def _check_names(names: list[str]) -> list[str]:
    if len(set(names)) != len(names):
        raise ValueError(f"duplicate variable names in {names}")
    for name in names:
        if not name or not (name[0].isalpha() or name[0] == "_") or not all(ch.isalnum() or ch == "_" for ch in name):
            raise ValueError(f"invalid variable name {name!r}")
    return names


def parse_varlist(spec: str) -> list[str]:
    """Split ``"x1, x2"`` into names, rejecting duplicates and non-identifiers."""
    return _check_names([s.strip() for s in spec.split(",") if s.strip()])


# ---------------------------------------------------------------------------
# valuations


def valuation(f: LaurentPoly) -> ExponentVector:
    """Lex-smallest exponent of ``f``.  The zero polynomial has no value."""
    if isinstance(f, RationalFunction):
        return valuation_rat(f)
    if f.is_zero():
        raise ValueError("valuation of the zero polynomial is undefined")
    return f.items()[0][0]


def initial_exponent(f: LaurentPoly) -> ExponentVector:
    """Lex-largest exponent, i.e. ``-valuation(f(1/x))``."""
    if f.is_zero():
        raise ValueError("initial exponent of the zero polynomial is undefined")
    return f.items()[-1][0]


def valuation_rat(r: RationalFunction) -> ExponentVector:
    if r.numerator.is_zero():
        raise ValueError("valuation of the zero function is undefined")
    a = valuation(r.numerator)
    b = valuation(r.denominator)
    return tuple(x - y for x, y in zip(a, b))


def valuation_matrix(fs: Sequence[LaurentPoly | RationalFunction], nvars: int | None = None) -> IntMatrix:
    """Stack the values of ``fs`` as rows."""
    rows = [valuation(f) for f in fs]
    if nvars is None:
        nvars = fs[0].nvars if fs else 0
    return IntMatrix(rows, cols=nvars)


# ---------------------------------------------------------------------------
# substitutions


def substitute_monomials(f: LaurentPoly, images: Sequence[LaurentPoly]) -> LaurentPoly:
    """Replace ``x_j`` by the monomial ``images[j]`` everywhere in ``f``."""
    if len(images) != f.nvars:
        raise ShapeError(f"need {f.nvars} images, got {len(images)}")
    if any(not g.is_monomial() for g in images):
        raise ValueError("every image must be a single nonzero term")
    target = images[0].nvars if images else 0
    if any(g.nvars != target for g in images):
        raise ShapeError("images use different variable counts")
    imgs = [g.items()[0] for g in images]
    acc: dict[tuple, Fraction] = {}
    for e, c in f.items():
        exp = [0] * target
        coef = c
        for ej, (b, a) in zip(e, imgs):
            if ej:
                coef *= a ** ej
                for i, bi in enumerate(b):
                    exp[i] += ej * bi
        k = tuple(exp)
        acc[k] = acc.get(k, 0) + coef
    return LaurentPoly(target, acc)


def shift_center(f: LaurentPoly, center: Sequence[Coefficient]) -> LaurentPoly:
    """Rewrite the polynomial ``f`` in ``y = x - center``.

    The valuation of the result is the order of vanishing of ``f`` along the
    chain ``{x1 = c1} > {x1 = c1, x2 = c2} > ...``.
    """
    if len(center) != f.nvars:
        raise ShapeError(f"center has {len(center)} coordinates, expected {f.nvars}")
    if not f.is_polynomial():
        raise ValueError("shift_center needs nonnegative exponents")
    c = [Fraction(x) for x in center]
    acc: dict[tuple, Fraction] = {}
    for e, coef in f.items():
        # prod_i (y_i + c_i)^e_i, expanded binomially
        ranges = [range(ei + 1) for ei in e]
        for ks in product(*ranges):
            w = coef
            for ei, ki, ci in zip(e, ks, c):
                w *= math.comb(ei, ki) * ci ** (ei - ki)
            if w:
                acc[ks] = acc.get(ks, 0) + w
    return LaurentPoly(f.nvars, acc)


# ---------------------------------------------------------------------------
# change of uniformizing parameters


def _check_unit_upper(c: IntMatrix, n: int):
    if c.shape != (n, n):
        raise ShapeError(f"expected a {n}x{n} matrix, got {c.shape}")
    for i in range(n):
        for j in range(i + 1):
            want = 1 if i == j else 0
            if c[i, j] != want:
                raise ValueError("matrix must be upper triangular with ones on the diagonal")


def uniformizer_change_matrix(c, n: int | None = None) -> IntMatrix:
    """Matrix ``A`` with ``v'(f) = v(f) @ A`` after a change of parameters.

    Row ``i`` of ``c`` is the exponent vector of the new parameter
    ``pi'_i = x_i * prod_{j > i} x_j^c[i][j]``.  Entry ``A[i][j]`` (``j > i``)
    is the ``j``-th coordinate of the value of
    ``x_i * prod_{l < j} pi'_l^(-A[i][l])``; by construction the earlier
    coordinates of that value are zero.
    """
    c = as_intmatrix(c)
    if n is None:
        n = c.rows
    _check_unit_upper(c, n)
    A = [[0] * n for _ in range(n)]
    for i in range(n):
        A[i][i] = 1
        for j in range(i + 1, n):
            w = [int(k == i) for k in range(n)]
            for l in range(j):
                a = A[i][l]
                if a:
                    for k in range(n):
                        w[k] -= a * c[l, k]
            if any(w[:j]):
                raise AssertionError("restriction to the j-th subvariety vanishes")
            A[i][j] = w[j]
    return IntMatrix(A, cols=n)


def _rational_inverse(c: IntMatrix) -> list[list[Fraction]]:
    n = c.rows
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(c)]
    for col in range(n):
        piv = next(i for i in range(col, n) if m[i][col])
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for i in range(n):
            if i != col and m[i][col]:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[col])]
    return [row[n:] for row in m]


def valuation_in_parameters(f: LaurentPoly, c) -> ExponentVector:
    """Value of ``f`` for the monomial parameters given by the rows of ``c``.

    Each term ``x^e`` is rewritten as ``prod pi'^k`` with ``k @ c = e`` and
    the lex-smallest ``k`` is returned.  Used to check
    :func:`uniformizer_change_matrix` independently.
    """
    c = as_intmatrix(c)
    if c.shape != (f.nvars, f.nvars):
        raise ShapeError("parameter matrix must be square of size nvars")
    if f.is_zero():
        raise ValueError("valuation of the zero polynomial is undefined")
    inv = _rational_inverse(c)
    best = None
    for e, _ in f.items():
        k = [sum(e[i] * inv[i][j] for i in range(f.nvars)) for j in range(f.nvars)]
        if any(x.denominator != 1 for x in k):
            raise ValueError("parameters do not generate the exponent lattice")
        k = tuple(int(x) for x in k)
        if best is None or k < best:
            best = k
    return best

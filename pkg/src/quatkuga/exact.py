"""Exact scalars and dense matrices.

Rationals are plain :class:`fractions.Fraction`. Real quadratic scalars
``p + q*sqrt(a)`` live in :class:`QuadScalar`, and :class:`ExactComplex`
adjoins ``i`` on top of either. :class:`ExactMatrix` is a small immutable
dense matrix over any of these (or anything else with field operations).
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Callable, Iterable, Sequence

RationalScalar = Fraction

_RATIONAL_TYPES = (int, Fraction)


def as_fraction(x) -> Fraction:
    """Parse an int, Fraction or ``"p/q"`` string into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if not re.fullmatch(r"[+-]?\d+(/\d+)?|[+-]?\d*\.\d+", s):
            raise ValueError(f"malformed rational {x!r}")
        return Fraction(s)
    raise TypeError(f"cannot read {type(x).__name__} as a rational")


def squarefree_decomposition(n: int) -> tuple[int, int]:
    """Return ``(s, r)`` with ``n == s*s*r`` and ``r`` squarefree (n > 0)."""
    if n <= 0:
        raise ValueError("n must be positive")
    s, r = 1, 1
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        s *= d ** (e // 2)
        if e % 2:
            r *= d
        d += 1
    return s, r * n


def rational_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None."""
    x = as_fraction(x)
    if x < 0:
        return None
    n, d = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if n * n == x.numerator and d * d == x.denominator:
        return Fraction(n, d)
    return None


class QuadScalar:
    """Element ``base + coeff*sqrt(radicand)`` of a real quadratic field.

    ``radicand`` is a squarefree integer > 1. Mixing scalars of different
    radicands raises ``ValueError``; ints and Fractions coerce freely.
    """

    __slots__ = ("base", "coeff", "radicand")

    def __init__(self, base, coeff, radicand: int):
        radicand = int(radicand)
        if radicand <= 1 or squarefree_decomposition(radicand)[0] != 1:
            raise ValueError(f"radicand must be squarefree and > 1, got {radicand}")
        object.__setattr__(self, "base", as_fraction(base))
        object.__setattr__(self, "coeff", as_fraction(coeff))
        object.__setattr__(self, "radicand", radicand)

    def __setattr__(self, name, value):
        raise AttributeError("QuadScalar is immutable")

    @classmethod
    def sqrt(cls, a) -> "QuadScalar | Fraction":
        """Square root of a positive rational, normalized to a squarefree radicand.

        Returns a Fraction when ``a`` is a rational square.
        """
        a = as_fraction(a)
        if a <= 0:
            raise ValueError("sqrt needs a positive rational")
        # sqrt(n/d) = sqrt(n*d)/d = s*sqrt(r)/d
        s, r = squarefree_decomposition(a.numerator * a.denominator)
        if r == 1:
            return Fraction(s, a.denominator)
        return cls(0, Fraction(s, a.denominator), r)

    def _coerce(self, other) -> "QuadScalar | None":
        if isinstance(other, QuadScalar):
            if other.radicand != self.radicand:
                raise ValueError(
                    f"cannot combine sqrt({self.radicand}) and sqrt({other.radicand}) scalars")
            return other
        if isinstance(other, _RATIONAL_TYPES) and not isinstance(other, bool):
            return QuadScalar(other, 0, self.radicand)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadScalar(self.base + o.base, self.coeff + o.coeff, self.radicand)

    __radd__ = __add__

    def __neg__(self):
        return QuadScalar(-self.base, -self.coeff, self.radicand)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadScalar(self.base - o.base, self.coeff - o.coeff, self.radicand)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a = self.radicand
        return QuadScalar(self.base * o.base + a * self.coeff * o.coeff,
                          self.base * o.coeff + self.coeff * o.base, a)

    __rmul__ = __mul__

    def galois_conjugate(self) -> "QuadScalar":
        return QuadScalar(self.base, -self.coeff, self.radicand)

    def field_norm(self) -> Fraction:
        return self.base ** 2 - self.radicand * self.coeff ** 2

    def inverse(self) -> "QuadScalar":
        n = self.field_norm()
        if n == 0:
            raise ZeroDivisionError("division by zero QuadScalar")
        return QuadScalar(self.base / n, -self.coeff / n, self.radicand)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = QuadScalar(1, 0, self.radicand)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def is_rational(self) -> bool:
        return self.coeff == 0

    def __eq__(self, other):
        if isinstance(other, QuadScalar):
            if other.radicand != self.radicand:
                return self.coeff == 0 and other.coeff == 0 and self.base == other.base
            return self.base == other.base and self.coeff == other.coeff
        if isinstance(other, _RATIONAL_TYPES):
            return self.coeff == 0 and self.base == other
        return NotImplemented

    def __hash__(self):
        if self.coeff == 0:
            return hash(self.base)
        return hash((self.base, self.coeff, self.radicand))

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is None:
            raise TypeError(f"cannot compare QuadScalar with {type(other).__name__}")
        return qf_sign(self - o)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __bool__(self):
        return self.base != 0 or self.coeff != 0

    def __float__(self):
        return float(self.base) + float(self.coeff) * math.sqrt(self.radicand)

    def __repr__(self):
        return f"QuadScalar({self.base}, {self.coeff}, {self.radicand})"

    def __str__(self):
        return format_scalar(self)


def qf_sign(s) -> int:
    """Sign of ``p + q*sqrt(a)`` decided by rational comparisons only."""
    if isinstance(s, _RATIONAL_TYPES):
        return (s > 0) - (s < 0)
    p, q, a = s.base, s.coeff, s.radicand
    sp, sq = (p > 0) - (p < 0), (q > 0) - (q < 0)
    if sq == 0:
        return sp
    if sp == 0 or sp == sq:
        return sq
    # opposite signs: the larger of p^2 and a*q^2 wins
    lhs, rhs = p * p, a * q * q
    if lhs > rhs:
        return sp
    if lhs < rhs:
        return sq
    return 0


def is_integral(x) -> bool:
    """True for rationals (or rational QuadScalars) with denominator 1."""
    if isinstance(x, QuadScalar):
        return x.coeff == 0 and x.base.denominator == 1
    if isinstance(x, ExactComplex):
        return x.im == 0 and is_integral(x.re)
    return as_fraction(x).denominator == 1


def to_int(x) -> int:
    if not is_integral(x):
        raise ValueError(f"{x} is not an integer")
    if isinstance(x, ExactComplex):
        x = x.re
    if isinstance(x, QuadScalar):
        x = x.base
    return int(as_fraction(x))


def radicand_of(x) -> int | None:
    if isinstance(x, QuadScalar):
        return x.radicand
    if isinstance(x, ExactComplex):
        return radicand_of(x.re) or radicand_of(x.im)
    return None


_QUAD_RE = re.compile(
    r"^\s*(?:(?P<base>[+-]?\d+(?:/\d+)?)\s*(?=[+-]|$))?"
    r"\s*(?:(?P<sign>[+-])?\s*(?:(?P<coeff>\d+(?:/\d+)?)\s*\*\s*)?sqrt\(\s*(?P<rad>\d+(?:/\d+)?)\s*\))?\s*$")


def parse_scalar(text) -> "Fraction | QuadScalar":
    """Parse ``"p/q"``, ``"sqrt(n)"``, ``"r*sqrt(n)"`` or ``"p/q+r*sqrt(n)"``."""
    if not isinstance(text, str):
        return as_fraction(text)
    s = text.strip()
    if "sqrt" not in s:
        return as_fraction(s)
    m = _QUAD_RE.match(s)
    if not m or m.group("rad") is None:
        raise ValueError(f"malformed scalar {text!r}")
    base = as_fraction(m.group("base")) if m.group("base") else Fraction(0)
    coeff = as_fraction(m.group("coeff")) if m.group("coeff") else Fraction(1)
    if m.group("sign") == "-":
        coeff = -coeff
    root = QuadScalar.sqrt(as_fraction(m.group("rad")))
    return base + coeff * root


def format_scalar(x) -> str:
    """Canonical text form, inverse of :func:`parse_scalar`."""
    if isinstance(x, ExactComplex):
        return f"{format_scalar(x.re)} + ({format_scalar(x.im)})*i"
    if isinstance(x, QuadScalar):
        if x.coeff == 0:
            return str(x.base)
        c = x.coeff
        tail = f"sqrt({x.radicand})" if abs(c) == 1 else f"{abs(c)}*sqrt({x.radicand})"
        if x.base == 0:
            return ("-" if c < 0 else "") + tail
        return f"{x.base}{'-' if c < 0 else '+'}{tail}"
    return str(as_fraction(x))


class ExactComplex:
    """``re + im*i`` with exact real parts (Fractions or QuadScalars)."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        object.__setattr__(self, "re", re if isinstance(re, QuadScalar) else as_fraction(re))
        object.__setattr__(self, "im", im if isinstance(im, QuadScalar) else as_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("ExactComplex is immutable")

    @staticmethod
    def _coerce(other):
        if isinstance(other, ExactComplex):
            return other
        if isinstance(other, (QuadScalar, int, Fraction)) and not isinstance(other, bool):
            return ExactComplex(other, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExactComplex(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return ExactComplex(-self.re, -self.im)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExactComplex(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExactComplex(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self) -> "ExactComplex":
        return ExactComplex(self.re, -self.im)

    def abs2(self):
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "ExactComplex":
        n = self.abs2()
        if n == 0:
            raise ZeroDivisionError("division by zero ExactComplex")
        return ExactComplex(self.re / n, -self.im / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"ExactComplex({self.re!r}, {self.im!r})"

    def __str__(self):
        return format_scalar(self)


I = ExactComplex(0, 1)


def as_complex(x) -> ExactComplex:
    if isinstance(x, ExactComplex):
        return x
    return ExactComplex(x, 0)


class ExactMatrix:
    """Immutable dense matrix with exact entries.

    Entries are kept as given; arithmetic only needs ``+ - * /`` and ``== 0``
    from them, so Fractions, QuadScalars and ExactComplex all work.
    """

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable]):
        data = tuple(tuple(_normalize_entry(x) for x in r) for r in rows)
        if not data or not data[0]:
            raise ValueError("matrix must have at least one row and column")
        ncols = len(data[0])
        if any(len(r) != ncols for r in data):
            raise ValueError("ragged rows")
        object.__setattr__(self, "rows", data)
        object.__setattr__(self, "nrows", len(data))
        object.__setattr__(self, "ncols", ncols)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    # construction
    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, r: int, c: int) -> "ExactMatrix":
        return cls([[Fraction(0)] * c for _ in range(r)])

    @classmethod
    def diag(cls, values: Sequence) -> "ExactMatrix":
        n = len(values)
        return cls([[values[i] if i == j else Fraction(0) for j in range(n)] for i in range(n)])

    @classmethod
    def column(cls, values: Sequence) -> "ExactMatrix":
        return cls([[v] for v in values])

    @classmethod
    def block(cls, blocks: Sequence[Sequence["ExactMatrix"]]) -> "ExactMatrix":
        rows = []
        for brow in blocks:
            h = brow[0].nrows
            if any(b.nrows != h for b in brow):
                raise ValueError("block row heights differ")
            for i in range(h):
                rows.append([x for b in brow for x in b.rows[i]])
        return cls(rows)

    @classmethod
    def block_diag(cls, mats: Sequence["ExactMatrix"]) -> "ExactMatrix":
        n = sum(m.nrows for m in mats)
        c = sum(m.ncols for m in mats)
        out = [[Fraction(0)] * c for _ in range(n)]
        r0 = c0 = 0
        for m in mats:
            for i in range(m.nrows):
                for j in range(m.ncols):
                    out[r0 + i][c0 + j] = m.rows[i][j]
            r0 += m.nrows
            c0 += m.ncols
        return cls(out)

    # access
    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def row(self, i: int) -> tuple:
        return self.rows[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def entries(self) -> list:
        return [x for r in self.rows for x in r]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix([[self.rows[i][j] for j in cols] for i in rows])

    def leading(self, k: int) -> "ExactMatrix":
        return self.submatrix(range(k), range(k))

    def map(self, f: Callable) -> "ExactMatrix":
        return ExactMatrix([[f(x) for x in r] for r in self.rows])

    # arithmetic
    def _check_same_shape(self, other: "ExactMatrix"):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        self._check_same_shape(other)
        return ExactMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        self._check_same_shape(other)
        return ExactMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return self.map(lambda x: -x)

    def __matmul__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = [other.col(j) for j in range(other.ncols)]
        out = []
        for r in self.rows:
            out_row = []
            for c in cols:
                acc = r[0] * c[0]
                for a, b in zip(r[1:], c[1:]):
                    acc = acc + a * b
                out_row.append(acc)
            out.append(out_row)
        return ExactMatrix(out)

    def __mul__(self, scalar):
        if isinstance(scalar, ExactMatrix):
            return NotImplemented
        return self.map(lambda x: x * scalar)

    def __rmul__(self, scalar):
        if isinstance(scalar, ExactMatrix):
            return NotImplemented
        return self.map(lambda x: scalar * x)

    def __truediv__(self, scalar):
        return self.map(lambda x: x / scalar)

    @property
    def T(self) -> "ExactMatrix":
        return ExactMatrix(zip(*self.rows))

    def conjugate(self) -> "ExactMatrix":
        return self.map(lambda x: x.conjugate() if isinstance(x, ExactComplex) else x)

    def trace(self):
        if self.nrows != self.ncols:
            raise ValueError("trace of a non-square matrix")
        acc = self.rows[0][0]
        for i in range(1, self.nrows):
            acc = acc + self.rows[i][i]
        return acc

    def det(self):
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        m = [list(r) for r in self.rows]
        n = self.nrows
        sign = 1
        det = None
        for k in range(n):
            piv = next((i for i in range(k, n) if m[i][k] != 0), None)
            if piv is None:
                return Fraction(0)
            if piv != k:
                m[k], m[piv] = m[piv], m[k]
                sign = -sign
            det = m[k][k] if det is None else det * m[k][k]
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    f = m[i][k] / m[k][k]
                    for j in range(k, n):
                        m[i][j] = m[i][j] - f * m[k][j]
        return det if sign == 1 else -det

    def inverse(self) -> "ExactMatrix":
        x = exact_linear_solve(self, ExactMatrix.identity(self.nrows))
        if x is None:
            raise ZeroDivisionError("matrix is singular")
        return x

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries())

    def is_symmetric(self) -> bool:
        return self.nrows == self.ncols and all(
            self.rows[i][j] == self.rows[j][i] for i in range(self.nrows) for j in range(i))

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for a, b in zip(self.entries(), other.entries()))

    def __hash__(self):
        return hash(tuple(self.entries()))

    def __repr__(self):
        body = "; ".join(" ".join(format_scalar(x) for x in r) for r in self.rows)
        return f"ExactMatrix([{body}])"


def _normalize_entry(x):
    if isinstance(x, (QuadScalar, ExactComplex, Fraction)):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, str):
        return parse_scalar(x)
    # intervals and other field-like values pass through untouched
    return x


J2 = ExactMatrix([[0, 1], [-1, 0]])


def _row_echelon(m: list[list], ncols: int) -> list[int]:
    """In-place reduced row echelon form on the first ``ncols`` columns.

    Returns the pivot columns. Pivot choice: first nonzero entry.
    """
    for row in m:
        row[:] = [Fraction(x) if isinstance(x, int) else x for x in row]
    pivots = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [x / p for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def exact_linear_solve(A: ExactMatrix, b: ExactMatrix) -> ExactMatrix | None:
    """Solve ``A x = b`` for square ``A``; returns None if ``A`` is singular.

    ``b`` may have several columns (solved simultaneously).
    """
    if A.nrows != A.ncols:
        raise ValueError(f"A must be square, got {A.shape}")
    if b.nrows != A.nrows:
        raise ValueError(f"dimension mismatch: A is {A.shape}, b is {b.shape}")
    n = A.nrows
    m = [list(A.rows[i]) + list(b.rows[i]) for i in range(n)]
    pivots = _row_echelon(m, n)
    if len(pivots) < n:
        return None
    return ExactMatrix([row[n:] for row in m])


def solve_in_span(vectors: Sequence[Sequence], target: Sequence) -> list | None:
    """Coefficients ``c`` with ``sum c_k * vectors[k] == target``, or None.

    ``vectors`` must be linearly independent; the system may be
    overdetermined (more coordinates than vectors).
    """
    k = len(vectors)
    dim = len(target)
    if any(len(v) != dim for v in vectors):
        raise ValueError("vector lengths differ")
    m = [[vectors[j][i] for j in range(k)] + [target[i]] for i in range(dim)]
    pivots = _row_echelon(m, k)
    if len(pivots) < k:
        raise ValueError("spanning vectors are linearly dependent")
    for row in m[k:]:
        if row[k] != 0:
            return None
    return [m[i][k] for i in range(k)]


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    m = [list(r) for r in rows]
    return len(_row_echelon(m, len(m[0])))


def integer_row_basis(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """A Z-basis (Hermite form rows) of the Z-span of integer row vectors."""
    m = [list(map(int, r)) for r in rows if any(r)]
    if not m:
        return []
    ncols = len(m[0])
    basis = []
    c = 0
    while m and c < ncols:
        nz = [r for r in m if r[c] != 0]
        rest = [r for r in m if r[c] == 0]
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[c]))
            p = nz[0]
            reduced = [p]
            for r in nz[1:]:
                q = r[c] // p[c]
                r = [a - q * b for a, b in zip(r, p)]
                if r[c] != 0:
                    reduced.append(r)
                elif any(r):
                    rest.append(r)
            nz = reduced
        if nz:
            p = nz[0]
            if p[c] < 0:
                p = [-a for a in p]
            basis.append(p)
        m = rest
        c += 1
    return basis


class DegenerateFormError(ValueError):
    """Raised for a singular alternating form; ``rank`` is the witness."""

    def __init__(self, rank: int, size: int):
        super().__init__(f"alternating form is degenerate: rank {rank} < {size}")
        self.rank = rank
        self.size = size


def symplectic_frobenius_basis(G: ExactMatrix) -> tuple[ExactMatrix, tuple[int, ...]]:
    """Frobenius normal form of an integral nondegenerate alternating form.

    Returns ``(U, deltas)`` with ``U`` unimodular and
    ``U.T @ G @ U == [[0, D], [-D, 0]]``, ``D = diag(deltas)``,
    ``0 < deltas[0] | deltas[1] | ...``.

    Pivot rule: smallest absolute value among the remaining entries, then
    lowest row index, then lowest column index.
    """
    n = G.nrows
    if G.ncols != n or n % 2:
        raise ValueError(f"need an even-size square matrix, got {G.shape}")
    if not all(is_integral(x) for x in G.entries()):
        raise ValueError("form is not integral")
    g = [[to_int(x) for x in r] for r in G.rows]
    if any(g[i][j] != -g[j][i] for i in range(n) for j in range(n)):
        raise ValueError("form is not alternating")
    r = rank(G.rows)
    if r < n:
        raise DegenerateFormError(r, n)

    # basis[k] is the k-th current basis vector in original coordinates
    basis = [[int(i == k) for i in range(n)] for k in range(n)]

    def add_multiple(dst: int, src: int, c: int):
        # b_dst += c * b_src, acting on G by congruence
        if c == 0:
            return
        basis[dst] = [a + c * b for a, b in zip(basis[dst], basis[src])]
        for i in range(n):
            g[i][dst] += c * g[i][src]
        for j in range(n):
            g[dst][j] += c * g[src][j]

    def swap(i: int, j: int):
        if i == j:
            return
        basis[i], basis[j] = basis[j], basis[i]
        g[i], g[j] = g[j], g[i]
        for row in g:
            row[i], row[j] = row[j], row[i]

    def negate(i: int):
        basis[i] = [-a for a in basis[i]]
        for j in range(n):
            g[i][j] = -g[i][j]
            g[j][i] = -g[j][i]

    deltas = []
    for p in range(0, n, 2):
        while True:
            cand = [(abs(g[i][j]), i, j) for i in range(p, n) for j in range(p, n)
                    if g[i][j] != 0]
            _, i, j = min(cand)
            swap(p, i)
            if j == p:
                j = i
            swap(p + 1, j)
            if g[p][p + 1] < 0:
                negate(p + 1)
            d = g[p][p + 1]
            dirty = False
            for k in range(p + 2, n):
                add_multiple(k, p + 1, -(g[p][k] // d))
                add_multiple(k, p, g[p + 1][k] // d)
                if g[p][k] or g[p + 1][k]:
                    dirty = True
            if dirty:
                continue
            bad = next(((i, j) for i in range(p + 2, n) for j in range(p + 2, n)
                        if g[i][j] % d), None)
            if bad is None:
                break
            # pull the offending entry into row p; the next pass shrinks the pivot
            add_multiple(p, bad[0], 1)
        deltas.append(d)

    order = list(range(0, n, 2)) + list(range(1, n, 2))
    U = ExactMatrix([[basis[k][i] for k in order] for i in range(n)])
    return U, tuple(deltas)

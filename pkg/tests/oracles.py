"""Independent reference implementations used only by the tests.

None of these share code with the package beyond plain Fractions.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

import sympy

# ---------------------------------------------------------------- Hilbert symbol

MAX_LEVEL = {2: 8, 3: 5}
DEFAULT_MAX_LEVEL = 5


def _squarefree(n: int) -> int:
    sign = -1 if n < 0 else 1
    n = abs(n)
    out, p = 1, 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
        if n % p == 0:
            out *= p
            n //= p
        p += 1
    return sign * out * n


def _val(n: int, p: int) -> int:
    if n == 0:
        return 10**9
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _square_class_key(n: int, p: int):
    """Key of n in Q_p^*/(Q_p^*)^2: parity of the valuation and the unit part's class."""
    v = _val(n, p)
    u = n // p**v
    if p == 2:
        return v % 2, u % 8
    return v % 2, pow(u % p, (p - 1) // 2, p)


def _isotropic_mod_levels(a: int, b: int, p: int) -> bool | None:
    """Search for primitive zeros of a x^2 + b y^2 - z^2 level by level mod p^k.

    Points are projectively normalized (first unit coordinate equal to 1).
    A zero mod p^k whose gradient has valuation e with 2e + 1 <= k lifts to
    a p-adic zero by Hensel's lemma. If no zero survives to some level, the
    form is anisotropic. ``None`` means undecided within the level cap.
    """
    K = MAX_LEVEL.get(p, DEFAULT_MAX_LEVEL)

    def Q(x, y, z):
        return a * x * x + b * y * y - z * z

    pts = []
    for lead in range(3):
        for rest in itertools.product(range(p), repeat=2 - lead):
            v = [0] * lead + [1] + list(rest)
            pts.append(tuple(v))
    mod = p
    sols = [v for v in pts if Q(*v) % mod == 0]
    for k in range(1, K + 1):
        if not sols:
            return False
        for x, y, z in sols:
            grads = [2 * a * x, 2 * b * y, 2 * z]
            e = min(_val(g % mod, p) if g % mod else k for g in grads)
            if 2 * e + 1 <= k:
                return True
        if k == K:
            return None
        nxt = []
        new_mod = mod * p
        for v in sols:
            lead = next(i for i, c in enumerate(v) if c % p)
            free = [i for i in range(3) if i != lead]
            for s, t in itertools.product(range(p), repeat=2):
                w = list(v)
                w[free[0]] += s * mod
                w[free[1]] += t * mod
                if Q(*w) % new_mod == 0:
                    nxt.append(tuple(w))
        sols, mod = nxt, new_mod
    return None


@lru_cache(maxsize=None)
def _hilbert_class(p: int, ka, kb) -> int:
    # smallest positive representatives of the square classes
    def rep(key):
        for n in itertools.count(1):
            for m in (n, -n):
                if _square_class_key(m, p) == key:
                    return m
    res = _isotropic_mod_levels(rep(ka), rep(kb), p)
    if res is None:
        raise RuntimeError(f"oracle undecided at p={p} for classes {ka}, {kb}")
    return 1 if res else -1


def hilbert_oracle(a, b, place) -> int:
    """(a, b)_place by brute-force isotropy of z^2 = a x^2 + b y^2."""
    a, b = Fraction(a), Fraction(b)
    # clear denominators by squares: a = n/d ~ n*d
    ai = _squarefree(a.numerator * a.denominator)
    bi = _squarefree(b.numerator * b.denominator)
    if place == "inf":
        return -1 if ai < 0 and bi < 0 else 1
    return _hilbert_class(place, _square_class_key(ai, place), _square_class_key(bi, place))


# ---------------------------------------------------------------- quaternion words

def _normal_form(word: str, a, b):
    """Reduce a word in x, y to (coefficient, monomial in {"", x, y, xy})."""
    coeff = Fraction(1)
    w = list(word)
    changed = True
    while changed:
        changed = False
        for i in range(len(w) - 1):
            if w[i] == w[i + 1]:
                coeff *= a if w[i] == "x" else b
                del w[i:i + 2]
                changed = True
                break
            if w[i] == "y" and w[i + 1] == "x":
                w[i], w[i + 1] = "x", "y"
                coeff = -coeff
                changed = True
                break
    return coeff, "".join(w)


MONOMIALS = ("", "x", "y", "xy")


def word_mul(p, q, a, b) -> tuple[Fraction, ...]:
    """Multiply coordinate 4-tuples by expanding into words and rewriting."""
    out = dict.fromkeys(MONOMIALS, Fraction(0))
    for (mi, ci), (mj, cj) in itertools.product(zip(MONOMIALS, p), zip(MONOMIALS, q)):
        if ci == 0 or cj == 0:
            continue
        c, m = _normal_form(mi + mj, Fraction(a), Fraction(b))
        out[m] += Fraction(ci) * Fraction(cj) * c
    return tuple(out[m] for m in MONOMIALS)


def word_trd(p) -> Fraction:
    return 2 * Fraction(p[0])


def reduced_discriminant_oracle(basis, a, b) -> int:
    """sqrt|det(trd(e_i e_j))| via sympy on word-rewritten products."""
    M = sympy.Matrix(4, 4, lambda i, j: sympy.Rational(word_trd(word_mul(basis[i], basis[j], a, b))))
    d = abs(M.det())
    r = sympy.sqrt(d)
    assert r.is_Integer, d
    return int(r)


# ---------------------------------------------------------------- elementary divisors

def elementary_divisors(G) -> list[int]:
    """Smith normal form diagonal of an integer matrix (sympy)."""
    from sympy.matrices.normalforms import smith_normal_form

    M = sympy.Matrix([[int(x) for x in row] for row in G])
    S = smith_normal_form(M, domain=sympy.ZZ)
    return sorted(abs(int(S[i, i])) for i in range(min(S.shape)))

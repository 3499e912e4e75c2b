"""Exact sparse multivariate polynomials with integer coefficients.

A :class:`Polynomial` maps dense exponent tuples to nonzero Python ints.
Variable ``k`` (0-based) prints as ``t{k+1}``. Terms are ordered by graded
reverse lexicographic order with ``t1 < t2 < ...``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import permutations
from math import gcd as igcd
from typing import Sequence

from .errors import ExponentOverflow, NotAQuadric, ZeroPolynomial

MAX_DEGREE = 256


def monomial_key(exps: tuple) -> tuple:
    """Sort key; a larger key means a larger monomial."""
    return (sum(exps), tuple(-e for e in exps))


class Polynomial:
    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, terms=None, nvars: int = 0):
        self.nvars = nvars
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    e = tuple(e)
                    if len(e) < nvars:
                        e = e + (0,) * (nvars - len(e))
                    elif len(e) > nvars:
                        raise ValueError(f"exponent {e} longer than nvars={nvars}")
                    clean[e] = clean.get(e, 0) + c
            clean = {e: c for e, c in clean.items() if c}
        self.terms = clean
        self._hash = None

    # construction

    @classmethod
    def const(cls, c: int, nvars: int = 0) -> "Polynomial":
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def var(cls, k: int, nvars: int) -> "Polynomial":
        if not 0 <= k < nvars:
            raise ValueError(f"variable index {k} out of range for nvars={nvars}")
        e = [0] * nvars
        e[k] = 1
        return cls({tuple(e): 1}, nvars)

    @classmethod
    def gens(cls, nvars: int) -> list:
        return [cls.var(k, nvars) for k in range(nvars)]

    def extend(self, nvars: int) -> "Polynomial":
        if nvars == self.nvars:
            return self
        if nvars < self.nvars and any(any(e[nvars:]) for e in self.terms):
            raise ValueError("cannot drop variables that occur")
        pad = (0,) * max(0, nvars - self.nvars)
        return Polynomial({e[:nvars] + pad: c for e, c in self.terms.items()}, nvars)

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            n = max(self.nvars, other.nvars)
            return self.extend(n), other.extend(n)
        if isinstance(other, int):
            return self, Polynomial.const(other, self.nvars)
        return NotImplemented

    # arithmetic

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        terms = dict(a.terms)
        for e, c in b.terms.items():
            terms[e] = terms.get(e, 0) + c
        return Polynomial(terms, a.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({e: -c for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        pair = self._coerce(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        terms = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        out = Polynomial(terms, a.nvars)
        if out.terms and out.degree() > MAX_DEGREE:
            raise ExponentOverflow(f"degree {out.degree()} exceeds cap {MAX_DEGREE}")
        return out

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        if self.terms and k * self.degree() > MAX_DEGREE:
            raise ExponentOverflow(f"degree {k * self.degree()} exceeds cap {MAX_DEGREE}")
        result = Polynomial.const(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def scale(self, c: int) -> "Polynomial":
        return Polynomial({e: c * v for e, v in self.terms.items()}, self.nvars)

    # comparison

    def __eq__(self, other):
        if isinstance(other, int):
            other = Polynomial.const(other, self.nvars)
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self._coerce(other)
        return a.terms == b.terms

    def __hash__(self):
        if self._hash is None:
            strip = frozenset((self._trimmed(e), c) for e, c in self.terms.items())
            self._hash = hash(strip)
        return self._hash

    @staticmethod
    def _trimmed(e):
        k = len(e)
        while k and not e[k - 1]:
            k -= 1
        return e[:k]

    def __bool__(self):
        return bool(self.terms)

    # inspection

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> int:
        """Value of a constant polynomial."""
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()), 0)

    def constant_term(self) -> int:
        return self.terms.get((0,) * self.nvars, 0)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, k: int) -> int:
        return max((e[k] for e in self.terms), default=-1)

    def variables(self) -> list:
        used = set()
        for e in self.terms:
            used.update(k for k, x in enumerate(e) if x)
        return sorted(used)

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: monomial_key(t[0]), reverse=True)

    def leading_term(self):
        return max(self.terms.items(), key=lambda t: monomial_key(t[0]))

    def leading_coefficient(self) -> int:
        return self.leading_term()[1] if self.terms else 0

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(f"t{k + 1}" if x == 1 else f"t{k + 1}^{x}"
                            for k, x in enumerate(e) if x)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"Polynomial({str(self)!r}, nvars={self.nvars})"

    def evaluate(self, point: Sequence) -> Fraction:
        """Exact value at a point of rationals (one value per variable)."""
        total = Fraction(0)
        for e, c in self.terms.items():
            v = Fraction(c)
            for k, x in enumerate(e):
                if x:
                    v *= Fraction(point[k]) ** x
            total += v
        return total


def parse_polynomial(text: str, nvars: int | None = None) -> Polynomial:
    """Read the canonical text form, e.g. ``"t1*t2 - 3*t3^2 + 1"``."""
    import re

    src = text.replace(" ", "")
    if not src:
        raise ValueError("empty polynomial text")
    tokens = re.findall(r"[+-]?[^+-]+", src)
    if "".join(tokens) != src:
        raise ValueError(f"cannot parse {text!r}")
    parsed = []
    top = 0
    for tok in tokens:
        sign = -1 if tok.startswith("-") else 1
        tok = tok.lstrip("+-")
        coeff = 1
        exps = {}
        for factor in tok.split("*"):
            m = re.fullmatch(r"t(\d+)(?:\^(\d+))?", factor)
            if m:
                k = int(m.group(1)) - 1
                if k < 0:
                    raise ValueError("variables are numbered from t1")
                exps[k] = exps.get(k, 0) + int(m.group(2) or 1)
                top = max(top, k + 1)
            elif re.fullmatch(r"\d+", factor):
                coeff *= int(factor)
            else:
                raise ValueError(f"cannot parse factor {factor!r} in {text!r}")
        parsed.append((sign * coeff, exps))
    n = top if nvars is None else nvars
    if n < top:
        raise ValueError(f"{text!r} uses t{top} but nvars={n}")
    terms = {}
    for c, exps in parsed:
        e = tuple(exps.get(k, 0) for k in range(n))
        terms[e] = terms.get(e, 0) + c
    return Polynomial(terms, n)


def poly_arithmetic(op: str, a: Polynomial, b=None) -> Polynomial:
    """Dispatch ``add``, ``sub``, ``mul``, ``neg`` or ``pow``."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "pow":
        return a ** b
    raise ValueError(f"unknown operation {op!r}")


# content, division, gcd

def content(p: Polynomial) -> int:
    return reduce(igcd, (abs(c) for c in p.terms.values()), 0)


def content_primitive(p: Polynomial) -> tuple:
    """``(content, primitive part)`` with positive content."""
    if p.is_zero():
        raise ZeroPolynomial("the zero polynomial has no primitive part")
    c = content(p)
    return c, Polynomial({e: v // c for e, v in p.terms.items()}, p.nvars)


def primitive_part(p: Polynomial) -> Polynomial:
    return content_primitive(p)[1]


def normalize_sign(p: Polynomial) -> Polynomial:
    return -p if p.terms and p.leading_coefficient() < 0 else p


def divexact(a: Polynomial, b: Polynomial):
    """Quotient ``a / b`` if ``b`` divides ``a`` exactly, else ``None``."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    a, b = a._coerce(b)
    n = a.nvars
    lb_e, lb_c = b.leading_term()
    r = a
    q = {}
    while r.terms:
        e, c = r.leading_term()
        if c % lb_c or any(x < y for x, y in zip(e, lb_e)):
            return None
        qe = tuple(x - y for x, y in zip(e, lb_e))
        qc = c // lb_c
        q[qe] = qc
        r = r - Polynomial({qe: qc}, n) * b
    return Polynomial(q, n)


def _coeffs_in(p: Polynomial, k: int) -> dict:
    """``p`` as a polynomial in variable ``k``: degree -> coefficient."""
    out = {}
    for e, c in p.terms.items():
        rest = e[:k] + (0,) + e[k + 1:]
        out.setdefault(e[k], {})[rest] = c
    return {deg: Polynomial(t, p.nvars) for deg, t in out.items()}


def _from_coeffs(coeffs: dict, k: int, nvars: int) -> Polynomial:
    terms = {}
    for deg, cp in coeffs.items():
        for e, c in cp.terms.items():
            terms[e[:k] + (deg,) + e[k + 1:]] = c
    return Polynomial(terms, nvars)


def _lead_in(p, k):
    coeffs = _coeffs_in(p, k)
    top = max(coeffs)
    return top, coeffs[top]


def _content_in(p: Polynomial, k: int) -> Polynomial:
    return reduce(poly_gcd, _coeffs_in(p, k).values())


def _prem(a: Polynomial, b: Polynomial, k: int) -> Polynomial:
    """Pseudo-remainder of ``a`` by ``b`` in variable ``k``."""
    db, lcb = _lead_in(b, k)
    da = a.degree_in(k)
    xk = Polynomial.var(k, a.nvars)
    r = a
    e = da - db + 1
    while r.terms and r.degree_in(k) >= db:
        dr, lcr = _lead_in(r, k)
        r = r * lcb - lcr * (xk ** (dr - db)) * b
        e -= 1
    return r * (lcb ** e) if e > 0 else r


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Greatest common divisor over the integers, with positive leading
    coefficient. Computed by primitive remainder sequences, recursing on the
    highest-indexed variable."""
    a, b = a._coerce(b)
    if a.is_zero():
        return normalize_sign(b)
    if b.is_zero():
        return normalize_sign(a)
    if a.is_constant() and b.is_constant():
        return Polynomial.const(igcd(a.constant_value(), b.constant_value()), a.nvars)
    used = set(a.variables()) | set(b.variables())
    k = max(used)
    if a.degree_in(k) <= 0:
        return poly_gcd(a, _content_in(b, k))
    if b.degree_in(k) <= 0:
        return poly_gcd(_content_in(a, k), b)
    ca, cb = _content_in(a, k), _content_in(b, k)
    pa, pb = divexact(a, ca), divexact(b, cb)
    c = poly_gcd(ca, cb)
    if pa.degree_in(k) < pb.degree_in(k):
        pa, pb = pb, pa
    while True:
        r = _prem(pa, pb, k)
        if r.is_zero():
            break
        if r.degree_in(k) <= 0:
            pb = Polynomial.const(1, a.nvars)
            break
        pa, pb = pb, divexact(r, _content_in(r, k))
    return normalize_sign(c * normalize_sign(pb))


def squarefree_factors_of(p: Polynomial, q: Polynomial) -> Polynomial:
    """Remove from ``p`` every factor it shares with ``q`` (to any power)."""
    g = poly_gcd(p, q)
    while not g.is_constant():
        p = divexact(p, g)
        g = poly_gcd(p, g)
    return p


# substitution

def substitute(p: Polynomial, k: int, value) -> Polynomial:
    """Replace variable ``k`` by an integer or a polynomial."""
    if isinstance(value, Fraction):
        if value.denominator != 1:
            raise ValueError("use substitute_rational for non-integer values")
        value = value.numerator
    if isinstance(value, int):
        value = Polynomial.const(value, p.nvars)
    p, value = p._coerce(value)
    coeffs = _coeffs_in(p, k)
    out = Polynomial({}, p.nvars)
    # Horner in the substituted variable
    for deg in range(max(coeffs, default=0), -1, -1):
        out = out * value + coeffs.get(deg, Polynomial({}, p.nvars))
    return out


def substitute_rational(p: Polynomial, k: int, value) -> tuple:
    """Substitute a rational for variable ``k`` and clear denominators.

    Returns ``(q, scalar)`` where ``q = scalar * p|_{t_k = value}`` has integer
    coefficients and ``scalar`` is a positive integer.
    """
    value = Fraction(value)
    num, den = value.numerator, value.denominator
    deg = max(p.degree_in(k), 0)
    terms = {}
    for e, c in p.terms.items():
        x = e[k]
        ne = e[:k] + (0,) + e[k + 1:]
        terms[ne] = terms.get(ne, 0) + c * num ** x * den ** (deg - x)
    return Polynomial(terms, p.nvars), den ** deg


def substitute_linear(p: Polynomial, k: int, rest: Polynomial, coeff: int) -> Polynomial:
    """Substitute ``t_k = -rest / coeff`` and multiply by ``coeff**deg_k(p)``.

    ``rest`` must not involve ``t_k``. The result vanishes exactly where ``p``
    does after the substitution.
    """
    coeffs = _coeffs_in(p, k)
    top = max(coeffs)
    out = Polynomial({}, p.nvars)
    neg_rest = -rest
    for deg, cp in coeffs.items():
        out = out + cp * neg_rest ** deg * coeff ** (top - deg)
    return out


# determinants

def det_poly_matrix(rows: Sequence[Sequence[Polynomial]], nvars: int) -> Polynomial:
    """Determinant by cofactor expansion along the line with most zero entries
    (ties broken towards most constant entries)."""
    n = len(rows)
    if n == 0:
        return Polynomial.const(1, nvars)
    cache = {}

    def det(r_idx: tuple, c_idx: tuple) -> Polynomial:
        key = (r_idx, c_idx)
        if key in cache:
            return cache[key]
        if len(r_idx) == 1:
            res = rows[r_idx[0]][c_idx[0]]
        else:
            best = None
            for a, i in enumerate(r_idx):
                line = [rows[i][j] for j in c_idx]
                score = (sum(x.is_zero() for x in line), sum(x.is_constant() for x in line))
                if best is None or score > best[0]:
                    best = (score, "row", a)
            for b, j in enumerate(c_idx):
                line = [rows[i][j] for i in r_idx]
                score = (sum(x.is_zero() for x in line), sum(x.is_constant() for x in line))
                if score > best[0]:
                    best = (score, "col", b)
            _, kind, pos = best
            res = Polynomial({}, nvars)
            for other in range(len(r_idx)):
                if kind == "row":
                    a, b = pos, other
                else:
                    a, b = other, pos
                entry = rows[r_idx[a]][c_idx[b]]
                if entry.is_zero():
                    continue
                minor = det(r_idx[:a] + r_idx[a + 1:], c_idx[:b] + c_idx[b + 1:])
                term = entry * minor
                res = res - term if (a + b) % 2 else res + term
        cache[key] = res
        return res

    return det(tuple(range(n)), tuple(range(n)))


def det_leibniz(rows: Sequence[Sequence[Polynomial]], nvars: int) -> Polynomial:
    """Determinant by the permutation expansion (for cross-checking)."""
    n = len(rows)
    total = Polynomial({}, nvars)
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = Polynomial.const(sign, nvars)
        for i in range(n):
            term = term * rows[i][perm[i]]
        total = total + term
    return total


# quadrics

def bareiss_rank(matrix) -> int:
    """Rank of an integer matrix by fraction-free elimination."""
    a = [list(row) for row in matrix]
    if not a:
        return 0
    n, r = len(a), len(a[0])
    rank = 0
    prev = 1
    for col in range(r):
        pivot = next((i for i in range(rank, n) if a[i][col]), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        p = a[rank][col]
        for i in range(rank + 1, n):
            for j in range(col + 1, r):
                a[i][j] = (p * a[i][j] - a[i][col] * a[rank][j]) // prev
            a[i][col] = 0
        prev = p
        rank += 1
        if rank == n:
            break
    return rank


def quadratic_form_matrix(q: Polynomial) -> list:
    """Doubled symmetric matrix of the homogenized quadric; the extra
    homogenizing variable is the last row/column."""
    n = q.nvars
    M = [[0] * (n + 1) for _ in range(n + 1)]
    for e, c in q.terms.items():
        idx = [k for k, x in enumerate(e) for _ in range(x)]
        while len(idx) < 2:
            idx.append(n)
        i, j = idx
        if i == j:
            M[i][i] += 2 * c
        else:
            M[i][j] += c
            M[j][i] += c
    return M


def quadratic_form_rank(q: Polynomial) -> int:
    if q.is_zero():
        raise ZeroPolynomial("the zero polynomial is not a quadric")
    if q.degree() > 2:
        raise NotAQuadric(f"degree {q.degree()} > 2")
    return bareiss_rank(quadratic_form_matrix(q))

"""Template matrices, defining systems and reduced realizations.

For a matroid ``M`` of rank ``d`` on ``1..m`` and a chosen basis, the template
has an identity block on the basis columns, zeros where a basis-swap subset is
dependent, ones on the normal frame of the remaining block, and one symbolic
variable everywhere else. Row ``i`` of the template belongs to the ``i``-th
smallest basis element.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from .errors import ContradictionDetected, NotABasis, RankDeficient
from .frame import compute_frame, scale_to_frame
from .matroid import Matroid, first_basis_revlex, revlex_subsets
from .poly import (
    Polynomial,
    det_poly_matrix,
    normalize_sign,
    parse_polynomial,
    primitive_part,
    substitute_linear,
    substitute_rational,
)


@dataclass(frozen=True)
class Var:
    """The symbolic entry ``t_index`` (``index`` counts from 1)."""
    index: int

    def __str__(self):
        return f"t{self.index}"


@dataclass(frozen=True)
class TemplateMatrix:
    rows: int
    cols: int
    entries: tuple  # rows of 0, 1 or Var
    var_count: int
    basis: tuple

    def entry_poly(self, i, j) -> Polynomial:
        x = self.entries[i][j]
        if isinstance(x, Var):
            return Polynomial.var(x.index - 1, self.var_count)
        return Polynomial.const(x, self.var_count)

    def poly_rows(self) -> list:
        return [[self.entry_poly(i, j) for j in range(self.cols)] for i in range(self.rows)]

    @property
    def non_basis(self) -> tuple:
        return tuple(j for j in range(1, self.cols + 1) if j not in self.basis)

    def zero_positions(self) -> list:
        return [(i, j) for i in range(self.rows) for j in range(self.cols)
                if self.entries[i][j] == 0]

    def one_positions(self, non_basis_only=True) -> list:
        cols = [j - 1 for j in self.non_basis] if non_basis_only else range(self.cols)
        return [(i, j) for i in range(self.rows) for j in cols
                if not isinstance(self.entries[i][j], Var) and self.entries[i][j] == 1]

    def to_rows(self) -> list:
        return [[str(x) if isinstance(x, Var) else x for x in row] for row in self.entries]

    def __str__(self):
        return "\n".join("[" + ", ".join(f"{str(x):>3}" for x in row) + "]" for row in self.to_rows())


@dataclass(frozen=True)
class PolySystem:
    equalities: tuple
    inequalities: tuple
    var_count: int

    def to_json(self) -> dict:
        return {
            "var_count": self.var_count,
            "equalities": [str(p) for p in self.equalities],
            "inequalities": [str(p) for p in self.inequalities],
        }

    @classmethod
    def from_json(cls, data) -> "PolySystem":
        if isinstance(data, str):
            data = json.loads(data)
        n = int(data["var_count"])
        read = lambda xs: tuple(parse_polynomial(s, n) for s in xs)
        return cls(read(data.get("equalities", [])), read(data.get("inequalities", [])), n)

    def holds_at(self, point) -> bool:
        return (all(p.evaluate(point) == 0 for p in self.equalities)
                and all(p.evaluate(point) != 0 for p in self.inequalities))


def fill_matrix(d: int, m: int, basis: Sequence[int], M: Matroid) -> TemplateMatrix:
    """Build the template matrix of ``M`` relative to ``basis``."""
    basis = tuple(sorted(basis))
    if len(basis) != d or not M.is_basis(basis):
        raise NotABasis(f"{basis} is not a basis of {M}")
    UNKNOWN = -1
    G = [[UNKNOWN] * m for _ in range(d)]
    for i, b in enumerate(basis):
        for r in range(d):
            G[r][b - 1] = 1 if r == i else 0
    non_basis = [j for j in range(1, m + 1) if j not in basis]
    bset = set(basis)
    for j in non_basis:
        for i, b in enumerate(basis):
            if not M.is_basis((bset - {b}) | {j}):
                G[i][j - 1] = 0
    # column pass: first nonzero from the top
    for j in non_basis:
        for r in range(d):
            if G[r][j - 1] != 0:
                G[r][j - 1] = 1
                break
    # row pass: first entry that is neither 0 nor 1
    for r in range(d):
        for c in range(m):
            if G[r][c] not in (0, 1):
                G[r][c] = 1
                break
    count = 0
    entries = []
    for r in range(d):
        row = []
        for c in range(m):
            if G[r][c] == UNKNOWN:
                count += 1
                row.append(Var(count))
            else:
                row.append(G[r][c])
        entries.append(tuple(row))
    return TemplateMatrix(d, m, tuple(entries), count, basis)


def det_template(T: TemplateMatrix, columns: Sequence[int]) -> Polynomial:
    """Minor of the template on the given (1-based) columns, in the given order."""
    rows = [[T.entry_poly(i, j - 1) for j in columns] for i in range(T.rows)]
    return det_poly_matrix(rows, T.var_count)


def generate_system(T: TemplateMatrix, M: Matroid) -> PolySystem:
    """Equalities (dependent d-subsets) and inequalities (bases) of X_M.

    Trivial members are dropped; the rest are reduced to sign-normalized
    primitive parts and deduplicated in order of first appearance.
    Raises :class:`ContradictionDetected` if a basis minor vanishes
    identically or a non-basis minor is a nonzero constant.
    """
    eqs, ineqs = [], []
    for J in revlex_subsets(T.rows, T.cols):
        p = det_template(T, J)
        if M.is_basis(J):
            if p.is_zero():
                raise ContradictionDetected(J, True, p)
            if p.is_constant():
                continue
            ineqs.append(normalize_sign(primitive_part(p)))
        else:
            if p.is_zero():
                continue
            if p.is_constant():
                raise ContradictionDetected(J, False, p)
            eqs.append(normalize_sign(primitive_part(p)))
    return PolySystem(tuple(dict.fromkeys(eqs)), tuple(dict.fromkeys(ineqs)), T.var_count)


# exact linear algebra on rational matrices

def _frac_matrix(A):
    return [[Fraction(x) for x in row] for row in A]


def det_rational(A) -> Fraction:
    a = _frac_matrix(A)
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                for k in range(c, n):
                    a[r][k] -= f * a[c][k]
    return det


def inverse_rational(A) -> list:
    """Gauss-Jordan inverse, pivoting on the first nonzero entry."""
    n = len(A)
    a = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(_frac_matrix(A))]
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            raise RankDeficient("matrix is singular")
        a[c], a[p] = a[p], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def matmul(A, B) -> list:
    return [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in zip(*B)] for row in A]


def columns(A, cols) -> list:
    """Submatrix on the given 1-based columns."""
    return [[row[j - 1] for j in cols] for row in A]


def matroid_of_matrix(A) -> Matroid:
    """Column matroid of a full-row-rank matrix."""
    d = len(A)
    m = len(A[0]) if d else 0
    bases = [J for J in combinations(range(1, m + 1), d) if det_rational(columns(A, J))]
    if not bases:
        raise RankDeficient(f"matrix does not have rank {d}")
    return Matroid(m, d, tuple(bases))


@dataclass(frozen=True)
class ReductionResult:
    G: tuple
    D: tuple  # diagonal entries
    normalized: tuple
    basis: tuple
    matroid: Matroid


def reduce_realization(A, M: Matroid | None = None) -> ReductionResult:
    """Find ``G`` invertible and ``D`` diagonal with ``G A D`` reduced.

    The pivot basis is the first basis of ``M`` in reverse lexicographic
    order. ``G A D`` has the identity on the basis columns and ones on the
    normal frame of the remaining columns.
    """
    A = _frac_matrix(A)
    d = len(A)
    m = len(A[0]) if d else 0
    if M is None:
        M = matroid_of_matrix(A)
    basis = first_basis_revlex(M)
    AB = columns(A, basis)
    if det_rational(AB) == 0:
        raise RankDeficient(f"columns {basis} of the matrix are dependent")
    B = inverse_rational(AB)
    BA = matmul(B, A)
    non_basis = [j for j in range(1, m + 1) if j not in basis]
    Q = columns(BA, non_basis)
    d1, d2 = scale_to_frame(Q) if non_basis else ([Fraction(1)] * d, [])
    G = [[d1[i] * x for x in row] for i, row in enumerate(B)]
    D = [Fraction(1)] * m
    for i, b in enumerate(basis):
        D[b - 1] = 1 / d1[i]
    for k, j in enumerate(non_basis):
        D[j - 1] = d2[k]
    GA = matmul(G, A)
    N = [[x * D[j] for j, x in enumerate(row)] for row in GA]
    freeze = lambda X: tuple(tuple(r) for r in X)
    return ReductionResult(freeze(G), tuple(D), freeze(N), basis, M)


def check_reduced(N, M: Matroid, basis: Sequence[int]) -> list:
    """Failures of the reduced-realization conditions (empty when all hold):
    ``N`` realizes ``M``; the basis columns form the identity; the normal frame
    entries of the other columns equal 1."""
    problems = []
    d = len(N)
    m = len(N[0]) if d else 0
    for J in combinations(range(1, m + 1), d):
        if bool(det_rational(columns(N, J))) != M.is_basis(J):
            problems.append(f"C1: minor pattern differs on columns {J}")
    for i, b in enumerate(basis):
        col = [N[r][b - 1] for r in range(d)]
        if col != [int(r == i) for r in range(d)]:
            problems.append(f"C2: column {b} is not the unit vector e{i + 1}")
    non_basis = [j for j in range(1, m + 1) if j not in basis]
    Q = columns(N, non_basis)
    if non_basis:
        _, frame = compute_frame(Q)
        for i, k in frame.positions:
            if Q[i][k] != 1:
                problems.append(f"C3: frame entry ({i}, column {non_basis[k]}) is {Q[i][k]}")
    return problems


# rational witnesses

def candidate_values(max_height: int = 3) -> list:
    """Small rationals, in search order: 0, 1, 2, .., -1, -2, .., then the
    non-integers by increasing denominator."""
    vals = [Fraction(k) for k in range(max_height + 1)]
    vals += [Fraction(-k) for k in range(1, max_height + 1)]
    seen = set(vals)
    for q in range(2, max_height + 1):
        for p in list(range(1, max_height + 1)) + list(range(-1, -max_height - 1, -1)):
            x = Fraction(p, q)
            if x not in seen:
                seen.add(x)
                vals.append(x)
    return vals


class _Budget:
    def __init__(self, n):
        self.left = n

    def spend(self):
        self.left -= 1
        return self.left >= 0


def _linear_pivot(eqs):
    for p in eqs:
        for k in p.variables():
            if p.degree_in(k) != 1:
                continue
            coeff = rest = None
            terms_k, terms_rest = {}, {}
            for e, c in p.terms.items():
                if e[k]:
                    terms_k[e] = c
                else:
                    terms_rest[e] = c
            if len(terms_k) == 1:
                (e, c), = terms_k.items()
                if sum(e) == 1:
                    coeff = c
                    rest = Polynomial(terms_rest, p.nvars)
                    return k, rest, coeff
    return None


def _search(eqs, ineqs, values, budget, elim):
    while True:
        new_eqs = []
        for p in eqs:
            if p.is_zero():
                continue
            if p.is_constant():
                return None
            new_eqs.append(p)
        new_ineqs = []
        for p in ineqs:
            if p.is_zero():
                return None
            if not p.is_constant():
                new_ineqs.append(p)
        eqs, ineqs = new_eqs, new_ineqs
        piv = _linear_pivot(eqs)
        if piv is None:
            break
        k, rest, coeff = piv
        elim = elim + [(k, rest, coeff)]
        eqs = [substitute_linear(p, k, rest, coeff) for p in eqs]
        ineqs = [substitute_linear(p, k, rest, coeff) for p in ineqs]
    if not eqs and not ineqs:
        return {}, elim
    live = sorted({k for p in eqs + ineqs for k in p.variables()})
    in_eqs = sorted({k for p in eqs for k in p.variables()})
    k = (in_eqs or live)[0]
    for v in values:
        if not budget.spend():
            return None
        found = _search([substitute_rational(p, k, v)[0] for p in eqs],
                        [substitute_rational(p, k, v)[0] for p in ineqs],
                        values, budget, elim)
        if found is not None:
            assignment, elim_out = found
            assignment = dict(assignment)
            assignment[k] = v
            return assignment, elim_out
    return None


def find_rational_point(S: PolySystem, max_height: int = 3, max_nodes: int = 10**6):
    """A point with small rational coordinates satisfying ``S``, or ``None``.

    Variables that occur linearly with a constant coefficient in some equality
    are solved for; the rest are branched over :func:`candidate_values`.
    Any returned point is verified exactly against the original system.
    """
    n = S.var_count
    values = candidate_values(max_height)
    found = _search(list(S.equalities), list(S.inequalities), values,
                    _Budget(max_nodes), [])
    if found is None:
        return None
    assignment, elim = found
    point = [Fraction(0)] * n
    for k, v in assignment.items():
        point[k] = v
    for k, rest, coeff in reversed(elim):
        point[k] = -rest.evaluate(point) / coeff
    point = tuple(point)
    return point if S.holds_at(point) else None

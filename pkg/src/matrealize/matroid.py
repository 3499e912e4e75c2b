"""Matroids given by their basis family.

Elements of the ground set are the integers ``1..m``. A basis is stored as a
sorted tuple; the family as a sorted tuple of such tuples, so two matroids
compare equal exactly when they have the same labelled bases.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, permutations
from typing import Iterable, Sequence

from .errors import (
    EmptyBasisFamily,
    ExchangeViolation,
    NotAPermutation,
    OutOfRange,
    WrongCardinality,
)

Subset = tuple  # sorted tuple of ground-set elements


@dataclass(frozen=True)
class Matroid:
    ground_size: int
    rank: int
    bases: tuple = field()

    def __post_init__(self):
        m, d = self.ground_size, self.rank
        if m < 0 or not 0 <= d <= m:
            raise WrongCardinality(f"need 0 <= d <= m, got d={d}, m={m}")
        normed = sorted({tuple(sorted(b)) for b in self.bases})
        if not normed:
            raise EmptyBasisFamily("a matroid needs at least one basis")
        for b in normed:
            if len(b) != d or len(set(b)) != d:
                raise WrongCardinality(f"basis {b} does not have {d} elements")
            if b and (b[0] < 1 or b[-1] > m):
                raise WrongCardinality(f"basis {b} leaves the ground set 1..{m}")
        object.__setattr__(self, "bases", tuple(normed))
        _check_exchange(self.bases, self.basis_set)

    @cached_property
    def basis_set(self) -> frozenset:
        return frozenset(self.bases)

    def is_basis(self, subset: Iterable[int]) -> bool:
        return tuple(sorted(subset)) in self.basis_set

    @property
    def ground_set(self) -> range:
        return range(1, self.ground_size + 1)

    def __repr__(self):
        body = " ".join("".join(map(str, b)) if self.ground_size < 10 else str(b)
                        for b in self.bases)
        return f"Matroid(m={self.ground_size}, d={self.rank}, bases=[{body}])"


def _check_exchange(bases, basis_set):
    for b1 in bases:
        s1 = set(b1)
        for b2 in bases:
            if b1 == b2:
                continue
            s2 = set(b2)
            only2 = s2 - s1
            for x in s1 - s2:
                rest = s1 - {x}
                if not any(tuple(sorted(rest | {y})) in basis_set for y in only2):
                    raise ExchangeViolation(b1, b2, x)


def construct_matroid(m: int, d: int, bases: Iterable[Iterable[int]]) -> Matroid:
    """Validate a basis family and wrap it as a :class:`Matroid`.

    Duplicate bases are merged. Raises ``EmptyBasisFamily``,
    ``WrongCardinality`` or ``ExchangeViolation``.
    """
    return Matroid(m, d, tuple(tuple(b) for b in bases))


def uniform_matroid(d: int, m: int) -> Matroid:
    return Matroid(m, d, tuple(combinations(range(1, m + 1), d)))


def subset_rank(M: Matroid, S: Iterable[int]) -> int:
    S = set(S)
    for e in S:
        if not 1 <= e <= M.ground_size:
            raise OutOfRange(f"element {e} not in 1..{M.ground_size}")
    return max(len(S.intersection(b)) for b in M.bases)


def dual_matroid(M: Matroid) -> Matroid:
    E = set(M.ground_set)
    return Matroid(M.ground_size, M.ground_size - M.rank,
                   tuple(tuple(sorted(E - set(b))) for b in M.bases))


def _check_permutation(p: Sequence[int], m: int):
    if len(p) != m or sorted(p) != list(range(1, m + 1)):
        raise NotAPermutation(f"{tuple(p)} is not a permutation of 1..{m}")


def relabel(M: Matroid, p: Sequence[int]) -> Matroid:
    """Relabel element ``i`` as ``p[i-1]``."""
    _check_permutation(p, M.ground_size)
    return Matroid(M.ground_size, M.rank,
                   tuple(tuple(sorted(p[e - 1] for e in b)) for b in M.bases))


def invert_permutation(p: Sequence[int]) -> tuple:
    inv = [0] * len(p)
    for i, image in enumerate(p, start=1):
        inv[image - 1] = i
    return tuple(inv)


def revlex_key(subset: Sequence[int]) -> tuple:
    """Sort key for the reverse lexicographic order on equal-size subsets.

    Subsets are compared from their largest element downwards; the one whose
    first differing element is smaller comes first.
    """
    return tuple(sorted(subset, reverse=True))


def revlex_subsets(d: int, m: int) -> list:
    """All ``d``-subsets of ``1..m`` in reverse lexicographic order."""
    return sorted(combinations(range(1, m + 1), d), key=revlex_key)


def first_basis_revlex(M: Matroid) -> Subset:
    return min(M.bases, key=revlex_key)


class _PermutationTable:
    """For a fixed (d, m), the action of every permutation of 1..m on the
    lexicographically ordered d-subsets, as an index array."""

    _cache: dict = {}

    def __init__(self, d, m):
        import numpy as np

        self.subsets = list(combinations(range(1, m + 1), d))
        index = {s: i for i, s in enumerate(self.subsets)}
        self.perms = list(permutations(range(1, m + 1)))
        table = np.empty((len(self.perms), len(self.subsets)), dtype=np.int64)
        for k, p in enumerate(self.perms):
            for i, s in enumerate(self.subsets):
                table[k, index[tuple(sorted(p[e - 1] for e in s))]] = i
        # table[k, j] = index of the subset mapped onto position j by perm k
        self.table = table
        n = len(self.subsets)
        self.weights = np.array([1 << (n - 1 - j) for j in range(n)], dtype=np.int64) \
            if n <= 62 else None
        self.index = index

    @classmethod
    def get(cls, d, m):
        key = (d, m)
        if key not in cls._cache:
            cls._cache[key] = cls(d, m)
        return cls._cache[key]


def _canonical_by_python(M: Matroid):
    best, best_p = None, None
    for p in permutations(M.ground_set):
        key = sorted(tuple(sorted(p[e - 1] for e in b)) for b in M.bases)
        if best is None or key < best:
            best, best_p = key, p
    return best, best_p


def canonicalize(M: Matroid) -> tuple:
    """Return ``(canonical matroid, permutation)``.

    The canonical copy is the relabelling whose sorted list of sorted bases is
    lexicographically smallest among all ``m!`` relabellings. The returned
    permutation maps ``M`` onto it: ``relabel(M, p) == canonical``.
    """
    m, d = M.ground_size, M.rank
    if m > 7:
        key, p = _canonical_by_python(M)
        return Matroid(m, d, tuple(key)), tuple(p)
    import numpy as np

    tab = _PermutationTable.get(d, m)
    if tab.weights is None:
        key, p = _canonical_by_python(M)
        return Matroid(m, d, tuple(key)), tuple(p)
    indicator = np.zeros(len(tab.subsets), dtype=np.int64)
    for b in M.bases:
        indicator[tab.index[b]] = 1
    # Equal-size sorted families compare like their indicator vectors in
    # lexicographic subset order, reversed: the smaller family has the 1 first.
    codes = indicator[tab.table] @ tab.weights
    k = int(np.argmax(codes))
    p = tab.perms[k]
    return relabel(M, p), tuple(p)


def is_canonical(M: Matroid) -> bool:
    return canonicalize(M)[0] == M


def bases_from_code(code: int, d: int, m: int) -> tuple:
    """Decode the indicator integer used by the enumerator (bit ``n-1-i`` set
    for the ``i``-th lexicographic subset)."""
    subsets = list(combinations(range(1, m + 1), d))
    n = len(subsets)
    return tuple(s for i, s in enumerate(subsets) if code >> (n - 1 - i) & 1)

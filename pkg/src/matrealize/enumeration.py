"""Enumeration of matroids up to isomorphism, and catalog files.

The search runs over basis families of a fixed rank ``d`` on ``m`` elements,
deciding the ``C(m, d)`` subsets in lexicographic order. Each exchange
requirement "B1, B2 bases and x in B1 - B2 implies some (B1 - x) + y is a
basis" is a clause over the subset variables, so partial families are pruned
(and forced) by unit propagation. Complete families are reduced to canonical
form and deduplicated.
"""

from __future__ import annotations

import datetime
import hashlib
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from pathlib import Path

import numpy as np

from . import __version__
from .errors import (
    CaseOutOfSupportedRange,
    ChecksumMismatch,
    MatroidError,
    ParseError,
    ValidationError,
)
from .matroid import Matroid, _PermutationTable, bases_from_code, canonicalize

MAX_SUPPORTED_M = 7
HEADER_PREFIX = "#matrealize-catalog v1"


@dataclass(frozen=True)
class Catalog:
    case: tuple
    entries: tuple
    meta: dict = field(default_factory=dict, compare=False)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @property
    def count(self):
        return len(self.entries)


def make_catalog(d, m, matroids, **meta) -> Catalog:
    entries = tuple(sorted(matroids, key=lambda M: M.bases))
    info = {
        "generator": f"matrealize {__version__}",
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "count": len(entries),
    }
    info.update(meta)
    return Catalog((d, m), entries, info)


class _ExchangeSearch:
    """Unit-propagating depth-first search over basis families."""

    def __init__(self, d, m):
        self.d, self.m = d, m
        self.subsets = list(combinations(range(1, m + 1), d))
        n = self.n = len(self.subsets)
        index = {s: i for i, s in enumerate(self.subsets)}
        # clause = (neg literals, pos literals): not(i) or not(j) or any(cands)
        clauses = []
        for i, si in enumerate(self.subsets):
            for j, sj in enumerate(self.subsets):
                if i == j:
                    continue
                a, b = set(si), set(sj)
                for x in sorted(a - b):
                    cands = tuple(index[tuple(sorted((a - {x}) | {y}))] for y in sorted(b - a))
                    clauses.append(((i, j), cands))
        self.clauses = clauses
        self.watch = [[] for _ in range(n)]
        for c, (neg, pos) in enumerate(clauses):
            for v in set(neg) | set(pos):
                self.watch[v].append(c)
        self.weights = [1 << (n - 1 - i) for i in range(n)]

    def _propagate(self, status, trail, start):
        """Propagate assignments trail[start:]. Returns False on conflict."""
        clauses, watch = self.clauses, self.watch
        k = start
        while k < len(trail):
            v = trail[k]
            k += 1
            for c in watch[v]:
                neg, pos = clauses[c]
                free = None
                nfree = 0
                satisfied = False
                for u in neg:
                    s = status[u]
                    if s == 0:
                        satisfied = True
                        break
                    if s < 0:
                        nfree += 1
                        free = (u, 0)
                if satisfied:
                    continue
                for u in pos:
                    s = status[u]
                    if s == 1:
                        satisfied = True
                        break
                    if s < 0:
                        nfree += 1
                        free = (u, 1)
                if satisfied:
                    continue
                if nfree == 0:
                    return False
                if nfree == 1:
                    u, val = free
                    status[u] = val
                    trail.append(u)
        return True

    def _assign(self, status, trail, v, val):
        start = len(trail)
        status[v] = val
        trail.append(v)
        return self._propagate(status, trail, start)

    @staticmethod
    def _undo(status, trail, mark):
        while len(trail) > mark:
            status[trail.pop()] = -1

    def initial_state(self, prefix=()):
        """State after forcing the first subset to be a basis and applying the
        decisions in ``prefix`` (pairs ``(var, value)``); None on conflict."""
        status = [-1] * self.n
        trail = []
        if not self._assign(status, trail, 0, 1):
            return None
        for v, val in prefix:
            if status[v] >= 0:
                if status[v] != val:
                    return None
                continue
            if not self._assign(status, trail, v, val):
                return None
        return status, trail

    def families(self, prefix=()):
        """Yield every exchange-closed family (as an indicator code) that
        contains the first subset and is compatible with ``prefix``."""
        state = self.initial_state(prefix)
        if state is None:
            return
        status, trail = state
        yield from self._dfs(status, trail, 0)

    def _dfs(self, status, trail, v):
        n = self.n
        while v < n and status[v] >= 0:
            v += 1
        if v == n:
            yield sum(w for w, s in zip(self.weights, status) if s == 1)
            return
        for val in (1, 0):
            mark = len(trail)
            if self._assign(status, trail, v, val):
                yield from self._dfs(status, trail, v + 1)
            self._undo(status, trail, mark)

    def branch_prefixes(self, depth):
        """Decision prefixes on the first ``depth`` free subsets, for fan-out."""
        free = list(range(1, min(self.n, depth + 1)))
        out = [()]
        for v in free:
            out = [p + ((v, val),) for p in out for val in (1, 0)]
        return out


class _Canonicalizer:
    def __init__(self, d, m):
        tab = _PermutationTable.get(d, m)
        self.table = tab.table
        self.weights = tab.weights
        self.n = len(tab.subsets)

    def canonical_code(self, code):
        n = self.n
        ind = np.array([(code >> (n - 1 - i)) & 1 for i in range(n)], dtype=np.int64)
        return int((ind[self.table] @ self.weights).max())


def _search_branch(args):
    d, m, prefix = args
    search = _ExchangeSearch(d, m)
    canon = _Canonicalizer(d, m)
    found = set()
    for code in search.families(prefix):
        found.add(canon.canonical_code(code))
    return found


_CACHE: dict = {}


def enumerate_matroids(d: int, m: int, *, allow_large: bool = False, jobs: int = 1,
                       use_cache: bool = True) -> Catalog:
    """All isomorphism classes of rank-``d`` matroids on ``m`` elements.

    ``m > 7`` is refused unless ``allow_large`` is set. With ``jobs > 1`` the
    top-level branches are searched in separate processes; the result does not
    depend on ``jobs``. Catalogs are immutable and memoized per process.
    """
    if use_cache and (d, m) in _CACHE:
        return _CACHE[d, m]
    cat = _enumerate(d, m, allow_large, jobs)
    if use_cache:
        _CACHE[d, m] = cat
    return cat


def _enumerate(d, m, allow_large, jobs):
    if not 0 <= d <= m:
        raise CaseOutOfSupportedRange(f"need 0 <= d <= m, got d={d}, m={m}")
    if m > MAX_SUPPORTED_M and not allow_large:
        raise CaseOutOfSupportedRange(
            f"m={m} exceeds the supported maximum {MAX_SUPPORTED_M}; pass allow_large=True")
    codes = set()
    if m > MAX_SUPPORTED_M:
        # canonical forms by explicit permutation search
        search = _ExchangeSearch(d, m)
        mats = {canonicalize(Matroid(m, d, bases_from_code(c, d, m)))[0]
                for c in search.families()}
        return make_catalog(d, m, mats)
    n = comb(m, d)
    if jobs > 1 and n > 4:
        prefixes = _ExchangeSearch(d, m).branch_prefixes(3)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_search_branch, [(d, m, p) for p in prefixes]):
                codes |= part
    else:
        codes = _search_branch((d, m, ()))
    mats = [Matroid(m, d, bases_from_code(c, d, m)) for c in codes]
    return make_catalog(d, m, mats)


# catalog files

def _record_line(M: Matroid) -> str:
    return json.dumps({"bases": [list(b) for b in M.bases]}, separators=(",", ":"))


def _checksum(lines) -> str:
    h = hashlib.sha256()
    for line in lines:
        h.update(line.encode("utf-8"))
        h.update(b"\n")
    return h.hexdigest()


def dumps_catalog(catalog: Catalog) -> str:
    d, m = catalog.case
    records = [_record_line(M) for M in catalog.entries]
    out = [f"{HEADER_PREFIX} d={d} m={m} count={len(records)}"]
    out.extend(records)
    out.append(f"#sha256={_checksum(records)}")
    return "\n".join(out) + "\n"


def write_catalog(path, catalog: Catalog) -> None:
    Path(path).write_text(dumps_catalog(catalog), encoding="utf-8")


def _parse_header(line):
    if not line.startswith(HEADER_PREFIX):
        raise ParseError("missing catalog header", 1)
    fields = {}
    for tok in line[len(HEADER_PREFIX):].split():
        key, sep, val = tok.partition("=")
        if not sep:
            raise ParseError(f"malformed header field {tok!r}", 1)
        try:
            fields[key] = int(val)
        except ValueError:
            raise ParseError(f"non-integer header value {tok!r}", 1) from None
    if set(fields) != {"d", "m", "count"}:
        raise ParseError("header must carry d, m and count", 1)
    return fields["d"], fields["m"], fields["count"]


def loads_catalog(text: str) -> Catalog:
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty catalog", 1)
    d, m, count = _parse_header(lines[0])
    if len(lines) < 2 or not lines[-1].startswith("#sha256="):
        raise ParseError("missing checksum trailer (truncated file?)", len(lines) + 1)
    records = lines[1:-1]
    if len(records) != count:
        raise ParseError(f"header announces {count} records, found {len(records)}", len(lines))
    if _checksum(records) != lines[-1][len("#sha256="):].strip():
        raise ChecksumMismatch("record checksum does not match trailer")
    entries = []
    for lineno, line in enumerate(records, start=2):
        try:
            obj = json.loads(line)
            bases = obj["bases"]
            if not isinstance(bases, list):
                raise TypeError
        except (ValueError, KeyError, TypeError):
            raise ParseError(f"malformed record {line!r}", lineno) from None
        try:
            M = Matroid(m, d, tuple(tuple(b) for b in bases))
        except (MatroidError, TypeError) as exc:
            raise ValidationError(f"entry on line {lineno}: {exc}") from exc
        if canonicalize(M)[0] != M:
            raise ValidationError(f"entry on line {lineno} is not in canonical form")
        if entries and not entries[-1].bases < M.bases:
            raise ValidationError(f"entry on line {lineno} is out of order or duplicated")
        entries.append(M)
    return Catalog((d, m), tuple(entries), {"count": len(entries)})


def read_catalog(path) -> Catalog:
    return loads_catalog(Path(path).read_text(encoding="utf-8"))


def catalog_io(path, mode, catalog=None):
    """Read or write a catalog file (``mode`` is ``"read"`` or ``"write"``)."""
    if mode == "read":
        return read_catalog(path)
    if mode == "write":
        if catalog is None:
            raise ValueError("write mode needs a catalog")
        write_catalog(path, catalog)
        return None
    raise ValueError(f"unknown mode {mode!r}")

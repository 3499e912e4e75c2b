"""Irreducibility certificates for the zero sets of defining systems.

The classifier recognises a fixed list of families whose members are
irreducible for elementary reasons (affine spaces, linear varieties, quadrics
of rank at least 3, hypersurfaces linear in one variable with coprime
coefficients, and products of these) after two status-preserving reductions:
dropping variables that occur nowhere and solving equalities for a variable
that occurs linearly with a constant coefficient. Everything else is reported
as unclassified.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .poly import (
    Polynomial,
    divexact,
    normalize_sign,
    parse_polynomial,
    poly_gcd,
    primitive_part,
    quadratic_form_rank,
    squarefree_factors_of,
    substitute_linear,
)

IRREDUCIBLE = "irreducible"
EMPTY = "empty"
REDUCIBLE = "reducible"
UNCLASSIFIED = "unclassified"


@dataclass
class Verdict:
    kind: str
    family: str | None = None
    certificate: dict = field(default_factory=dict)
    trace: list = field(default_factory=list)

    @property
    def is_irreducible(self):
        return self.kind == IRREDUCIBLE

    @property
    def label(self):
        return f"{self.kind}({self.family})" if self.family else self.kind

    def to_json(self) -> dict:
        return {"kind": self.kind, "family": self.family,
                "certificate": self.certificate, "trace": self.trace}


@dataclass
class Simplified:
    blocks: list          # lists of polynomials with pairwise disjoint supports
    var_count: int        # variables still occurring
    trace: list
    inequalities: list = field(default_factory=list)

    @property
    def equalities(self):
        return [p for b in self.blocks for p in b]


def _tidy(polys):
    out = []
    for p in polys:
        if p.is_zero():
            continue
        q = normalize_sign(primitive_part(p))
        if q not in out:
            out.append(q)
    return out


def _linear_pivot(polys):
    """First (equality, variable) where the variable occurs only in a degree-1
    term with constant coefficient; scans variables in index order."""
    for idx, p in enumerate(polys):
        if p.is_constant():
            continue
        for k in p.variables():
            if p.degree_in(k) != 1:
                continue
            with_k = [(e, c) for e, c in p.terms.items() if e[k]]
            if len(with_k) == 1 and sum(with_k[0][0]) == 1:
                rest = Polynomial({e: c for e, c in p.terms.items() if not e[k]}, p.nvars)
                return idx, k, rest, with_k[0][1]
    return None


def _split_blocks(polys):
    blocks = []  # (variable set, members)
    for p in polys:
        vs = set(p.variables())
        merged = [b for b in blocks if b[0] & vs]
        for b in merged:
            blocks.remove(b)
            vs |= b[0]
        members = [q for b in merged for q in b[1]] + [p]
        blocks.append((vs, members))
    blocks.sort(key=lambda b: min(b[0]) if b[0] else -1)
    return [members for _, members in blocks]


def simplify_system(eqs: Sequence[Polynomial], var_count: int, ineqs=None,
                    saturate: bool = False) -> Simplified:
    """Reduce a system of equalities to independent blocks.

    Repeats until nothing changes: tidy (drop zeros, primitive parts,
    deduplicate), solve for a variable occurring linearly with constant
    coefficient, drop generators that are multiples of another generator.
    With ``saturate`` set, factors shared with an inequality are removed from
    each equality first (sound for the set where the inequalities hold).
    Unused variables are then stripped and the equalities split into blocks
    with disjoint variable support.
    """
    eqs = [p.extend(var_count) for p in eqs]
    ineqs = [p.extend(var_count) for p in (ineqs or [])]
    trace = []
    while True:
        before = list(eqs)
        eqs = _tidy(eqs)
        if len(eqs) != len(before):
            trace.append({"step": "tidy", "dropped": len(before) - len(eqs)})
        if any(p.is_constant() for p in eqs):
            trace.append({"step": "inconsistent", "constant": str(next(p for p in eqs if p.is_constant()))})
            break
        if saturate and ineqs:
            changed = False
            for i, p in enumerate(eqs):
                q = p
                for h in ineqs:
                    if not h.is_constant():
                        q = squarefree_factors_of(q, h)
                if q != p:
                    trace.append({"step": "saturate", "equality": str(p), "result": str(q)})
                    eqs[i] = q
                    changed = True
            if changed:
                continue
        piv = _linear_pivot(eqs)
        if piv is not None:
            idx, k, rest, coeff = piv
            trace.append({"step": "eliminate", "var": k + 1, "using": str(eqs[idx])})
            eqs = [substitute_linear(p, k, rest, coeff) for j, p in enumerate(eqs) if j != idx]
            ineqs = [substitute_linear(p, k, rest, coeff) for p in ineqs]
            continue
        redundant = _redundant_index(eqs)
        if redundant is not None:
            j, i = redundant
            trace.append({"step": "drop-multiple", "equality": str(eqs[j]), "of": str(eqs[i])})
            del eqs[j]
            continue
        break
    used = sorted({k for p in eqs for k in p.variables()})
    stripped = var_count - len(used)
    if stripped:
        trace.append({"step": "strip-unused", "count": stripped})
    blocks = _split_blocks(eqs)
    if len(blocks) > 1:
        trace.append({"step": "split", "blocks": len(blocks)})
    return Simplified(blocks, len(used), trace, ineqs)


def _redundant_index(eqs):
    for j, g in enumerate(eqs):
        for i, f in enumerate(eqs):
            if i != j and f.degree() <= g.degree() and divexact(g, f) is not None:
                return j, i
    return None


def replay_trace(eqs: Sequence[Polynomial], var_count: int, trace, ineqs=None) -> list:
    """Re-apply the recorded eliminations and check they reproduce the
    simplification; returns the reduced equalities."""
    result = simplify_system(eqs, var_count, ineqs, saturate=any(
        t["step"] == "saturate" for t in trace))
    if result.trace != list(trace):
        raise ValueError("trace does not replay")
    return result.equalities


def _solve_linear(block, nvars):
    """Consistency of a system of degree <= 1 equations, by exact elimination."""
    rows = []
    for p in block:
        row = [Fraction(0)] * (nvars + 1)
        for e, c in p.terms.items():
            if any(e):
                row[e.index(1)] += c
            else:
                row[nvars] -= c
        rows.append(row)
    rank = 0
    for col in range(nvars):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col] / rows[rank][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    consistent = all(any(row[:nvars]) or not row[nvars] for row in rows)
    return consistent, rank


def classify_block(block: Sequence[Polynomial]) -> Verdict:
    if not block:
        return Verdict(IRREDUCIBLE, "AffineSpace")
    nvars = block[0].nvars
    if any(p.is_constant() for p in block):
        return Verdict(EMPTY, certificate={"constant": str(next(p for p in block if p.is_constant()))})
    if all(p.degree() <= 1 for p in block):
        ok, rank = _solve_linear(block, nvars)
        if not ok:
            return Verdict(EMPTY, certificate={"linear_inconsistent": [str(p) for p in block]})
        return Verdict(IRREDUCIBLE, "Linear", {"rank": rank})
    if len(block) == 1:
        f = block[0]
        if f.degree() == 2:
            rank = quadratic_form_rank(f)
            if rank >= 3:
                return Verdict(IRREDUCIBLE, "QuadricRankGE3", {"polynomial": str(f), "quadric_rank": rank})
            if rank == 1:
                return Verdict(IRREDUCIBLE, "Linear", {"polynomial": str(f), "quadric_rank": 1})
            return Verdict(REDUCIBLE, certificate={"polynomial": str(f), "quadric_rank": rank,
                                                   "split": "two distinct hyperplanes"})
        common = None
        for k in f.variables():
            if f.degree_in(k) != 1:
                continue
            xk = Polynomial.var(k, nvars)
            A = Polynomial({e[:k] + (0,) + e[k + 1:]: c for e, c in f.terms.items() if e[k]}, nvars)
            B = f - A * xk
            g = poly_gcd(A, B)
            if g.is_constant():
                return Verdict(IRREDUCIBLE, "RationalHypersurface",
                               {"polynomial": str(f), "var": k + 1, "A": str(A), "B": str(B)})
            common = common or (k, g)
        if common is not None:
            k, g = common
            return Verdict(REDUCIBLE, certificate={"polynomial": str(f), "factor": str(g),
                                                   "cofactor": str(divexact(f, g))})
    return Verdict(UNCLASSIFIED, certificate={"block": [str(p) for p in block]})


def classify_variety(S, *, saturate: bool = False) -> Verdict:
    """Classify the zero set of the equalities of ``S``.

    ``S`` is a :class:`~matrealize.realize.PolySystem` (or anything with
    ``equalities``, ``inequalities`` and ``var_count``). With ``saturate``,
    equality factors shared with inequalities are discarded first, so the
    verdict concerns the closure of the locally closed set cut out by both.
    """
    simp = simplify_system(S.equalities, S.var_count, S.inequalities, saturate=saturate)
    verdicts = [classify_block(b) for b in simp.blocks]
    trace = simp.trace
    blocks = [{"equalities": [str(p) for p in b], "verdict": v.label,
               "certificate": v.certificate} for b, v in zip(simp.blocks, verdicts)]
    cert = {"blocks": blocks}
    if any(v.kind == EMPTY for v in verdicts):
        return Verdict(EMPTY, None, cert, trace)
    if any(v.kind == UNCLASSIFIED for v in verdicts):
        return Verdict(UNCLASSIFIED, None, cert, trace)
    if any(v.kind == REDUCIBLE for v in verdicts):
        return Verdict(REDUCIBLE, None, cert, trace)
    if not verdicts:
        return Verdict(IRREDUCIBLE, "AffineSpace", cert, trace)
    if len(verdicts) == 1:
        return Verdict(IRREDUCIBLE, verdicts[0].family, cert, trace)
    return Verdict(IRREDUCIBLE, "ProductOfIrreducibles", cert, trace)


def system_from_strings(equalities, var_count, inequalities=()):
    from .realize import PolySystem

    return PolySystem(tuple(parse_polynomial(s, var_count) for s in equalities),
                      tuple(parse_polynomial(s, var_count) for s in inequalities), var_count)

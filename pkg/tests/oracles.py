"""Independent reference implementations used only by the tests."""

from itertools import combinations, permutations

import sympy


def exchange_ok(bases):
    bset = set(bases)
    for b1 in bases:
        for b2 in bases:
            for x in set(b1) - set(b2):
                if not any(tuple(sorted((set(b1) - {x}) | {y})) in bset
                           for y in set(b2) - set(b1)):
                    return False
    return True


def brute_force_matroids(d, m):
    """Canonical basis families of all rank-d matroids on m elements, by
    trying every nonempty family of d-subsets and every relabelling."""
    subsets = list(combinations(range(1, m + 1), d))
    perms = list(permutations(range(1, m + 1)))
    found = set()
    for mask in range(1, 1 << len(subsets)):
        fam = [s for i, s in enumerate(subsets) if mask >> i & 1]
        if not exchange_ok(fam):
            continue
        best = min(sorted(tuple(sorted(p[e - 1] for e in b)) for b in fam) for p in perms)
        found.add(tuple(best))
    return found


def boards(mask):
    """(S0, S) as lists of strings over {'k','w','g'}: black, white, green."""
    n = len(mask)
    r = len(mask[0]) if n else 0
    s = [["w" if mask[i][j] else "k" for j in range(r)] for i in range(n)]
    s0 = [row[:] for row in s]
    painted = set()
    for j in range(r):
        i = next((i for i in range(n) if s[i][j] == "w"), None)
        if i is not None:
            painted.add((i, j))
            s[i][j] = "b"
    for i in range(n):
        j = next((j for j in range(r) if s[i][j] == "w"), None)
        if j is not None:
            painted.add((i, j))
            s[i][j] = "r"
    final = [["g" if (i, j) in painted else s0[i][j] for j in range(r)] for i in range(n)]
    return s0, final


def line_deletion_ok(mask, line):
    """Exactly one green square on the line, and deletion commutes with the
    board construction."""
    kind, k = line
    _, s = boards(mask)
    if kind == "row":
        greens = s[k].count("g")
        smaller = [row for i, row in enumerate(mask) if i != k]
        s_del = [row for i, row in enumerate(s) if i != k]
    else:
        greens = sum(row[k] == "g" for row in s)
        smaller = [[x for j, x in enumerate(row) if j != k] for row in mask]
        s_del = [[x for j, x in enumerate(row) if j != k] for row in s]
    if greens != 1:
        return False
    if not smaller or not smaller[0]:
        return True
    return boards(smaller)[1] == s_del


def to_sympy(p, symbols=None):
    n = p.nvars
    xs = symbols or sympy.symbols(f"t1:{n + 1}") if n else ()
    expr = sympy.Integer(0)
    for e, c in p.terms.items():
        term = sympy.Integer(c)
        for k, x in enumerate(e):
            term *= xs[k] ** x
        expr += term
    return sympy.expand(expr)

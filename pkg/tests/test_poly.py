from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from matrealize.errors import ExponentOverflow, NotAQuadric, ZeroPolynomial
from matrealize.poly import (
    Polynomial,
    content_primitive,
    det_poly_matrix,
    divexact,
    parse_polynomial,
    poly_arithmetic,
    poly_gcd,
    quadratic_form_rank,
    substitute,
    substitute_rational,
)

from oracles import to_sympy

N = 3
t1, t2, t3 = Polynomial.gens(N)


def P(text, n=N):
    return parse_polynomial(text, n)


monomials = st.tuples(*[st.integers(0, 2)] * N)
polys = st.dictionaries(monomials, st.integers(-5, 5), max_size=5).map(lambda d: Polynomial(d, N))


def random_poly(rng, n=N, terms=4, deg=2, coeff=5):
    d = {}
    for _ in range(terms):
        e = tuple(rng.randint(0, deg) for _ in range(n))
        d[e] = rng.randint(-coeff, coeff)
    return Polynomial(d, n)


def test_arithmetic_examples():
    assert poly_arithmetic("add", t1, -t1).is_zero()
    assert poly_arithmetic("mul", t1 + 1, t1 - 1) == t1 ** 2 - 1
    assert poly_arithmetic("pow", t1 + t2, 2) == P("t1^2 + 2*t1*t2 + t2^2")
    assert poly_arithmetic("neg", t1) == -t1


def test_zero_and_normal_form():
    p = Polynomial({(1, 0, 0): 2, (0, 1, 0): 0}, N) - 2 * t1
    assert p.is_zero() and str(p) == "0" and not p.terms
    assert 0 not in (t1 * t2 - t1 * t2 + t3).terms.values()


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert a - a == Polynomial({}, N)


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_arithmetic_agrees_with_sympy(a, b):
    assert to_sympy(a * b) == sympy.expand(to_sympy(a) * to_sympy(b))
    assert to_sympy(a + b) == sympy.expand(to_sympy(a) + to_sympy(b))


def test_text_form():
    assert str(P("t1*t2 - t3 + 1")) == "t1*t2 - t3 + 1"
    assert str(P("1 + t3 - 2*t2*t1")) == "-2*t1*t2 + t3 + 1"
    assert str(t1 ** 3 * t2) == "t1^3*t2"
    assert P(str(P("3*t1^2*t3 - t2 + 7"))) == P("3*t1^2*t3 - t2 + 7")


def test_grevlex_order():
    # degree first; ties: smaller exponent of t1 is larger (t1 < t2 < t3)
    assert [str(Polynomial({e: 1}, N)) for e, _ in P("t1 + t2 + t3 + t1*t2 + 1").sorted_terms()] == \
        ["t1*t2", "t3", "t2", "t1", "1"]


def test_exponent_cap():
    with pytest.raises(ExponentOverflow):
        t1 ** 1000


def test_det_examples():
    one, zero = Polynomial.const(1, 1), Polynomial.const(0, 1)
    s = Polynomial.var(0, 1)
    assert det_poly_matrix([[one, zero], [zero, one]], 1) == 1
    assert det_poly_matrix([[one, one], [one, s]], 1) == s - 1


def random_template(rng, d, nvars):
    entries = []
    k = 0
    for _ in range(d):
        row = []
        for _ in range(d):
            x = rng.random()
            if x < 0.3:
                row.append(Polynomial.const(0, nvars))
            elif x < 0.5 or k >= nvars:
                row.append(Polynomial.const(rng.choice([1, -1]), nvars))
            else:
                row.append(Polynomial.var(k, nvars))
                k += 1
        entries.append(row)
    return entries


def test_det_matches_leibniz_oracle(rng):
    for _ in range(60):
        d = rng.randint(1, 4)
        rows = random_template(rng, d, 8)
        expected = sympy.Matrix([[to_sympy(x) for x in row] for row in rows]).det(method="berkowitz")
        assert to_sympy(det_poly_matrix(rows, 8)) == sympy.expand(expected)


def test_det_alternating(rng):
    for _ in range(30):
        d = rng.randint(2, 4)
        rows = random_template(rng, d, 8)
        i, j = rng.sample(range(d), 2)
        swapped = [row[:] for row in rows]
        for row in swapped:
            row[i], row[j] = row[j], row[i]
        assert det_poly_matrix(swapped, 8) == -det_poly_matrix(rows, 8)
        repeated = [row[:] for row in rows]
        for row in repeated:
            row[j] = row[i]
        assert det_poly_matrix(repeated, 8).is_zero()


def test_gcd_examples():
    assert poly_gcd(t1 ** 2 - 1, t1 - 1) == t1 - 1
    assert poly_gcd(t1, t2) == 1
    assert poly_gcd(t1 + 1, Polynomial({}, N)) == t1 + 1
    assert poly_gcd(-2 * t1, Polynomial({}, N)) == 2 * t1
    assert poly_gcd(2 * t1, 4 * t2) == 2


def test_gcd_of_constructed_instances(rng):
    for _ in range(40):
        a, b, c = (random_poly(rng, terms=3) for _ in range(3))
        if a.is_zero() or b.is_zero() or c.is_zero():
            continue
        g = poly_gcd(a * c, b * c)
        assert divexact(a * c, g) is not None and divexact(b * c, g) is not None
        assert divexact(g, c) is not None
        expected = sympy.gcd(to_sympy(a * c), to_sympy(b * c))
        ratio = sympy.simplify(to_sympy(g) / expected)
        assert ratio.is_number and ratio != 0


def test_gcd_matches_sympy(rng):
    for _ in range(60):
        a, b = random_poly(rng, terms=4), random_poly(rng, terms=4)
        g = poly_gcd(a, b)
        expected = sympy.gcd(to_sympy(a), to_sympy(b))
        assert sympy.simplify(to_sympy(g) - expected) == 0 or sympy.simplify(to_sympy(g) + expected) == 0


def test_substitute_examples():
    assert substitute(t1 * t2 - 1, 0, 1) == t2 - 1
    assert substitute(t1 - t2, 0, t2).is_zero()
    q, s = substitute_rational(t1 * t2 - 1, 0, Fraction(2, 3))
    assert (q, s) == (2 * t2 - 3, 3)


def test_substitute_commutes_with_products(rng):
    for _ in range(40):
        a, b, v = random_poly(rng), random_poly(rng), random_poly(rng, terms=2, deg=1)
        assert substitute(a * b, 1, v) == substitute(a, 1, v) * substitute(b, 1, v)


def test_substitute_all_variables_matches_evaluation(rng):
    for _ in range(30):
        p = random_poly(rng, terms=5)
        point = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(N)]
        scale = 1
        q = p
        for k, v in enumerate(point):
            q, s = substitute_rational(q, k, v)
            scale *= s
        assert Fraction(q.constant_term(), scale) == p.evaluate(point)


def test_quadric_rank_examples():
    n = 4
    a, b, c, d = Polynomial.gens(n)
    assert quadratic_form_rank(a * b - c * d) == 4
    assert quadratic_form_rank(a * b) == 2
    assert quadratic_form_rank(a ** 2) == 1
    assert quadratic_form_rank(a ** 2 + 2 * a + 1) == 1
    with pytest.raises(NotAQuadric):
        quadratic_form_rank(a ** 3)
    with pytest.raises(ZeroPolynomial):
        quadratic_form_rank(Polynomial({}, n))


def test_quadric_rank_invariant_under_unimodular_change(rng):
    n = 3
    xs = Polynomial.gens(n)
    for _ in range(40):
        k = rng.randint(1, 3)
        diag = [rng.choice([-2, -1, 1, 3]) for _ in range(k)] + [0] * (n - k)
        q = sum((c * x * x for c, x in zip(diag, xs)), Polynomial({}, n))
        # random unimodular change: product of elementary shears
        images = list(xs)
        for _ in range(4):
            i, j = rng.sample(range(n), 2)
            images[i] = images[i] + rng.randint(-2, 2) * images[j]
        # rename into a fresh block first so images do not clobber each other
        lifted = q.extend(2 * n)
        for i in range(n):
            lifted = substitute(lifted, i, Polynomial.var(n + i, 2 * n))
        for i in range(n):
            lifted = substitute(lifted, n + i, images[i].extend(2 * n))
        assert quadratic_form_rank(lifted) == quadratic_form_rank(q) == k


def test_content_primitive():
    assert content_primitive(2 * t1 + 4) == (2, t1 + 2)
    assert content_primitive(t1) == (1, t1)
    with pytest.raises(ZeroPolynomial):
        content_primitive(Polynomial({}, N))


def test_content_of_scaled_primitive(rng):
    for _ in range(30):
        p = random_poly(rng)
        if p.is_zero():
            continue
        _, prim = content_primitive(p)
        c = rng.choice([-6, -2, 3, 10])
        cont, pp = content_primitive(prim * c)
        assert cont == abs(c)
        assert pp == prim or pp == -prim
        assert content_primitive(pp)[0] == 1


def test_evaluate():
    assert P("t1*t2 - t3 + 1").evaluate([2, 3, Fraction(1, 2)]) == Fraction(13, 2)

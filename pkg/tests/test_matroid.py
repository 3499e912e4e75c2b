from itertools import chain, combinations

import pytest

from matrealize.errors import EmptyBasisFamily, ExchangeViolation, NotAPermutation, OutOfRange, WrongCardinality
from matrealize.matroid import (
    canonicalize,
    construct_matroid,
    dual_matroid,
    first_basis_revlex,
    invert_permutation,
    relabel,
    revlex_subsets,
    subset_rank,
    uniform_matroid,
)
from matrealize.enumeration import enumerate_matroids

U23 = uniform_matroid(2, 3)
U24 = uniform_matroid(2, 4)
SINGLE = construct_matroid(5, 3, [(1, 2, 3)])
COLOOP = construct_matroid(3, 2, [(1, 3), (2, 3)])


def random_matroid(rng, m_max=6):
    m = rng.randint(1, m_max)
    d = rng.randint(0, m)
    cat = enumerate_matroids(d, m)
    M = rng.choice(cat.entries)
    p = list(range(1, m + 1))
    rng.shuffle(p)
    return relabel(M, p)


def test_construct_accepts_uniform():
    assert U23.bases == ((1, 2), (1, 3), (2, 3))


def test_construct_rejects_exchange_violation():
    with pytest.raises(ExchangeViolation) as info:
        construct_matroid(4, 2, [(1, 2), (3, 4)])
    assert (info.value.b1, info.value.b2, info.value.x) == ((1, 2), (3, 4), 1)


def test_construct_single_basis_with_loops():
    assert SINGLE.bases == ((1, 2, 3),)


def test_construct_dedups_and_sorts():
    M = construct_matroid(3, 2, [(2, 1), (1, 2), (3, 1), (2, 3)])
    assert M == U23


@pytest.mark.parametrize("bases, err", [
    ([], EmptyBasisFamily),
    ([(1, 2, 3)], WrongCardinality),
    ([(1, 5)], WrongCardinality),
    ([(0, 1)], WrongCardinality),
    ([(1, 1)], WrongCardinality),
])
def test_construct_errors(bases, err):
    with pytest.raises(err):
        construct_matroid(3, 2, bases)


def test_subset_rank_examples():
    assert subset_rank(U23, ()) == 0
    assert subset_rank(U23, (1, 2, 3)) == 2
    assert subset_rank(SINGLE, (4, 5)) == 0
    with pytest.raises(OutOfRange):
        subset_rank(U23, (4,))


def powerset(xs):
    return chain.from_iterable(combinations(xs, k) for k in range(len(xs) + 1))


@pytest.mark.parametrize("d,m", [(2, 4), (3, 5), (3, 6)])
def test_rank_function_monotone_and_total(d, m):
    for M in enumerate_matroids(d, m):
        ranks = {S: subset_rank(M, S) for S in powerset(range(1, m + 1))}
        assert ranks[tuple(range(1, m + 1))] == d
        for S, r in ranks.items():
            for e in set(range(1, m + 1)) - set(S):
                T = tuple(sorted(S + (e,)))
                assert r <= ranks[T] <= r + 1


def test_dual_examples():
    assert dual_matroid(U24) == U24
    D = dual_matroid(SINGLE)
    assert D.rank == 2 and D.bases == ((4, 5),)


def test_dual_involution_on_random_matroids(rng):
    for _ in range(100):
        M = random_matroid(rng)
        D = dual_matroid(M)
        assert D.rank == M.ground_size - M.rank
        assert dual_matroid(D) == M


def test_canonicalize_examples():
    C, p = canonicalize(COLOOP)
    assert C.bases == ((1, 2), (1, 3))
    assert relabel(COLOOP, p) == C
    C, p = canonicalize(U24)
    assert C == U24
    assert p == (1, 2, 3, 4)


def test_canonicalize_matches_brute_force_minimum(rng):
    from itertools import permutations

    for _ in range(30):
        M = random_matroid(rng, 5)
        best = min(sorted(tuple(sorted(p[e - 1] for e in b)) for b in M.bases)
                   for p in permutations(M.ground_set))
        assert canonicalize(M)[0].bases == tuple(best)


def test_canonicalize_constant_on_orbits(rng):
    for _ in range(50):
        M = random_matroid(rng)
        C = canonicalize(M)[0]
        assert canonicalize(C)[0] == C
        for _ in range(10):
            p = list(range(1, M.ground_size + 1))
            rng.shuffle(p)
            assert canonicalize(relabel(M, p))[0] == C


def test_first_basis_revlex_examples():
    assert first_basis_revlex(U24) == (1, 2)
    assert first_basis_revlex(COLOOP) == (1, 3)
    assert first_basis_revlex(SINGLE) == (1, 2, 3)


def test_revlex_order_small():
    assert revlex_subsets(2, 3) == [(1, 2), (1, 3), (2, 3)]
    assert revlex_subsets(2, 4)[:4] == [(1, 2), (1, 3), (2, 3), (1, 4)]


def test_first_basis_relabels_to_standard_basis(rng):
    for _ in range(50):
        M = random_matroid(rng)
        b = first_basis_revlex(M)
        assert M.is_basis(b)
        rest = [e for e in M.ground_set if e not in b]
        # send b onto 1..d
        order = list(b) + rest
        p = invert_permutation(order)
        assert relabel(M, p).is_basis(range(1, M.rank + 1))


def test_relabel_examples():
    assert relabel(U23, (3, 1, 2)) == U23
    assert relabel(COLOOP, (3, 2, 1)).bases == ((1, 2), (1, 3))
    assert relabel(COLOOP, (1, 2, 3)) == COLOOP
    with pytest.raises(NotAPermutation):
        relabel(U23, (1, 1, 2))


def test_relabel_inverse_roundtrip(rng):
    for _ in range(50):
        M = random_matroid(rng)
        p = list(range(1, M.ground_size + 1))
        rng.shuffle(p)
        assert relabel(relabel(M, p), invert_permutation(p)) == M


def test_relabel_preserves_ranks(rng):
    for _ in range(20):
        M = random_matroid(rng, 5)
        p = list(range(1, M.ground_size + 1))
        rng.shuffle(p)
        N = relabel(M, p)
        for S in powerset(M.ground_set):
            assert subset_rank(M, S) == subset_rank(N, [p[e - 1] for e in S])

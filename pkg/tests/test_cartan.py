import itertools

import pytest

from vankallen.cartan import (
    ConfigurationError,
    act,
    bruhat_leq,
    build_root_system,
    cartan_matrix,
    coroot_of,
    coset_reps,
    dominant_weights,
    j_of,
    length,
    longest,
    pair,
    parabolic_quotient,
    reduced_words,
    right_descents,
    weyl_group,
)

TYPES = ["A1", "A2", "B2", "C2", "G2", "A3", "B3", "C3", "A4", "B4", "C4", "D4"]


def closure_roots(cartan):
    """Positive roots by closing the simple roots under simple reflections."""
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(n):
                # s_i beta = beta - <beta, alpha_i^vee> alpha_i
                c = sum(cartan[i][j] * beta[j] for j in range(n))
                img = tuple(b - (c if k == i else 0) for k, b in enumerate(beta))
                if img not in roots and all(x >= 0 for x in img) and any(img):
                    roots.add(img)
                    nxt.append(img)
        frontier = nxt
    return roots


@pytest.mark.parametrize("t", TYPES)
def test_positive_roots_match_reflection_closure(t):
    R = build_root_system(t)
    assert set(R.positive_roots) == closure_roots(R.cartan)
    assert len(R.elements) == len(set(R.elements))
    # |W| from the product of (1 + exponent) is awkward; use the length generating count instead
    assert max(w.length for w in R.elements) == len(R.positive_roots)


def test_small_examples():
    A1 = build_root_system("A1")
    assert A1.positive_roots == ((1,),) and A1.theta == (1,)
    A2 = build_root_system("A2")
    assert len(A2.positive_roots) == 3 and A2.theta == (1, 1)
    G2 = build_root_system("G2")
    assert len(G2.positive_roots) == 6 and G2.theta == (3, 2)
    assert coroot_of(G2, (3, 2)) == (1, 2)
    assert coroot_of(A2, (1, 1)) == (1, 1)
    assert len(weyl_group(A2)) == 6 and len(weyl_group(build_root_system("B2"))) == 8
    assert weyl_group(A2, ()) == (A2.identity,)


def test_cartan_conventions():
    # entry [i][j] = <alpha_j, alpha_i^vee>; alpha_n short in B_n, alpha_1 short in G2
    assert cartan_matrix("B", 2) == ((2, -1), (-2, 2))
    assert cartan_matrix("C", 2) == ((2, -2), (-1, 2))
    assert cartan_matrix("G", 2) == ((2, -3), (-1, 2))


@pytest.mark.parametrize("bad", [("E", 6), ("A", 0), ("B", 1), ("A", 9), ("D", 3)])
def test_unsupported_types_raise(bad):
    with pytest.raises(ConfigurationError):
        build_root_system(*bad)


def test_pairing():
    A2 = build_root_system("A2")
    assert pair((1, 0), (1, 0)) == 1
    assert pair((0, 0), (3, -2)) == 0
    assert pair(A2.rho, (1, 1)) == 2


@pytest.mark.parametrize("t", ["A2", "B2", "G2", "A3", "C3"])
def test_action_is_a_group_action(t):
    R = build_root_system(t)
    mu = tuple(range(1, R.rank + 1))
    for x, y in itertools.product(R.elements[:12], R.elements[-12:]):
        for kind, v in (("weight", mu), ("root", R.theta), ("coroot", R.theta_coroot)):
            assert act(x * y, v, kind) == act(x, act(y, v, kind), kind)
    for w in R.elements:
        # the pairing is W-invariant
        assert pair(w.act_weight(mu), w.act_coroot(R.theta_coroot)) == pair(mu, R.theta_coroot)
    s1 = build_root_system("A1").s(1)
    assert act(s1, (1,)) == (-1,)


def bruhat_by_closure(R):
    """u <= v as the transitive closure of u < u s_beta with length increase."""
    n = len(R.elements)
    up = {u.index: set() for u in R.elements}
    refl = [R.reflection(b) for b in R.positive_roots]
    for u in R.elements:
        for r in refl:
            v = u * r
            if v.length > u.length:
                up[u.index].add(v.index)
    reach = {}
    for u in sorted(R.elements, key=lambda x: -x.length):
        s = {u.index}
        for v in up[u.index]:
            s |= reach[v]
        reach[u.index] = s
    return {(a, b) for a in range(n) for b in reach[a]}


@pytest.mark.parametrize("t", ["A2", "B2", "G2", "A3", "B3"])
def test_bruhat_matches_reflection_closure(t):
    R = build_root_system(t)
    rel = bruhat_by_closure(R)
    for u in R.elements:
        for v in R.elements:
            assert bruhat_leq(u, v) == ((u.index, v.index) in rel)


def test_bruhat_examples():
    A2 = build_root_system("A2")
    assert all(bruhat_leq(A2.identity, w) for w in A2.elements)
    assert not bruhat_leq(A2.s(1), A2.s(2))
    assert right_descents(A2.longest_element) == {1, 2}
    assert longest(A2) == A2.longest_element and length(A2.longest_element) == 3


def test_enumeration_order_is_length_then_lex():
    R = build_root_system("B3")
    keys = [(w.length, w.word) for w in R.elements]
    assert keys == sorted(keys)
    for w in R.elements:
        assert w.word == reduced_words(w)[0]


@pytest.mark.parametrize("t", ["A2", "B2", "G2", "A3"])
def test_coset_reps_against_scan(t):
    R = build_root_system(t)
    for r in range(R.rank + 1):
        for J in itertools.combinations(R.index_set, r):
            WJ = weyl_group(R, J)
            for w in R.elements:
                coset = [w * u for u in WJ]
                lo, hi = coset_reps(w, J)
                assert lo == min(coset, key=lambda x: x.length)
                assert hi == max(coset, key=lambda x: x.length)
            assert len(parabolic_quotient(R, J)) * len(WJ) == len(R.elements)


def test_coset_rep_examples():
    A2 = build_root_system("A2")
    w0 = A2.longest_element
    assert coset_reps(w0, ()) == (w0, w0)
    assert coset_reps(A2.s(2), (2,)) == (A2.identity, A2.s(2))
    # the minimal representative of w0 W_{2} is s2 s1: s1 s2 s1 = (s2 s1) s2
    lo, hi = coset_reps(w0, (2,))
    assert lo == A2.from_word((2, 1)) and hi == w0


def test_j_of():
    assert j_of((1, 2)) == frozenset()
    assert j_of((1, 0)) == {2}
    assert j_of((0, 0, 0)) == {1, 2, 3}


def test_dominant_weights():
    got = list(dominant_weights(2, 2))
    assert (0, 0) in got and (2, 0) in got and (1, 1) in got and (2, 1) not in got
    assert len(got) == len(set(got)) == 6


def test_parse_and_words():
    A3 = build_root_system("A3")
    w = A3.parse("s1 s2 s1")
    assert w == A3.parse("2 1 2") == A3.from_word((1, 2, 1))
    assert A3.parse("e") == A3.identity
    with pytest.raises(ConfigurationError):
        A3.parse("s5")
    assert reduced_words(w) == [(1, 2, 1), (2, 1, 2)]

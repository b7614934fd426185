import itertools
from collections import Counter
from fractions import Fraction

import pytest

from vankallen.affine import AffineElt, pi_J_trans, translation
from vankallen.cartan import build_root_system, j_of, pair, parabolic_quotient
from vankallen.paths import (
    BOUND_EXCEEDED,
    INVALID,
    VALID,
    QLSPath,
    SLSPath,
    break_points,
    deg,
    deg_at,
    eps,
    initial_path,
    is_qls,
    phi,
    qls_enumerate,
    qls_filter_winf,
    qls_wt,
    sls_cl,
    sls_orbit,
    sls_root_e,
    sls_root_f,
    sls_validate,
    sls_wt,
    weyl_act_sls,
)
from vankallen.qbg import build_qbg

F = Fraction


def path(R, words, times):
    return QLSPath(tuple(R.from_word(w) for w in words), tuple(F(t) for t in times))


def brute_qls(R, lam):
    """Every direction sequence over every subset of break points, filtered by plain BFS."""
    J = j_of(lam)
    G = build_qbg(R, J)
    pts = break_points(R, lam)

    def connected(src, dst, a):
        seen, stack = {src}, [src]
        while stack:
            x = stack.pop()
            for e in G.out[G.pos[x]]:
                if (a * pair(lam, R.coroot_of(e.label))).denominator == 1 and e.dst not in seen:
                    seen.add(e.dst)
                    stack.append(e.dst)
        return dst in seen

    out = set()
    for r in range(len(pts) + 1):
        for cut in itertools.combinations(pts, r):
            times = (F(0),) + cut + (F(1),)
            for dirs in itertools.product(G.vertices, repeat=r + 1):
                if any(x == y for x, y in zip(dirs, dirs[1:])):
                    continue
                if all(connected(dirs[u + 1], dirs[u], times[u + 1]) for u in range(r)):
                    out.add(QLSPath(dirs, times))
    return out


@pytest.mark.parametrize("t,lam", [("A1", (2,)), ("A1", (3,)), ("A2", (1, 1)), ("A2", (2, 0)), ("B2", (1, 1)), ("G2", (0, 1)), ("A3", (1, 0, 1))])
def test_qls_enumeration_matches_brute_force(t, lam):
    R = build_root_system(t)
    got = qls_enumerate(R, lam)
    assert set(got) == brute_qls(R, lam)
    assert len(got) == len(set(got))
    assert all(is_qls(eta, R, lam) for eta in got)
    assert list(got) == sorted(got, key=QLSPath.key)


def weight_multiset(R, lam):
    return Counter(qls_wt(eta, lam) for eta in qls_enumerate(R, lam))


def convolve(a, b):
    out = Counter()
    for (x, m), (y, n) in itertools.product(a.items(), b.items()):
        out[tuple(p + q for p, q in zip(x, y))] += m * n
    return out


@pytest.mark.parametrize("t,lam", [("A2", (1, 1)), ("A2", (2, 1)), ("B2", (1, 1)), ("B2", (2, 0)), ("C2", (1, 1)), ("G2", (1, 1)), ("A3", (1, 0, 1))])
def test_qls_weights_are_multiplicative(t, lam):
    R = build_root_system(t)
    want = Counter({(0,) * R.rank: 1})
    for i, m in enumerate(lam):
        unit = tuple(int(k == i) for k in range(R.rank))
        for _ in range(m):
            want = convolve(want, weight_multiset(R, unit))
    assert weight_multiset(R, lam) == want


@pytest.mark.parametrize("t", ["A2", "A3", "A4"])
def test_minuscule_weights_form_one_orbit(t):
    R = build_root_system(t)
    for i in R.index_set:
        lam = tuple(int(k == i) for k in R.index_set)
        orbit = {w.act_weight(lam) for w in R.elements}
        assert weight_multiset(R, lam) == Counter({mu: 1 for mu in orbit})


def test_qls_examples():
    R = build_root_system("A1")
    e, s1 = R.identity, R.s(1)
    assert set(qls_enumerate(R, (1,))) == {path(R, [()], [0, 1]), path(R, [(1,)], [0, 1])}
    two = path(R, [(1,), ()], [0, F(1, 2), 1])
    assert two in qls_enumerate(R, (2,))
    assert qls_wt(path(R, [()], [0, 1]), (1,)) == (1,)
    assert qls_wt(path(R, [(1,)], [0, 1]), (1,)) == (-1,)
    assert qls_wt(two, (2,)) == (0,)
    assert qls_enumerate(R, (0,)) == (path(R, [()], [0, 1]),)
    assert deg_at(path(R, [()], [0, 1]), e, (1,)) == 0
    assert deg_at(path(R, [()], [0, 1]), s1, (1,)) == -1
    assert deg_at(path(R, [(1,)], [0, 1]), s1, (1,)) == 0
    assert qls_filter_winf(qls_enumerate(R, (1,)), e, (1,)) == [path(R, [()], [0, 1])]


@pytest.mark.parametrize("t,lam", [("A2", (1, 1)), ("A2", (0, 2)), ("B2", (1, 2)), ("G2", (1, 0)), ("A3", (0, 1, 1))])
def test_qls_path_properties(t, lam):
    R = build_root_system(t)
    J = j_of(lam)
    paths = qls_enumerate(R, lam)
    pairings = {pair(lam, c) for c in R.positive_coroots if pair(lam, c)}
    for eta in paths:
        assert deg(eta, lam) <= 0
        for w in parabolic_quotient(R, J):
            assert deg_at(eta, w, lam) <= 0
        assert all(any(m % a.denominator == 0 for m in pairings) for a in eta.times)
        # wt - lambda lies in the root lattice: it pairs integrally with every fundamental coweight
        diff = [x - y for x, y in zip(qls_wt(eta, lam), lam)]
        inv = cartan_inverse(R)
        assert all(sum(inv[i][j] * diff[j] for j in range(R.rank)).denominator == 1 for i in range(R.rank))
    top = parabolic_quotient(R, J)[-1]
    assert qls_filter_winf(paths, top, lam) == list(paths)
    for w in parabolic_quotient(R, J):
        assert qls_filter_winf(paths, w, lam)


def cartan_inverse(R):
    n = R.rank
    m = [[F(R.cartan[i][j]) for j in range(n)] + [F(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        p = next(r for r in range(c, n) if m[r][c])
        m[c], m[p] = m[p], m[c]
        m[c] = [x / m[c][c] for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                m[r] = [x - m[r][c] * y for x, y in zip(m[r], m[c])]
    return [row[n:] for row in m]


def sls(R, dirs, times):
    return SLSPath(tuple(dirs), tuple(F(t) for t in times))


def test_sls_examples():
    R = build_root_system("A1")
    lam = (1,)
    e, s1 = AffineElt(R.identity), AffineElt(R.s(1))
    start = initial_path(R)
    assert start == sls(R, [e], [0, 1])
    assert sls_validate(start, lam) == VALID
    assert sls_wt(start, lam) == ((1,), 0)
    assert sls_root_e(start, 1, lam) is None
    down = sls_root_f(start, 1, lam)
    assert down == sls(R, [s1], [0, 1])
    assert sls_root_e(down, 1, lam) == start
    assert sls_validate(down, lam) == VALID
    assert weyl_act_sls(1, start, lam) == down
    # e is below s1 in the semi-infinite order, so (e, s1) is not a decreasing chain
    assert sls_validate(sls(R, [e, s1], [0, F(1, 2), 1]), (2,)) == INVALID
    # repeated directions and non-increasing times are rejected
    assert sls_validate(sls(R, [e, e], [0, F(1, 2), 1]), lam) == INVALID
    assert sls_validate(sls(R, [s1], [0, F(1, 2)]), lam) == INVALID
    # the chain is fine but 1/2 <w1, alpha^vee> is not integral
    assert sls_validate(sls(R, [s1, e], [0, F(1, 2), 1]), lam) == INVALID
    assert sls_validate(sls(R, [s1, e], [0, F(1, 2), 1]), (2,)) == VALID
    # s1 -> t_{alpha^vee} is the reflection in -alpha + delta, invisible to a search with |n| <= 0
    shifted = sls(R, [translation(R, (1,)), s1], [0, F(1, 2), 1])
    assert sls_validate(shifted, (2,)) == VALID
    assert sls_validate(shifted, (2,), n_bound=0) == BOUND_EXCEEDED


def test_sls_f0_shifts_weight_by_alpha0():
    R = build_root_system("A1")
    lam = (1,)
    pi = sls(R, [AffineElt(R.s(1))], [0, 1])
    out = sls_root_f(pi, 0, lam)
    assert out is not None
    (mu, d), (nu, k) = sls_wt(pi, lam), sls_wt(out, lam)
    # alpha_0 = delta - theta and theta = 2 w1 in A1
    assert nu == (mu[0] + 2,) and k == d - 1
    assert sls_validate(out, lam) == VALID


@pytest.mark.parametrize("t,lam", [("A1", (2,)), ("A2", (1, 0)), ("A2", (1, 1)), ("B2", (1, 0))])
def test_sls_operator_axioms(t, lam):
    R = build_root_system(t)
    for pi in sls_orbit(R, lam, 3):
        for i in (0,) + R.index_set:
            f, e = sls_root_f(pi, i, lam), sls_root_e(pi, i, lam)
            if f is not None:
                assert sls_root_e(f, i, lam) == pi
                assert sls_validate(f, lam) == VALID
            if e is not None:
                assert sls_root_f(e, i, lam) == pi
            assert eps(pi, i, lam) >= 0 and phi(pi, i, lam) >= 0
            assert weyl_act_sls(i, weyl_act_sls(i, pi, lam), lam) == pi
        assert sls_cl(pi, lam) in set(qls_enumerate(R, lam))


def test_sls_cl_examples():
    R = build_root_system("A2")
    lam = (1, 0)
    J = j_of(lam)
    u = R.s(1)
    x = AffineElt(u) * pi_J_trans(R, (2, 1), J)
    assert sls_cl(sls(R, [x], [0, 1]), lam) == path(R, [(1,)], [0, 1])
    pi = sls(R, [AffineElt(R.identity)], [0, 1])
    assert sls_cl(pi, lam) == path(R, [()], [0, 1])
    assert translation(R, (0, 0)) == AffineElt(R.identity)


def test_json_shapes():
    R = build_root_system("A1")
    eta = path(R, [(1,), ()], [0, F(1, 2), 1])
    assert eta.to_json() == {"dirs": ["s1", "e"], "times": ["0", "1/2", "1"]}
    pi = sls(R, [AffineElt(R.s(1), (1,))], [0, 1])
    assert pi.to_json() == {"dirs": ["s1 | (1)"], "times": ["0", "1"]}

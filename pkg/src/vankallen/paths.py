"""Quantum LS paths and semi-infinite LS paths of shape lambda."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .affine import (
    AffineElt,
    affine_reflection,
    affine_simple,
    cl_affine,
    is_min_in_coset_af,
    sil,
)
from .cartan import (
    RootSystem,
    WeylElt,
    ceil_rep,
    floor_rep,
    format_word,
    j_of,
    pair,
    parabolic_quotient,
)
from .qbg import build_qbg, eqb_cached, si_leq

VALID, INVALID, BOUND_EXCEEDED = "valid", "invalid", "bound-exceeded"


@dataclass(frozen=True)
class QLSPath:
    dirs: tuple  # WeylElt in W^J
    times: tuple  # Fractions 0 = a_0 < ... < a_s = 1

    @property
    def final(self) -> WeylElt:
        return self.dirs[-1]

    def key(self):
        return (len(self.dirs), self.times, tuple(w.index for w in self.dirs))

    def to_json(self):
        return {"dirs": [format_word(w.word) for w in self.dirs], "times": [str(a) for a in self.times]}

    def __str__(self):
        d = ", ".join(format_word(w.word) for w in self.dirs)
        return f"({d}; {', '.join(str(a) for a in self.times)})"


@dataclass(frozen=True)
class SLSPath:
    dirs: tuple  # AffineElt in (W^J)_af, strictly decreasing
    times: tuple

    @property
    def final(self) -> AffineElt:
        return self.dirs[-1]

    def to_json(self):
        return {"dirs": [str(x) for x in self.dirs], "times": [str(a) for a in self.times]}

    def __str__(self):
        d = ", ".join(str(x) for x in self.dirs)
        return f"({d}; {', '.join(str(a) for a in self.times)})"


def _lambda_pairings(R: RootSystem, lam, J):
    return {beta: pair(lam, R.coroot_of(beta)) for beta in build_qbg(R, J).labels}


def break_points(R: RootSystem, lam) -> list[Fraction]:
    """Rationals 0 < a < 1 with a <lambda, beta^vee> integral for some beta."""
    J = j_of(lam)
    pts = set()
    for m in _lambda_pairings(R, lam, J).values():
        for k in range(1, m):
            pts.add(Fraction(k, m))
    return sorted(pts)


@lru_cache(maxsize=None)
def _reach(R: RootSystem, lam: tuple, a: Fraction):
    """Reachability in the subgraph of QBG(W^J) with a <lambda, beta^vee> in Z."""
    J = j_of(lam)
    G = build_qbg(R, J)
    n = len(G.vertices)
    adj = [[G.pos[e.dst] for e in G.out[k] if (a * pair(lam, R.coroot_of(e.label))).denominator == 1] for k in range(n)]
    reach = []
    for s in range(n):
        seen = {s}
        stack = [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        reach.append(frozenset(seen))
    return reach


def _reaches(R, lam, a, src: WeylElt, dst: WeylElt) -> bool:
    G = build_qbg(R, j_of(lam))
    return G.pos[dst] in _reach(R, tuple(lam), a)[G.pos[src]]


@lru_cache(maxsize=None)
def _qls_cached(R: RootSystem, lam: tuple) -> tuple:
    J = j_of(lam)
    if not any(lam):
        return (QLSPath((R.identity,), (Fraction(0), Fraction(1))),)
    G = build_qbg(R, J)
    pts = break_points(R, lam)
    out = []

    def extend(dirs, times):
        out.append(QLSPath(tuple(dirs), tuple(times) + (Fraction(1),)))
        for a in pts:
            if a <= times[-1]:
                continue
            for nxt in G.vertices:
                if nxt != dirs[-1] and _reaches(R, lam, a, nxt, dirs[-1]):
                    extend(dirs + [nxt], times + [a])

    for first in G.vertices:
        extend([first], [Fraction(0)])
    out.sort(key=QLSPath.key)
    return tuple(out)


def qls_enumerate(R: RootSystem, lam) -> tuple:
    return _qls_cached(R, tuple(lam))


def is_qls(eta: QLSPath, R: RootSystem, lam) -> bool:
    J = j_of(lam)
    t = eta.times
    if t[0] != 0 or t[-1] != 1 or len(t) != len(eta.dirs) + 1:
        return False
    if any(a >= b for a, b in zip(t, t[1:])):
        return False
    if any(floor_rep(w, J) != w for w in eta.dirs):
        return False
    for u in range(len(eta.dirs) - 1):
        if eta.dirs[u] == eta.dirs[u + 1]:
            return False
        if not _reaches(R, lam, t[u + 1], eta.dirs[u + 1], eta.dirs[u]):
            return False
    if not any(lam):
        return eta.dirs == (R.identity,)
    return True


def qls_wt(eta: QLSPath, lam) -> tuple:
    return _qls_wt(eta, tuple(lam))


@lru_cache(maxsize=None)
def _qls_wt(eta, lam):
    total = [Fraction(0)] * len(lam)
    for k, w in enumerate(eta.dirs):
        step = eta.times[k + 1] - eta.times[k]
        for j, c in enumerate(w.act_weight(lam)):
            total[j] += step * c
    if any(c.denominator != 1 for c in total):
        raise AssertionError(f"non-integral weight for {eta}")
    return tuple(int(c) for c in total)


def deg_at(eta: QLSPath, w: WeylElt, lam) -> int:
    """-sum_u a_u <lambda, wt^J(w_{u+1} => w_u)> with w_{s+1} = w."""
    J = j_of(lam)
    G = build_qbg(w.R, J)
    dirs = list(eta.dirs) + [w]
    total = Fraction(0)
    for u in range(len(eta.dirs)):
        total -= eta.times[u + 1] * pair(lam, G.wt(dirs[u + 1], dirs[u]))
    if total.denominator != 1:
        raise AssertionError(f"non-integral degree for {eta}")
    return int(total)


def deg(eta: QLSPath, lam) -> int:
    return deg_at(eta, eta.final, lam)


def final_directions(w: WeylElt, lam) -> frozenset:
    """floor(EQB(ceil(w)))."""
    J = j_of(lam)
    return frozenset(floor_rep(u, J) for u in eqb_cached(w.R, ceil_rep(w, J)))


def qls_filter_winf(paths, w: WeylElt, lam) -> list:
    allowed = final_directions(w, lam)
    return [eta for eta in paths if eta.final in allowed]


# ---- semi-infinite LS paths ---------------------------------------------

def initial_path(R: RootSystem) -> SLSPath:
    return SLSPath((AffineElt(R.identity),), (Fraction(0), Fraction(1)))


def _direction(x: AffineElt, lam):
    mu, d = x.act_weight(lam)
    return mu, d


def _height(R: RootSystem, mu, i: int):
    if i == 0:
        return -pair(mu, R.theta_coroot)
    return mu[i - 1]


def sls_wt(pi: SLSPath, lam):
    mu = [Fraction(0)] * len(lam)
    d = Fraction(0)
    for k, x in enumerate(pi.dirs):
        step = pi.times[k + 1] - pi.times[k]
        m, dd = _direction(x, lam)
        for j, c in enumerate(m):
            mu[j] += step * c
        d += step * dd
    if any(c.denominator != 1 for c in mu) or d.denominator != 1:
        raise AssertionError(f"non-integral weight for {pi}")
    return tuple(int(c) for c in mu), int(d)


def _heights(pi: SLSPath, i: int, lam):
    """H_i at each break point a_0, ..., a_s."""
    R = pi.dirs[0].R
    h = [Fraction(0)]
    for k, x in enumerate(pi.dirs):
        slope = _height(R, _direction(x, lam)[0], i)
        h.append(h[-1] + (pi.times[k + 1] - pi.times[k]) * slope)
    return h


def _min_height(h):
    m = min(h)
    if m.denominator != 1:
        raise AssertionError("non-integral local minimum of H")
    for k in range(1, len(h) - 1):
        if h[k] <= h[k - 1] and h[k] <= h[k + 1] and h[k].denominator != 1:
            raise AssertionError("non-integral local minimum of H")
    return m


def _crossings(h, times, level, lo, hi):
    """All t in [lo, hi] with H(t) = level (segments equal to level give both ends)."""
    pts = []
    for k in range(len(times) - 1):
        t0, t1 = times[k], times[k + 1]
        h0, h1 = h[k], h[k + 1]
        if h0 == h1:
            if h0 == level:
                pts += [t0, t1]
            continue
        if min(h0, h1) <= level <= max(h0, h1):
            pts.append(t0 + (level - h0) / (h1 - h0) * (t1 - t0))
    return [t for t in pts if lo <= t <= hi]


def sls_root_e(pi: SLSPath, i: int, lam):
    h = _heights(pi, i, lam)
    m = _min_height(h)
    if m == 0:
        return None
    a = pi.times
    q = next(k for k in range(len(h)) if h[k] == m)
    t1 = a[q]
    t0 = max(_crossings(h, a, m + 1, Fraction(0), t1))
    p = next(k for k in range(1, len(a)) if a[k - 1] <= t0 < a[k])
    R = pi.dirs[0].R
    si = affine_simple(R, i)
    x = list(pi.dirs)  # x[k-1] is x_k
    dirs = x[:p] + [si * x[k - 1] for k in range(p, q + 1)] + x[q:]
    times = list(a[:p]) + [t0] + list(a[p:])
    # positions: x_p sits at index p-1, s_i x_q at index q, x_{q+1} at q+1
    drop_d, drop_t = set(), set()
    if t0 == a[p - 1]:
        drop_d.add(p - 1)
        drop_t.add(p - 1)
    if q < len(x) and si * x[q - 1] == x[q]:
        drop_d.add(q + 1)
        drop_t.add(q + 1)
    dirs = [d for k, d in enumerate(dirs) if k not in drop_d]
    times = [t for k, t in enumerate(times) if k not in drop_t]
    return SLSPath(tuple(dirs), tuple(times))


def sls_root_f(pi: SLSPath, i: int, lam):
    h = _heights(pi, i, lam)
    m = _min_height(h)
    if h[-1] - m == 0:
        return None
    a = pi.times
    p = max(k for k in range(len(h)) if h[k] == m)
    t0 = a[p]
    t1 = min(_crossings(h, a, m + 1, t0, Fraction(1)))
    q = next(k for k in range(len(a) - 1) if a[k] < t1 <= a[k + 1])
    R = pi.dirs[0].R
    si = affine_simple(R, i)
    x = list(pi.dirs)
    dirs = x[:p] + [si * x[k - 1] for k in range(p + 1, q + 2)] + x[q:]
    times = list(a[: q + 1]) + [t1] + list(a[q + 1 :])
    # positions: x_p at p-1, s_i x_{p+1} at p, the unreflected x_{q+1} at q+1
    drop_d, drop_t = set(), set()
    if t1 == a[q + 1]:
        drop_d.add(q + 1)
        drop_t.add(q + 2)
    if p >= 1 and x[p - 1] == si * x[p]:
        drop_d.add(p - 1)
        drop_t.add(p)
    dirs = [d for k, d in enumerate(dirs) if k not in drop_d]
    times = [t for k, t in enumerate(times) if k not in drop_t]
    return SLSPath(tuple(dirs), tuple(times))


def eps(pi: SLSPath, i: int, lam) -> int:
    n = 0
    while (pi := sls_root_e(pi, i, lam)) is not None:
        n += 1
    return n


def phi(pi: SLSPath, i: int, lam) -> int:
    n = 0
    while (pi := sls_root_f(pi, i, lam)) is not None:
        n += 1
    return n


def weight_pairing(R: RootSystem, wt, i: int) -> int:
    """<wt, alpha_i^vee> for a level-zero weight (delta pairs to zero)."""
    return _height(R, wt[0], i)


def weyl_act_sls(i: int, pi: SLSPath, lam) -> SLSPath:
    R = pi.dirs[0].R
    n = weight_pairing(R, sls_wt(pi, lam), i)
    op = sls_root_f if n >= 0 else sls_root_e
    for _ in range(abs(n)):
        pi = op(pi, i, lam)
        if pi is None:
            raise AssertionError("root operator vanished during the Weyl group action")
    return pi


def _candidate_moves(y: AffineElt, n_bound: int):
    R = y.R
    for alpha in R.positive_roots:
        for n in range(-n_bound, n_bound + 1):
            yield affine_reflection(R, alpha, n) * y, alpha


def sls_validate(pi: SLSPath, lam, n_bound=None) -> str:
    """valid / invalid / bound-exceeded.

    Edges y -> s_beta y with beta = alpha + n delta.  Writing y = w t_z and
    g = w^{-1} alpha, the semi-infinite length changes by
    l(w s_g) - l(w) + 2 n <rho, g^vee>, and |l(w s_g) - l(w)| <= 2|<rho, g^vee>| - 1,
    so a +1 step needs |n| <= 1.  Any n_bound >= 1 therefore makes the
    search exhaustive.
    """
    J = j_of(lam)
    R = pi.dirs[0].R
    if n_bound is None:
        top = max([abs(c) for x in pi.dirs for c in x.trans] + [0])
        n_bound = 2 * (1 + top) + coxeter_number(R)
    a = pi.times
    if a[0] != 0 or a[-1] != 1 or len(a) != len(pi.dirs) + 1:
        return INVALID
    if any(s >= t for s, t in zip(a, a[1:])):
        return INVALID
    if not all(is_min_in_coset_af(x, J) for x in pi.dirs):
        return INVALID
    for u in range(len(pi.dirs) - 1):
        hi, lo = pi.dirs[u], pi.dirs[u + 1]
        if hi == lo or not si_leq(hi, lo, J):
            return INVALID
    exhaustive = n_bound >= 1
    for u in range(len(pi.dirs) - 1):
        if not _chain_step(pi.dirs[u + 1], pi.dirs[u], a[u + 1], lam, J, n_bound):
            return INVALID if exhaustive else BOUND_EXCEEDED
    return VALID


def _chain_step(src: AffineElt, dst: AffineElt, a: Fraction, lam, J, n_bound) -> bool:
    steps = sil(dst) - sil(src)
    layer = {src}
    for _ in range(steps):
        nxt = set()
        for y in layer:
            mu = y.fin.act_weight(lam)
            for z, alpha in _candidate_moves(y, n_bound):
                if sil(z) != sil(y) + 1 or z in nxt:
                    continue
                if (a * pair(mu, y.R.coroot_of(alpha))).denominator != 1:
                    continue
                if not is_min_in_coset_af(z, J) or not si_leq(dst, z, J):
                    continue
                nxt.add(z)
        layer = nxt
    return dst in layer


def coxeter_number(R: RootSystem) -> int:
    return 2 * len(R.positive_roots) // R.rank


def sls_cl(pi: SLSPath, lam) -> QLSPath:
    J = j_of(lam)
    R = pi.dirs[0].R
    fins = [cl_affine(x, J) for x in pi.dirs]
    dirs, times = [], [pi.times[0]]
    for k, w in enumerate(fins):
        if dirs and dirs[-1] == w:
            dirs[-1] = w
            times[-1] = pi.times[k + 1]
        else:
            dirs.append(w)
            times.append(pi.times[k + 1])
    eta = QLSPath(tuple(dirs), tuple(times))
    if not is_qls(eta, R, lam):
        raise AssertionError(f"projection {eta} is not a quantum LS path")
    return eta


def sls_orbit(R: RootSystem, lam, depth: int):
    """Paths reachable from (e; 0, 1) by at most ``depth`` root operators."""
    start = initial_path(R)
    seen = {start: 0}
    queue = deque([start])
    while queue:
        pi = queue.popleft()
        if seen[pi] == depth:
            continue
        for i in (0,) + R.index_set:
            for op in (sls_root_e, sls_root_f):
                out = op(pi, i, lam)
                if out is not None and out not in seen:
                    seen[out] = seen[pi] + 1
                    queue.append(out)
    return list(seen)

"""Affine Weyl group elements ``w t_xi`` and the parabolic semi-infinite machinery.

Membership in the semi-infinite parabolic quotient reduces to a finite test.
For x = v t_z, a positive J-root alpha and c = <alpha, z>:

    x(alpha)             = v alpha - c delta        positive iff c < 0, or c = 0 and v alpha > 0
    x(-alpha + n delta)  = -v alpha + (n + c) delta at n = 1: positive iff c > -1, or c = -1 and v alpha < 0

Together these force c = 0 with v alpha > 0, or c = -1 with v alpha < 0, and
then every larger n is automatically positive.  ``is_min_in_coset_af`` checks
exactly this; ``is_min_in_coset_af_brute`` scans a range of n as a cross-check.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .cartan import (
    ConfigurationError,
    RootSystem,
    WeylElt,
    format_word,
    floor_rep,
    pair,
    project_coroot,
    weyl_group,
)


class AffineElt:
    """x = fin * t_trans."""

    __slots__ = ("fin", "trans")

    def __init__(self, fin: WeylElt, trans=None):
        self.fin = fin
        self.trans = tuple(trans) if trans is not None else (0,) * fin.R.rank

    @property
    def R(self) -> RootSystem:
        return self.fin.R

    def __eq__(self, other):
        return isinstance(other, AffineElt) and self.fin == other.fin and self.trans == other.trans

    def __hash__(self):
        return hash((self.fin, self.trans))

    def __lt__(self, other):
        return (self.fin.index, self.trans) < (other.fin.index, other.trans)

    def __mul__(self, other: AffineElt) -> AffineElt:
        # (w t_a)(v t_b) = wv t_{v^{-1} a + b}
        back = other.fin.inverse().act_coroot(self.trans)
        return AffineElt(self.fin * other.fin, tuple(x + y for x, y in zip(back, other.trans)))

    def inverse(self) -> AffineElt:
        # (w t_a)^{-1} = t_{-a} w^{-1} = w^{-1} t_{-w a}
        return AffineElt(self.fin.inverse(), tuple(-x for x in self.fin.act_coroot(self.trans)))

    def act_weight(self, mu, delta=0):
        """x(mu + k delta) as (weight, delta coefficient)."""
        return self.fin.act_weight(mu), delta - pair(mu, self.trans)

    def act_real_root(self, alpha, n):
        """x(alpha + n delta) for a finite root alpha in simple-root coordinates."""
        return self.fin.act_root(alpha), n - self.R.pair_root_coroot(alpha, self.trans)

    def __repr__(self):
        return f"AffineElt({format_affine(self)!r})"

    def __str__(self):
        return format_affine(self)


def translation(R: RootSystem, xi) -> AffineElt:
    return AffineElt(R.identity, xi)


def lift(w: WeylElt) -> AffineElt:
    return AffineElt(w)


def affine_simple(R: RootSystem, i: int) -> AffineElt:
    """s_i for i in I, and s_0 = s_theta t_{-theta^vee}."""
    if i == 0:
        return AffineElt(R.reflection(R.theta), tuple(-x for x in R.theta_coroot))
    return AffineElt(R.s(i))


def affine_reflection(R: RootSystem, alpha, n: int) -> AffineElt:
    """s_{alpha + n delta} = s_alpha t_{n alpha^vee}."""
    return AffineElt(R.reflection(alpha), tuple(n * c for c in R.coroot_of(alpha)))


def sil(x: AffineElt) -> int:
    """Semi-infinite length l(w) + 2<rho, xi>."""
    return x.fin.length + 2 * sum(x.trans)


def _real_positive(alpha_img, n, R: RootSystem) -> bool:
    return n > 0 or (n == 0 and R.is_positive(alpha_img))


def is_min_in_coset_af(x: AffineElt, J) -> bool:
    R = x.R
    for alpha in R.roots_in(J):
        c = R.pair_root_coroot(alpha, x.trans)
        if c == 0:
            if not R.is_positive(x.fin.act_root(alpha)):
                return False
        elif c == -1:
            if R.is_positive(x.fin.act_root(alpha)):
                return False
        else:
            return False
    return True


def is_min_in_coset_af_brute(x: AffineElt, J, n_max=None) -> bool:
    """Check positivity of x(beta) for beta = +-alpha + n delta, n up to a bound."""
    R = x.R
    roots = R.roots_in(J)
    if n_max is None:
        n_max = 2 * max([abs(R.pair_root_coroot(a, x.trans)) for a in roots] + [0]) + 1
    for alpha in roots:
        neg = tuple(-a for a in alpha)
        for n in range(n_max + 1):
            for beta in (alpha, neg):
                if n == 0 and beta is neg:
                    continue
                img, k = x.act_real_root(beta, n)
                if not _real_positive(img, k, R):
                    return False
    return True


@lru_cache(maxsize=None)
def _pi_trans_exact(R: RootSystem, J: frozenset, xi: tuple) -> AffineElt:
    # Pi^J(t_xi) = u t_{xi + xi1}, u in W_J, xi1 in Q_J^vee.  The J-simple roots
    # pair with xi + xi1 into {0, -1}; for each such target solve the J x J
    # system exactly, then u is forced by its inversion set.
    Js = sorted(J)
    if not Js:
        return AffineElt(R.identity, xi)
    a = R.cartan
    m = len(Js)
    base = [R.pair_root_coroot(R.simple_root(j), xi) for j in Js]
    found = []
    WJ = weyl_group(R, J)
    for target in product((0, -1), repeat=m):
        # sum_k a[k][j] y_k = target_j - base_j  for j in J (k ranges over J)
        rows = [[Fraction(a[Js[k] - 1][Js[r] - 1]) for k in range(m)] + [Fraction(target[r] - base[r])] for r in range(m)]
        y = _solve(rows, m)
        if y is None or any(v.denominator != 1 for v in y):
            continue
        zeta = list(xi)
        for k, j in enumerate(Js):
            zeta[j - 1] += int(y[k])
        zeta = tuple(zeta)
        for u in WJ:
            cand = AffineElt(u, zeta)
            if is_min_in_coset_af(cand, J):
                found.append(cand)
    if len(found) != 1:
        raise AssertionError(f"projection of t_{xi} onto (W^{set(J)})_af found {len(found)} candidates")
    return found[0]


def _solve(rows, m):
    # Gauss-Jordan over Fractions; None when singular
    for col in range(m):
        piv = next((r for r in range(col, m) if rows[r][col] != 0), None)
        if piv is None:
            return None
        rows[col], rows[piv] = rows[piv], rows[col]
        p = rows[col][col]
        rows[col] = [v / p for v in rows[col]]
        for r in range(m):
            if r != col and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [v - f * w for v, w in zip(rows[r], rows[col])]
    return [rows[r][m] for r in range(m)]


def pi_J_trans(R: RootSystem, xi, J) -> AffineElt:
    return _pi_trans_exact(R, frozenset(J), tuple(xi))


def pi_J_trans_search(R: RootSystem, xi, J, cap: int = 64) -> AffineElt:
    """Box search over u in W_J, xi1 in Q_J^vee with a doubling bound."""
    J = sorted(J)
    if not J:
        return AffineElt(R.identity, tuple(xi))
    roots = R.roots_in(J)
    bound = max(abs(R.pair_root_coroot(a, xi)) for a in roots) + 1
    WJ = weyl_group(R, J)
    while bound <= cap:
        hits = []
        for coords in product(range(-bound, bound + 1), repeat=len(J)):
            zeta = list(xi)
            for j, c in zip(J, coords):
                zeta[j - 1] += c
            for u in WJ:
                cand = AffineElt(u, zeta)
                if is_min_in_coset_af(cand, J):
                    hits.append(cand)
        if hits:
            if len(hits) != 1:
                raise AssertionError(f"box search found {len(hits)} candidates for t_{tuple(xi)}")
            return hits[0]
        bound *= 2
    raise AssertionError(f"box search for t_{tuple(xi)} exhausted cap {cap}")


def pi_J(x: AffineElt, J) -> AffineElt:
    """Projection onto the semi-infinite parabolic quotient: floor(w) Pi^J(t_xi)."""
    if not J:
        return x
    return AffineElt(floor_rep(x.fin, J)) * pi_J_trans(x.R, x.trans, J)


def cl_affine(x: AffineElt, J) -> WeylElt:
    if not is_min_in_coset_af(x, J):
        raise ValueError(f"{x} is not in the semi-infinite parabolic quotient")
    return floor_rep(x.fin, J)


def trans_class(x: AffineElt, J) -> tuple[int, ...]:
    """[xi]^J for x = cl(x) Pi^J(t_xi)."""
    return project_coroot(x.trans, J)


def compose(u: WeylElt, xi, J) -> AffineElt:
    """u Pi^J(t_xi) for u in W^J."""
    return AffineElt(u) * pi_J_trans(u.R, xi, J)


def format_affine(x: AffineElt) -> str:
    return f"{format_word(x.fin.word)} | ({','.join(str(c) for c in x.trans)})"


_AFF = re.compile(r"^(.*)\|\s*\(([-\d,\s]*)\)\s*$")


def parse_affine(R: RootSystem, text: str) -> AffineElt:
    m = _AFF.match(text.strip())
    if not m:
        return AffineElt(R.parse(text))
    coords = tuple(int(c) for c in m.group(2).split(",") if c.strip())
    if len(coords) != R.rank:
        raise ConfigurationError(f"translation {coords} has wrong rank")
    return AffineElt(R.parse(m.group(1)), coords)

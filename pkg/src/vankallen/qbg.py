"""Parabolic quantum Bruhat graph, tilted orders, EQB sets and the sets K^J_w."""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .affine import AffineElt, cl_affine, compose, is_min_in_coset_af, trans_class
from .cartan import (
    RootSystem,
    WeylElt,
    bruhat_leq,
    ceil_rep,
    floor_rep,
    format_word,
    longest,
    parabolic_quotient,
    project_coroot,
    right_descents,
)

BRUHAT, QUANTUM = "Bruhat", "Quantum"


@dataclass(frozen=True)
class Edge:
    src: WeylElt
    dst: WeylElt
    label: tuple
    kind: str


@dataclass(frozen=True)
class PathData:
    length: int
    weight: tuple


class QBGraph:
    """QBG(W^J) with all-pairs shortest lengths and projected weights."""

    def __init__(self, R: RootSystem, J):
        self.R = R
        self.J = frozenset(J)
        self.vertices = parabolic_quotient(R, self.J)
        self.pos = {v: k for k, v in enumerate(self.vertices)}
        Jroots = set(R.roots_in(self.J))
        self.labels = tuple(b for b in R.positive_roots if b not in Jroots)
        self.edges = []
        self.out = [[] for _ in self.vertices]
        for u in self.vertices:
            for beta in self.labels:
                v = floor_rep(u * R.reflection(beta), self.J)
                if v.length == u.length + 1:
                    kind = BRUHAT
                elif v.length == u.length + 1 - R.two_rho_pair(R.coroot_of(beta), self.J):
                    kind = QUANTUM
                else:
                    continue
                e = Edge(u, v, beta, kind)
                self.edges.append(e)
                self.out[self.pos[u]].append(e)
        self._all_pairs()

    def _all_pairs(self):
        n = len(self.vertices)
        zero = (0,) * self.R.rank
        self.dist = []
        self.weight = []
        for s in range(n):
            dist = [-1] * n
            wt = [None] * n
            dist[s], wt[s] = 0, zero
            queue = deque([s])
            while queue:
                a = queue.popleft()
                for e in self.out[a]:
                    b = self.pos[e.dst]
                    if dist[b] < 0:
                        dist[b] = dist[a] + 1
                        w = wt[a]
                        if e.kind == QUANTUM:
                            w = tuple(x + y for x, y in zip(w, self.R.coroot_of(e.label)))
                        wt[b] = w
                        queue.append(b)
            if min(dist) < 0:
                raise AssertionError(f"QBG of {self.R.name} is not strongly connected")
            self.dist.append(dist)
            self.weight.append([project_coroot(w, self.J) for w in wt])

    def length(self, u: WeylElt, v: WeylElt) -> int:
        return self.dist[self.pos[u]][self.pos[v]]

    def wt(self, u: WeylElt, v: WeylElt) -> tuple:
        """wt^J(u => v)."""
        return self.weight[self.pos[u]][self.pos[v]]

    def to_json(self) -> dict:
        return {
            "vertices": [format_word(v.word) for v in self.vertices],
            "edges": [
                {"src": format_word(e.src.word), "dst": format_word(e.dst.word), "label": list(e.label), "kind": e.kind}
                for e in self.edges
            ],
        }

    def to_dot(self) -> str:
        lines = ["digraph QBG {"]
        for v in self.vertices:
            lines.append(f'  "{format_word(v.word)}";')
        for e in self.edges:
            style = "solid" if e.kind == BRUHAT else "dashed"
            lab = ",".join(map(str, e.label))
            lines.append(f'  "{format_word(e.src.word)}" -> "{format_word(e.dst.word)}" [label="{lab}", style={style}];')
        lines.append("}")
        return "\n".join(lines)


@lru_cache(maxsize=None)
def _graph(R: RootSystem, J: frozenset) -> QBGraph:
    return QBGraph(R, J)


def build_qbg(R: RootSystem, J=()) -> QBGraph:
    return _graph(R, frozenset(J))


def shortest_data(G: QBGraph, u: WeylElt, v: WeylElt) -> PathData:
    return PathData(G.length(u, v), G.wt(u, v))


def brute_shortest_data(G: QBGraph, u: WeylElt, v: WeylElt) -> PathData:
    """Enumerate every shortest path; the projected weights must coincide."""
    R, J = G.R, G.J
    d = G.length(u, v)
    weights = set()

    def walk(x, left, acc):
        if left == 0:
            if x == v:
                weights.add(project_coroot(acc, J))
            return
        for e in G.out[G.pos[x]]:
            nxt = acc
            if e.kind == QUANTUM:
                nxt = tuple(a + b for a, b in zip(acc, R.coroot_of(e.label)))
            walk(e.dst, left - 1, nxt)

    walk(u, d, (0,) * R.rank)
    if len(weights) != 1:
        raise AssertionError(f"shortest paths {u} => {v} carry weights {weights}")
    return PathData(d, weights.pop())


def tilted_leq(G: QBGraph, w: WeylElt, u: WeylElt, v: WeylElt) -> bool:
    """u <=_w v."""
    return G.length(w, v) == G.length(w, u) + G.length(u, v)


# ---- semi-infinite order -------------------------------------------------

def si_leq(x: AffineElt, y: AffineElt, J) -> bool:
    """True iff y precedes x in the semi-infinite order (x is the larger side).

    With x = u Pi^J(t_a) and y = v Pi^J(t_b): x >= y iff
    [a]^J >= wt^J(v => u) + [b]^J.  A1 check: e t_{alpha^vee} >= s1, since
    wt(s1 => e) = alpha^vee.
    """
    J = frozenset(J)
    u, v = cl_affine(x, J), cl_affine(y, J)
    G = build_qbg(x.R, J)
    a, b = trans_class(x, J), trans_class(y, J)
    return all(p >= q + r for p, q, r in zip(a, G.wt(v, u), b))


si_geq = si_leq


# ---- reflection orders and EQB -----------------------------------------

def reflection_order(w: WeylElt, word=None, prefix=None):
    """Labels beta_{-q}, ..., beta_p and the position of beta_1.

    ``word`` is a reduced word for w (default: its canonical word) and
    ``prefix`` a reduced word for w0 w^{-1} (default: canonical).
    Returns (labels, split) where labels[k + q] = beta_k and split = q + 1.
    """
    R = w.R
    word = tuple(w.word if word is None else word)
    if prefix is None:
        prefix = (R.longest_element * w.inverse()).word
    prefix = tuple(prefix)
    full = prefix + word
    if R.from_word(full) != R.longest_element or len(full) != R.longest_element.length:
        raise ValueError("prefix + word is not a reduced word of the longest element")
    if R.from_word(word) != w or len(word) != w.length:
        raise ValueError("word is not a reduced word of w")
    labels = []
    for k in range(len(full)):
        # beta = s_{i_last} ... s_{i_{k+1}} alpha_{i_k}
        tail = R.from_word(tuple(reversed(full[k + 1:])))
        labels.append(tail.act_root(R.simple_root(full[k])))
    assert sorted(labels) == sorted(R.positive_roots)
    return tuple(labels), len(prefix)


def label_increasing_path(G: QBGraph, w: WeylElt, u: WeylElt, order=None):
    """Unique shortest path w -> u with strictly increasing label index.

    Returns a list of (edge, index) where index is k of beta_k.
    """
    if G.J:
        raise ValueError("label-increasing paths live in QBG(W)")
    labels, split = order if order is not None else reflection_order(w)
    index = {b: k - split + 1 for k, b in enumerate(labels)}
    found = []
    target = G.pos[u]

    def walk(x, last, path):
        d = G.dist[G.pos[x]][target]
        if d == 0:
            found.append(list(path))
            return
        for e in G.out[G.pos[x]]:
            k = index[e.label]
            if k > last and G.dist[G.pos[e.dst]][target] == d - 1:
                path.append((e, k))
                walk(e.dst, k, path)
                path.pop()

    walk(w, -len(labels) - 1, [])
    if len(found) != 1:
        raise AssertionError(f"{len(found)} label-increasing paths from {w} to {u}")
    return found[0]


def _eqb_label_increasing(G, w, order=None):
    order = order if order is not None else reflection_order(w)
    out = set()
    for u in G.vertices:
        path = label_increasing_path(G, w, u, order)
        if not path or path[0][1] >= 1:
            out.add(u)
    return frozenset(out)


def _eqb_brute(G, w):
    above = [z for z in G.vertices if z != w and bruhat_leq(w, z)]
    return frozenset(u for u in G.vertices if not any(tilted_leq(G, w, z, u) for z in above))


@lru_cache(maxsize=None)
def _eqb_recursive(G, w, largest=False):
    R = G.R
    w0 = R.longest_element
    if w == w0:
        return frozenset(G.vertices)
    ascents = [i for i in R.index_set if (R.s(i) * w).length > w.length]
    i = max(ascents) if largest else min(ascents)
    upper = R.s(i) * w
    above = _eqb_recursive(G, upper, largest)
    minus = tuple(-c for c in upper.inverse().act_root(R.simple_root(i)))
    si = R.s(i)
    if sum(minus) != 1:
        return frozenset((above | {si * v for v in above}) - above)
    return frozenset(v for v in above if tilted_leq(G, upper, w, v))


def eqb(G: QBGraph, w: WeylElt, method: str = "label_increasing", **kw) -> frozenset:
    if G.J:
        raise ValueError("EQB is defined on QBG(W)")
    if method == "label_increasing":
        return _eqb_label_increasing(G, w, kw.get("order"))
    if method == "recursive":
        return _eqb_recursive(G, w, kw.get("largest", False))
    if method == "brute":
        return _eqb_brute(G, w)
    raise ValueError(f"unknown EQB method {method!r}")


@lru_cache(maxsize=None)
def eqb_cached(R: RootSystem, w: WeylElt) -> frozenset:
    return eqb(build_qbg(R), w, "recursive")


# ---- K^J_w ---------------------------------------------------------------

def k_parametrize(w: WeylElt, J):
    """(floor(EQB(ceil(w))), u -> wt^J(w => u), I_{ceil(w)} minus J)."""
    J = frozenset(J)
    R = w.R
    top = ceil_rep(w, J)
    fins = frozenset(floor_rep(u, J) for u in eqb_cached(R, top))
    G = build_qbg(R, J)
    weights = {u: G.wt(w, u) for u in fins}
    free = frozenset(right_descents(top)) - J
    return fins, weights, free


def k_membership(x: AffineElt, w: WeylElt, J) -> bool:
    J = frozenset(J)
    if floor_rep(w, J) != w:
        raise ValueError(f"{w} is not a minimal coset representative")
    fins, weights, free = k_parametrize(w, J)
    u = cl_affine(x, J)
    if u not in fins:
        return False
    rest = [a - b for a, b in zip(trans_class(x, J), weights[u])]
    return all(c >= 0 and (c == 0 or k + 1 in free) for k, c in enumerate(rest))


def k_membership_definitional(x: AffineElt, w: WeylElt, J) -> bool:
    """x >= w and x >= z fails for every z in W^J strictly above w."""
    J = frozenset(J)
    if not si_leq(x, AffineElt(w), J):
        return False
    for z in parabolic_quotient(w.R, J):
        if z != w and bruhat_leq(w, z) and si_leq(x, AffineElt(z), J):
            return False
    return True


def max_below(x: AffineElt, J) -> WeylElt:
    J = frozenset(J)
    below = [v for v in parabolic_quotient(x.R, J) if si_leq(x, AffineElt(v), J)]
    tops = [v for v in below if not any(z != v and bruhat_leq(v, z) for z in below)]
    if len(tops) != 1:
        raise AssertionError(f"{x} has {len(tops)} maximal elements below it in W^J")
    return tops[0]


def translation_box(R: RootSystem, J, box: int):
    """Coroots with coordinates in [0, box] off J and 0 on J."""
    ranges = [range(1) if k + 1 in J else range(box + 1) for k in range(R.rank)]
    return product(*ranges)


def check_partition(w: WeylElt, J, box: int) -> list[str]:
    """Each x >= w in the box lies in exactly one K^J_v with v >= w."""
    J = frozenset(J)
    R = w.R
    quotient = parabolic_quotient(R, J)
    above = [v for v in quotient if bruhat_leq(w, v)]
    violations = []
    for u in quotient:
        for xi in translation_box(R, J, box):
            x = compose(u, xi, J)
            assert is_min_in_coset_af(x, J)
            hits = []
            for v in above:
                a = k_membership(x, v, J)
                if a != k_membership_definitional(x, v, J):
                    violations.append(f"{x}: parametrized and definitional membership in K_{v} disagree")
                if a:
                    hits.append(v)
            if si_leq(x, AffineElt(w), J):
                if len(hits) != 1:
                    violations.append(f"{x} lies in {len(hits)} cells above {w}")
            elif hits:
                violations.append(f"{x} is not above {w} but lies in a cell")
    return violations


def graph_json(G: QBGraph) -> str:
    return json.dumps(G.to_json(), indent=2)

"""Finite root systems, Weyl groups, Bruhat order and parabolic cosets.

Conventions used throughout the package:

* simple indices are ``1..rank``; ``0`` is reserved for the affine node;
* weights are integer tuples in the fundamental-weight basis;
* roots are integer tuples in the simple-root basis;
* coroots are integer tuples in the simple-coroot basis, so the pairing of a
  weight with a coroot is the plain dot product;
* ``cartan[i][j] = <alpha_j, alpha_i^vee>`` (0-based storage).
"""
from __future__ import annotations

from collections import deque
from fractions import Fraction
from functools import lru_cache
from itertools import product

Vec = tuple[int, ...]
Mat = tuple[tuple[int, ...], ...]

SUPPORTED = {"A": 1, "B": 2, "C": 2, "D": 4, "G": 2}
# whole-group enumeration and all-pairs tables are only sized for small rank
MAX_RANK = 4


class ConfigurationError(ValueError):
    pass


def cartan_matrix(series: str, rank: int) -> Mat:
    """Bourbaki-labelled Cartan matrix ``a[i][j] = <alpha_j, alpha_i^vee>``."""
    if series not in SUPPORTED or rank < SUPPORTED[series] or rank > MAX_RANK:
        raise ConfigurationError(f"unsupported type {series}{rank}")
    if series == "G" and rank != 2:
        raise ConfigurationError(f"unsupported type {series}{rank}")
    a = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    chain = rank - 1 if series != "D" else rank - 2
    for i in range(chain):
        a[i][i + 1] = a[i + 1][i] = -1
    if series == "B":
        # alpha_n short
        a[rank - 1][rank - 2] = -2
    elif series == "C":
        a[rank - 2][rank - 1] = -2
    elif series == "D":
        a[rank - 3][rank - 1] = a[rank - 1][rank - 3] = -1
    elif series == "G":
        # alpha_1 short
        a[0][1], a[1][0] = -3, -1
    return tuple(tuple(row) for row in a)


def _matmul(x: Mat, y: Mat) -> Mat:
    cols = list(zip(*y))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in x)


def _matvec(m: Mat, v: Vec) -> Vec:
    return tuple(sum(a * b for a, b in zip(row, v)) for row in m)


def _identity(n: int) -> Mat:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


class WeylElt:
    """An element of the finite Weyl group.

    Identity is the action matrix on fundamental-weight coordinates; the
    matrices on root and coroot coordinates, the length and the
    length-then-lexicographically smallest reduced word ride along.
    """

    __slots__ = ("R", "wt", "rt", "cr", "word", "index")

    def __init__(self, R, wt, rt, cr, word, index):
        self.R = R
        self.wt = wt
        self.rt = rt
        self.cr = cr
        self.word = word
        self.index = index

    @property
    def length(self) -> int:
        return len(self.word)

    def __eq__(self, other):
        return isinstance(other, WeylElt) and self.wt == other.wt

    def __hash__(self):
        return hash(self.wt)

    def __lt__(self, other):
        return self.index < other.index

    def __mul__(self, other: WeylElt) -> WeylElt:
        return self.R.elements[self.R._mul(self.index, other.index)]

    def inverse(self) -> WeylElt:
        return self.R.elements[self.R._inv[self.index]]

    def act_weight(self, mu: Vec) -> Vec:
        return _matvec(self.wt, mu)

    def act_root(self, beta: Vec) -> Vec:
        return _matvec(self.rt, beta)

    def act_coroot(self, xi: Vec) -> Vec:
        return _matvec(self.cr, xi)

    def __repr__(self):
        return f"WeylElt({format_word(self.word)!r})"

    def __str__(self):
        return format_word(self.word)


def format_word(word) -> str:
    return " ".join(f"s{i}" for i in word) if word else "e"


class RootSystem:
    """Root datum and Weyl group of a finite crystallographic type."""

    def __init__(self, series: str, rank: int):
        self.series = series
        self.rank = rank
        self.name = f"{series}{rank}"
        self.cartan = cartan_matrix(series, rank)
        self.index_set = tuple(range(1, rank + 1))
        self.rho = (1,) * rank
        self._symmetrize()
        self._close_roots()
        self._build_group()

    # ---- roots -------------------------------------------------------
    def _symmetrize(self):
        # d_i = (alpha_i, alpha_i)/2 with d_i a_ij = d_j a_ji, shortest roots d = 1
        n, a = self.rank, self.cartan
        d = [None] * n
        d[0] = Fraction(1)
        todo = [0]
        while todo:
            i = todo.pop()
            for j in range(n):
                if a[i][j] != 0 and d[j] is None:
                    d[j] = d[i] * a[i][j] / a[j][i]
                    todo.append(j)
        m = min(d)
        self.sym = tuple(x / m for x in d)

    def form(self, x: Vec, y: Vec) -> Fraction:
        """Invariant form on root coordinates, short roots of squared length 2."""
        a, d = self.cartan, self.sym
        return sum(d[i] * a[i][j] * x[i] * y[j] for i in range(self.rank) for j in range(self.rank))

    def pair_root_coroot(self, beta: Vec, xi: Vec) -> int:
        """<beta, xi> for a root-lattice element and a coroot."""
        a = self.cartan
        return sum(xi[i] * a[i][j] * beta[j] for i in range(self.rank) for j in range(self.rank))

    def root_to_weight(self, beta: Vec) -> Vec:
        a = self.cartan
        return tuple(sum(a[k][j] * beta[j] for j in range(self.rank)) for k in range(self.rank))

    def _close_roots(self):
        n = self.rank
        simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        seen = set(simple)
        queue = deque(simple)
        while queue:
            beta = queue.popleft()
            for i in range(n):
                c = sum(self.cartan[i][j] * beta[j] for j in range(n))
                gamma = tuple(b - (c if k == i else 0) for k, b in enumerate(beta))
                if any(x > 0 for x in gamma) and gamma not in seen:
                    seen.add(gamma)
                    queue.append(gamma)
        self.positive_roots = tuple(sorted(seen, key=lambda b: (sum(b), b)))
        self.positive_coroots = tuple(self._coroot(b) for b in self.positive_roots)
        self._root_pos = {b: k for k, b in enumerate(self.positive_roots)}
        self.theta = max(self.positive_roots, key=sum)
        self.theta_coroot = self._coroot(self.theta)

    def _coroot(self, beta: Vec) -> Vec:
        half = self.form(beta, beta) / 2
        out = tuple(Fraction(b) * self.sym[j] / half for j, b in enumerate(beta))
        assert all(x.denominator == 1 for x in out)
        return tuple(int(x) for x in out)

    def is_root(self, beta: Vec) -> bool:
        return beta in self._root_pos or tuple(-b for b in beta) in self._root_pos

    def is_positive(self, beta: Vec) -> bool:
        return beta in self._root_pos

    def coroot_of(self, beta: Vec) -> Vec:
        if beta in self._root_pos:
            return self.positive_coroots[self._root_pos[beta]]
        neg = tuple(-b for b in beta)
        if neg in self._root_pos:
            return tuple(-x for x in self.positive_coroots[self._root_pos[neg]])
        raise ValueError(f"{beta} is not a root of {self.name}")

    def simple_root(self, i: int) -> Vec:
        return tuple(int(k == i - 1) for k in range(self.rank))

    def alpha_weight(self, i: int) -> Vec:
        """alpha_i in fundamental-weight coordinates."""
        return tuple(self.cartan[k][i - 1] for k in range(self.rank))

    def roots_in(self, S) -> tuple[Vec, ...]:
        """Positive roots supported on S."""
        S = set(S)
        return tuple(b for b in self.positive_roots if all(b[k] == 0 or k + 1 in S for k in range(self.rank)))

    def two_rho_pair(self, xi: Vec, S=()) -> int:
        """<2(rho - rho_S), xi> as an integer."""
        total = 2 * sum(xi)
        for alpha in self.roots_in(S):
            total -= self.pair_root_coroot(alpha, xi)
        return total

    # ---- Weyl group --------------------------------------------------
    def _reflection_mats(self, i: int):
        n, a = self.rank, self.cartan
        k = i - 1
        wt = tuple(
            tuple(int(r == c) - (a[r][k] if c == k else 0) for c in range(n)) for r in range(n)
        )
        rt = tuple(
            tuple(int(r == c) - (a[k][c] if r == k else 0) for c in range(n)) for r in range(n)
        )
        cr = tuple(
            tuple(int(r == c) - (a[c][k] if r == k else 0) for c in range(n)) for r in range(n)
        )
        return wt, rt, cr

    def _build_group(self):
        n = self.rank
        gens = [self._reflection_mats(i) for i in self.index_set]
        ident = _identity(n)
        e = WeylElt(self, ident, ident, ident, (), 0)
        elements = [e]
        lookup = {ident: e}
        layer = [e]
        while layer:
            nxt = []
            # layer is already sorted by lexicographically smallest word
            for w in layer:
                for i in self.index_set:
                    g = gens[i - 1]
                    wt = _matmul(w.wt, g[0])
                    if wt in lookup:
                        continue
                    v = WeylElt(self, wt, _matmul(w.rt, g[1]), _matmul(w.cr, g[2]), w.word + (i,), -1)
                    lookup[wt] = v
                    nxt.append(v)
            # appended in (prefix order, letter) order: already lexicographic
            for v in nxt:
                v.index = len(elements)
                elements.append(v)
            layer = nxt
        self.elements = tuple(elements)
        self._lookup = lookup
        self.identity = e
        size = len(elements)
        self._rmul = [[lookup[_matmul(w.wt, gens[i - 1][0])].index for w in elements] for i in self.index_set]
        self._lmul = [[lookup[_matmul(gens[i - 1][0], w.wt)].index for w in elements] for i in self.index_set]
        self._inv = [0] * size
        for w in elements:
            m = e.index
            for i in reversed(w.word):
                m = self._rmul[i - 1][m]
            self._inv[w.index] = m
        self._mulcache = {}
        self.longest_element = max(elements, key=lambda w: w.length)

    def _mul(self, a: int, b: int) -> int:
        key = (a, b)
        out = self._mulcache.get(key)
        if out is None:
            out = a
            for i in self.elements[b].word:
                out = self._rmul[i - 1][out]
            self._mulcache[key] = out
        return out

    def s(self, i: int) -> WeylElt:
        return self.elements[self._rmul[i - 1][0]]

    def from_word(self, word) -> WeylElt:
        idx = 0
        for i in word:
            if i not in self.index_set:
                raise ConfigurationError(f"s{i} is not a generator of {self.name}")
            idx = self._rmul[i - 1][idx]
        return self.elements[idx]

    def parse(self, text: str) -> WeylElt:
        """Parse ``"s1 s2 s1"``, ``"1 2 1"``, ``"e"`` or ``""``."""
        text = text.strip()
        if text in ("", "e"):
            return self.identity
        word = []
        for tok in text.replace(",", " ").split():
            tok = tok.lstrip("s")
            if not tok.isdigit():
                raise ConfigurationError(f"bad word token {tok!r}")
            word.append(int(tok))
        return self.from_word(word)

    def reflection(self, beta: Vec) -> WeylElt:
        """s_beta for a (positive or negative) root beta."""
        bw = self.root_to_weight(beta)
        bv = self.coroot_of(beta)
        n = self.rank
        wt = tuple(tuple(int(r == c) - bw[r] * bv[c] for c in range(n)) for r in range(n))
        return self._lookup[wt]

    def __repr__(self):
        return f"RootSystem({self.name})"

    def __reduce__(self):
        return build_root_system, (self.series, self.rank)


@lru_cache(maxsize=None)
def build_root_system(series: str, rank: int | None = None) -> RootSystem:
    """Root system of type ``series`` and ``rank``; ``("A2")`` is also accepted."""
    if rank is None:
        series, rank = parse_type(series)
    return RootSystem(series, rank)


def parse_type(text: str) -> tuple[str, int]:
    text = text.strip().upper()
    if len(text) < 2 or not text[1:].isdigit():
        raise ConfigurationError(f"cannot parse type {text!r}")
    series, rank = text[0], int(text[1:])
    cartan_matrix(series, rank)
    return series, rank


def pair(mu: Vec, xi: Vec) -> int:
    if len(mu) != len(xi):
        raise ValueError("dimension mismatch")
    return sum(a * b for a, b in zip(mu, xi))


def coroot_of(R: RootSystem, beta: Vec) -> Vec:
    return R.coroot_of(beta)


def act(w: WeylElt, v: Vec, kind: str = "weight") -> Vec:
    if kind == "weight":
        return w.act_weight(v)
    if kind == "root":
        return w.act_root(v)
    if kind == "coroot":
        return w.act_coroot(v)
    raise ValueError(kind)


def weyl_group(R: RootSystem, S=None) -> tuple[WeylElt, ...]:
    """W_S in ascending length, then lexicographically smallest reduced word."""
    if S is None:
        return R.elements
    return _parabolic_subgroup(R, frozenset(S))


@lru_cache(maxsize=None)
def _parabolic_subgroup(R: RootSystem, S: frozenset) -> tuple[WeylElt, ...]:
    return tuple(w for w in R.elements if set(w.word) <= S)


def length(w: WeylElt) -> int:
    return w.length


def longest(R: RootSystem, S=None) -> WeylElt:
    return _longest_in(R, frozenset(S)) if S is not None else R.longest_element


@lru_cache(maxsize=None)
def _longest_in(R: RootSystem, S: frozenset) -> WeylElt:
    return weyl_group(R, S)[-1]


def right_descents(w: WeylElt) -> frozenset[int]:
    R = w.R
    return frozenset(j for j in R.index_set if not R.is_positive(w.act_root(R.simple_root(j))))


def left_descents(w: WeylElt) -> frozenset[int]:
    return right_descents(w.inverse())


@lru_cache(maxsize=None)
def _lower_interval(R: RootSystem, v_index: int) -> frozenset[int]:
    # subword property: products of subwords of one reduced word give [e, v]
    reach = {0}
    for i in R.elements[v_index].word:
        row = R._rmul[i - 1]
        reach |= {row[x] for x in reach}
    return frozenset(reach)


def bruhat_leq(u: WeylElt, v: WeylElt) -> bool:
    if u.length > v.length:
        return False
    return u.index in _lower_interval(v.R, v.index)


def bruhat_interval(u: WeylElt, v: WeylElt) -> list[WeylElt]:
    R = v.R
    return [R.elements[k] for k in sorted(_lower_interval(R, v.index)) if bruhat_leq(u, R.elements[k])]


def in_parabolic_quotient(w: WeylElt, J) -> bool:
    """w in W^J, i.e. w alpha in Delta^+ for all alpha in Delta_J^+."""
    return not (right_descents(w) & set(J))


def parabolic_quotient(R: RootSystem, J) -> tuple[WeylElt, ...]:
    return _quotient(R, frozenset(J))


@lru_cache(maxsize=None)
def _quotient(R: RootSystem, J: frozenset) -> tuple[WeylElt, ...]:
    return tuple(w for w in R.elements if in_parabolic_quotient(w, J))


@lru_cache(maxsize=None)
def _floor_table(R: RootSystem, J: frozenset) -> tuple[int, ...]:
    table = [-1] * len(R.elements)
    WJ = weyl_group(R, J)
    for w in R.elements:
        if table[w.index] < 0 and in_parabolic_quotient(w, J):
            for u in WJ:
                table[(w * u).index] = w.index
    return tuple(table)


def coset_reps(w: WeylElt, J) -> tuple[WeylElt, WeylElt]:
    """(floor(w), ceil(w)): minimal and maximal representatives of w W_J."""
    R = w.R
    J = frozenset(J)
    lo = R.elements[_floor_table(R, J)[w.index]]
    return lo, lo * longest(R, J)


def floor_rep(w: WeylElt, J) -> WeylElt:
    return coset_reps(w, J)[0]


def ceil_rep(w: WeylElt, J) -> WeylElt:
    return coset_reps(w, J)[1]


def j_of(lam: Vec) -> frozenset[int]:
    if any(c < 0 for c in lam):
        raise ValueError(f"{lam} is not dominant")
    return frozenset(i + 1 for i, c in enumerate(lam) if c == 0)


def project_coroot(xi: Vec, J) -> Vec:
    """[xi]^J: kill the Q_J^vee components."""
    return tuple(0 if k + 1 in J else x for k, x in enumerate(xi))


def is_nonneg(xi: Vec) -> bool:
    return all(x >= 0 for x in xi)


def dominant_weights(rank: int, max_sum: int):
    for lam in product(range(max_sum + 1), repeat=rank):
        if sum(lam) <= max_sum:
            yield lam


def reduced_words(w: WeylElt):
    """All reduced words of w, in lexicographic order."""
    R = w.R
    if w.length == 0:
        return [()]
    out = []
    for j in sorted(right_descents(w)):
        for word in reduced_words(w * R.s(j)):
            out.append(word + (j,))
    return sorted(out)

"""Sparse Laurent polynomials in e^mu (mu a weight) and q, plus q-only denominators."""
from __future__ import annotations

from collections import Counter


class GroupAlgebraElt:
    """Finite sum of c * e^mu q^k, stored as {(mu, k): c} with no zero entries."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for key, c in items:
                mu, k = key
                key = (tuple(mu), int(k))
                clean[key] = clean.get(key, 0) + c
        self.terms = {k: c for k, c in clean.items() if c}

    @classmethod
    def monomial(cls, mu, k=0, c=1):
        return cls({(tuple(mu), k): c})

    @classmethod
    def one(cls, rank):
        return cls.monomial((0,) * rank)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, GroupAlgebraElt) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0) + c
        return GroupAlgebraElt(out)

    def __neg__(self):
        return GroupAlgebraElt({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupAlgebraElt({k: c * other for k, c in self.terms.items()})
        out = {}
        for (mu, k), c in self.terms.items():
            for (nu, l), d in other.terms.items():
                key = (tuple(a + b for a, b in zip(mu, nu)), k + l)
                out[key] = out.get(key, 0) + c * d
        return GroupAlgebraElt(out)

    __rmul__ = __mul__

    def q_shift(self, r: int):
        return GroupAlgebraElt({(mu, k + r): c for (mu, k), c in self.terms.items()})

    def times_one_minus_q(self, r: int):
        """self * (1 - q^r)."""
        return self - self.q_shift(r)

    def truncate(self, N: int):
        """Keep q-exponents >= -N."""
        return GroupAlgebraElt({key: c for key, c in self.terms.items() if key[1] >= -N})

    def divide_one_minus_q(self, r: int):
        """Exact quotient self / (1 - q^r) for r != 0; raises if inexact."""
        if r == 0:
            raise ZeroDivisionError("1 - q^0")
        if r > 0:
            # 1 - q^r = -q^r (1 - q^{-r})
            return (-self.q_shift(-r)).divide_one_minus_q(-r)
        s = -r
        # self = g - g q^{-s}: f_k = g_k - g_{k+s}, so g_k = f_k + g_{k+s} from the top down
        by_weight = {}
        for (mu, k), c in self.terms.items():
            by_weight.setdefault(mu, {})[k] = c
        out = {}
        for mu, f in by_weight.items():
            top, bottom = max(f), min(f)
            g = {}
            for k in range(top, bottom + s - 1, -1):
                g[k] = f.get(k, 0) + g.get(k + s, 0)
            for k, c in g.items():
                if c:
                    out[(mu, k)] = c
        quotient = GroupAlgebraElt(out)
        if quotient.times_one_minus_q(r) != self:
            raise ArithmeticError(f"division by (1 - q^{r}) is not exact")
        return quotient

    def items_sorted(self):
        """Terms ordered by q descending, then weight lexicographic."""
        return sorted(self.terms.items(), key=lambda t: (-t[0][1], t[0][0]))

    def to_json(self):
        return [{"weight": list(mu), "q": k, "coeff": c} for (mu, k), c in self.items_sorted()]

    @classmethod
    def from_json(cls, data):
        return cls({(tuple(t["weight"]), t["q"]): t["coeff"] for t in data})

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"GroupAlgebraElt({format_poly(self)!r})"


def format_weight(mu) -> str:
    parts = []
    for i, c in enumerate(mu, start=1):
        if c == 0:
            continue
        mag = "" if abs(c) == 1 else f"{abs(c)} "
        sign = "-" if c < 0 else "+"
        parts.append((sign, f"{mag}w{i}"))
    if not parts:
        return "e^(0)"
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return f"e^({text})"


def format_poly(f: GroupAlgebraElt) -> str:
    if not f.terms:
        return "0"
    out = ""
    for n, ((mu, k), c) in enumerate(f.items_sorted()):
        body = format_weight(mu)
        if k:
            body = f"q^{k} {body}"
        mag = abs(c)
        if mag != 1:
            body = f"{mag} {body}"
        if n == 0:
            out = ("-" if c < 0 else "") + body
        else:
            out += (" - " if c < 0 else " + ") + body
    return out


class GradedChar:
    """numerator / prod_{r in denom} (1 - q^{-r})."""

    __slots__ = ("numerator", "denom")

    def __init__(self, numerator: GroupAlgebraElt, denom=()):
        if any(r <= 0 for r in denom):
            raise ValueError("denominator exponents must be positive")
        self.numerator = numerator
        self.denom = tuple(sorted(denom))

    def _times_factors(self, factors):
        out = self.numerator
        for r in factors:
            out = out.times_one_minus_q(-r)
        return out

    def __eq__(self, other):
        if not isinstance(other, GradedChar):
            return NotImplemented
        common = sorted((Counter(self.denom) | Counter(other.denom)).elements())
        return self._lift(common) == other._lift(common)

    __hash__ = None

    def _lift(self, denom):
        extra = Counter(denom) - Counter(self.denom)
        return self._times_factors(list(extra.elements()))

    def __add__(self, other):
        a, b = Counter(self.denom), Counter(other.denom)
        common = sorted((a | b).elements())
        return GradedChar(self._lift(common) + other._lift(common), common)

    def __neg__(self):
        return GradedChar(-self.numerator, self.denom)

    @classmethod
    def sum(cls, chars):
        """Sum over one shared denominator; cheaper than repeated ``+``."""
        chars = list(chars)
        union = Counter()
        for g in chars:
            union |= Counter(g.denom)
        common = sorted(union.elements())
        total = GroupAlgebraElt()
        for g in chars:
            total = total + g._lift(common)
        return cls(total, common)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c: int):
        return GradedChar(self.numerator * c, self.denom)

    __rmul__ = __mul__

    def map_numerator(self, fn):
        return GradedChar(fn(self.numerator), self.denom)

    def is_zero(self):
        return not self.numerator

    def to_json(self):
        return {"numerator": self.numerator.to_json(), "denom": list(self.denom)}

    @classmethod
    def from_json(cls, data):
        return cls(GroupAlgebraElt.from_json(data["numerator"]), data["denom"])

    def __str__(self):
        if not self.denom:
            return format_poly(self.numerator)
        den = "".join(f"(1 - q^-{r})" for r in self.denom)
        return f"({format_poly(self.numerator)}) / ({den})"

    def __repr__(self):
        return f"GradedChar({self})"


def geometric_inverse(denom, rank: int, N: int) -> GroupAlgebraElt:
    """prod_r 1/(1 - q^{-r}) expanded down to q^{-N}."""
    out = GroupAlgebraElt.one(rank)
    zero = (0,) * rank
    for r in denom:
        series = GroupAlgebraElt({(zero, -r * k): 1 for k in range(N // r + 1)})
        out = (out * series).truncate(N)
    return out


def expand_truncated(g: GradedChar, N: int) -> GroupAlgebraElt:
    """Expansion of a GradedChar in q^{-1}, keeping exponents >= -N."""
    if N < 0:
        raise ValueError("truncation depth must be nonnegative")
    terms = g.numerator.terms
    if not terms:
        return GroupAlgebraElt()
    rank = len(next(iter(terms))[0])
    depth = N + max(0, max(k for _, k in terms))
    return (g.numerator * geometric_inverse(g.denom, rank, depth)).truncate(N)

"""Quantum coordinate rings with PBW normal forms.

A ring is a rewriting system: for every pair of generators ``v_j, v_i`` with
``j > i`` in PBW order there is a rule ``v_j v_i -> c v_i v_j + extra``.
Products are normal-ordered by pushing generators one at a time into an
ordered monomial; partial products are memoized per ring.

Termination. In the q-commutation rings every rule removes one inversion.
In the x, z, y ring the rule ``y x -> x y + c z^2`` removes a (y, x)
inversion and the new z's sit between x's and y's, so the count of (y, x)
inversions strictly drops while total degree is preserved.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import ContextError, DomainError
from .linalg import Echelon
from .scalars import ONE, ZERO, RatFunc, as_ratfunc, q, qpow

Mono = tuple  # exponent vector in PBW order


@dataclass(eq=False)
class RingSpec:
    """A quantum coordinate ring given by PBW rewrite rules.

    Attributes:
        name: Ring identifier such as ``"xyz_sl2"`` or ``"xy_n(3)"``.
        variables: Generator names in PBW order.
        rules: ``(j, i) -> (c, extra)`` for ``j > i``: the product ``v_j v_i``
            rewrites to ``c v_i v_j + extra`` with ``extra`` an ``{Mono: RatFunc}``
            dict already in normal form.
    """

    name: str
    variables: tuple[str, ...]
    rules: dict
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, var: str) -> int:
        try:
            return self.variables.index(var)
        except ValueError:
            raise ContextError(f"{var!r} is not a generator of {self.name}") from None

    def unit(self, i: int) -> Mono:
        return tuple(1 if j == i else 0 for j in range(self.nvars))

    def rule_text(self, j: int, i: int) -> str:
        c, extra = self.rules[(j, i)]
        vi, vj = self.variables[i], self.variables[j]
        text = f"{vj}*{vi} -> ({c})*{vi}*{vj}"
        for m, e in extra.items():
            text += f" + ({e})*{_mono_str(self, m)}"
        return text

    # product machinery ------------------------------------------------

    def _mono_gen(self, mono: Mono, g: int) -> dict:
        """Normal form of ``mono * v_g``."""
        key = (mono, g)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        last = max((i for i, e in enumerate(mono) if e), default=-1)
        if last <= g:
            m = list(mono)
            m[g] += 1
            res = {tuple(m): ONE}
        else:
            c, extra = self.rules[(last, g)]
            head = list(mono)
            head[last] -= 1
            head = tuple(head)
            # head * v_last * v_g = c * (head * v_g) * v_last + head * extra
            res = {}
            for m, a in self._poly_gen(self._mono_gen(head, g), last).items():
                res[m] = res.get(m, ZERO) + c * a
            for m2, b in extra.items():
                for m, a in self._mono_word(head, m2).items():
                    res[m] = res.get(m, ZERO) + b * a
            res = {m: a for m, a in res.items() if a}
        self._cache[key] = res
        return res

    def _poly_gen(self, poly: Mapping[Mono, RatFunc], g: int) -> dict:
        out: dict = {}
        for m, c in poly.items():
            for m2, a in self._mono_gen(m, g).items():
                out[m2] = out.get(m2, ZERO) + c * a
        return {m: a for m, a in out.items() if a}

    def _mono_word(self, mono: Mono, other: Mono) -> dict:
        """Normal form of ``mono * other`` where ``other`` is a PBW monomial."""
        poly = {mono: ONE}
        for i, e in enumerate(other):
            for _ in range(e):
                poly = self._poly_gen(poly, i)
        return poly


def _mono_str(ring: RingSpec, m: Mono) -> str:
    parts = [v if e == 1 else f"{v}^{e}" for v, e in zip(ring.variables, m) if e]
    return "*".join(parts) or "1"


class NCPoly:
    """An element of a quantum coordinate ring in PBW normal form."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: RingSpec, terms: Mapping[Mono, RatFunc] | None = None):
        self.ring = ring
        self.terms = {tuple(m): as_ratfunc(c) for m, c in (terms or {}).items() if c}

    @classmethod
    def monomial(cls, ring: RingSpec, exps: Sequence[int], coeff=ONE) -> NCPoly:
        if len(exps) != ring.nvars or any(e < 0 for e in exps):
            raise DomainError(f"bad exponent vector {exps} for {ring.name}")
        return cls(ring, {tuple(exps): coeff})

    @classmethod
    def gen(cls, ring: RingSpec, var: str) -> NCPoly:
        return cls(ring, {ring.unit(ring.index(var)): ONE})

    @classmethod
    def one(cls, ring: RingSpec) -> NCPoly:
        return cls(ring, {(0,) * ring.nvars: ONE})

    def _check(self, other: NCPoly):
        if other.ring is not self.ring:
            raise ContextError(f"cannot combine elements of {self.ring.name} and {other.ring.name}")

    def __add__(self, other: NCPoly) -> NCPoly:
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, ZERO) + c
        return NCPoly(self.ring, out)

    def __neg__(self) -> NCPoly:
        return NCPoly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: NCPoly) -> NCPoly:
        return self + (-other)

    def __mul__(self, other) -> NCPoly:
        if isinstance(other, NCPoly):
            return mul(self.ring, self, other)
        c = as_ratfunc(other)
        return NCPoly(self.ring, {m: c * v for m, v in self.terms.items()})

    def __rmul__(self, other) -> NCPoly:
        c = as_ratfunc(other)
        return NCPoly(self.ring, {m: c * v for m, v in self.terms.items()})

    def __pow__(self, k: int) -> NCPoly:
        out = NCPoly.one(self.ring)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, NCPoly) and other.ring is self.ring and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.ring.name, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def to_json(self) -> dict:
        return {"ring": self.ring.name,
                "terms": [{"exps": list(m), "coeff": c.to_json()} for m, c in sorted(self.terms.items(), reverse=True)]}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{_mono_str(self.ring, m)}" for m, c in sorted(self.terms.items(), reverse=True))

    __repr__ = __str__


# ---------------------------------------------------------------------------
# ring constructors

def _xyz_ring() -> RingSpec:
    # PBW order x < z < y, basis x^a z^c y^b
    x, z, y = 0, 1, 2
    z2 = (0, 2, 0)
    rules = {
        (z, x): (qpow(-2), {}),
        (y, x): (ONE, {z2: q * (qpow(2) - qpow(-2))}),
        (y, z): (qpow(-2), {}),
    }
    return RingSpec("xyz_sl2", ("x", "z", "y"), rules)


def _x_ring(n: int) -> RingSpec:
    rules = {(j, i): (qpow(-1), {}) for j in range(n) for i in range(j)}
    return RingSpec(f"x_n({n})", tuple(f"x{k}" for k in range(1, n + 1)), rules)


def _y_ring(n: int) -> RingSpec:
    rules = {(j, i): (qpow(1), {}) for j in range(n) for i in range(j)}
    return RingSpec(f"y_n({n})", tuple(f"y{k}" for k in range(1, n + 1)), rules)


def _xy_ring(n: int) -> RingSpec:
    # positions: x_k -> k-1, y_k -> n+k-1
    rules = {}
    for j in range(n):
        for i in range(j):
            rules[(j, i)] = (qpow(-1), {})  # x_j x_i = q^-1 x_i x_j
            rules[(n + j, n + i)] = (qpow(1), {})  # y_j y_i = q y_i y_j
    for jy in range(n):
        for ix in range(n):
            if ix < jy:
                c = qpow(1)  # q x_i y_j = y_j x_i  (i < j)
            elif ix > jy:
                c = qpow(-1)  # x_i y_j = q y_j x_i  (j < i)
            else:
                c = ONE
            rules[(n + jy, ix)] = (c, {})
    names = tuple(f"x{k}" for k in range(1, n + 1)) + tuple(f"y{k}" for k in range(1, n + 1))
    return RingSpec(f"xy_n({n})", names, rules)


_RINGS: dict = {}


def make_ring(kind: str, n: int | None = None) -> RingSpec:
    """Return (and cache) one of the four ring families.

    Args:
        kind: ``"xyz_sl2"``, ``"x_n"``, ``"y_n"`` or ``"xy_n"``.
        n: Rank for the ``*_n`` families; must be at least 2.

    Raises:
        DomainError: Unknown kind or ``n < 2``.
    """
    key = (kind, n)
    if key in _RINGS:
        return _RINGS[key]
    if kind == "xyz_sl2":
        ring = _xyz_ring()
    elif kind in ("x_n", "y_n", "xy_n"):
        if n is None or n < 2:
            raise DomainError(f"{kind} needs n >= 2, got {n}")
        ring = {"x_n": _x_ring, "y_n": _y_ring, "xy_n": _xy_ring}[kind](n)
    else:
        raise DomainError(f"unknown ring kind {kind!r}")
    _RINGS[key] = ring
    return ring


# ---------------------------------------------------------------------------
# operations

def normal_form(ring: RingSpec, word: Iterable[tuple[str, int]]) -> NCPoly:
    """Normal-order the product of ``(variable, power)`` factors."""
    poly = {(0,) * ring.nvars: ONE}
    for var, power in word:
        if power < 0:
            raise DomainError("negative powers are not allowed in a word")
        g = ring.index(var)
        for _ in range(power):
            poly = ring._poly_gen(poly, g)
    return NCPoly(ring, poly)


def mul(ring: RingSpec, f: NCPoly, g: NCPoly) -> NCPoly:
    """Product ``f g`` in normal form."""
    if f.ring is not ring or g.ring is not ring:
        raise ContextError("factors belong to a different ring")
    out: dict = {}
    for m2, c2 in g.terms.items():
        for m1, c1 in f.terms.items():
            c = c1 * c2
            for m, a in ring._mono_word(m1, m2).items():
                out[m] = out.get(m, ZERO) + c * a
    return NCPoly(ring, out)


def is_central(ring: RingSpec, f: NCPoly) -> bool:
    """True iff ``f`` commutes with every generator."""
    for v in ring.variables:
        g = NCPoly.gen(ring, v)
        if not (g * f - f * g).is_zero():
            return False
    return True


def monomials_of_degree(nvars: int, d: int) -> list[Mono]:
    """Exponent vectors of total degree ``d`` in graded-lex (descending) order."""
    if nvars == 1:
        return [(d,)]
    out = []
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(nvars - 1, d - first):
            out.append((first,) + rest)
    return out


def center_basis(ring: RingSpec, max_total_degree: int) -> list[NCPoly]:
    """Basis of the central elements of degree at most ``max_total_degree``.

    Commutators with generators raise degree by exactly one, so each
    homogeneous slice is solved separately.
    """
    if max_total_degree < 0:
        raise DomainError("degree bound must be >= 0")
    gens = [NCPoly.gen(ring, v) for v in ring.variables]
    basis = []
    for d in range(max_total_degree + 1):
        monos = monomials_of_degree(ring.nvars, d)
        columns = []
        for m in monos:
            f = NCPoly(ring, {m: ONE})
            col = {}
            for gi, g in enumerate(gens):
                for mm, c in (g * f - f * g).terms.items():
                    col[(gi, mm)] = c
            columns.append(col)
        for vec in Echelon(columns).kernel():
            basis.append(NCPoly(ring, {monos[j]: c for j, c in vec.items()}))
    return basis


def p_q(ring: RingSpec) -> NCPoly:
    """The quadratic invariant of the ring (``xyz_sl2`` or ``xy_n``)."""
    if ring.name == "xyz_sl2":
        return NCPoly(ring, {(1, 0, 1): qpow(-1), (0, 2, 0): qpow(2)})
    if ring.name.startswith("xy_n"):
        n = ring.nvars // 2
        terms = {}
        for k in range(1, n + 1):
            m = [0] * ring.nvars
            m[k - 1] = 1
            m[n + k - 1] = 1
            terms[tuple(m)] = qpow(k - 1)
        return NCPoly(ring, terms)
    raise DomainError(f"no quadratic invariant defined for {ring.name}")


def random_monomial(ring: RingSpec, max_degree: int, rng: random.Random) -> NCPoly:
    d = rng.randint(0, max_degree)
    exps = [0] * ring.nvars
    for _ in range(d):
        exps[rng.randrange(ring.nvars)] += 1
    return NCPoly(ring, {tuple(exps): ONE})


def associativity_fuzz(ring: RingSpec, samples: int, max_degree: int = 5, seed: int = 0) -> list:
    """Check ``(fg)h == f(gh)`` on random monomial triples; return failures."""
    rng = random.Random(seed)
    failures = []
    for _ in range(samples):
        f, g, h = (random_monomial(ring, max_degree, rng) for _ in range(3))
        if (f * g) * h != f * (g * h):
            failures.append((f, g, h))
    return failures

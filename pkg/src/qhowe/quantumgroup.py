"""Quantum groups U_q(sl_2) (at base q^d) and U_q(sl_n).

Relations are stored as formal linear combinations of generator words that
must vanish. A representation assigns a WeylOp (or a :class:`Matrix`) to
each generator, and :func:`check_relations` evaluates every relation word
exactly. For sl_2 there is also a PBW algebra with basis ``F^a K^b E^c``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import ConfigError, ContextError, DomainError
from .linalg import Matrix
from .scalars import ONE, ZERO, RatFunc, WeightExpr, as_ratfunc, qint, qpow
from .weylop import CommPoly, WeylOp, apply

# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class Relation:
    """``sum(coeff * word) == 0`` with words as tuples of generator names."""

    name: str
    terms: tuple[tuple[RatFunc, tuple[str, ...]], ...]

    def text(self) -> str:
        parts = []
        for c, w in self.terms:
            word = "*".join(w) if w else "1"
            parts.append(f"({c})*{word}")
        return " + ".join(parts) + " = 0"


@dataclass(frozen=True)
class Presentation:
    """Generators and defining relations of a quantum group.

    Attributes:
        name: ``"U_q(sl2)"``, ``"U_{q^2}(sl2)"`` or ``"U_q(sl{n})"``.
        rank: Number of simple roots.
        base: Exponent ``d`` so that q is replaced by ``q^d`` (sl_2 only).
        generators: Generator names; inverses of K's are separate generators.
        relations: The defining relations.
    """

    name: str
    rank: int
    base: int
    generators: tuple[str, ...]
    relations: tuple[Relation, ...]


def _rel(name: str, *terms) -> Relation:
    return Relation(name, tuple((as_ratfunc(c), tuple(w)) for c, w in terms))


def _qdiff(d: int) -> RatFunc:
    return qpow(d) - qpow(-d)


def sl2_presentation(d: int = 1) -> Presentation:
    """U_{q^d}(sl_2): the sl_2 relations with q replaced by ``q^d``."""
    if d < 1:
        raise DomainError(f"base exponent must be >= 1, got {d}")
    inv = _qdiff(d).inverse()
    rels = (
        _rel("K*Kinv=1", (1, ("K", "Kinv")), (-1, ())),
        _rel("Kinv*K=1", (1, ("Kinv", "K")), (-1, ())),
        _rel("K*E*Kinv=q^2E", (1, ("K", "E", "Kinv")), (-qpow(2 * d), ("E",))),
        _rel("K*F*Kinv=q^-2F", (1, ("K", "F", "Kinv")), (-qpow(-2 * d), ("F",))),
        _rel("[E,F]=(K-Kinv)/(q-q^-1)", (1, ("E", "F")), (-1, ("F", "E")), (-inv, ("K",)), (inv, ("Kinv",))),
    )
    name = "U_q(sl2)" if d == 1 else f"U_{{q^{d}}}(sl2)"
    return Presentation(name, 1, d, ("E", "F", "K", "Kinv"), rels)


def cartan(i: int, j: int) -> int:
    """``(alpha_i, alpha_j)`` for sl_n."""
    if i == j:
        return 2
    return -1 if abs(i - j) == 1 else 0


def sln_presentation(n: int) -> Presentation:
    """U_q(sl_n) with quantum Serre relations."""
    if n < 2:
        raise DomainError(f"sl_n needs n >= 2, got {n}")
    r = n - 1
    inv = _qdiff(1).inverse()
    gens = []
    for i in range(1, r + 1):
        gens += [f"E{i}", f"F{i}", f"K{i}", f"Kinv{i}"]
    rels = []
    for i in range(1, r + 1):
        K, Ki = f"K{i}", f"Kinv{i}"
        rels.append(_rel(f"K{i}*Kinv{i}=1", (1, (K, Ki)), (-1, ())))
        rels.append(_rel(f"Kinv{i}*K{i}=1", (1, (Ki, K)), (-1, ())))
        for j in range(1, r + 1):
            a = cartan(i, j)
            if i < j:
                rels.append(_rel(f"K{i}*K{j}=K{j}*K{i}", (1, (K, f"K{j}")), (-1, (f"K{j}", K))))
            rels.append(_rel(f"K{i}*E{j}*Kinv{i}=q^({a})E{j}", (1, (K, f"E{j}", Ki)), (-qpow(a), (f"E{j}",))))
            rels.append(_rel(f"K{i}*F{j}*Kinv{i}=q^({-a})F{j}", (1, (K, f"F{j}", Ki)), (-qpow(-a), (f"F{j}",))))
            if i == j:
                rels.append(_rel(f"[E{i},F{i}]=(K{i}-Kinv{i})/(q-q^-1)",
                                 (1, (f"E{i}", f"F{i}")), (-1, (f"F{i}", f"E{i}")), (-inv, (K,)), (inv, (Ki,))))
            else:
                rels.append(_rel(f"[E{i},F{j}]=0", (1, (f"E{i}", f"F{j}")), (-1, (f"F{j}", f"E{i}"))))
            if abs(i - j) == 1:
                for X in ("E", "F"):
                    xi, xj = f"{X}{i}", f"{X}{j}"
                    rels.append(_rel(f"Serre {X}{i}^2{X}{j}",
                                     (1, (xi, xi, xj)), (-qint(2), (xi, xj, xi)), (1, (xj, xi, xi))))
            elif i < j:
                for X in ("E", "F"):
                    xi, xj = f"{X}{i}", f"{X}{j}"
                    rels.append(_rel(f"{X}{i}*{X}{j}={X}{j}*{X}{i}", (1, (xi, xj)), (-1, (xj, xi))))
    return Presentation(f"U_q(sl{n})", r, 1, tuple(gens), tuple(rels))


# ---------------------------------------------------------------------------
# representations


@dataclass
class RepAssignment:
    """Images of quantum-group generators.

    Attributes:
        images: Generator name to WeylOp or Matrix. Missing ``Kinv*`` images
            are filled in by inverting the matching ``K*`` image.
        base: Base exponent ``d`` of the quantum group being represented.
        label: Human-readable name used in reports.
    """

    images: dict
    base: int = 1
    label: str = ""
    _one: object = field(default=None, repr=False)

    def __post_init__(self):
        for g in list(self.images):
            if g.startswith("K") and not g.startswith("Kinv"):
                inv = "Kinv" + g[1:]
                if inv not in self.images:
                    self.images[inv] = self.images[g].inverse()

    def one(self):
        if self._one is None:
            sample = next(iter(self.images.values()))
            self._one = Matrix.identity(sample.shape[0]) if isinstance(sample, Matrix) else WeylOp.one()
        return self._one

    def __getitem__(self, g: str):
        try:
            return self.images[g]
        except KeyError:
            raise ConfigError(f"representation {self.label!r} has no image for {g}") from None

    def word(self, w: Sequence[str]):
        out = self.one()
        for g in w:
            out = out * self[g]
        return out

    def variables(self) -> set[str]:
        out = set()
        for v in self.images.values():
            if isinstance(v, WeylOp):
                out |= v.variables()
        return out

    def to_json(self) -> dict:
        return {"label": self.label, "base": self.base,
                "images": {g: v.to_json() for g, v in sorted(self.images.items())}}


def _matrix(size: int, entries: Mapping[tuple[int, int], RatFunc]) -> Matrix:
    return Matrix([[entries.get((i, j), ZERO) for j in range(size)] for i in range(size)])


def adjoint_matrices() -> RepAssignment:
    """Three-dimensional representation on the basis ``(x, z, y)``."""
    two = qint(2)
    images = {
        "E": _matrix(3, {(1, 0): two, (2, 1): -ONE}),
        "F": _matrix(3, {(0, 1): ONE, (1, 2): -two}),
        "K": _matrix(3, {(0, 0): qpow(-2), (1, 1): ONE, (2, 2): qpow(2)}),
    }
    return RepAssignment(images, 1, "rho_adjoint")


def standard_matrices(n: int, dual: bool = False) -> RepAssignment:
    """The n-dimensional representation of U_q(sl_n) or its dual, on ``e_1..e_n``.

    Standard: ``E_i e_(i+1) = e_i``, ``F_i e_i = e_(i+1)``, ``K_i = diag(.., q, q^-1, ..)``.
    Dual: ``E_i e_i = -e_(i+1)``, ``F_i e_(i+1) = -e_i``, ``K_i = diag(.., q^-1, q, ..)``.
    """
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    images = {}
    for i in range(n - 1):
        diag = {(k, k): ONE for k in range(n)}
        if dual:
            images[f"E{i + 1}"] = _matrix(n, {(i + 1, i): -ONE})
            images[f"F{i + 1}"] = _matrix(n, {(i, i + 1): -ONE})
            diag[(i, i)], diag[(i + 1, i + 1)] = qpow(-1), qpow(1)
        else:
            images[f"E{i + 1}"] = _matrix(n, {(i, i + 1): ONE})
            images[f"F{i + 1}"] = _matrix(n, {(i + 1, i): ONE})
            diag[(i, i)], diag[(i + 1, i + 1)] = qpow(1), qpow(-1)
        images[f"K{i + 1}"] = _matrix(n, diag)
    return RepAssignment(images, 1, f"rho_{'dual' if dual else 'standard'}(n={n})")


@dataclass
class RelationFailure:
    relation: str
    word: str
    residue: object

    def to_json(self) -> dict:
        res = self.residue.to_json() if hasattr(self.residue, "to_json") else str(self.residue)
        return {"relation": self.relation, "word": self.word, "residue": res}


@dataclass
class RelationReport:
    presentation: str
    label: str
    passed: bool
    checked: int
    failures: list

    def to_json(self) -> dict:
        return {"presentation": self.presentation, "representation": self.label, "passed": self.passed,
                "checked": self.checked, "failures": [f.to_json() for f in self.failures]}


def check_relations(rep: RepAssignment, pres: Presentation) -> RelationReport:
    """Evaluate every relation of ``pres`` under ``rep`` exactly.

    Raises:
        ConfigError: A generator has no image.
    """
    missing = [g for g in pres.generators if g not in rep.images]
    if missing:
        raise ConfigError(f"representation {rep.label!r} misses generators {missing}")
    failures = []
    for rel in pres.relations:
        acc = None
        for c, w in rel.terms:
            term = rep.word(w) * c
            acc = term if acc is None else acc + term
        if not acc.is_zero():
            failures.append(RelationFailure(rel.name, rel.text(), acc))
    return RelationReport(pres.name, rep.label, not failures, len(pres.relations), failures)


def tensor_rep(rep1: RepAssignment, rep2: RepAssignment, label: str = "") -> RepAssignment:
    """Representation on the tensor product through the coproduct.

    ``E -> E1 K2 + E2``, ``K -> K1 K2``, ``F -> F1 + K1^-1 F2`` for every
    simple root.

    Raises:
        ContextError: The two representations share a variable or base.
    """
    if rep1.base != rep2.base:
        raise ContextError("tensor factors must have the same base")
    shared = rep1.variables() & rep2.variables()
    if shared:
        raise ContextError(f"tensor factors share variables {sorted(shared)}")
    images = {}
    for g in rep1.images:
        if g.startswith("E"):
            s = g[1:]
            images[g] = rep1[g] * rep2["K" + s] + rep2[g]
            images["F" + s] = rep1["F" + s] + rep1["Kinv" + s] * rep2["F" + s]
            images["K" + s] = rep1["K" + s] * rep2["K" + s]
            images["Kinv" + s] = rep1["Kinv" + s] * rep2["Kinv" + s]
    return RepAssignment(images, rep1.base, label or f"({rep1.label})⊗({rep2.label})")


def relations_by_action(rep: RepAssignment, pres: Presentation, samples: Sequence[CommPoly]) -> list[str]:
    """Evaluate each relation on sample polynomials, one generator at a time.

    Operators are never multiplied, so this does not go through the
    normal-form calculus that :func:`check_relations` relies on. Returns
    ``"relation@index"`` for every failing sample.
    """
    failures = []
    for i, f in enumerate(samples):
        cache: dict[tuple[str, ...], CommPoly] = {(): f}

        def act(w: tuple[str, ...]) -> CommPoly:
            if w not in cache:
                cache[w] = apply(rep[w[0]], act(w[1:]))
            return cache[w]

        for rel in pres.relations:
            total = CommPoly()
            for c, w in rel.terms:
                total = total + act(w) * c
            if not total.is_zero():
                failures.append(f"{rel.name}@{i}")
    return failures


# ---------------------------------------------------------------------------
# sl_2 PBW algebra


class PBWElem:
    """Element of U_{q^d}(sl_2) in the basis ``F^a K^b E^c``."""

    __slots__ = ("terms", "d")

    def __init__(self, terms: Mapping[tuple[int, int, int], RatFunc] | None = None, d: int = 1):
        self.terms = {tuple(k): as_ratfunc(c) for k, c in (terms or {}).items() if c}
        self.d = d

    @classmethod
    def mono(cls, a: int = 0, b: int = 0, c: int = 0, coeff=ONE, d: int = 1) -> PBWElem:
        if a < 0 or c < 0:
            raise DomainError("F and E exponents must be >= 0")
        return cls({(a, b, c): coeff}, d)

    @classmethod
    def gen(cls, name: str, d: int = 1) -> PBWElem:
        key = {"F": (1, 0, 0), "K": (0, 1, 0), "Kinv": (0, -1, 0), "E": (0, 0, 1)}[name]
        return cls({key: ONE}, d)

    def _check(self, other: PBWElem):
        if other.d != self.d:
            raise ContextError("PBW elements over different bases")

    def __add__(self, other: PBWElem) -> PBWElem:
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, ZERO) + c
        return PBWElem(out, self.d)

    def __neg__(self) -> PBWElem:
        return PBWElem({k: -c for k, c in self.terms.items()}, self.d)

    def __sub__(self, other: PBWElem) -> PBWElem:
        return self + (-other)

    def __mul__(self, other) -> PBWElem:
        if isinstance(other, PBWElem):
            return pbw_mul(self, other)
        c = as_ratfunc(other)
        return PBWElem({k: c * v for k, v in self.terms.items()}, self.d)

    def __rmul__(self, other) -> PBWElem:
        c = as_ratfunc(other)
        return PBWElem({k: c * v for k, v in self.terms.items()}, self.d)

    def __pow__(self, k: int) -> PBWElem:
        out = PBWElem({(0, 0, 0): ONE}, self.d)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, PBWElem) and self.d == other.d and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.d, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def to_json(self) -> dict:
        return {"base": self.d, "terms": [{"FKE": list(m), "coeff": c.to_json()} for m, c in sorted(self.terms.items())]}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (a, b, c), v in sorted(self.terms.items()):
            word = []
            if a:
                word.append("F" if a == 1 else f"F^{a}")
            if b:
                word.append("K" if b == 1 else f"K^{b}")
            if c:
                word.append("E" if c == 1 else f"E^{c}")
            parts.append(f"({v})" + ("*" + "*".join(word) if word else ""))
        return " + ".join(parts)

    __repr__ = __str__


_PBW_CACHE: dict = {}


def _pbw_mono_gen(m: tuple, g: str, d: int) -> dict:
    """``F^a K^b E^c * g`` by single-step swaps."""
    key = (m, g, d)
    if key in _PBW_CACHE:
        return _PBW_CACHE[key]
    a, b, c = m
    if g == "E":
        res = {(a, b, c + 1): ONE}
    elif g in ("K", "Kinv"):
        e = 1 if g == "K" else -1
        # E K = q^(-2d) K E
        res = {(a, b + e, c): qpow(-2 * d * c * e)}
    elif g == "F":
        if c == 0:
            # K F = q^(-2d) F K
            res = {(a + 1, b, 0): qpow(-2 * d * b)}
        else:
            head = (a, b, c - 1)
            inv = _qdiff(d).inverse()
            res = {}
            # head * E * F = head * F * E + head * (K - K^-1)/(q^d - q^-d)
            for m2, v in _pbw_mono_gen(head, "F", d).items():
                for m3, w in _pbw_mono_gen(m2, "E", d).items():
                    res[m3] = res.get(m3, ZERO) + v * w
            for gk, s in (("K", inv), ("Kinv", -inv)):
                for m2, v in _pbw_mono_gen(head, gk, d).items():
                    res[m2] = res.get(m2, ZERO) + s * v
            res = {k: v for k, v in res.items() if v}
    else:
        raise DomainError(f"unknown sl2 generator {g!r}")
    _PBW_CACHE[key] = res
    return res


def _pbw_word(m: tuple) -> list[str]:
    a, b, c = m
    return ["F"] * a + (["K"] * b if b >= 0 else ["Kinv"] * (-b)) + ["E"] * c


def pbw_mul(A: PBWElem, B: PBWElem) -> PBWElem:
    """Product in the ordered basis ``F^a K^b E^c``."""
    A._check(B)
    out: dict = {}
    for mb, cb in B.terms.items():
        word = _pbw_word(mb)
        for ma, ca in A.terms.items():
            poly = {ma: ca * cb}
            for g in word:
                nxt: dict = {}
                for m, v in poly.items():
                    for m2, w in _pbw_mono_gen(m, g, A.d).items():
                        nxt[m2] = nxt.get(m2, ZERO) + v * w
                poly = {k: v for k, v in nxt.items() if v}
            for m, v in poly.items():
                out[m] = out.get(m, ZERO) + v
    return PBWElem(out, A.d)


def pbw_commutator(A: PBWElem, B: PBWElem) -> PBWElem:
    return A * B - B * A


def casimir(d: int = 1) -> PBWElem:
    """``FE + (q K + q^-1 K^-1)/(q - q^-1)^2`` (with q replaced by ``q^d``)."""
    denom = _qdiff(d) ** 2
    return PBWElem({(1, 0, 1): ONE, (0, 1, 0): qpow(d) / denom, (0, -1, 0): qpow(-d) / denom}, d)


def commutator_identities(s: int, d: int = 1) -> tuple[PBWElem, PBWElem]:
    """Residues of the closed forms for ``[E^s, F]`` and ``[E, F^s]``; both vanish.

    ``[E^s, F] = [s] E^(s-1) (q^(s-1) K - q^(1-s) K^-1)/(q - q^-1)`` and
    ``[E, F^s] = [s] F^(s-1) (q^(1-s) K - q^(s-1) K^-1)/(q - q^-1)``, in base ``q^d``.
    """
    if s < 0:
        raise DomainError("s must be >= 0")
    E, F, K, Kinv = (PBWElem.gen(g, d) for g in ("E", "F", "K", "Kinv"))
    one = PBWElem.mono(d=d)
    diff = _qdiff(d)
    lhs1 = pbw_commutator(E ** s, F)
    rhs1 = (E ** (s - 1) if s else one * ZERO) * (K * qpow(d * (s - 1)) - Kinv * qpow(d * (1 - s))) * (qint(s, d) / diff)
    lhs2 = pbw_commutator(E, F ** s)
    rhs2 = (F ** (s - 1) if s else one * ZERO) * (K * qpow(d * (1 - s)) - Kinv * qpow(d * (s - 1))) * (qint(s, d) / diff)
    return lhs1 - rhs1, lhs2 - rhs2


def casimir_is_central(d: int = 1) -> bool:
    cas = casimir(d)
    return all(pbw_commutator(cas, PBWElem.gen(g, d)).is_zero() for g in ("E", "F", "K", "Kinv"))


def casimir_eigenvalue(w: WeightExpr) -> RatFunc:
    """``c_w = (q^(w+1) + q^(-w-1))/(q - q^-1)^2``."""
    v = w.shift(1).value()
    return (v + v.inverse()) / _qdiff(1) ** 2


def rep_eval(rep: RepAssignment, elem: PBWElem):
    """Image of a PBW element under an sl_2 representation."""
    out = None
    for (a, b, c), coeff in elem.terms.items():
        img = rep.word(_pbw_word((a, b, c))) * coeff
        out = img if out is None else out + img
    return out if out is not None else rep.one() * ZERO


# ---------------------------------------------------------------------------
# truncated formal characters


@dataclass(frozen=True)
class FormalChar:
    """Truncated character: ``coeffs[n]`` is the multiplicity of weight ``top - 2n``."""

    top: WeightExpr
    coeffs: tuple[int, ...]

    @property
    def depth(self) -> int:
        return len(self.coeffs) - 1

    def to_json(self) -> dict:
        return {"top": str(self.top), "coeffs": list(self.coeffs)}


def char_verma(depth: int, top: WeightExpr | None = None) -> FormalChar:
    if depth < 0:
        raise DomainError("depth must be >= 0")
    return FormalChar(top if top is not None else WeightExpr(), (1,) * (depth + 1))


def _offset(hi: WeightExpr, lo: WeightExpr) -> int:
    diff = hi - lo
    if not diff.is_integer() or diff.int_value() % 2:
        raise DomainError(f"top weights {hi} and {lo} are not in the same 2Z-coset")
    return diff.int_value() // 2


def char_add(a: FormalChar, b: FormalChar) -> FormalChar:
    """Sum of two characters whose tops differ by an even integer."""
    k = _offset(a.top, b.top)
    if k < 0:
        a, b, k = b, a, -k
    depth = min(a.depth, b.depth + k)
    coeffs = [a.coeffs[n] + (b.coeffs[n - k] if n >= k else 0) for n in range(depth + 1)]
    return FormalChar(a.top, tuple(coeffs))


def char_shift(a: FormalChar, offset: int, depth: int) -> FormalChar:
    """Re-express ``a`` relative to a top ``2*offset`` higher, truncated at ``depth``."""
    coeffs = [a.coeffs[n - offset] if 0 <= n - offset <= a.depth else 0 for n in range(depth + 1)]
    return FormalChar(a.top.shift(2 * offset), tuple(coeffs))


def char_equal(a: FormalChar, b: FormalChar) -> bool:
    """Compare coefficient sequences up to the common depth.

    Raises:
        DomainError: The top weights differ.
    """
    if a.top != b.top:
        raise DomainError(f"characters have different top weights {a.top} and {b.top}")
    depth = min(a.depth, b.depth)
    return a.coeffs[: depth + 1] == b.coeffs[: depth + 1]


def char_tensor(a: FormalChar, b: FormalChar) -> FormalChar:
    """Character of a tensor product (convolution)."""
    depth = min(a.depth, b.depth)
    coeffs = [sum(a.coeffs[i] * b.coeffs[n - i] for i in range(n + 1)) for n in range(depth + 1)]
    return FormalChar(a.top + b.top, tuple(coeffs))

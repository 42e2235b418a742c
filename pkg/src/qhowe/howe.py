"""The two quantum Howe dualities.

``sl2_triple``
    U_{q^2}(sl_2) and U_q(sl_2) acting on C[x, y, z], transported from the
    quantum coordinate ring with PBW basis ``x^a z^c y^b``.
``sln``
    U_q(sl_2) and U_q(sl_n) acting on C[x_1..x_n, y_1..y_n], transported from
    the ring with basis ``x^a y^b``.

A :class:`DualityContext` bundles the sigma-side and pi-side representations
and the invariant operators P, Q, E. Construction verifies the defining
relations of both sides and all cross-commutators exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from .errors import ContextError, DomainError, InvariantViolation
from .linalg import Echelon, same_span
from .ncpoly import NCPoly, RingSpec, make_ring, monomials_of_degree, normal_form, p_q
from .quantumgroup import (
    Presentation,
    adjoint_matrices,
    RelationReport,
    RepAssignment,
    check_relations,
    sl2_presentation,
    sln_presentation,
    standard_matrices,
    tensor_rep,
)
from .scalars import ONE, ZERO, RatFunc, qint, qnum_gen, qpow
from .weylop import CommPoly, D, Dq2, G, WeylOp, X, apply, commutator


@dataclass
class Check:
    """One exact verification: a named claim and the residue if it failed."""

    claim: str
    passed: bool
    residue: object = None

    def to_json(self) -> dict:
        res = None
        if self.residue is not None:
            res = self.residue.to_json() if hasattr(self.residue, "to_json") else str(self.residue)
        return {"claim": self.claim, "passed": self.passed, "residue": res}


@dataclass
class DualityContext:
    """Everything needed to work with one Howe duality.

    Attributes:
        which: ``"sl2_triple"`` or ``"sln"``.
        n: Rank parameter for ``sln``.
        variables: Commutative variables in exponent-vector order.
        ring: The quantum coordinate ring the action is transported from.
        sigma: Representation of the symmetry quantum group.
        sigma_pres: Presentation the sigma side must satisfy.
        pi: Representation of the dual U_{q^d}(sl_2).
        pi_pres: Presentation the pi side must satisfy.
        P, Q, E: Invariant operators; ``Ex``/``Ey`` are the partial Euler
            operators for ``sln``.
        checks: Verification results recorded at construction.
    """

    which: str
    n: int | None
    variables: tuple[str, ...]
    ring: RingSpec
    sigma: RepAssignment
    sigma_pres: Presentation
    pi: RepAssignment
    pi_pres: Presentation
    P: WeylOp
    Q: WeylOp
    E: WeylOp
    Ex: WeylOp | None = None
    Ey: WeylOp | None = None
    checks: list = field(default_factory=list)
    _harmonic_cache: dict = field(default_factory=dict, repr=False)

    @property
    def name(self) -> str:
        return "sl2_triple" if self.which == "sl2_triple" else f"sln(n={self.n})"

    # gradings -------------------------------------------------------

    def label_of(self, exps: Sequence[int]):
        """Grading label of a commutative monomial exponent vector."""
        if self.which == "sl2_triple":
            return sum(exps)
        return (sum(exps[: self.n]), sum(exps[self.n:]))

    def lower(self, label, j: int):
        """Label of ``h`` such that ``P^j h`` has label ``label``, or None."""
        if self.which == "sl2_triple":
            return label - 2 * j if label - 2 * j >= 0 else None
        a, b = label
        return (a - j, b - j) if min(a, b) >= j else None

    def slice_exps(self, label) -> list[tuple[int, ...]]:
        """Exponent vectors of a graded slice in graded-lex order."""
        if self.which == "sl2_triple":
            if label < 0:
                raise DomainError("degree label must be >= 0")
            return monomials_of_degree(3, label)
        a, b = label
        if a < 0 or b < 0:
            raise DomainError("degree labels must be >= 0")
        return [ex + ey for ex in monomials_of_degree(self.n, a) for ey in monomials_of_degree(self.n, b)]

    def labels_up_to(self, max_degree: int) -> list:
        if self.which == "sl2_triple":
            return list(range(max_degree + 1))
        return [(a, d - a) for d in range(max_degree + 1) for a in range(d, -1, -1)]

    def monomial(self, exps: Sequence[int]) -> CommPoly:
        return CommPoly.from_exps(self.variables, exps)

    def harmonic_dimension(self, label) -> int:
        """Closed-form dimension of the harmonic space with this label."""
        if self.which == "sl2_triple":
            return 2 * label + 1
        a, b = label
        n = self.n
        val = Fraction((a + b + n - 1) * (n - 1), (a + n - 1) * (b + n - 1)) * comb(a + n - 1, n - 1) * comb(b + n - 1, n - 1)
        if val.denominator != 1:
            raise InvariantViolation(f"dimension formula is not integral at {label}")
        return int(val)

    def euler_checks(self, f: CommPoly, label) -> bool:
        """``E_q f = q^a f`` (and the partial Euler operators for ``sln``)."""
        if self.which == "sl2_triple":
            return apply(self.E, f) == f * qpow(label)
        a, b = label
        return apply(self.Ex, f) == f * qpow(a) and apply(self.Ey, f) == f * qpow(b)

    def bernstein_expected(self, s: int) -> RatFunc:
        if self.which == "sl2_triple":
            return qint(s + 1, 2) * qnum_gen(0, 2 * s + 3, 2)
        return qint(s + 1) * qint(s + self.n)

    def verma_factor(self, label, j: int) -> RatFunc:
        """Scalar in ``Q(P^j h) = c P^(j-1) h`` for harmonic ``h`` with this label."""
        if self.which == "sl2_triple":
            return qint(j, 2) * qnum_gen(0, 2 * label + 2 * j + 1, 2)
        a, b = label
        return qint(j) * qint(self.n + a + b + j - 1)


# ---------------------------------------------------------------------------
# construction


def _sl2_triple_ops():
    x, y, z = "x", "y", "z"
    two = qint(2)
    sigma = {
        "E": two * X(z) * G(x, -2) * G(y, 2) * Dq2(x) - X(y) * G(y, 2) * G(z, -1) * D(z),
        "K": G(x, -2) * G(y, 2),
        "F": -two * X(z) * G(x, 2) * G(y, -2) * Dq2(y) + X(x) * G(x, 2) * G(z, -1) * D(z),
    }
    P = X(x) * X(y) * G(z, -2) * qpow(-1) + X(z, 2) * qpow(2)
    Q = Dq2(x) * Dq2(y) + D(z, 2) * G(x, 2) * G(y, 2) / two**2
    E = G(x) * G(y) * G(z)
    return sigma, P, Q, E


def sigma_V(n: int) -> RepAssignment:
    """Action on the x-variables (the coordinate ring C_q[x])."""
    images = {}
    for i in range(1, n):
        xi, xj = f"x{i}", f"x{i + 1}"
        images[f"E{i}"] = -X(xj) * G(xi, -1) * G(xj) * D(xi)
        images[f"F{i}"] = -X(xi) * G(xi) * G(xj, -1) * D(xj)
        images[f"K{i}"] = G(xi, -1) * G(xj)
    return RepAssignment(images, 1, f"sigma_V(n={n})")


def sigma_Vdual(n: int) -> RepAssignment:
    """Action on the y-variables (the coordinate ring C_q[y])."""
    images = {}
    for i in range(1, n):
        yi, yj = f"y{i}", f"y{i + 1}"
        images[f"E{i}"] = X(yi) * D(yj)
        images[f"F{i}"] = X(yj) * D(yi)
        images[f"K{i}"] = G(yi) * G(yj, -1)
    return RepAssignment(images, 1, f"sigma_V*(n={n})")


def _sln_ops(n: int):
    xs = [f"x{k}" for k in range(1, n + 1)]
    ys = [f"y{k}" for k in range(1, n + 1)]
    sigma = tensor_rep(sigma_V(n), sigma_Vdual(n), f"sigma_q(n={n})")
    P = WeylOp()
    Q = WeylOp()
    for k in range(n):
        term = X(xs[k]) * X(ys[k]) * qpow(k)
        for i in range(k):
            term = term * G(ys[i])
        for i in range(k + 1, n):
            term = term * G(xs[i], -1)
        P = P + term
        term = D(xs[k]) * D(ys[k]) * qpow(k + 1 - n)
        for i in range(k):
            term = term * G(xs[i])
        for i in range(k + 1, n):
            term = term * G(ys[i], -1)
        Q = Q + term
    Ex = WeylOp.one()
    Ey = WeylOp.one()
    for k in range(n):
        Ex = Ex * G(xs[k])
        Ey = Ey * G(ys[k])
    return sigma, P, Q, Ex, Ey


def build_context(which: str, n: int | None = None, verify: bool = True) -> DualityContext:
    """Construct (and by default verify) one duality.

    Args:
        which: ``"sl2_triple"`` or ``"sln"``.
        n: Rank for ``sln``; at least 2.
        verify: Run the relation and commutation checks.

    Raises:
        DomainError: Unknown duality or ``n < 2``.
        InvariantViolation: A check failed; the residue is attached.
    """
    if which == "sl2_triple":
        sig, P, Q, E = _sl2_triple_ops()
        ctx = DualityContext(
            which, None, ("x", "y", "z"), make_ring("xyz_sl2"),
            RepAssignment(sig, 1, "sigma_q"), sl2_presentation(1),
            RepAssignment({"E": P, "K": E * E * qpow(3), "F": -Q}, 2, "pi_q"), sl2_presentation(2),
            P, Q, E)
    elif which == "sln":
        if n is None or n < 2:
            raise DomainError(f"sln needs n >= 2, got {n}")
        sig, P, Q, Ex, Ey = _sln_ops(n)
        E = Ex * Ey
        variables = tuple(f"x{k}" for k in range(1, n + 1)) + tuple(f"y{k}" for k in range(1, n + 1))
        ctx = DualityContext(
            which, n, variables, make_ring("xy_n", n),
            sig, sln_presentation(n),
            RepAssignment({"E": P, "K": E * qpow(n), "F": -Q}, 1, f"pi_q(n={n})"), sl2_presentation(1),
            P, Q, E, Ex, Ey)
    else:
        raise DomainError(f"unknown duality {which!r}")
    if verify:
        verify_context(ctx)
    return ctx


def verify_context(ctx: DualityContext) -> list[Check]:
    """Run the construction checks and raise on the first failure."""
    checks = []
    for rep, pres in ((ctx.sigma, ctx.sigma_pres), (ctx.pi, ctx.pi_pres)):
        report: RelationReport = check_relations(rep, pres)
        for f in report.failures:
            checks.append(Check(f"relations:{rep.label}:{f.relation}", False, f.residue))
        checks.append(Check(f"relations:{rep.label}:{pres.name}", report.passed))
    for g in sorted(ctx.sigma.images):
        for h in sorted(ctx.pi.images):
            c = commutator(ctx.sigma.images[g], ctx.pi.images[h])
            checks.append(Check(f"commute:sigma({g}),pi({h})", c.is_zero(), None if c.is_zero() else c))
    extra = [("P", ctx.P), ("Q", ctx.Q), ("E", ctx.E)]
    if ctx.which == "sln":
        extra += [("Ex", ctx.Ex), ("Ey", ctx.Ey)]
    for g in sorted(ctx.sigma.images):
        for name, op in extra:
            c = commutator(ctx.sigma.images[g], op)
            checks.append(Check(f"invariant:{name}:sigma({g})", c.is_zero(), None if c.is_zero() else c))
    ctx.checks = checks
    bad = [c for c in checks if not c.passed]
    if bad:
        raise InvariantViolation(f"{ctx.name}: {bad[0].claim} failed", residue=bad[0].residue)
    return checks


# ---------------------------------------------------------------------------
# transport between C[...] and the quantum coordinate ring


def _to_nc_exps(ctx: DualityContext, exps: Sequence[int]) -> tuple:
    if ctx.which == "sl2_triple":
        a, b, c = exps
        return (a, c, b)
    return tuple(exps)


def _to_comm_exps(ctx: DualityContext, exps: Sequence[int]) -> tuple:
    if ctx.which == "sl2_triple":
        a, c, b = exps
        return (a, b, c)
    return tuple(exps)


def phi_transport(ctx: DualityContext, direction: str, obj):
    """Identify commutative monomials with PBW monomials.

    Args:
        direction: ``"to_nc"`` maps a CommPoly to an NCPoly, ``"to_comm"``
            maps back.
    """
    if direction == "to_nc":
        if not isinstance(obj, CommPoly):
            raise ContextError("to_nc expects a CommPoly")
        return NCPoly(ctx.ring, {_to_nc_exps(ctx, e): c for e, c in obj.exps(ctx.variables).items()})
    if direction == "to_comm":
        if not isinstance(obj, NCPoly) or obj.ring is not ctx.ring:
            raise ContextError(f"to_comm expects an element of {ctx.ring.name}")
        return CommPoly({CommPoly.mono(dict(zip(ctx.variables, _to_comm_exps(ctx, m)))): c for m, c in obj.terms.items()})
    raise DomainError(f"unknown direction {direction!r}")


def transported(ctx: DualityContext, op: WeylOp, f: NCPoly) -> NCPoly:
    """``phi o op o phi^-1`` applied to ``f``."""
    return phi_transport(ctx, "to_nc", apply(op, phi_transport(ctx, "to_comm", f)))


def delta_q(ctx: DualityContext, f: NCPoly) -> NCPoly:
    """The q-Laplacian on the coordinate ring, from its explicit monomial formula."""
    out: dict = {}

    def add(m, c):
        if c:
            out[m] = out.get(m, ZERO) + c

    for m, coeff in f.terms.items():
        if ctx.which == "sl2_triple":
            a, c, b = m
            if a and b:
                add((a - 1, c, b - 1), coeff * qint(a, 2) * qint(b, 2))
            if c >= 2:
                add((a, c - 2, b), coeff * qint(c) * qint(c - 1) * qpow(2 * a + 2 * b) / qint(2) ** 2)
        else:
            n = ctx.n
            xa, yb = m[:n], m[n:]
            for k in range(n):
                if xa[k] and yb[k]:
                    shift = sum(xa[:k]) - sum(yb[k + 1:])
                    new = list(m)
                    new[k] -= 1
                    new[n + k] -= 1
                    add(tuple(new), coeff * qpow(k + 1 - n + shift) * qint(xa[k]) * qint(yb[k]))
    return NCPoly(ctx.ring, out)


# coproduct action on PBW words (independent of the sigma formulas) -----------


def _letter_action(ctx: DualityContext) -> dict:
    """Generator images on degree-one elements, read off the defining matrices."""
    if ctx.which == "sl2_triple":
        blocks = [(adjoint_matrices(), ["x", "z", "y"])]
    else:
        n = ctx.n
        blocks = [(standard_matrices(n, dual=True), [f"x{k}" for k in range(1, n + 1)]),
                  (standard_matrices(n), [f"y{k}" for k in range(1, n + 1)])]
    acts: dict = {}
    for rep, letters in blocks:
        for g, mat in rep.images.items():
            if g.startswith("Kinv"):
                continue
            table = acts.setdefault(g, {})
            for j, letter in enumerate(letters):
                col = {letters[i]: mat.rows[i][j] for i in range(len(letters)) if mat.rows[i][j]}
                # K is diagonal on letters; store its eigenvalue
                table[letter] = col[letter] if g.startswith("K") else col
    return acts


def rho_action(ctx: DualityContext, gen: str, f: NCPoly) -> NCPoly:
    """Action of a generator on the coordinate ring through the coproduct.

    A PBW monomial is read as a word of letters; ``E`` acts on one letter and
    ``K`` on all letters to its right, ``F`` on one letter and ``K^-1`` on all
    letters to its left. The resulting words are normal-ordered in the ring.
    """
    acts = _letter_action(ctx)
    suffix = gen[4:] if gen.startswith("Kinv") else gen[1:]
    kdiag = acts["K" + suffix]
    if gen.startswith("K"):
        sign = -1 if gen.startswith("Kinv") else 1
        out = NCPoly(ctx.ring)
        for m, c in f.terms.items():
            scale = ONE
            for v, e in zip(ctx.ring.variables, m):
                scale = scale * kdiag[v] ** (sign * e)
            out = out + NCPoly(ctx.ring, {m: c * scale})
        return out
    table = acts[gen]
    out = NCPoly(ctx.ring)
    for m, c in f.terms.items():
        word = [v for v, e in zip(ctx.ring.variables, m) for _ in range(e)]
        for i, letter in enumerate(word):
            if gen.startswith("E"):
                scale = ONE
                for v in word[i + 1:]:
                    scale = scale * kdiag[v]
            else:
                scale = ONE
                for v in word[:i]:
                    scale = scale * kdiag[v].inverse()
            for img, a in table[letter].items():
                new_word = word[:i] + [img] + word[i + 1:]
                out = out + normal_form(ctx.ring, [(v, 1) for v in new_word]) * (c * a * scale)
    return out


# ---------------------------------------------------------------------------
# harmonic spaces and Fischer decomposition


@dataclass
class HarmonicSpace:
    label: object
    basis: list
    nc_basis: list

    @property
    def dim(self) -> int:
        return len(self.basis)

    def to_json(self) -> dict:
        return {"label": self.label, "dim": self.dim, "basis": [b.to_json() for b in self.basis]}


def harmonic_basis(ctx: DualityContext, label, check: bool = True) -> HarmonicSpace:
    """Kernel of Q on a graded slice.

    Raises:
        InvariantViolation: The dimension disagrees with the closed formula.
    """
    key = label if ctx.which == "sl2_triple" else tuple(label)
    if key in ctx._harmonic_cache:
        return ctx._harmonic_cache[key]
    exps = ctx.slice_exps(key)
    columns = [apply(ctx.Q, ctx.monomial(e)).terms for e in exps]
    basis = []
    for vec in Echelon(columns).kernel():
        basis.append(CommPoly({CommPoly.mono(dict(zip(ctx.variables, exps[j]))): c for j, c in vec.items()}))
    space = HarmonicSpace(key, basis, [phi_transport(ctx, "to_nc", b) for b in basis])
    if check and space.dim != ctx.harmonic_dimension(key):
        raise InvariantViolation(f"dim H{key} = {space.dim}, formula gives {ctx.harmonic_dimension(key)}")
    ctx._harmonic_cache[key] = space
    return space


def apply_power(op: WeylOp, j: int, f: CommPoly) -> CommPoly:
    for _ in range(j):
        f = apply(op, f)
    return f


@dataclass
class FischerExpansion:
    """``f = sum P^j h`` with each ``h`` harmonic of the recorded label."""

    components: list  # (j, label, h)

    def recompose(self, ctx: DualityContext) -> CommPoly:
        out = CommPoly()
        for j, _, h in self.components:
            out = out + apply_power(ctx.P, j, h)
        return out

    def to_json(self) -> list:
        return [{"j": j, "label": label, "h": h.to_json()} for j, label, h in self.components]


def fischer_spanning_set(ctx: DualityContext, label) -> list[tuple[int, object, int, CommPoly]]:
    """``(j, h_label, index, P^j h)`` for the harmonic bases feeding one slice."""
    out = []
    j = 0
    while True:
        low = ctx.lower(label, j)
        if low is None:
            break
        for i, h in enumerate(harmonic_basis(ctx, low).basis):
            out.append((j, low, i, apply_power(ctx.P, j, h)))
        j += 1
    return out


def fischer_decompose(ctx: DualityContext, f: CommPoly) -> FischerExpansion:
    """Split ``f`` slice by slice into powers of P times harmonics.

    Raises:
        InvariantViolation: The spanning set is dependent or does not reach ``f``.
    """
    slices: dict = {}
    for e, c in f.exps(ctx.variables).items():
        slices.setdefault(ctx.label_of(e), {})[e] = c
    components = []
    for label in sorted(slices, key=lambda L: (L if isinstance(L, int) else (sum(L), L))):
        span = fischer_spanning_set(ctx, label)
        columns = [v.terms for _, _, _, v in span]
        target = CommPoly({CommPoly.mono(dict(zip(ctx.variables, e))): c for e, c in slices[label].items()}).terms
        ech = Echelon(columns, [target])
        if ech.rank != len(columns):
            raise InvariantViolation(f"Fischer spanning set for slice {label} is dependent")
        coeffs = ech.solution(0)
        grouped: dict = {}
        for idx, c in coeffs.items():
            j, low, i, _ = span[idx]
            h = harmonic_basis(ctx, low).basis[i] * c
            grouped[(j, low)] = grouped[(j, low)] + h if (j, low) in grouped else h
        for (j, low), h in sorted(grouped.items(), key=lambda p: p[0][0]):
            if h:
                components.append((j, low, h))
    return FischerExpansion(components)


def slice_tally(ctx: DualityContext, label) -> tuple[int, int]:
    """``(sum of harmonic dims over j, slice dimension)``; these must agree."""
    total = 0
    j = 0
    while ctx.lower(label, j) is not None:
        total += ctx.harmonic_dimension(ctx.lower(label, j))
        j += 1
    return total, len(ctx.slice_exps(label))


# ---------------------------------------------------------------------------
# invariants, Bernstein-Sato, highest weights


def bernstein_check(ctx: DualityContext, s: int) -> RatFunc:
    """Compute ``b`` with ``Delta(p^(s+1)) = b p^s`` through the transported Q.

    Raises:
        InvariantViolation: The result is not a multiple of ``p^s`` or the
            multiple differs from the closed form.
    """
    if s < 0:
        raise DomainError("s must be >= 0")
    p = p_q(ctx.ring)
    ps = p ** s
    image = transported(ctx, ctx.Q, ps * p)
    if ps.is_zero():
        raise InvariantViolation("p^s vanished")
    m0 = max(ps.terms)
    b = image.terms.get(m0, ZERO) / ps.terms[m0]
    residue = image - ps * b
    if not residue.is_zero():
        raise InvariantViolation(f"Delta(p^{s + 1}) is not a multiple of p^{s}", residue=residue)
    expected = ctx.bernstein_expected(s)
    if b != expected:
        raise InvariantViolation(f"b_q({s}) = {b}, expected {expected}", residue=b - expected)
    return b


def invariants_basis(ctx: DualityContext, max_degree: int) -> list[NCPoly]:
    """Basis of the polynomials killed by every E_i, F_i and fixed by every K_i."""
    if max_degree < 0:
        raise DomainError("degree bound must be >= 0")
    ops = []
    for g in sorted(ctx.sigma.images):
        img = ctx.sigma.images[g]
        if g.startswith("E") or g.startswith("F"):
            ops.append(img)
        elif g.startswith("K") and not g.startswith("Kinv"):
            ops.append(img - WeylOp.one())
    out = []
    for label in ctx.labels_up_to(max_degree):
        exps = ctx.slice_exps(label)
        columns = []
        for e in exps:
            m = ctx.monomial(e)
            col = {}
            for i, op in enumerate(ops):
                for mono, c in apply(op, m).terms.items():
                    col[(i, mono)] = c
            columns.append(col)
        for vec in Echelon(columns).kernel():
            f = CommPoly({CommPoly.mono(dict(zip(ctx.variables, exps[j]))): c for j, c in vec.items()})
            out.append(phi_transport(ctx, "to_nc", f))
    return out


def invariants_match(ctx: DualityContext, max_degree: int) -> bool:
    """Invariants of degree <= D span exactly the powers ``p^j`` with ``2j <= D``."""
    inv = invariants_basis(ctx, max_degree)
    p = p_q(ctx.ring)
    powers = [(p ** j).terms for j in range(max_degree // 2 + 1)]
    return same_span([f.terms for f in inv], powers)


def highest_weight_vector(ctx: DualityContext, label) -> CommPoly:
    if ctx.which == "sl2_triple":
        return CommPoly.monomial({"y": label})
    a, b = label
    return CommPoly.monomial({f"x{ctx.n}": a, "y1": b})


def highest_weight_checks(ctx: DualityContext, label) -> list[Check]:
    """Weight and annihilation checks for the extremal vector of a harmonic space."""
    v = highest_weight_vector(ctx, label)
    checks = []
    for g in sorted(ctx.sigma.images):
        img = apply(ctx.sigma.images[g], v)
        if g.startswith("E"):
            checks.append(Check(f"sigma({g}) v = 0", img.is_zero(), None if img.is_zero() else img))
        elif g.startswith("K") and not g.startswith("Kinv"):
            if ctx.which == "sl2_triple":
                expect = qpow(2 * label)
            else:
                i = int(g[1:])
                a, b = label
                expect = qpow(b * (i == 1) + a * (i == ctx.n - 1))
            ok = img == v * expect
            checks.append(Check(f"sigma({g}) v = ({expect}) v", ok, None if ok else img - v * expect))
    qv = apply(ctx.Q, v)
    checks.append(Check("Q v = 0", qv.is_zero(), None if qv.is_zero() else qv))
    low = qpow(3 + 2 * label) if ctx.which == "sl2_triple" else qpow(ctx.n + sum(label))
    kv = apply(ctx.pi.images["K"], v)
    ok = kv == v * low
    checks.append(Check(f"pi(K) v = ({low}) v", ok, None if ok else kv - v * low))
    return checks


def highest_weight_check(ctx: DualityContext, label) -> bool:
    return all(c.passed for c in highest_weight_checks(ctx, label))


def verma_structure_check(ctx: DualityContext, label, jmax: int) -> list[Check]:
    """``Q(P^j h) = c_j P^(j-1) h`` on every harmonic basis vector, ``1 <= j <= jmax``."""
    checks = []
    for i, h in enumerate(harmonic_basis(ctx, label).basis):
        prev = h
        for j in range(1, jmax + 1):
            cur = apply(ctx.P, prev)
            lhs = apply(ctx.Q, cur)
            rhs = prev * ctx.verma_factor(label, j)
            ok = lhs == rhs
            checks.append(Check(f"Q P^{j} h[{label}][{i}]", ok, None if ok else lhs - rhs))
            prev = cur
    return checks

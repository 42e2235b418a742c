"""Verma modules for U_q(sl_2) and the decomposition of their tensor products.

Weights are :class:`~qhowe.scalars.WeightExpr` values in base 1: a generic
weight ``lambda`` is the symbol ``t = q^lambda`` (``u = q^mu`` for the second
factor) and an integral weight ``m`` is the plain integer. A pair whose sum is
the integer ``N`` while the summands are generic uses ``mu = N - lambda``.

Modules are realized on polynomials: ``M(lambda)`` on C[y] through
``pi_hat_lambda`` and ``M(lambda) (x) M(mu)`` on C[x, y] through
``tensor_action``. The weight slice of weight ``lambda + mu - 2n`` is spanned by
``x^(n-k) y^k`` for ``0 <= k <= n``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DomainError, InvariantViolation
from .linalg import Echelon, same_span
from .quantumgroup import (
    FormalChar,
    RepAssignment,
    casimir,
    casimir_eigenvalue,
    char_add,
    char_equal,
    char_tensor,
    char_verma,
    check_relations,
    rep_eval,
    sl2_presentation,
    tensor_rep,
)
from .scalars import ONE, ZERO, RatFunc, WeightExpr, qint, qpoch, qpow, sym_qbinom
from .weylop import CommPoly, D, G, WeylOp, X, apply, fourier


@dataclass(frozen=True)
class Weight:
    """A highest weight ``lambda``, either generic or an integer."""

    expr: WeightExpr

    @classmethod
    def generic(cls, symbol: str = "t") -> Weight:
        return cls(WeightExpr.symbol(symbol))

    @classmethod
    def integral(cls, m: int) -> Weight:
        return cls(WeightExpr.integer(m))

    @property
    def is_integral(self) -> bool:
        return self.expr.is_integer()

    @property
    def int_value(self) -> int | None:
        return self.expr.int_value()

    @property
    def lam_int(self) -> int | None:
        """``lambda_int`` when ``q^(2 lambda)`` lies in ``q^(2 N_0)``, else None."""
        m = self.expr.int_value()
        return m if m is not None and m >= 0 else None

    @property
    def kind(self) -> str:
        return "integral" if self.is_integral else "generic"

    def value(self) -> RatFunc:
        """``q^lambda``."""
        return self.expr.value()

    def qnum(self) -> RatFunc:
        """``[lambda]_q``."""
        return self.expr.qnum()

    def __str__(self) -> str:
        return str(self.expr)


@dataclass(frozen=True)
class WeightPair:
    lam: Weight
    mu: Weight
    mode: str  # "generic", "sum" or "integral" as requested

    @property
    def total(self) -> WeightExpr:
        return self.lam.expr + self.mu.expr

    @property
    def sum_int(self) -> int | None:
        """``(lambda + mu)_int`` or None."""
        return Weight(self.total).lam_int

    def nu(self, n: int) -> WeightExpr:
        """Weight ``lambda + mu - 2n`` of the ``n``-th slice."""
        return self.total.shift(-2 * n)

    def to_json(self) -> dict:
        return {"lambda": str(self.lam), "mu": str(self.mu), "mode": self.mode}


def parse_weight(spec, symbol: str = "t") -> Weight:
    """``"generic"`` or an integer literal."""
    if isinstance(spec, Weight):
        return spec
    if isinstance(spec, int):
        return Weight.integral(spec)
    s = str(spec).strip()
    if s == "generic":
        return Weight.generic(symbol)
    try:
        return Weight.integral(int(s))
    except ValueError:
        raise DomainError(f"weight must be 'generic' or an integer, got {spec!r}") from None


def weight_pair(lam_spec, mu_spec) -> WeightPair:
    """Build a weight pair from CLI-style specs.

    ``mu_spec`` may be ``"sum=N"``, meaning ``lambda`` is generic and
    ``mu = N - lambda``.

    Raises:
        DomainError: Unsupported combination.
    """
    if isinstance(mu_spec, str) and mu_spec.strip().startswith("sum="):
        try:
            N = int(mu_spec.strip()[4:])
        except ValueError:
            raise DomainError(f"bad sum spec {mu_spec!r}") from None
        lam = parse_weight(lam_spec, "t")
        if lam.is_integral:
            raise DomainError("sum=N needs a generic lambda; give both integers instead")
        return WeightPair(lam, Weight(WeightExpr.integer(N) - lam.expr), "sum")
    lam = parse_weight(lam_spec, "t")
    mu = parse_weight(mu_spec, "u")
    mode = "integral" if lam.is_integral and mu.is_integral else "generic"
    return WeightPair(lam, mu, mode)


# ---------------------------------------------------------------------------
# realizations


def pi_lambda(lam: Weight, var: str = "x") -> RepAssignment:
    """Verma module on C[d_x]: ``E = q^l x^2 d + [l] x g^-1``, ``K = q^l g^2``, ``F = -d``."""
    t = lam.value()
    images = {
        "E": X(var, 2) * D(var) * t + X(var) * G(var, -1) * lam.qnum(),
        "K": G(var, 2) * t,
        "F": -D(var),
    }
    return RepAssignment(images, 1, f"pi_({lam})")


def pi_hat_lambda(lam: Weight, var: str = "y") -> RepAssignment:
    """Verma module on C[y]: ``E = q^l y d^2 - [l] g d``, ``K = q^l g^-2``, ``F = -y``."""
    t = lam.value()
    images = {
        "E": X(var) * D(var, 2) * t - G(var) * D(var) * lam.qnum(),
        "K": G(var, -2) * t,
        "F": -X(var),
    }
    return RepAssignment(images, 1, f"pi_hat_({lam})")


def fourier_matches(lam: Weight) -> bool:
    """Fourier transform of ``pi_(lambda+2)`` on x equals ``pi_hat_lambda`` on y."""
    shifted = Weight(lam.expr.shift(2))
    src = pi_lambda(shifted, "x")
    dst = pi_hat_lambda(lam, "y")
    return all(fourier(src.images[g]) == dst.images[g] for g in ("E", "K", "F"))


def tensor_action(pair: WeightPair) -> RepAssignment:
    """The explicit action on C[x, y] ~ M(lambda) (x) M(mu)."""
    t, u = pair.lam.value(), pair.mu.value()
    E = (X("x") * D("x", 2) * t - G("x") * D("x") * pair.lam.qnum()) * G("y", -2) * u \
        + X("y") * D("y", 2) * u - G("y") * D("y") * pair.mu.qnum()
    K = G("x", -2) * G("y", -2) * (t * u)
    F = -X("x") - X("y") * G("x", 2) * t.inverse()
    return RepAssignment({"E": E, "K": K, "F": F}, 1, f"pi_hat_({pair.lam},{pair.mu})")


def tensor_matches(pair: WeightPair) -> bool:
    """The explicit action equals the coproduct of the two factor actions."""
    via = tensor_rep(pi_hat_lambda(pair.lam, "x"), pi_hat_lambda(pair.mu, "y"))
    explicit = tensor_action(pair)
    return all(via.images[g] == explicit.images[g] for g in ("E", "K", "F", "Kinv"))


def realization_checks(pair: WeightPair) -> dict[str, bool]:
    """Relations of all realizations for the pair, plus the two equalities."""
    pres = sl2_presentation(1)
    out = {}
    for w in (pair.lam, pair.mu):
        out[f"relations:pi_({w})"] = check_relations(pi_lambda(w, "x"), pres).passed
        out[f"relations:pi_hat_({w})"] = check_relations(pi_hat_lambda(w, "y"), pres).passed
        out[f"fourier:pi_({w}+2)=pi_hat_({w})"] = fourier_matches(w)
    out["relations:tensor"] = check_relations(tensor_action(pair), pres).passed
    out["tensor=coproduct"] = tensor_matches(pair)
    return out


# ---------------------------------------------------------------------------
# singular vectors


def slice_monomial(n: int, k: int) -> CommPoly:
    return CommPoly.monomial({"x": n - k, "y": k})


def slice_vector(v: CommPoly, n: int) -> dict[int, RatFunc]:
    """Coefficients ``a_k`` of ``v = sum a_k x^(n-k) y^k``."""
    return {k: v.coeff({"x": n - k, "y": k}) for k in range(n + 1) if v.coeff({"x": n - k, "y": k})}


def from_coeffs(n: int, coeffs: dict[int, RatFunc]) -> CommPoly:
    out = CommPoly()
    for k, c in coeffs.items():
        out = out + slice_monomial(n, k) * c
    return out


@dataclass
class SingularSpace:
    """Singular vectors of weight ``lambda + mu - 2n``; each basis vector has leading coefficient 1."""

    n: int
    basis: list

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: CommPoly) -> bool:
        cols = [b.terms for b in self.basis]
        return same_span(cols, cols + [v.terms])

    def to_json(self) -> dict:
        return {"n": self.n, "dim": self.dim, "basis": [b.to_json() for b in self.basis]}


def _normalize(v: CommPoly, n: int) -> CommPoly:
    coeffs = slice_vector(v, n)
    lead = coeffs[min(coeffs)]
    return v * lead.inverse()


def slice_matrix(op: WeylOp, n: int) -> list[dict]:
    """Columns ``op(x^(n-k) y^k)`` for ``k = 0..n``."""
    return [apply(op, slice_monomial(n, k)).terms for k in range(n + 1)]


def singular_vectors(pair: WeightPair, n: int, rep: RepAssignment | None = None) -> SingularSpace:
    """Kernel of the raising operator on the ``n``-th weight slice."""
    if n < 0:
        raise DomainError("n must be >= 0")
    rep = rep or tensor_action(pair)
    basis = [_normalize(from_coeffs(n, vec), n) for vec in Echelon(slice_matrix(rep.images["E"], n)).kernel()]
    return SingularSpace(n, basis)


def recurrence_residues(pair: WeightPair, n: int, v: CommPoly) -> list[RatFunc]:
    """Left-hand sides of the two-term recurrence for ``k = 1..n``; all zero iff ``v`` is singular."""
    a = slice_vector(v, n)
    lam, mu = pair.lam.expr, pair.mu.expr
    out = []
    for k in range(1, n + 1):
        lhs = a.get(k, ZERO) * qint(k) * mu.shift(1 - k).qnum() \
            + a.get(k - 1, ZERO) * pair.mu.value() * qpow(2 - 2 * k) * qint(n - k + 1) * lam.shift(k - n).qnum()
        out.append(lhs)
    return out


def singular_case(pair: WeightPair, n: int) -> str:
    """Which closed form(s) describe the singular vectors of the ``n``-th slice.

    Returns one of ``"v"``, ``"v_pm"`` or ``"v_plus_minus"``.
    """
    l, m = pair.lam.lam_int, pair.mu.lam_int
    if l is None or m is None or l >= n or m >= n:
        return "v"
    return "v_pm" if l + m < n - 1 else "v_plus_minus"


def singular_dimension(pair: WeightPair, n: int) -> int:
    return 2 if singular_case(pair, n) == "v_plus_minus" else 1


def closed_form_singular(pair: WeightPair, n: int, which: str) -> CommPoly:
    """Closed-form singular vectors of the ``n``-th slice.

    Args:
        which: ``"v"``, ``"v_pm"``, ``"v_plus"`` or ``"v_minus"``.

    Raises:
        DomainError: The requested form does not apply to this pair and ``n``.
    """
    if n < 0:
        raise DomainError("n must be >= 0")
    case = singular_case(pair, n)
    allowed = {"v": ("v",), "v_pm": ("v_pm",), "v_plus_minus": ("v_plus", "v_minus")}[case]
    if which not in ("v", "v_pm", "v_plus", "v_minus"):
        raise DomainError(f"unknown closed form {which!r}")
    if which not in allowed:
        raise DomainError(f"{which} does not apply at n={n} for ({pair.lam}, {pair.mu}); use {allowed}")
    lam, mu = pair.lam.expr, pair.mu.expr
    l, m = pair.lam.lam_int, pair.mu.lam_int
    qmu = pair.mu.value()

    def tail(k: int) -> RatFunc:
        sign = -ONE if k % 2 else ONE
        return sign * qmu ** k * qpow(-k * (k - 1))

    coeffs: dict[int, RatFunc] = {}
    if which == "v":
        for k in range(n + 1):
            coeffs[k] = sym_qbinom(mu.shift(-k), n - k) * sym_qbinom(lam.shift(k - n), k) * tail(k)
    elif which == "v_pm":
        for k in range(m + 1, n - l):
            j = k - m - 1
            coeffs[k] = (qpoch(lam.shift(m + 2 - n), j) / qpoch(m + 2, j)) \
                * (qpoch(n - k + 1, j) / qpoch(mu.shift(1 - k), j)) * tail(k)
    elif which == "v_plus":
        for k in range(n - l):
            coeffs[k] = sym_qbinom(lam.shift(k - n), k) * (qpoch(n - k + 1, k) / qpoch(mu.shift(1 - k), k)) * tail(k)
    else:
        for k in range(m + 1, n + 1):
            coeffs[k] = sym_qbinom(mu.shift(-k), n - k) \
                * (qpoch(k + 1, n - k) / qpoch(lam.shift(k - n + 1), n - k)) * tail(k)
    v = from_coeffs(n, coeffs)
    if v.is_zero():
        raise InvariantViolation(f"closed form {which} vanished at n={n}")
    return v


def closed_forms_for(pair: WeightPair, n: int) -> list[str]:
    return {"v": ["v"], "v_pm": ["v_pm"], "v_plus_minus": ["v_plus", "v_minus"]}[singular_case(pair, n)]


def closed_form_agreement(pair: WeightPair, n: int, space: SingularSpace | None = None) -> bool:
    """Solver dimension matches the case table and every applicable closed form lies in the solved space."""
    space = space or singular_vectors(pair, n)
    if space.dim != singular_dimension(pair, n):
        return False
    forms = [closed_form_singular(pair, n, w) for w in closed_forms_for(pair, n)]
    if any(any(r for r in recurrence_residues(pair, n, v)) for v in forms):
        return False
    return same_span([b.terms for b in space.basis], [v.terms for v in forms])


# ---------------------------------------------------------------------------
# decomposition plans


@dataclass
class Summand:
    """``P(nu)`` or ``M(nu)`` whose top sits on slice ``offset``."""

    kind: str
    offset: int
    nu: WeightExpr

    @property
    def nu_int(self) -> int | None:
        return Weight(self.nu).lam_int

    def to_json(self) -> dict:
        return {"kind": self.kind, "n": self.offset, "weight": str(self.nu)}


@dataclass
class DecompositionPlan:
    """Summands ``P((lambda+mu-2n))`` for ``n`` in S and ``M(...)`` for ``n`` in R.

    ``R`` is every nonnegative integer outside ``S`` and ``Sc``.
    """

    pair: WeightPair
    case: str
    S: tuple[int, ...]
    Sc: tuple[int, ...]

    def in_R(self, n: int) -> bool:
        return n >= 0 and n not in self.S and n not in self.Sc

    def summands(self, depth: int) -> list[Summand]:
        out = []
        for n in range(depth + 1):
            if n in self.S:
                out.append(Summand("P", n, self.pair.nu(n)))
            elif self.in_R(n):
                out.append(Summand("M", n, self.pair.nu(n)))
        return out

    def default_depth(self) -> int:
        return max(self.S + self.Sc, default=0) + 1

    def to_json(self, depth: int | None = None) -> dict:
        depth = self.default_depth() if depth is None else depth
        return {
            "case": self.case,
            "S": list(self.S),
            "Sc": list(self.Sc),
            "rule": "n in R = N0 minus (S u Sc) gives M_q((lambda+mu-2n)w); n in S gives P_q((lambda+mu-2n)w)",
            "summands": [s.to_json() for s in self.summands(depth)],
        }


def classify(pair: WeightPair) -> DecompositionPlan:
    """Evaluate the S / Sc set definitions for the pair."""
    N = pair.sum_int
    l, m = pair.lam.lam_int, pair.mu.lam_int
    if N is None:
        return DecompositionPlan(pair, "sum_not_integral", (), ())
    if l is None or m is None:
        S = tuple(range(0, N // 2 + 1))
        Sc = tuple(range((N + 1) // 2 + 1, N + 2))
        return DecompositionPlan(pair, "sum_integral", S, Sc)
    S = tuple(range(min(l, m) + 1, (l + m) // 2 + 1))
    Sc = tuple(range((l + m + 1) // 2 + 1, max(l, m) + 1))
    return DecompositionPlan(pair, "both_integral", S, Sc)


def singular_offsets(s: Summand) -> list[int]:
    """Slices carrying singular vectors inside one summand."""
    if s.kind == "P" or s.nu_int is not None:
        return [s.offset, s.offset + s.nu_int + 1]
    return [s.offset]


def predicted_character(plan: DecompositionPlan, depth: int) -> FormalChar:
    """Sum of the summand characters, relative to the top ``lambda + mu``."""
    total = FormalChar(plan.pair.total, (0,) * (depth + 1))
    for s in plan.summands(depth):
        ch = char_verma(depth - s.offset, s.nu)
        low_depth = depth - s.offset - (s.nu_int or 0) - 1
        if s.kind == "P" and low_depth >= 0:
            ch = char_add(ch, char_verma(low_depth, -s.nu - 2))
        total = char_add(total, ch)
    return total


def predicted_casimir(plan: DecompositionPlan, n: int) -> dict:
    """``{c: (dim ker(Cas-c), dim ker((Cas-c)^2))}`` predicted on slice ``n``."""
    out: dict = {}
    for s in plan.summands(n):
        c = casimir_eigenvalue(s.nu)
        k1, k2 = out.get(c, (0, 0))
        if s.kind == "P" and n >= s.offset + s.nu_int + 1:
            out[c] = (k1 + 1, k2 + 2)
        else:
            out[c] = (k1 + 1, k2 + 1)
    return out


@dataclass
class PlanCheck:
    n: int
    check: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"n": self.n, "check": self.check, "passed": self.passed, "detail": self.detail}


@dataclass
class PlanReport:
    plan: DecompositionPlan
    depth: int
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[PlanCheck]:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        return {"plan": self.plan.to_json(self.depth), "depth": self.depth, "passed": self.passed,
                "checks": [c.to_json() for c in self.checks]}


def casimir_operator(rep: RepAssignment) -> WeylOp:
    return rep_eval(rep, casimir(1))


def _sub_scalar(cols: list[dict], c: RatFunc, n: int) -> list[dict]:
    out = []
    for k, col in enumerate(cols):
        new = dict(col)
        key = slice_monomial(n, k)
        (mono,) = key.terms
        val = new.get(mono, ZERO) - c
        if val:
            new[mono] = val
        else:
            new.pop(mono, None)
        out.append(new)
    return out


def _compose(a: list[dict], b: list[dict], n: int) -> list[dict]:
    """Columns of ``a * b`` where both act on slice ``n``."""
    index = {next(iter(slice_monomial(n, k).terms)): k for k in range(n + 1)}
    out = []
    for col in b:
        acc: dict = {}
        for mono, v in col.items():
            for m2, w in a[index[mono]].items():
                acc[m2] = acc.get(m2, ZERO) + v * w
        out.append({m: v for m, v in acc.items() if v})
    return out


def casimir_structure(pair: WeightPair, n: int, eigenvalues, rep: RepAssignment | None = None,
                      cas: WeylOp | None = None) -> dict:
    """``{c: (dim ker(Cas-c), dim ker((Cas-c)^2))}`` on slice ``n`` by elimination."""
    rep = rep or tensor_action(pair)
    cas = cas or casimir_operator(rep)
    cols = slice_matrix(cas, n)
    out = {}
    for c in eigenvalues:
        A = _sub_scalar(cols, c, n)
        k1 = n + 1 - Echelon(A).rank
        k2 = n + 1 - Echelon(_compose(A, A, n)).rank
        out[c] = (k1, k2)
    return out


def _eigen_certificate(pair: WeightPair, n: int, predicted: dict, rep: RepAssignment, cas: WeylOp,
                       spaces: dict) -> bool:
    """Exhibit ``n+1`` eigenvectors ``F^(n-m) v_m`` with the ``n+1`` distinct predicted eigenvalues.

    Valid only when every prediction is ``(1, 1)``; then the slice is
    diagonalizable with exactly those eigenvalues.
    """
    if len(predicted) != n + 1 or any(v != (1, 1) for v in predicted.values()):
        return False
    F = rep.images["F"]
    for m in range(n + 1):
        if spaces[m].dim != 1:
            return False
        v = spaces[m].basis[0]
        for _ in range(n - m):
            v = apply(F, v)
        c = casimir_eigenvalue(pair.nu(m))
        if c not in predicted or v.is_zero() or apply(cas, v) != v * c:
            return False
    return True


def verify_plan(pair: WeightPair, plan: DecompositionPlan | None = None, depth: int = 8) -> PlanReport:
    """Check a plan against finite linear algebra on every slice ``n <= depth``.

    Per slice: the character coefficient, the number of singular vectors and
    the generalized-eigenspace structure of the Casimir element.
    """
    if depth < 0:
        raise DomainError("depth must be >= 0")
    plan = plan or classify(pair)
    report = PlanReport(plan, depth)
    rep = tensor_action(pair)
    cas = casimir_operator(rep)
    actual = char_tensor(char_verma(depth, pair.lam.expr), char_verma(depth, pair.mu.expr))
    predicted = predicted_character(plan, depth)
    sing_pred = [0] * (depth + 1)
    for s in plan.summands(depth):
        for o in singular_offsets(s):
            if o <= depth:
                sing_pred[o] += 1
    spaces = {}
    for n in range(depth + 1):
        ok = actual.coeffs[n] == predicted.coeffs[n] == n + 1
        report.checks.append(PlanCheck(n, "character", ok, f"tensor {actual.coeffs[n]}, plan {predicted.coeffs[n]}"))
        spaces[n] = singular_vectors(pair, n, rep)
        ok = spaces[n].dim == sing_pred[n]
        report.checks.append(PlanCheck(n, "singular", ok, f"solver {spaces[n].dim}, plan {sing_pred[n]}"))
        pred = predicted_casimir(plan, n)
        if _eigen_certificate(pair, n, pred, rep, cas, spaces):
            report.checks.append(PlanCheck(n, "casimir", True, "diagonal: n+1 eigenvectors, distinct eigenvalues"))
            continue
        got = casimir_structure(pair, n, list(pred), rep, cas)
        total = sum(k2 for _, k2 in got.values())
        ok = got == pred and total == n + 1
        nil = sum(1 for v in pred.values() if v[1] > v[0])
        report.checks.append(PlanCheck(n, "casimir", ok,
                                       f"kernels {sorted(got.values())}, predicted {sorted(pred.values())}, "
                                       f"nonsemisimple blocks {nil}"))
    return report


def f_is_free(pair: WeightPair, depth: int) -> bool:
    """The lowering operator is injective on each slice ``n < depth``."""
    F = tensor_action(pair).images["F"]
    return all(Echelon(slice_matrix(F, n)).rank == n + 1 for n in range(depth))


# ---------------------------------------------------------------------------
# single Verma modules


def casimir_diag(lam: Weight, depth: int) -> list[CommPoly]:
    """Residues ``(Cas - c_lambda) y^k`` under ``pi_hat_lambda`` for ``k <= depth``; all zero when it holds."""
    if depth < 0:
        raise DomainError("depth must be >= 0")
    cas = casimir_operator(pi_hat_lambda(lam, "y"))
    c = casimir_eigenvalue(lam.expr)
    out = []
    for k in range(depth + 1):
        v = CommPoly.monomial({"y": k})
        out.append(apply(cas, v) - v * c)
    return out


def casimir_collisions(pair: WeightPair, depth: int) -> list[tuple[int, int]]:
    """Pairs ``n1 < n2 <= depth`` whose slice weights share a Casimir eigenvalue."""
    cs = [casimir_eigenvalue(pair.nu(n)) for n in range(depth + 1)]
    return [(i, j) for i in range(depth + 1) for j in range(i + 1, depth + 1) if cs[i] == cs[j]]


@dataclass
class EmbeddingResult:
    passed: bool
    k: int | None
    witness: CommPoly | None

    def to_json(self) -> dict:
        return {"passed": self.passed, "k": self.k,
                "witness": self.witness.to_json() if self.witness is not None else None}


def embedding_check(lam: Weight | int, max_k: int = 8) -> EmbeddingResult:
    """Look for the embedded Verma module inside ``M(lambda)`` realized on C[y].

    Passes when ``y^(lambda_int + 1)`` is singular with K-eigenvalue
    ``q^(-lambda_int - 2)``. For a weight without ``lambda_int`` the check
    fails and the witness is the first nonzero ``E y^k``; every ``E y^k`` with
    ``1 <= k <= max_k`` must then be nonzero.
    """
    lam = parse_weight(lam)
    rep = pi_hat_lambda(lam, "y")
    E, K = rep.images["E"], rep.images["K"]
    l = lam.lam_int
    if l is not None:
        v = CommPoly.monomial({"y": l + 1})
        ev = apply(E, v)
        kv = apply(K, v)
        ok = ev.is_zero() and kv == v * qpow(-l - 2)
        return EmbeddingResult(ok, l + 1, None if ok else (ev if not ev.is_zero() else kv - v * qpow(-l - 2)))
    witness = None
    for k in range(1, max_k + 1):
        ev = apply(E, CommPoly.monomial({"y": k}))
        if ev.is_zero():
            return EmbeddingResult(False, k, None)
        if witness is None:
            witness = ev
    return EmbeddingResult(False, None, witness)


# ---------------------------------------------------------------------------
# the nonsplit extension P(lambda)


@dataclass
class PqModule:
    """Truncated ``P(lambda)`` with basis ``('v', n)`` and ``('w', n)`` for ``n <= depth``.

    ``action[g][b]`` is the image of basis vector ``b`` as a dict, or None when
    it leaves the truncation.
    """

    lam_int: int
    depth: int
    basis: list
    action: dict

    def weight(self, b) -> int:
        kind, n = b
        return self.lam_int - 2 * n if kind == "v" else -self.lam_int - 2 - 2 * n

    def character(self) -> FormalChar:
        coeffs = [0] * (self.depth + 1)
        for b in self.basis:
            off = (self.lam_int - self.weight(b)) // 2
            if off <= self.depth:
                coeffs[off] += 1
        return FormalChar(WeightExpr.integer(self.lam_int), tuple(coeffs))

    def to_json(self) -> dict:
        def img(d):
            return None if d is None else {f"{k}{n}": c.to_json() for (k, n), c in sorted(d.items())}
        return {"lambda_int": self.lam_int, "depth": self.depth,
                "action": {g: {f"{k}{n}": img(d) for (k, n), d in sorted(tab.items())}
                           for g, tab in sorted(self.action.items())}}


def pq_module(lam_int: int, depth: int) -> PqModule:
    """Action table of ``P(lambda)``.

    Raises:
        DomainError: ``lam_int < 0`` or ``depth < lam_int + 2``.
    """
    if lam_int < 0:
        raise DomainError("lambda_int must be >= 0")
    if depth < lam_int + 2:
        raise DomainError(f"depth must be >= lambda_int + 2 = {lam_int + 2}")
    l = lam_int
    basis = [("v", n) for n in range(depth + 1)] + [("w", n) for n in range(depth + 1)]
    inside = set(basis)

    def vec(*pairs):
        out = {}
        for b, c in pairs:
            if b not in inside:
                return None
            if c:
                out[b] = out.get(b, ZERO) + c
        return {b: c for b, c in out.items() if c}

    E, F, K, Kinv = {}, {}, {}, {}
    for n in range(depth + 1):
        v, w = ("v", n), ("w", n)
        F[v] = vec((("v", n + 1), ONE))
        F[w] = vec((("w", n + 1), ONE))
        K[v] = {v: qpow(l - 2 * n)}
        K[w] = {w: qpow(-l - 2 - 2 * n)}
        Kinv[v] = {v: qpow(2 * n - l)}
        Kinv[w] = {w: qpow(l + 2 + 2 * n)}
        E[v] = vec((("v", n - 1), qint(n) * qint(l - n + 1))) if n else {}
        terms = [(("v", l + n), ONE)]
        if n:
            terms.append((("w", n - 1), -qint(n) * qint(l + n + 1)))
        E[w] = vec(*terms)
    return PqModule(l, depth, basis, {"E": E, "F": F, "K": K, "Kinv": Kinv})


def _act(mod: PqModule, g: str, vecd: dict | None) -> dict | None:
    if vecd is None:
        return None
    out: dict = {}
    for b, c in vecd.items():
        img = mod.action[g][b]
        if img is None:
            return None
        for b2, c2 in img.items():
            out[b2] = out.get(b2, ZERO) + c * c2
    return {b: c for b, c in out.items() if c}


def _word(mod: PqModule, word: str, b) -> dict | None:
    v = {b: ONE}
    for g in reversed(word.split()):
        v = _act(mod, g, v)
    return v


def _lin(*terms) -> dict | None:
    out: dict = {}
    for c, v in terms:
        if v is None:
            return None
        for b, x in v.items():
            out[b] = out.get(b, ZERO) + c * x
    return {b: x for b, x in out.items() if x}


@dataclass
class PqReport:
    checked: int
    skipped: int
    failures: list
    character_ok: bool

    @property
    def passed(self) -> bool:
        return not self.failures and self.character_ok

    def to_json(self) -> dict:
        return {"passed": self.passed, "checked": self.checked, "skipped": self.skipped,
                "failures": self.failures, "character_ok": self.character_ok}


def check_pq_module(mod: PqModule) -> PqReport:
    """Relations on every basis vector whose images stay inside the truncation, plus the character."""
    qd = qpow(1) - qpow(-1)
    rels = {
        "K Kinv = 1": [(ONE, "K Kinv"), (-ONE, "")],
        "Kinv K = 1": [(ONE, "Kinv K"), (-ONE, "")],
        "K E = q^2 E K": [(ONE, "K E"), (-qpow(2), "E K")],
        "K F = q^-2 F K": [(ONE, "K F"), (-qpow(-2), "F K")],
        "[E,F] = (K - Kinv)/(q - q^-1)": [(ONE, "E F"), (-ONE, "F E"), (-qd.inverse(), "K"), (qd.inverse(), "Kinv")],
    }
    checked = skipped = 0
    failures = []
    for b in mod.basis:
        for name, terms in rels.items():
            parts = [(c, _word(mod, w, b) if w else {b: ONE}) for c, w in terms]
            res = _lin(*parts)
            if res is None:
                skipped += 1
                continue
            checked += 1
            if res:
                failures.append({"relation": name, "vector": f"{b[0]}{b[1]}"})
    expected = char_add(char_verma(mod.depth, WeightExpr.integer(mod.lam_int)),
                        char_verma(mod.depth, WeightExpr.integer(-mod.lam_int - 2)))
    return PqReport(checked, skipped, failures, char_equal(mod.character(), expected))

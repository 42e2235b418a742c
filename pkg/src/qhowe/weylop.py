"""The quantum Weyl algebra acting on commutative polynomials.

Every operator is kept in a canonical normal form. Per variable a term is
one of ``x^a g^c`` (a >= 1), ``g^c d^b`` (b >= 1) or ``g^c``, where ``g`` is
the scaling operator ``x^k -> q^k x^k`` and ``d`` the q-derivative
``x^k -> [k]_q x^(k-1)``. Internally a per-variable factor is encoded as
``(shift, c)``: shift ``a >= 0`` for ``x^a g^c`` and ``-b`` for ``g^c d^b``.

Products are computed through symbols. A factor acts by
``x^k -> phi(Q) x^(k+shift)`` with ``Q = q^k`` and ``phi`` a Laurent
polynomial in ``Q``:

* ``x^a g^c``  has ``phi = Q^c``;
* ``g^c d^b``  has ``phi = D_b(Q) q^(-cb) Q^c`` with ``D_b = [k][k-1]...[k-b+1]``.

Composition multiplies symbols after shifting ``Q``. The product is read back
into normal form by exact division by ``D_b``. Since the monomial actions are
faithful this normal form is unique, so operator equality is equality of
term dictionaries.
"""

from __future__ import annotations

import random
import re
from functools import lru_cache
from itertools import product
from typing import Iterable, Mapping

from .errors import ContextError, DomainError, InvariantViolation
from .scalars import ONE, ZERO, RatFunc, as_ratfunc, qint, qpow

_NAME_RE = re.compile(r"^([A-Za-z_]+?)(\d*)$")


def var_key(name: str):
    """Sort key putting ``x2`` before ``x10``."""
    m = _NAME_RE.match(name)
    if not m:
        return (name, -1)
    return (m.group(1), int(m.group(2)) if m.group(2) else -1)


# ---------------------------------------------------------------------------
# commutative polynomials

class CommPoly:
    """Commutative polynomial with RatFunc coefficients.

    Monomials are tuples of ``(variable, exponent)`` pairs sorted by
    :func:`var_key`, with positive exponents only.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, RatFunc] | None = None):
        self.terms = {m: as_ratfunc(c) for m, c in (terms or {}).items() if c}

    @staticmethod
    def mono(exps: Mapping[str, int]) -> tuple:
        for v, e in exps.items():
            if e < 0:
                raise DomainError(f"negative exponent {e} for {v}")
        return tuple(sorted(((v, e) for v, e in exps.items() if e), key=lambda p: var_key(p[0])))

    @classmethod
    def monomial(cls, exps: Mapping[str, int] | None = None, coeff=ONE) -> CommPoly:
        return cls({cls.mono(exps or {}): coeff})

    @classmethod
    def from_exps(cls, variables: Iterable[str], exps: Iterable[int], coeff=ONE) -> CommPoly:
        return cls.monomial(dict(zip(variables, exps)), coeff)

    @classmethod
    def one(cls) -> CommPoly:
        return cls({(): ONE})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: CommPoly) -> CommPoly:
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, ZERO) + c
        return CommPoly(out)

    def __neg__(self) -> CommPoly:
        return CommPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: CommPoly) -> CommPoly:
        return self + (-other)

    def __mul__(self, other) -> CommPoly:
        if isinstance(other, CommPoly):
            out: dict = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    d = dict(m1)
                    for v, e in m2:
                        d[v] = d.get(v, 0) + e
                    m = CommPoly.mono(d)
                    out[m] = out.get(m, ZERO) + c1 * c2
            return CommPoly(out)
        c = as_ratfunc(other)
        return CommPoly({m: c * v for m, v in self.terms.items()})

    def __rmul__(self, other) -> CommPoly:
        c = as_ratfunc(other)
        return CommPoly({m: c * v for m, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, CommPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def coeff(self, exps: Mapping[str, int]) -> RatFunc:
        return self.terms.get(CommPoly.mono(exps), ZERO)

    def variables(self) -> set[str]:
        return {v for m in self.terms for v, _ in m}

    def degree(self) -> int:
        return max((sum(e for _, e in m) for m in self.terms), default=-1)

    def exps(self, variables: Iterable[str]) -> dict[tuple, RatFunc]:
        """Terms keyed by exponent vectors in the given variable order."""
        variables = list(variables)
        out = {}
        for m, c in self.terms.items():
            d = dict(m)
            if set(d) - set(variables):
                raise ContextError(f"monomial {m} uses variables outside {variables}")
            out[tuple(d.get(v, 0) for v in variables)] = c
        return out

    def to_json(self) -> list:
        return [{"mono": {v: e for v, e in m}, "coeff": c.to_json()}
                for m, c in sorted(self.terms.items(), key=lambda p: _mono_order(p[0]))]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items(), key=lambda p: _mono_order(p[0])):
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    __repr__ = __str__


def _mono_order(m: tuple):
    return (-sum(e for _, e in m), [(var_key(v), -e) for v, e in m])


# ---------------------------------------------------------------------------
# single-variable symbol calculus

def _lp_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, ZERO) + x * y
    return {k: v for k, v in out.items() if v}


def _lp_shift_q(a: dict, s: int) -> dict:
    """Substitute ``Q -> Q q^s``."""
    if s == 0:
        return a
    return {e: c * qpow(e * s) for e, c in a.items()}


@lru_cache(maxsize=None)
def _falling(b: int) -> tuple:
    """``D_b(Q) = prod_{j<b} (q^-j Q - q^j Q^-1)/(q - q^-1)`` as sorted items."""
    out = {0: ONE}
    denom = (qpow(1) - qpow(-1)).inverse()
    for j in range(b):
        out = _lp_mul(out, {1: qpow(-j) * denom, -1: -qpow(j) * denom})
    return tuple(sorted(out.items()))


def _lp_divexact(f: dict, d: dict) -> dict:
    f = dict(f)
    quo: dict = {}
    dt = max(d)
    db = min(d)
    lead_inv = d[dt].inverse()
    steps = (max(f) - min(f)) - (dt - db) + 1 if f else 0
    for _ in range(max(steps, 0)):
        if not f:
            break
        e = max(f)
        c = f[e] * lead_inv
        k = e - dt
        quo[k] = c
        for i, v in d.items():
            new = f.get(i + k, ZERO) - c * v
            if new:
                f[i + k] = new
            else:
                f.pop(i + k, None)
    if f:
        raise InvariantViolation("symbol not divisible by the falling q-factorial", residue=f)
    return quo


def _symbol(s: int, c: int) -> dict:
    if s >= 0:
        return {c: ONE}
    b = -s
    return {e + c: v * qpow(-c * b) for e, v in _falling(b)}


@lru_cache(maxsize=None)
def _var_mul(a: tuple, b: tuple) -> tuple:
    """Normal form of ``a * b`` for single-variable factors ``(shift, c)``."""
    sa, ca = a
    sb, cb = b
    if sa >= 0 and sb >= 0:
        # x^a g^c x^b g^d = q^(cb) x^(a+b) g^(c+d)
        return (((sa + sb, ca + cb), qpow(ca * sb)),)
    phi = _lp_mul(_lp_shift_q(_symbol(sa, ca), sb), _symbol(sb, cb))
    s = sa + sb
    if s >= 0:
        items = {(s, e): v for e, v in phi.items()}
    else:
        psi = _lp_divexact(phi, dict(_falling(-s)))
        items = {(s, e): v * qpow(-e * s) for e, v in psi.items()}
    return tuple(sorted((k, v) for k, v in items.items() if v))


@lru_cache(maxsize=None)
def _action_factor(s: int, c: int, k: int) -> RatFunc:
    """Scalar by which the factor ``(s, c)`` multiplies ``x^k`` (then shifts by ``s``)."""
    if s >= 0:
        return qpow(c * k)
    b = -s
    if k < b:
        return ZERO
    out = qpow(c * (k - b))
    for j in range(b):
        out = out * qint(k - j)
    return out


# ---------------------------------------------------------------------------
# operators

class WeylOp:
    """An element of the quantum Weyl algebra in canonical normal form.

    Terms map a key to a RatFunc coefficient. A key is a tuple of
    ``(variable, shift, gamma_exp)`` triples sorted by variable, with neutral
    factors ``(shift, gamma_exp) = (0, 0)`` omitted.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[tuple, RatFunc] | None = None):
        self.terms = {k: as_ratfunc(c) for k, c in (terms or {}).items() if c}
        self._hash = None

    # constructors -----------------------------------------------------

    @classmethod
    def scalar(cls, c) -> WeylOp:
        return cls({(): as_ratfunc(c)})

    @classmethod
    def one(cls) -> WeylOp:
        return cls({(): ONE})

    @classmethod
    def zero(cls) -> WeylOp:
        return cls()

    @classmethod
    def factor(cls, var: str, shift: int, gamma: int = 0, coeff=ONE) -> WeylOp:
        key = () if (shift, gamma) == (0, 0) else ((var, shift, gamma),)
        return cls({key: coeff})

    # arithmetic -------------------------------------------------------

    def __add__(self, other) -> WeylOp:
        other = _coerce_op(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, ZERO) + c
        return WeylOp(out)

    __radd__ = __add__

    def __neg__(self) -> WeylOp:
        return WeylOp({k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> WeylOp:
        return self + (-_coerce_op(other))

    def __rsub__(self, other) -> WeylOp:
        return _coerce_op(other) - self

    def __mul__(self, other) -> WeylOp:
        if isinstance(other, WeylOp):
            return op_mul(self, other)
        c = as_ratfunc(other)
        return WeylOp({k: c * v for k, v in self.terms.items()})

    def __rmul__(self, other) -> WeylOp:
        c = as_ratfunc(other)
        return WeylOp({k: c * v for k, v in self.terms.items()})

    def __truediv__(self, other) -> WeylOp:
        c = as_ratfunc(other).inverse()
        return WeylOp({k: c * v for k, v in self.terms.items()})

    def __pow__(self, k: int) -> WeylOp:
        if k < 0:
            return self.inverse() ** (-k)
        out = WeylOp.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeylOp):
            try:
                other = _coerce_op(other)
            except TypeError:
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def is_zero(self) -> bool:
        return not self.terms

    def variables(self) -> set[str]:
        return {v for k in self.terms for v, _, _ in k}

    def inverse(self) -> WeylOp:
        """Inverse of a single term built from scaling operators only."""
        if len(self.terms) != 1:
            raise DomainError("only monomial scaling operators are invertible here")
        (key, c), = self.terms.items()
        if any(s != 0 for _, s, _ in key):
            raise DomainError("operator with x or d factors is not invertible")
        return WeylOp({tuple((v, 0, -g) for v, _, g in key): c.inverse()})

    # printing ---------------------------------------------------------

    def to_json(self) -> dict:
        terms = []
        for key, c in sorted(self.terms.items(), key=lambda p: _key_order(p[0])):
            factors = []
            for v, s, g in key:
                kind = "X" if s > 0 else ("D" if s < 0 else "Neutral")
                factors.append({"var": v, "kind": kind, "power": abs(s), "gamma": g})
            terms.append({"coeff": c.to_json(), "factors": factors})
        return {"terms": terms}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key, c in sorted(self.terms.items(), key=lambda p: _key_order(p[0])):
            word = " ".join(_factor_str(v, s, g) for v, s, g in key)
            parts.append(f"({c})" + (f" {word}" if word else ""))
        return " + ".join(parts)

    __repr__ = __str__


def _key_order(key: tuple):
    return [(var_key(v), s, g) for v, s, g in key]


def _factor_str(v: str, s: int, g: int) -> str:
    gam = "" if g == 0 else (f"γ_{{q,{v}}}" + ("" if g == 1 else f"^{{{g}}}"))
    if s > 0:
        xs = v if s == 1 else f"{v}^{s}"
        return f"{xs} {gam}".strip()
    if s < 0:
        ds = f"∂_{{q,{v}}}" + ("" if s == -1 else f"^{-s}")
        return f"{gam} {ds}".strip()
    return gam


def _coerce_op(x) -> WeylOp:
    if isinstance(x, WeylOp):
        return x
    return WeylOp.scalar(as_ratfunc(x))


def _key_mul(ka: tuple, kb: tuple) -> list[tuple[tuple, RatFunc]]:
    da = {v: (s, g) for v, s, g in ka}
    db = {v: (s, g) for v, s, g in kb}
    names = sorted(set(da) | set(db), key=var_key)
    per_var = []
    for v in names:
        if v not in da:
            per_var.append(((db[v], ONE),))
        elif v not in db:
            per_var.append(((da[v], ONE),))
        else:
            per_var.append(_var_mul(da[v], db[v]))
    out = []
    for combo in product(*per_var):
        coeff = ONE
        key = []
        for v, ((s, g), c) in zip(names, combo):
            if c != ONE:
                coeff = coeff * c
            if (s, g) != (0, 0):
                key.append((v, s, g))
        out.append((tuple(key), coeff))
    return out


def op_mul(a: WeylOp, b: WeylOp) -> WeylOp:
    """Composition ``a o b`` in normal form."""
    out: dict = {}
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            c0 = ca * cb
            for key, c in _key_mul(ka, kb):
                out[key] = out.get(key, ZERO) + c0 * c
    return WeylOp(out)


def commutator(a: WeylOp, b: WeylOp) -> WeylOp:
    return a * b - b * a


# generators ---------------------------------------------------------------

def X(var: str, power: int = 1) -> WeylOp:
    """Multiplication by ``var^power``."""
    return WeylOp.factor(var, power, 0)


def D(var: str, power: int = 1) -> WeylOp:
    """The q-derivative ``d_{q,var}`` raised to ``power``."""
    return WeylOp.factor(var, -power, 0)


def G(var: str, exp: int = 1) -> WeylOp:
    """The scaling operator ``gamma_{q,var}^exp``."""
    return WeylOp.factor(var, 0, exp)


def Dq2(var: str) -> WeylOp:
    """The base-q^2 derivative ``x^k -> [k]_{q^2} x^(k-1)``.

    Since ``[k]_{q^2} = [k]_q (q^k + q^-k)/[2]_q`` it equals
    ``d (g + g^-1)/[2]_q``, which keeps a single derivative in the normal form.
    """
    return D(var) * (G(var) + G(var, -1)) / qint(2)


# action -------------------------------------------------------------------

def apply(op: WeylOp, f: CommPoly) -> CommPoly:
    """Act with ``op`` on a commutative polynomial."""
    out: dict = {}
    for key, c in op.terms.items():
        for mono, fc in f.terms.items():
            exps = dict(mono)
            coeff = c * fc
            for v, s, g in key:
                k = exps.get(v, 0)
                factor = _action_factor(s, g, k)
                if not factor:
                    coeff = ZERO
                    break
                if factor != ONE:
                    coeff = coeff * factor
                exps[v] = k + s
            if not coeff:
                continue
            m = CommPoly.mono(exps)
            out[m] = out.get(m, ZERO) + coeff
    return CommPoly(out)


# Fourier transform ----------------------------------------------------------

def default_dual_name(var: str) -> str:
    if not var.startswith("x"):
        raise ContextError(f"no default dual variable for {var!r}; pass a rename map")
    return "y" + var[1:]


def fourier(op: WeylOp, rename: Mapping[str, str] | None = None) -> WeylOp:
    """The quantum Fourier transform.

    On generators it sends ``x -> -d_y``, ``d_x -> y`` and
    ``g_x -> q^-1 g_y^-1``, with ``y = rename[x]``; a normal-form term is
    mapped factor by factor in its written order and renormalized.
    """
    rename = dict(rename or {})

    def dual(v: str) -> str:
        return rename[v] if v in rename else default_dual_name(v)

    out = WeylOp()
    for key, c in op.terms.items():
        img = WeylOp.scalar(c)
        for v, s, g in key:
            y = dual(v)
            gam = (G(y, -1) * qpow(-1)) ** g if g >= 0 else (G(y) * qpow(1)) ** (-g)
            if s > 0:
                img = img * (-D(y)) ** s * gam
            elif s < 0:
                img = img * gam * X(y) ** (-s)
            else:
                img = img * gam
        out = out + img
    return out


def rename_vars(op: WeylOp, rename: Mapping[str, str]) -> WeylOp:
    """Relabel variables (no other change)."""
    out = {}
    for key, c in op.terms.items():
        new = tuple(sorted(((rename.get(v, v), s, g) for v, s, g in key), key=lambda p: var_key(p[0])))
        if len({v for v, _, _ in new}) != len(new):
            raise ContextError("rename map merges two variables")
        out[new] = c
    return WeylOp(out)


# standard identities ---------------------------------------------------------

def identity_residues(var: str = "x") -> dict[str, WeylOp]:
    """Residues ``lhs - rhs`` of the defining identities in one variable; all vanish."""
    x, d, g = X(var), D(var), G(var)
    gi = G(var, -1)
    qd = qpow(1) - qpow(-1)
    q2d = qpow(2) - qpow(-2)
    d2 = Dq2(var)
    return {
        "g x = q x g": g * x - x * g * qpow(1),
        "g d = q^-1 d g": g * d - d * g * qpow(-1),
        "d x - q x d = g^-1": d * x - x * d * qpow(1) - gi,
        "d x - q^-1 x d = g": d * x - x * d * qpow(-1) - g,
        "x d = (g - g^-1)/(q - q^-1)": x * d - (g - gi) / qd,
        "g g^-1 = 1": g * gi - WeylOp.one(),
        "g d2 = q^-1 d2 g": g * d2 - d2 * g * qpow(-1),
        "x d2 = (g^2 - g^-2)/(q^2 - q^-2)": x * d2 - (g * g - gi * gi) / q2d,
    }


def fourier_residues(var: str = "x") -> dict[str, WeylOp]:
    """The same identities pushed through :func:`fourier`; all vanish."""
    return {name: fourier(r, {var: "y" + var[1:] if var.startswith("x") else var + "_dual"})
            for name, r in identity_residues(var).items()}


def random_op(variables: list[str], rng, terms: int = 3, max_shift: int = 2, max_gamma: int = 2) -> WeylOp:
    """A small random operator with integer coefficients."""
    out = WeylOp()
    for _ in range(terms):
        key = []
        for v in variables:
            s = rng.randint(-max_shift, max_shift)
            c = rng.randint(-max_gamma, max_gamma)
            key.append(WeylOp.factor(v, s, c))
        term = WeylOp.scalar(rng.randint(-3, 3) or 1)
        for f in key:
            term = term * f
        out = out + term
    return out


def action_fuzz(samples: int, seed: int = 0, variables: tuple[str, ...] = ("x", "y")) -> list:
    """Compare normal-form products with composed actions.

    Returns the failing ``(A, B, f)`` triples; the list is empty when
    ``apply(A * B, f) == apply(A, apply(B, f))`` on every sample.
    """
    rng = random.Random(seed)
    vs = list(variables)
    failures = []
    for _ in range(samples):
        A, B = random_op(vs, rng), random_op(vs, rng)
        f = CommPoly()
        for _ in range(2):
            f = f + CommPoly.monomial({v: rng.randint(0, 4) for v in vs}, rng.randint(1, 5))
        if apply(A * B, f) != apply(A, apply(B, f)):
            failures.append((A, B, f))
    return failures

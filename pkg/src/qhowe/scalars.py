"""Exact arithmetic in Q(q, t, u) and q-combinatorics.

``q`` is a formal transcendental. The two weight symbols ``t`` and ``u``
stand for ``q^lambda`` and ``q^mu``; an integral weight ``m`` is obtained by
substituting ``q^m`` for the symbol. All symbols are invertible, so Laurent
monomials are allowed everywhere.

Values are stored as a reduced fraction of two ``fmpq_mpoly`` polynomials
with the gcd cancelled and the denominator's leading coefficient equal to 1.
This makes the representation canonical, so equality and hashing compare
numerator and denominator directly.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

import flint

from .errors import DomainError, EvaluationPole, InvalidBaseError, SpecializationPole

GENERATORS = ("q", "t", "u")
WEIGHT_SYMBOLS = GENERATORS[1:]

_CTX = flint.fmpq_mpoly_ctx.get(GENERATORS, "deglex")
_ZERO_POLY = _CTX.from_dict({})
_ONE_POLY = _CTX.from_dict({(0, 0, 0): 1})
_NVARS = len(GENERATORS)


def _poly_from_terms(terms: Mapping[tuple, object]):
    return _CTX.from_dict({e: c for e, c in terms.items() if c != 0})


def _monomial_poly(exps: tuple):
    return _CTX.from_dict({exps: 1})


def _to_fmpq(c) -> flint.fmpq:
    if isinstance(c, flint.fmpq):
        return c
    if isinstance(c, Fraction):
        return flint.fmpq(c.numerator, c.denominator)
    if isinstance(c, int):
        return flint.fmpq(c)
    raise TypeError(f"cannot use {type(c).__name__} as a rational coefficient")


class RatFunc:
    """An element of Q(q, t, u).

    Instances are immutable. Integers and ``fractions.Fraction`` values are
    coerced automatically in arithmetic.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=None, den=None, *, _reduced: bool = False):
        if num is None:
            num = _ZERO_POLY
        if den is None:
            den = _ONE_POLY
        if not _reduced:
            if den.is_zero():
                raise ZeroDivisionError("zero denominator")
            if num.is_zero():
                den = _ONE_POLY
            elif not den.is_one():
                g = num.gcd(den)
                if not g.is_one():
                    num = num / g
                    den = den / g
                lc = den.leading_coefficient()
                if lc != 1:
                    num = num / lc
                    den = den / lc
        self.num = num
        self.den = den
        self._hash = None

    # constructors -----------------------------------------------------

    @classmethod
    def const(cls, c) -> RatFunc:
        """Return the constant ``c`` (int, Fraction or fmpq)."""
        c = _to_fmpq(c)
        return cls(_CTX.from_dict({(0,) * _NVARS: c}) if c != 0 else _ZERO_POLY, _ONE_POLY, _reduced=True)

    @classmethod
    def from_laurent(cls, terms: Mapping[tuple, object]) -> RatFunc:
        """Build a Laurent polynomial from ``{(a, b, c): coeff}`` meaning ``coeff*q^a*t^b*u^c``."""
        terms = {tuple(e): _to_fmpq(c) for e, c in terms.items() if c != 0}
        if not terms:
            return ZERO
        low = [min(e[i] for e in terms) for i in range(_NVARS)]
        shift = tuple(-min(v, 0) for v in low)
        num = _poly_from_terms({tuple(e[i] + shift[i] for i in range(_NVARS)): c for e, c in terms.items()})
        return cls(num, _monomial_poly(shift))

    @classmethod
    def monomial(cls, q: int = 0, t: int = 0, u: int = 0, coeff=1) -> RatFunc:
        """Return ``coeff * q^q * t^t * u^u`` (exponents may be negative)."""
        return cls.from_laurent({(q, t, u): coeff})

    # predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_laurent(self) -> bool:
        """True when the denominator is a single monomial."""
        return len(self.den) == 1

    def symbols(self) -> set[str]:
        """Weight symbols that actually occur."""
        found = set()
        for poly in (self.num, self.den):
            for i, d in enumerate(poly.degrees()):
                if i > 0 and d > 0:
                    found.add(GENERATORS[i])
        return found

    # arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other) -> RatFunc | None:
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction, flint.fmpq)):
            return RatFunc.const(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> RatFunc:
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        if self.den.is_one() and other.den.is_one():
            return RatFunc(self.num * other.num, _ONE_POLY, _reduced=True)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> RatFunc:
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int) -> RatFunc:
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num**k, self.den**k, _reduced=True)

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((str(self.num), str(self.den)))
        return self._hash

    # substitution -----------------------------------------------------

    def specialize(self, assignments: Mapping[str, int]) -> RatFunc:
        """Replace each weight symbol ``s`` in ``assignments`` by ``q^assignments[s]``.

        Raises:
            SpecializationPole: The denominator becomes zero.
        """
        for s in assignments:
            if s not in WEIGHT_SYMBOLS:
                raise DomainError(f"unknown weight symbol {s!r}")
        powers = [assignments.get(s) for s in WEIGHT_SYMBOLS]

        def sub(poly) -> dict:
            out: dict = {}
            for exps, c in poly.to_dict().items():
                e = list(exps)
                for i, m in enumerate(powers, start=1):
                    if m is not None:
                        e[0] += m * e[i]
                        e[i] = 0
                key = tuple(e)
                out[key] = out.get(key, 0) + c
            return out

        den = RatFunc.from_laurent(sub(self.den))
        if den.is_zero():
            raise SpecializationPole(f"denominator of {self} vanishes under {dict(assignments)}")
        return RatFunc.from_laurent(sub(self.num)) / den

    def evaluate(self, q_value, assignments: Mapping[str, int] | None = None,
                 symbol_values: Mapping[str, object] | None = None) -> Fraction:
        """Exact rational value at ``q = q_value``; see :func:`eval_numeric`."""
        return eval_numeric(self, q_value, assignments, symbol_values=symbol_values)

    # printing ---------------------------------------------------------

    def _laurent_parts(self):
        """Return ``(num_terms, den_terms)`` with the den's monomial content moved up."""
        den_terms = self.den.to_dict()
        low = tuple(min(e[i] for e in den_terms) for i in range(_NVARS))
        num_terms = {tuple(a - b for a, b in zip(e, low)): c for e, c in self.num.to_dict().items()}
        den_terms = {tuple(a - b for a, b in zip(e, low)): c for e, c in den_terms.items()}
        return num_terms, den_terms

    def term_strings(self) -> tuple[list[str], list[str]]:
        """Canonical sorted term lists ``"c*q^a*t^b*u^c"`` for numerator and denominator."""
        num, den = self._laurent_parts()
        return _format_terms(num), _format_terms(den)

    def to_json(self) -> dict:
        num, den = self.term_strings()
        return {"num": num, "den": den}

    @classmethod
    def from_json(cls, data: Mapping) -> RatFunc:
        return cls.from_laurent(_parse_terms(data["num"])) / cls.from_laurent(_parse_terms(data["den"]))

    def __str__(self) -> str:
        num, den = self._laurent_parts()
        top = _pretty(num)
        if den == {(0,) * _NVARS: 1}:
            return top
        return f"({top})/({_pretty(den)})"

    def __repr__(self) -> str:
        return f"RatFunc({self})"


def _sort_key(exps: tuple):
    return (-sum(exps), tuple(-e for e in exps))


def _format_terms(terms: Mapping[tuple, object]) -> list[str]:
    out = []
    for exps in sorted(terms, key=_sort_key):
        parts = [str(terms[exps])]
        parts += [f"{g}^{e}" for g, e in zip(GENERATORS, exps) if e != 0]
        out.append("*".join(parts))
    return out or ["0"]


_TERM_RE = re.compile(r"^([qtu])\^(-?\d+)$")


def _parse_terms(items: Iterable[str]) -> dict:
    out: dict = {}
    for item in items:
        coeff, *factors = item.split("*")
        exps = [0] * _NVARS
        for f in factors:
            m = _TERM_RE.match(f.strip())
            if not m:
                raise ValueError(f"bad factor {f!r} in term {item!r}")
            exps[GENERATORS.index(m.group(1))] += int(m.group(2))
        key = tuple(exps)
        out[key] = out.get(key, 0) + Fraction(coeff.strip())
    return out


def _pretty(terms: Mapping[tuple, object]) -> str:
    if not terms:
        return "0"
    chunks = []
    for exps in sorted(terms, key=_sort_key):
        c = terms[exps]
        mono = "*".join(g if e == 1 else f"{g}^{e}" for g, e in zip(GENERATORS, exps) if e != 0)
        if not mono:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        sign = "-" if c < 0 else "+"
        chunks.append((sign, body))
    first_sign, first = chunks[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in chunks[1:]:
        text += f" {sign} {body}"
    return text


ZERO = RatFunc()
ONE = RatFunc.const(1)
q = RatFunc.monomial(q=1)
t = RatFunc.monomial(t=1)
u = RatFunc.monomial(u=1)


def as_ratfunc(x) -> RatFunc:
    """Coerce an int, Fraction or RatFunc to a RatFunc."""
    r = RatFunc._coerce(x)
    if r is None:
        raise TypeError(f"cannot coerce {type(x).__name__} to RatFunc")
    return r


@lru_cache(maxsize=None)
def qpow(k: int) -> RatFunc:
    """``q^k``."""
    return RatFunc.monomial(q=k)


def symbol(name: str) -> RatFunc:
    """The weight symbol ``t`` or ``u`` as a RatFunc."""
    if name not in WEIGHT_SYMBOLS:
        raise DomainError(f"unknown weight symbol {name!r}")
    return RatFunc.monomial(**{name: 1})


@dataclass(frozen=True)
class WeightExpr:
    """Argument of a generalized q-number.

    The expression ``w`` is recorded through ``q^(base*w) = prod(s^e) * q^q_shift``
    so that ``[w]_{q^base} = (X - X^-1)/(q^base - q^-base)`` with ``X`` that
    Laurent monomial. Half-integers such as ``s + 3/2`` in base ``q^2`` become
    ``q_shift = 2s + 3``.
    """

    syms: tuple[tuple[str, int], ...] = ()
    q_shift: int = 0
    base: int = 1

    def __post_init__(self):
        if self.base < 1:
            raise InvalidBaseError(f"base exponent must be >= 1, got {self.base}")
        cleaned = tuple(sorted((s, e) for s, e in dict(self.syms).items() if e != 0))
        for s, _ in cleaned:
            if s not in WEIGHT_SYMBOLS:
                raise DomainError(f"unknown weight symbol {s!r}")
        object.__setattr__(self, "syms", cleaned)

    @classmethod
    def integer(cls, m: int, base: int = 1) -> WeightExpr:
        return cls((), base * m, base)

    @classmethod
    def symbol(cls, name: str, base: int = 1) -> WeightExpr:
        """The generic weight whose ``q^weight`` is the symbol ``name``."""
        return cls(((name, base),), 0, base)

    def exponent_vector(self) -> tuple[int, int, int]:
        d = dict(self.syms)
        return (self.q_shift, d.get("t", 0), d.get("u", 0))

    def value(self) -> RatFunc:
        """``q^(base*w)`` as a Laurent monomial."""
        return RatFunc.from_laurent({self.exponent_vector(): 1})

    def qnum(self) -> RatFunc:
        """The generalized q-number ``[w]_{q^base}``."""
        return _qnum_cached(self.exponent_vector(), self.base)

    def shift(self, k: int) -> WeightExpr:
        """``w + k``."""
        return WeightExpr(self.syms, self.q_shift + self.base * k, self.base)

    def __neg__(self) -> WeightExpr:
        return WeightExpr(tuple((s, -e) for s, e in self.syms), -self.q_shift, self.base)

    def __add__(self, other: WeightExpr | int) -> WeightExpr:
        if isinstance(other, int):
            return self.shift(other)
        if other.base != self.base:
            raise DomainError("cannot add weight expressions with different bases")
        merged = dict(self.syms)
        for s, e in other.syms:
            merged[s] = merged.get(s, 0) + e
        return WeightExpr(tuple(merged.items()), self.q_shift + other.q_shift, self.base)

    __radd__ = __add__

    def __sub__(self, other: WeightExpr | int) -> WeightExpr:
        return self + (-other)

    def is_integer(self) -> bool:
        return not self.syms and self.q_shift % self.base == 0

    def int_value(self) -> int | None:
        """The integer ``m`` when the expression is the plain integer ``m``."""
        return self.q_shift // self.base if self.is_integer() else None

    def __str__(self) -> str:
        parts = []
        names = {"t": "lambda", "u": "mu"}
        for s, e in self.syms:
            coeff = Fraction(e, self.base)
            name = names[s]
            if coeff == 1:
                parts.append(name)
            elif coeff == -1:
                parts.append(f"-{name}")
            else:
                parts.append(f"{coeff}*{name}")
        shift = Fraction(self.q_shift, self.base)
        if shift or not parts:
            parts.append(str(shift))
        return " + ".join(parts).replace("+ -", "- ")


@lru_cache(maxsize=None)
def _qnum_cached(exps: tuple, base: int) -> RatFunc:
    a, b, c = exps
    if a == b == c == 0:
        return ZERO
    top = RatFunc.from_laurent({(a, b, c): 1, (-a, -b, -c): -1})
    return top / RatFunc.from_laurent({(base, 0, 0): 1, (-base, 0, 0): -1})


def qnum_gen(t_exp: int, q_exp: int, d: int = 1, symbol: str | None = None) -> RatFunc:
    """``(s^t_exp q^q_exp - s^-t_exp q^-q_exp)/(q^d - q^-d)`` for the weight symbol ``s``.

    With ``t_exp = 0`` this is the plain q-number whose numerator exponent is
    ``q_exp``, in base ``q^d``.

    Raises:
        InvalidBaseError: ``d < 1``.
    """
    if d < 1:
        raise InvalidBaseError(f"base exponent must be >= 1, got {d}")
    if t_exp and symbol is None:
        symbol = "t"
    syms = ((symbol, t_exp),) if t_exp else ()
    return WeightExpr(syms, q_exp, d).qnum()


def qint(n: int, d: int = 1) -> RatFunc:
    """The q-number ``[n]_{q^d}``."""
    return qnum_gen(0, d * n, d)


@lru_cache(maxsize=None)
def qfact(n: int, d: int = 1) -> RatFunc:
    """``[n]_{q^d}! = [1][2]...[n]`` in base ``q^d``."""
    if n < 0:
        raise DomainError(f"q-factorial of negative integer {n}")
    if d < 1:
        raise InvalidBaseError(f"base exponent must be >= 1, got {d}")
    if n == 0:
        return ONE
    return qfact(n - 1, d) * qint(n, d)


@lru_cache(maxsize=None)
def qbinom(n: int, k: int, d: int = 1) -> RatFunc:
    """Gaussian binomial ``[n]!/([k]![n-k]!)`` in base ``q^d``."""
    if k < 0 or n < 0 or k > n:
        raise DomainError(f"q-binomial needs n >= k >= 0, got n={n}, k={k}")
    return qfact(n, d) / (qfact(k, d) * qfact(n - k, d))


def qpoch(w: WeightExpr | int, length: int) -> RatFunc:
    """Ascending product ``[w]_q [w+1]_q ... [w+length-1]_q`` (base taken from ``w``)."""
    if length < 0:
        raise DomainError(f"Pochhammer length must be >= 0, got {length}")
    if isinstance(w, int):
        w = WeightExpr.integer(w)
    out = ONE
    for i in range(length):
        out = out * w.shift(i).qnum()
    return out


def sym_qbinom(w: WeightExpr | int, m: int) -> RatFunc:
    """Generalized binomial ``[w][w-1]...[w-m+1] / [m]!`` with a possibly symbolic top."""
    if m < 0:
        raise DomainError(f"lower entry must be >= 0, got {m}")
    if isinstance(w, int):
        w = WeightExpr.integer(w)
    return qpoch(w.shift(1 - m), m) / qfact(m, w.base)


def specialize(f: RatFunc, assignments: Mapping[str, int]) -> RatFunc:
    """Substitute ``s -> q^m`` for each ``s: m`` in ``assignments``."""
    return f.specialize(assignments)


def eval_numeric(f: RatFunc, q_value, assignments: Mapping[str, int] | None = None, *,
                 symbol_values: Mapping[str, object] | None = None) -> Fraction:
    """Evaluate ``f`` exactly at a rational point.

    Args:
        f: The function to evaluate.
        q_value: Rational value for ``q``; must not be 0, 1 or -1.
        assignments: Symbols replaced by ``q_value**m``.
        symbol_values: Symbols replaced by the given rational values directly.

    Raises:
        DomainError: ``q_value`` is excluded or a symbol has no value.
        EvaluationPole: The denominator vanishes at the point.
    """
    qv = Fraction(q_value)
    if qv in (0, 1, -1):
        raise DomainError(f"q must avoid 0 and +-1, got {qv}")
    values = {"q": qv}
    for s, m in (assignments or {}).items():
        values[s] = qv**m
    for s, v in (symbol_values or {}).items():
        values[s] = Fraction(v)
    missing = f.symbols() - set(values)
    if missing:
        raise DomainError(f"no value given for symbols {sorted(missing)}")
    point = [_to_fmpq(values.get(g, Fraction(1))) for g in GENERATORS]
    den = f.den(*point)
    if den == 0:
        raise EvaluationPole(f"{f} has a pole at {values}")
    val = f.num(*point) / den
    return Fraction(int(val.p), int(val.q))


# property fuzzing -------------------------------------------------------------

def random_ratfunc(rng: random.Random, terms: int = 3, max_exp: int = 3) -> RatFunc:
    """Random nonzero-denominator element with small integer coefficients."""
    def laurent():
        return RatFunc.from_laurent({
            tuple(rng.randint(-max_exp, max_exp) for _ in range(3)): rng.randint(-4, 4)
            for _ in range(terms)})
    num = laurent()
    den = laurent()
    while den.is_zero():
        den = laurent()
    return num / den


def field_axiom_fuzz(samples: int, seed: int = 0) -> list[str]:
    """Check the field axioms on random triples; returns descriptions of failures."""
    rng = random.Random(seed)
    failures = []
    for i in range(samples):
        a, b, c = (random_ratfunc(rng) for _ in range(3))
        checks = {
            "add-assoc": (a + b) + c == a + (b + c),
            "mul-assoc": (a * b) * c == a * (b * c),
            "add-comm": a + b == b + a,
            "mul-comm": a * b == b * a,
            "distrib": a * (b + c) == a * b + a * c,
            "neg": (a - a).is_zero(),
            "inverse": a.is_zero() or a * a.inverse() == ONE,
            "hash": hash(a * b) == hash(b * a),
        }
        failures += [f"sample {i}: {name}" for name, ok in checks.items() if not ok]
    return failures

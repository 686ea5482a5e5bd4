"""Exact coefficient arithmetic.

Scalars live in the field Q(q,t) of rational functions in the two parameters,
kept in canonical reduced form: numerator and denominator are integer
polynomials with no common factor and no common content, and the denominator
has positive leading coefficient under the graded-lexicographic term order
with q before t.  The heavy lifting (multivariate gcd, cancellation) is
delegated to sympy's low-level ``polys`` layer; everything downstream only
sees opaque scalar values.

A "specialized" mode replaces the symbolic field by exact ``Fraction``
arithmetic after substituting rational values for (q,t).  Both modes expose
the same operations through :class:`ScalarContext`.

Polynomials in the main variables z1..zn are sparse dictionaries from
exponent vectors to scalars (:class:`ZPolynomial`), optionally Laurent.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from sympy.polys.domains import ZZ
from sympy.polys.fields import field as _sym_field
from sympy.polys.orderings import grlex

_FIELD, _Q, _T = _sym_field("q,t", ZZ, grlex)
_RING = _FIELD.to_ring()


class AlgebraError(ValueError):
    """Invalid algebraic operation (zero denominator, arity mismatch, ...)."""


class SpecializationError(AlgebraError):
    """A denominator vanishes at the chosen (q,t) point."""


# ---------------------------------------------------------------------------
# bivariate integer polynomials (numerators / denominators)
# ---------------------------------------------------------------------------

def _to_ring_poly(p):
    """Coerce an int, {(i,j): c} dict or ring element to a ZZ[q,t] element."""
    if isinstance(p, int):
        return _RING.from_dict({(0, 0): p}) if p else _RING.zero
    if isinstance(p, dict):
        return _RING.from_dict({(int(i), int(j)): c for (i, j), c in p.items()})
    if isinstance(p, _RING.dtype):
        return p
    raise AlgebraError(f"cannot interpret {p!r} as an integer polynomial in q,t")


def scalar_canonicalize(num, den=1):
    """Build the canonical reduced scalar num/den; raises on zero denominator."""
    num_p = _to_ring_poly(num)
    den_p = _to_ring_poly(den)
    if not den_p:
        raise AlgebraError("zero denominator")
    return _FIELD.new(num_p, den_p)


def _ring_poly_text(p) -> str:
    """Canonical text of an integer polynomial, grlex-descending terms."""
    if not p:
        return "0"
    chunks = []
    for (eq, et), c in p.terms():
        c = int(c)
        mono = "*".join(
            s for s in (
                "" if eq == 0 else ("q" if eq == 1 else f"q^{eq}"),
                "" if et == 0 else ("t" if et == 1 else f"t^{et}"),
            ) if s
        )
        if not mono:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        if not chunks:
            chunks.append(("-" if c < 0 else "") + body)
        else:
            chunks.append((" - " if c < 0 else " + ") + body)
    return "".join(chunks)


def _invert_frac(x):
    """Map q -> 1/q, t -> 1/t on a field element, recanonicalized."""
    num, den = x.numer, x.denom
    if not num:
        return x
    nterms = num.terms()
    dterms = den.terms()
    aq = max(max(e[0] for e, _ in nterms), max(e[0] for e, _ in dterms))
    at = max(max(e[1] for e, _ in nterms), max(e[1] for e, _ in dterms))
    new_num = {(aq - e[0], at - e[1]): c for e, c in nterms}
    new_den = {(aq - e[0], at - e[1]): c for e, c in dterms}
    return _FIELD.new(_RING.from_dict(new_num), _RING.from_dict(new_den))


def subst_t_power(x, k: int):
    """Substitute t = q**k in a generic scalar; raises if the denominator dies."""
    def sub(poly):
        acc: dict[tuple[int, int], int] = {}
        for (eq, et), c in poly.terms():
            key = (eq + k * et, 0)
            acc[key] = acc.get(key, 0) + int(c)
        return _RING.from_dict({e: c for e, c in acc.items() if c})

    num = sub(x.numer)
    den = sub(x.denom)
    if not den:
        raise SpecializationError(
            f"denominator {_ring_poly_text(x.denom)} vanishes under t = q^{k}")
    return _FIELD.new(num, den)


def scalar_eval(x, qval: Fraction, tval: Fraction) -> Fraction:
    """Evaluate a generic scalar at an exact rational point."""
    def ev(poly):
        return sum(
            (Fraction(int(c)) * qval ** e[0] * tval ** e[1] for e, c in poly.terms()),
            Fraction(0),
        )

    den = ev(x.denom)
    if den == 0:
        raise SpecializationError(
            f"denominator {_ring_poly_text(x.denom)} vanishes at q={qval}, t={tval}")
    return ev(x.numer) / den


# ---------------------------------------------------------------------------
# scalar contexts
# ---------------------------------------------------------------------------

_MONOMIAL_CACHE: dict[tuple[int, int], object] = {}


@dataclass(frozen=True)
class ScalarContext:
    """Chooses the coefficient arithmetic: symbolic Q(q,t) or exact rationals."""

    mode: str
    qval: Fraction | None = None
    tval: Fraction | None = None

    @property
    def generic(self) -> bool:
        return self.mode == "generic"

    @property
    def zero(self):
        return _FIELD.zero if self.generic else Fraction(0)

    @property
    def one(self):
        return _FIELD.one if self.generic else Fraction(1)

    @property
    def q(self):
        return self.monomial(1, 0)

    @property
    def t(self):
        return self.monomial(0, 1)

    def monomial(self, a: int, b: int):
        """The scalar q^a * t^b (a, b may be negative)."""
        if self.generic:
            try:
                return _MONOMIAL_CACHE[(a, b)]
            except KeyError:
                v = _Q ** a * _T ** b
                _MONOMIAL_CACHE[(a, b)] = v
                return v
        return self.qval ** a * self.tval ** b

    def from_int(self, k: int):
        return self.one * k

    def coerce(self, x):
        """Promote a bare int (e.g. a default 0) to a scalar of this context."""
        if isinstance(x, int):
            return self.from_int(x)
        return x

    def invert_params(self, x):
        """q -> 1/q, t -> 1/t.  Only meaningful symbolically."""
        if not self.generic:
            raise AlgebraError(
                "parameter inversion of a specialized value is undefined; "
                "recompute in the reciprocal-point context instead")
        return _invert_frac(self.coerce(x))

    def inverted(self) -> "ScalarContext":
        """Context computing directly at the reciprocal parameter point."""
        if self.generic:
            return self
        return ScalarContext("specialized", 1 / self.qval, 1 / self.tval)

    def num_den_text(self, x) -> tuple[str, str]:
        x = self.coerce(x)
        if self.generic:
            return _ring_poly_text(x.numer), _ring_poly_text(x.denom)
        return str(x.numerator), str(x.denominator)

    def text(self, x) -> str:
        """Compact canonical rendering, also used inside polynomial strings."""
        num, den = self.num_den_text(x)
        if den == "1":
            return num
        np = f"({num})" if (" + " in num or " - " in num) else num
        dp = f"({den})" if (" + " in den or " - " in den) else den
        return f"{np}/{dp}"

    inline_text = text

    def params_label(self) -> str:
        if self.generic:
            return "symbolic"
        return f"q={self.qval},t={self.tval}"


GENERIC = ScalarContext("generic")


def specialized(qval, tval) -> ScalarContext:
    qv, tv = Fraction(qval), Fraction(tval)
    if qv == 0 or tv == 0:
        raise AlgebraError("specialized q and t must be nonzero")
    return ScalarContext("specialized", qv, tv)


# ---------------------------------------------------------------------------
# sparse polynomials in z1..zn over the scalar field
# ---------------------------------------------------------------------------

class ZPolynomial:
    """Sparse n-variable polynomial with scalar coefficients.

    Terms map exponent tuples to nonzero scalars.  In Laurent mode exponents
    may be negative; otherwise construction rejects them, which catches
    accidental variable inversions early.
    """

    __slots__ = ("nvars", "terms", "laurent")

    def __init__(self, nvars: int, terms=None, laurent: bool = False):
        if nvars < 1:
            raise AlgebraError("nvars must be positive")
        clean: dict[tuple[int, ...], object] = {}
        for exps, c in (terms or {}).items():
            if len(exps) != nvars:
                raise AlgebraError(
                    f"exponent vector {exps} has length {len(exps)}, expected {nvars}")
            if not laurent and any(e < 0 for e in exps):
                raise AlgebraError(
                    f"negative exponent in non-Laurent polynomial: {exps}")
            if c:
                clean[tuple(exps)] = c
        self.nvars = nvars
        self.terms = clean
        self.laurent = laurent

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int, laurent: bool = False) -> "ZPolynomial":
        return cls(nvars, {}, laurent)

    @classmethod
    def constant(cls, nvars: int, c, laurent: bool = False) -> "ZPolynomial":
        return cls(nvars, {(0,) * nvars: c}, laurent)

    @classmethod
    def monomial(cls, nvars: int, exps, c, laurent: bool = False) -> "ZPolynomial":
        return cls(nvars, {tuple(exps): c}, laurent)

    @classmethod
    def variable(cls, nvars: int, i: int, ctx: ScalarContext = GENERIC) -> "ZPolynomial":
        """z_i, 1-based."""
        exps = tuple(1 if j == i - 1 else 0 for j in range(nvars))
        return cls(nvars, {exps: ctx.one})

    # -- basic structure ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, ZPolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"ZPolynomial({self.nvars}, {len(self.terms)} terms)"

    def _check_compatible(self, other: "ZPolynomial"):
        if self.nvars != other.nvars:
            raise AlgebraError(
                f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def total_degree(self) -> int:
        if self.is_zero:
            raise AlgebraError("zero polynomial has no degree")
        return max(sum(e) for e in self.terms)

    def coefficient(self, exps):
        """Scalar coefficient of z^exps; a bare 0 when absent."""
        return self.terms.get(tuple(exps), 0)

    # -- ring operations ----------------------------------------------------

    def __add__(self, other: "ZPolynomial") -> "ZPolynomial":
        self._check_compatible(other)
        acc = dict(self.terms)
        for e, c in other.terms.items():
            s = acc.get(e, 0) + c
            if s:
                acc[e] = s
            else:
                acc.pop(e, None)
        return ZPolynomial(self.nvars, acc, self.laurent or other.laurent)

    def __sub__(self, other: "ZPolynomial") -> "ZPolynomial":
        return self + (-other)

    def __neg__(self) -> "ZPolynomial":
        return ZPolynomial(self.nvars, {e: -c for e, c in self.terms.items()},
                           self.laurent)

    def __mul__(self, other: "ZPolynomial") -> "ZPolynomial":
        self._check_compatible(other)
        acc: dict[tuple[int, ...], object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = acc.get(e, 0) + c1 * c2
                if s:
                    acc[e] = s
                else:
                    acc.pop(e, None)
        return ZPolynomial(self.nvars, acc, self.laurent or other.laurent)

    def scale(self, c) -> "ZPolynomial":
        if not c:
            return ZPolynomial.zero(self.nvars, self.laurent)
        return ZPolynomial(self.nvars, {e: co * c for e, co in self.terms.items()},
                           self.laurent)

    # -- substitutions ------------------------------------------------------

    def swap_vars(self, i: int) -> "ZPolynomial":
        """Exchange z_i and z_{i+1} (1-based)."""
        acc = {}
        for e, c in self.terms.items():
            le = list(e)
            le[i - 1], le[i] = le[i], le[i - 1]
            acc[tuple(le)] = c
        return ZPolynomial(self.nvars, acc, self.laurent)

    def invert_params(self, ctx: ScalarContext = GENERIC) -> "ZPolynomial":
        """Coefficient-wise q -> 1/q, t -> 1/t."""
        return ZPolynomial(self.nvars,
                           {e: ctx.invert_params(c) for e, c in self.terms.items()},
                           self.laurent)

    def invert_vars(self) -> "ZPolynomial":
        """z^mu -> z^(-mu); always Laurent."""
        return ZPolynomial(self.nvars,
                           {tuple(-x for x in e): c for e, c in self.terms.items()},
                           laurent=True)

    def at_point(self, point, ctx: ScalarContext = GENERIC):
        """Exact evaluation at a tuple of scalars."""
        if len(point) != self.nvars:
            raise AlgebraError(
                f"point length {len(point)} does not match nvars {self.nvars}")
        total = ctx.zero
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * x ** k
            total = total + v
        return total

    def map_coeffs(self, fn) -> "ZPolynomial":
        return ZPolynomial(self.nvars,
                           {e: fn(c) for e, c in self.terms.items()}, self.laurent)

    # -- structural extractions ---------------------------------------------

    def top_homogeneous(self) -> "ZPolynomial":
        """Sum of terms of maximal total degree; input must be nonzero."""
        if self.is_zero:
            raise AlgebraError("zero polynomial has no top homogeneous part")
        d = self.total_degree()
        return ZPolynomial(self.nvars,
                           {e: c for e, c in self.terms.items() if sum(e) == d},
                           self.laurent)

    def constant_term(self):
        """Coefficient of the all-zero exponent vector (bare 0 if absent)."""
        return self.terms.get((0,) * self.nvars, 0)

    # -- printing ------------------------------------------------------------

    def sorted_terms(self):
        """Terms in canonical order: total degree then exponents, descending."""
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]),
                      reverse=True)

    def text(self, ctx: ScalarContext = GENERIC) -> str:
        if self.is_zero:
            return "0"
        chunks = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                (f"z{i + 1}" if k == 1 else f"z{i + 1}^{k}")
                for i, k in enumerate(e) if k
            )
            ct = ctx.inline_text(c)
            if not mono:
                body = ct
            elif ct == "1":
                body = mono
            elif ct == "-1":
                body = "-" + mono
            else:
                cp = f"({ct})" if (" + " in ct or " - " in ct) else ct
                body = f"{cp}*{mono}"
            if not chunks:
                chunks.append(body)
            elif body.startswith("-"):
                chunks.append(" - " + body[1:])
            else:
                chunks.append(" + " + body)
        return "".join(chunks)


def poly_arith(a: ZPolynomial, b: ZPolynomial, kind: str) -> ZPolynomial:
    """Exact ring arithmetic dispatch: kind in {add, sub, mul}."""
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    raise AlgebraError(f"unknown arithmetic kind {kind!r}")


def substitute(p: ZPolynomial, mode: str, point=None, ctx: ScalarContext = GENERIC):
    """Dispatch for the substitution family: invert-params | invert-vars | at-point."""
    if mode == "invert-params":
        return p.invert_params(ctx)
    if mode == "invert-vars":
        return p.invert_vars()
    if mode == "at-point":
        return p.at_point(point, ctx)
    raise AlgebraError(f"unknown substitution mode {mode!r}")


def elementary_symmetric(n: int, r: int, ctx: ScalarContext = GENERIC) -> ZPolynomial:
    """e_r(z1..zn): sum of all squarefree degree-r monomials."""
    if not 0 <= r <= n:
        raise AlgebraError(f"elementary symmetric index r={r} out of range for n={n}")
    terms = {}
    for subset in itertools.combinations(range(n), r):
        exps = tuple(1 if i in subset else 0 for i in range(n))
        terms[exps] = ctx.one
    return ZPolynomial(n, terms)


def elementary_symmetric_at(values, r: int, ctx: ScalarContext = GENERIC):
    """e_r evaluated at a tuple of scalars, without building the polynomial."""
    n = len(values)
    if not 0 <= r <= n:
        raise AlgebraError(f"elementary symmetric index r={r} out of range for n={n}")
    total = ctx.zero
    for subset in itertools.combinations(values, r):
        v = ctx.one
        for x in subset:
            v = v * x
        total = total + v
    return total


def divided_difference(p: ZPolynomial, i: int) -> ZPolynomial:
    """(s_i p - p) / (z_i - z_{i+1}), computed exactly term by term.

    For a monomial with exponents (a, b) at positions (i, i+1) the quotient
    is a geometric sum between the swapped exponents, so no remainder can
    arise.  Works for Laurent exponents as well.
    """
    if not 1 <= i <= p.nvars - 1:
        raise AlgebraError(f"divided difference index {i} out of range")
    acc: dict[tuple[int, ...], object] = {}

    def bump(exps, c):
        s = acc.get(exps, 0) + c
        if s:
            acc[exps] = s
        else:
            acc.pop(exps, None)

    for e, c in p.terms.items():
        a, b = e[i - 1], e[i]
        if a == b:
            continue
        le = list(e)
        if a > b:
            for k in range(a - b):
                le[i - 1], le[i] = b + k, a - 1 - k
                bump(tuple(le), -c)
        else:
            for k in range(b - a):
                le[i - 1], le[i] = a + k, b - 1 - k
                bump(tuple(le), c)
    return ZPolynomial(p.nvars, acc, p.laurent)

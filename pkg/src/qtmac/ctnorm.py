"""Constant-term inner product at t = q^k.

At nonnegative integer k the infinite-product weight truncates to a finite
Laurent polynomial: each Pochhammer ratio collapses to a length-k product.
This makes the inner product
    <f, g> = CT[ f(z) g(1/z; 1/q, 1/t) W(z) ]
exactly computable, which validates both the orthogonality of the E basis
and the closed-form norms.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    GENERIC,
    AlgebraError,
    ScalarContext,
    ZPolynomial,
    subst_t_power,
)
from . import comb, emac
from .comb import Composition


@dataclass(frozen=True)
class SpecializedWeight:
    n: int
    k: int
    weight: ZPolynomial


def _ratio_monomial(n: int, i: int, j: int, ctx: ScalarContext,
                    qpow: int) -> ZPolynomial:
    """q^qpow * z_i / z_j as a Laurent monomial (1-based i, j)."""
    exps = tuple(1 if v == i - 1 else (-1 if v == j - 1 else 0)
                 for v in range(n))
    return ZPolynomial.monomial(n, exps, ctx.monomial(qpow, 0), laurent=True)


def specialized_weight(n: int, k: int,
                       ctx: ScalarContext = GENERIC) -> SpecializedWeight:
    """The truncated weight: product over i<j of
    (z_i/z_j; q)_k (q z_j/z_i; q)_k, expanded exactly."""
    if n < 2:
        raise AlgebraError("the weight needs at least two variables")
    if k < 0:
        raise AlgebraError("k must be a nonnegative integer")
    weight = ZPolynomial.constant(n, ctx.one, laurent=True)
    one = ZPolynomial.constant(n, ctx.one, laurent=True)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for p in range(k):
                weight = weight * (one - _ratio_monomial(n, i, j, ctx, p))
                weight = weight * (one - _ratio_monomial(n, j, i, ctx, p + 1))
    return SpecializedWeight(n, k, weight)


def ct_inner_product(f: ZPolynomial, g: ZPolynomial, w: SpecializedWeight,
                     ctx: ScalarContext = GENERIC):
    """CT[f(z) g(1/z) W] with g's parameters inverted before the variable
    inversion; f and g are expected to be specialized at t = q^k already."""
    if f.nvars != w.n or g.nvars != w.n:
        raise AlgebraError("variable count mismatch with the weight")
    g_bar = g.invert_params(ctx) if ctx.generic else g
    product = f * g_bar.invert_vars() * w.weight
    return ctx.coerce(product.constant_term())


def specialize_E(eta: Composition, k: int,
                 ctx: ScalarContext = GENERIC) -> ZPolynomial:
    """E_eta with every coefficient restricted to t = q^k."""
    poly = emac.generate_E(eta, ctx).poly
    if ctx.generic:
        return poly.map_coeffs(lambda c: subst_t_power(c, k))
    raise AlgebraError("specialize_E at t=q^k is a symbolic-mode operation")


@dataclass(frozen=True)
class OrthogonalityReport:
    n: int
    k: int
    maxmod: int
    one_one: object
    checked: int
    failures: tuple

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_orthogonality_norms(n: int, k: int, maxmod: int,
                               ctx: ScalarContext = GENERIC,
                               workers: int = 1) -> OrthogonalityReport:
    """Check <E_eta, E_nu> = delta * N_eta <1,1> for all labels up to maxmod.

    The norm side uses the closed hook-product formula restricted to t = q^k;
    the inner product side is a raw constant-term extraction.
    """
    w = specialized_weight(n, k, ctx)
    ones = ZPolynomial.constant(n, ctx.one)
    one_one = ct_inner_product(ones, ones, w, ctx)
    labels = list(comb.compositions_up_to(n, maxmod))
    polys = {eta: specialize_E(eta, k, ctx) for eta in labels}
    failures = []
    checked = 0
    for a, eta in enumerate(labels):
        for nu in labels[a:]:
            lhs = ct_inner_product(polys[eta], polys[nu], w, ctx)
            if eta == nu:
                rhs = subst_t_power(emac.norm_N(eta, ctx), k) * one_one
            else:
                rhs = ctx.zero
            checked += 1
            if lhs != rhs:
                failures.append((eta, nu, ctx.text(lhs), ctx.text(rhs)))
    return OrthogonalityReport(n, k, maxmod, one_one, checked, tuple(failures))

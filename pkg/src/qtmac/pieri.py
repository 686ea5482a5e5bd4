"""Pieri-type branching coefficients.

The coefficients A^(r)_{eta,lam} expand e_r(z) E_eta(z; 1/q, 1/t) over the
E_lam(z; 1/q, 1/t) with |lam| = |eta| + r.  They are produced four ways:

* the layered recursion through interpolation polynomial evaluations,
* the r = 1 closed form through the one-step ratio,
* the r = 1 product form through the a-hat/b-hat factors,
* a brute-force expansion oracle over the monic triangular basis.

Duality transfers a coefficient to the complementary one at reciprocal
parameters, which is the cheaper route when r exceeds n/2.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .algebra import (
    GENERIC,
    AlgebraError,
    ScalarContext,
    ZPolynomial,
    elementary_symmetric,
    elementary_symmetric_at,
)
from . import comb, emac, istar
from .comb import Composition


@dataclass(frozen=True)
class ExpansionTable:
    """Layers of branching coefficients over successor compositions.

    layers[i-1] maps each lam with |lam| = |base| + i to its coefficient;
    zero coefficients are never stored.
    """

    base: Composition
    r: int
    layers: tuple


def _layer_targets(eta: Composition, i: int) -> list[Composition]:
    return comb.successors_layered(eta, i)


def interpolation_expansion(eta: Composition, r: int,
                            ctx: ScalarContext = GENERIC,
                            workers: int = 1) -> ExpansionTable:
    """All layers of the expansion of (e_r(z) - e_r(eta-bar)) Estar_eta.

    Layer one is a pure evaluation ratio; layer i subtracts the contributions
    of every earlier layer that stays below the target.
    """
    eta = comb.as_composition(eta)
    n = len(eta)
    if not 1 <= r <= n:
        raise AlgebraError(f"r={r} out of range for n={n}")
    er_eta = elementary_symmetric_at(comb.spectral_vector(eta, ctx), r, ctx)
    layers: list[dict] = []
    for i in range(1, r + 1):
        targets = _layer_targets(eta, i)

        def coeff_for(lam, _prev=tuple(layers)):
            lb = comb.spectral_vector(lam, ctx)
            pv = istar.principal_value(lam, ctx)
            total = ((elementary_symmetric_at(lb, r, ctx) - er_eta)
                     * istar.spectral_evaluate(eta, lam, ctx) / pv)
            for prev_layer in _prev:
                for mu, a in prev_layer.items():
                    if comb.is_successor(mu, lam):
                        total = total - (a * istar.spectral_evaluate(mu, lam, ctx)
                                         / pv)
            return lam, total

        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(coeff_for, targets))
        else:
            results = [coeff_for(lam) for lam in targets]
        layers.append({lam: c for lam, c in results if c})
    return ExpansionTable(eta, r, tuple(layers))


def interpolation_residual(table: ExpansionTable,
                           ctx: ScalarContext = GENERIC) -> ZPolynomial:
    """(e_r(z) - e_r(eta-bar)) Estar_eta - sum of A Estar_lam; must be zero."""
    eta, r = table.base, table.r
    n = len(eta)
    er_eta = elementary_symmetric_at(comb.spectral_vector(eta, ctx), r, ctx)
    lhs = ((elementary_symmetric(n, r, ctx)
            - ZPolynomial.constant(n, er_eta))
           * istar.generate_Estar(eta, ctx).poly)
    for layer in table.layers:
        for lam, a in layer.items():
            lhs = lhs - istar.generate_Estar(lam, ctx).poly.scale(a)
    return lhs


def pieri_homogeneous(eta: Composition, r: int,
                      ctx: ScalarContext = GENERIC,
                      workers: int = 1) -> dict:
    """Top layer of the interpolation expansion, restricted to the lam that
    stay below eta + (1^n): the coefficients of e_r(z) E_eta(z; 1/q, 1/t)."""
    eta = comb.as_composition(eta)
    table = interpolation_expansion(eta, r, ctx, workers)
    ceiling = comb.add_box_everywhere(eta, 1)
    return {lam: c for lam, c in table.layers[r - 1].items()
            if comb.is_successor(lam, ceiling)}


def pieri_r1_closed(eta: Composition, ctx: ScalarContext = GENERIC) -> dict:
    """r = 1 coefficients in closed form, one per maximal index set:
    (|lam-bar| - |eta-bar|) q^(-eta_{t1}) delta(eta,I) beta(eta,I) / (1-t)."""
    eta = comb.as_composition(eta)
    eb = comb.spectral_vector(eta, ctx)
    e1_eta = elementary_symmetric_at(eb, 1, ctx)
    out = {}
    for index_set in comb.maximal_sets(eta):
        lam = comb.c_I_apply(eta, index_set)
        lb = comb.spectral_vector(lam, ctx)
        gap = elementary_symmetric_at(lb, 1, ctx) - e1_eta
        t1 = min(index_set)
        coeff = (gap * ctx.monomial(-eta[t1 - 1], 0)
                 * istar.delta_factor(eta, index_set, ctx)
                 * istar.beta_factor(eta, index_set, ctx)
                 / (ctx.one - ctx.t))
        if coeff:
            out[lam] = coeff
    return out


# ---------------------------------------------------------------------------
# r = 1 product form
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PieriProductForms:
    """The factored r = 1 coefficient data for one maximal index set."""

    index_set: tuple[int, ...]
    lam: Composition
    delta: object
    beta: object
    aI: object
    bI: object
    g0: tuple[int, ...]
    g1: tuple[int, ...]
    coefficient: object


def _a_hat(x, y, ctx):
    return (ctx.t - ctx.one) * x / (x - y)


def _b_hat(x, y, ctx):
    return (x - ctx.t * y) / (x - y)


def _product_factors(eta: Composition, index_set, ctx: ScalarContext):
    """A_I and B-tilde_I evaluated at the spectral point of eta."""
    ts = sorted(index_set)
    s = len(ts)
    n = len(eta)
    z = comb.spectral_vector(eta, ctx)
    a_val = _a_hat(z[ts[-1] - 1] / ctx.q, z[ts[0] - 1], ctx)
    for u in range(s - 1):
        a_val = a_val * _a_hat(z[ts[u] - 1], z[ts[u + 1] - 1], ctx)
    b_val = ctx.one
    prev = 0
    for tu in ts:
        for j in range(prev + 1, tu):
            b_val = b_val * _b_hat(z[tu - 1], z[j - 1], ctx)
        prev = tu
    for j in range(ts[-1] + 1, n + 1):
        b_val = b_val * _b_hat(ctx.q * z[ts[0] - 1], z[j - 1], ctx)
    b_val = b_val * (ctx.q * z[ts[0] - 1] - ctx.monomial(0, 1 - n))
    return a_val, b_val


def pieri_r1_product_form(eta: Composition,
                          ctx: ScalarContext = GENERIC) -> list[PieriProductForms]:
    """The r = 1 coefficients in fully factored form, one entry per maximal
    index set, with the raised/fixed position split (g1/g0) for inspection.

    coefficient = (1-q) d'_eta(1/q,1/t) A_I B~_I
                  / (d'_lam(1/q,1/t) q^(eta_{t1}+1) (t-1)).
    """
    eta = comb.as_composition(eta)
    n = len(eta)
    dpr_eta = comb.hook_d_prime_inverted(eta, ctx)
    out = []
    for index_set in comb.maximal_sets(eta):
        lam = comb.c_I_apply(eta, index_set)
        t1 = min(index_set)
        a_val, b_val = _product_factors(eta, index_set, ctx)
        coeff = ((ctx.one - ctx.q) * dpr_eta * a_val * b_val
                 / (comb.hook_d_prime_inverted(lam, ctx)
                    * ctx.monomial(eta[t1 - 1] + 1, 0) * (ctx.t - ctx.one)))
        witness = comb.successor_test(eta, lam)
        sigma = witness.sigma
        g0 = tuple(i for i in range(1, n + 1)
                   if lam[sigma[i - 1] - 1] == eta[i - 1])
        g1 = tuple(i for i in range(1, n + 1)
                   if lam[sigma[i - 1] - 1] == eta[i - 1] + 1)
        out.append(PieriProductForms(
            index_set=tuple(sorted(index_set)),
            lam=lam,
            delta=istar.delta_factor(eta, index_set, ctx),
            beta=istar.beta_factor(eta, index_set, ctx),
            aI=a_val,
            bI=b_val,
            g0=g0,
            g1=g1,
            coefficient=coeff,
        ))
    return out


# ---------------------------------------------------------------------------
# duality and the brute-force oracle
# ---------------------------------------------------------------------------

def duality_transfer(eta: Composition, lam: Composition, r: int,
                     ctx: ScalarContext = GENERIC):
    """A^(r)_{eta,lam} computed from the complementary coefficient:
    A^(n-r)_{lam, eta+(1^n)} at reciprocal parameters times N_eta/N_lam."""
    eta = comb.as_composition(eta)
    lam = comb.as_composition(lam)
    n = len(eta)
    if not 1 <= r <= n - 1:
        raise AlgebraError(f"duality requires 1 <= r <= n-1, got r={r}")
    if comb.modulus(lam) != comb.modulus(eta) + r:
        raise AlgebraError("duality requires |lam| = |eta| + r")
    if not comb.is_successor(eta, lam):
        return ctx.zero
    target = comb.add_box_everywhere(eta, 1)
    if ctx.generic:
        table = pieri_homogeneous(lam, n - r, ctx)
        a_dual = table.get(target, ctx.zero)
        a_dual = ctx.invert_params(a_dual)
    else:
        inv = ctx.inverted()
        table = pieri_homogeneous(lam, n - r, inv)
        a_dual = table.get(target, ctx.zero)
    return a_dual * emac.norm_N(eta, ctx) / emac.norm_N(lam, ctx)


def product_expand_oracle(eta: Composition, r: int,
                          ctx: ScalarContext = GENERIC) -> dict:
    """Ground truth: expand e_r(z) E_eta(z; 1/q, 1/t) over the full monic
    basis at modulus |eta| + r by peeling order-maximal monomials."""
    eta = comb.as_composition(eta)
    n = len(eta)
    if not 1 <= r <= n:
        raise AlgebraError(f"r={r} out of range for n={n}")
    work = elementary_symmetric(n, r, ctx) * emac.generate_E_inverted(eta, ctx).poly
    coeffs: dict[Composition, object] = {}
    while not work.is_zero:
        support = list(work.terms)
        lam = support[0]
        for mu in support[1:]:
            if comb.prec(lam, mu):
                lam = mu
        c = work.terms[lam]
        coeffs[lam] = c
        work = work - emac.generate_E_inverted(lam, ctx).poly.scale(c)
    return coeffs


def homogeneous_residual(eta: Composition, r: int, table: dict,
                         ctx: ScalarContext = GENERIC) -> ZPolynomial:
    """e_r(z) E_eta(z;1/q,1/t) - sum A E_lam(z;1/q,1/t); must be zero."""
    eta = comb.as_composition(eta)
    n = len(eta)
    lhs = elementary_symmetric(n, r, ctx) * emac.generate_E_inverted(eta, ctx).poly
    for lam, a in table.items():
        lhs = lhs - emac.generate_E_inverted(lam, ctx).poly.scale(a)
    return lhs

"""Nonsymmetric Macdonald polynomials.

E_eta is the monic basis element labelled by the composition eta: it equals
z^eta plus strictly lower monomials, and the family is generated recursively
from E_0 = 1 by the Demazure-Lustig switching operators T_i and the raising
operator Phi_q = z_n T_{n-1}^{-1} ... T_1^{-1}.

Also here: the norms N_eta (up to the common <1,1> factor), Hecke
symmetrization to the symmetric Macdonald polynomial P_kappa, and the
classical vertical-strip branching coefficients used as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    GENERIC,
    AlgebraError,
    ScalarContext,
    ZPolynomial,
    divided_difference,
    elementary_symmetric,
)
from . import comb
from .comb import Composition


# ---------------------------------------------------------------------------
# operators
# ---------------------------------------------------------------------------

def apply_T(i: int, p: ZPolynomial, ctx: ScalarContext = GENERIC) -> ZPolynomial:
    """T_i p = t p + (t z_i - z_{i+1}) * (s_i p - p)/(z_i - z_{i+1})."""
    if not 1 <= i <= p.nvars - 1:
        raise AlgebraError(f"operator index {i} out of range for n={p.nvars}")
    mult = ZPolynomial(p.nvars, {
        tuple(1 if j == i - 1 else 0 for j in range(p.nvars)): ctx.t,
        tuple(1 if j == i else 0 for j in range(p.nvars)): -ctx.one,
    }, p.laurent)
    return p.scale(ctx.t) + mult * divided_difference(p, i)


def apply_T_inverse(i: int, p: ZPolynomial, ctx: ScalarContext = GENERIC) -> ZPolynomial:
    """T_i^{-1} = t^{-1} - 1 + t^{-1} T_i, from the quadratic Hecke relation."""
    tinv = ctx.monomial(0, -1)
    return p.scale(tinv - ctx.one) + apply_T(i, p, ctx).scale(tinv)


def apply_phi_q_poly(p: ZPolynomial, ctx: ScalarContext = GENERIC) -> ZPolynomial:
    """The raising operator on polynomials: z_n T_{n-1}^{-1} ... T_1^{-1}."""
    n = p.nvars
    out = p
    for i in range(1, n):
        out = apply_T_inverse(i, out, ctx)
    zn = ZPolynomial.monomial(n, tuple(0 if j < n - 1 else 1 for j in range(n)),
                              ctx.one, p.laurent)
    return zn * out


def delta_ratio(eta: Composition, i: int, ctx: ScalarContext = GENERIC):
    """The spectral ratio at position i: entry i over entry i+1."""
    lp = comb.leg_colength_vector(eta)
    return ctx.monomial(eta[i - 1] - eta[i], lp[i] - lp[i - 1])


def act_T_basis(i: int, eta: Composition, ctx: ScalarContext = GENERIC) -> dict:
    """Expansion of T_i E_eta over {eta, s_i eta}."""
    n = len(eta)
    if not 1 <= i <= n - 1:
        raise AlgebraError(f"operator index {i} out of range for n={n}")
    if eta[i - 1] == eta[i]:
        return {eta: ctx.t}
    delta = delta_ratio(eta, i, ctx)
    diag = (ctx.t - ctx.one) / (ctx.one - delta ** -1)
    flip = comb.swap_entries(eta, i)
    if eta[i - 1] < eta[i]:
        return {eta: diag, flip: ctx.t}
    off = ((ctx.one - ctx.t * delta) * (ctx.one - ctx.monomial(0, -1) * delta)
           / (ctx.one - delta) ** 2)
    return {eta: diag, flip: off}


def apply_phi_q(eta: Composition, ctx: ScalarContext = GENERIC):
    """Action of the raising operator on the basis: (scalar, raised label)."""
    count = sum(1 for x in eta[1:] if x <= eta[0])
    return ctx.monomial(0, -count), comb.phi_shift(eta)


# ---------------------------------------------------------------------------
# recursive generation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MacExpansion:
    label: Composition
    poly: ZPolynomial
    params: str


_E_CACHE: dict = {}


def generate_E(eta: Composition, ctx: ScalarContext = GENERIC) -> MacExpansion:
    """The monic polynomial E_eta, generated recursively and cached.

    Path: strip the last box through the raising step when eta_n >= 1,
    otherwise undo the last descent through the switching step.  Either step
    strictly reduces (modulus, inversions), so the recursion terminates at
    the zero composition.
    """
    eta = comb.as_composition(eta)
    key = (ctx, eta)
    hit = _E_CACHE.get(key)
    if hit is not None:
        return hit
    n = len(eta)
    if all(x == 0 for x in eta):
        poly = ZPolynomial.constant(n, ctx.one)
    elif eta[-1] >= 1:
        mu = (eta[-1] - 1,) + eta[:-1]
        scalar, raised = apply_phi_q(mu, ctx)
        assert raised == eta
        poly = apply_phi_q_poly(generate_E(mu, ctx).poly, ctx).scale(scalar ** -1)
    else:
        i = max(j for j in range(1, n) if eta[j - 1] > eta[j])
        mu = comb.swap_entries(eta, i)
        table = act_T_basis(i, mu, ctx)
        p_mu = generate_E(mu, ctx).poly
        poly = (apply_T(i, p_mu, ctx) - p_mu.scale(table[mu])).scale(
            table[eta] ** -1)
    result = MacExpansion(eta, poly, ctx.params_label())
    _E_CACHE.setdefault(key, result)
    return result


def generate_E_inverted(eta: Composition, ctx: ScalarContext = GENERIC) -> MacExpansion:
    """E_eta at reciprocal parameters (q,t) -> (1/q, 1/t)."""
    eta = comb.as_composition(eta)
    key = ("inv", ctx, eta)
    hit = _E_CACHE.get(key)
    if hit is not None:
        return hit
    if ctx.generic:
        poly = generate_E(eta, ctx).poly.invert_params(ctx)
    else:
        poly = generate_E(eta, ctx.inverted()).poly
    result = MacExpansion(eta, poly, "inverted:" + ctx.params_label())
    _E_CACHE.setdefault(key, result)
    return result


def norm_N(eta: Composition, ctx: ScalarContext = GENERIC):
    """N_eta divided by the common <1,1> factor: d' e / (d e')."""
    h = comb.hook_products(eta, ctx)
    return h.d_prime * h.e / (h.d * h.e_prime)


# ---------------------------------------------------------------------------
# symmetrization
# ---------------------------------------------------------------------------

def hecke_symmetrize(p: ZPolynomial, ctx: ScalarContext = GENERIC) -> ZPolynomial:
    """Sum of T_w p over all permutations w, one reduced word per w."""
    n = p.nvars
    identity = tuple(range(1, n + 1))
    frontier = {identity: p}
    total = p
    while True:
        nxt = {}
        for w, tw in frontier.items():
            for i in range(1, n):
                # left multiplication by s_i lengthens w iff value i sits
                # before value i+1 in the image tuple
                if w.index(i) < w.index(i + 1):
                    sw = tuple(i + 1 if v == i else (i if v == i + 1 else v)
                               for v in w)
                    if sw not in nxt:
                        nxt[sw] = apply_T(i, tw, ctx)
        if not nxt:
            return total
        for v in nxt.values():
            total = total + v
        frontier = nxt


def symmetrize_P(kappa, n: int | None = None,
                 ctx: ScalarContext = GENERIC) -> ZPolynomial:
    """The symmetric Macdonald polynomial P_kappa in n variables.

    Hecke-symmetrizes E_kappa and rescales so the coefficient of the
    dominant monomial z^kappa is one.
    """
    kappa = tuple(int(x) for x in kappa)
    if n is None:
        n = len(kappa)
    if len(kappa) > n:
        raise AlgebraError("partition longer than the number of variables")
    kappa = kappa + (0,) * (n - len(kappa))
    if not comb.is_partition(kappa):
        raise AlgebraError(f"{kappa} is not weakly decreasing")
    key = ("P", ctx, kappa)
    hit = _E_CACHE.get(key)
    if hit is not None:
        return hit
    sym = hecke_symmetrize(generate_E(kappa, ctx).poly, ctx)
    lead = sym.coefficient(kappa)
    if not lead:
        raise AlgebraError("symmetrization lost the dominant monomial")
    result = sym.scale(lead ** -1)
    _E_CACHE.setdefault(key, result)
    return result


# ---------------------------------------------------------------------------
# classical vertical-strip branching coefficients
# ---------------------------------------------------------------------------

def is_vertical_strip(kappa: Composition, lam: Composition) -> bool:
    """lam/kappa a vertical strip: both partitions, increments in {0,1}."""
    return (comb.is_partition(kappa) and comb.is_partition(lam)
            and all(0 <= b - a <= 1 for a, b in zip(kappa, lam)))


def psi_coefficient(kappa, lam, n: int | None = None,
                    ctx: ScalarContext = GENERIC):
    """Branching coefficient of P_lam in e_r(z) P_kappa for a vertical strip.

    t^(n(lam)-n(kappa)) * P_kappa(t^delta)/P_lam(t^delta) times the product
    over pairs i<j of
    (1 - q^(k_i-k_j) t^(j-i+theta_i-theta_j)) / (1 - q^(k_i-k_j) t^(j-i)),
    with theta = lam - kappa and t^delta = (t^(n-1),...,t,1).
    """
    kappa = tuple(int(x) for x in kappa)
    lam = tuple(int(x) for x in lam)
    if n is None:
        n = max(len(kappa), len(lam))
    kap = kappa + (0,) * (n - len(kappa))
    lm = lam + (0,) * (n - len(lam))
    if not is_vertical_strip(kap, lm):
        raise AlgebraError(f"{lm}/{kap} is not a vertical strip")
    theta = tuple(b - a for a, b in zip(kap, lm))
    principal = tuple(ctx.monomial(0, n - 1 - i) for i in range(n))
    val = ctx.monomial(0, comb.n_stat(lm) - comb.n_stat(kap))
    val = val * symmetrize_P(kap, n, ctx).at_point(principal, ctx)
    val = val / symmetrize_P(lm, n, ctx).at_point(principal, ctx)
    for i in range(n):
        for j in range(i + 1, n):
            a = kap[i] - kap[j]
            val = val * (ctx.one - ctx.monomial(a, j - i + theta[i] - theta[j]))
            val = val / (ctx.one - ctx.monomial(a, j - i))
    return val


def expand_in_P_basis(p: ZPolynomial, ctx: ScalarContext = GENERIC) -> dict:
    """Expand a symmetric homogeneous polynomial over the P basis.

    Peels dominance-maximal monomials; returns {partition: coefficient}.
    """
    n = p.nvars
    coeffs = {}
    work = p
    while not work.is_zero:
        support = list(work.terms)
        lam = support[0]
        for mu in support[1:]:
            if comb.prec(lam, mu):
                lam = mu
        if not comb.is_partition(lam):
            raise AlgebraError(
                f"dominant monomial {lam} of a symmetric polynomial "
                "is not a partition")
        c = work.terms[lam]
        coeffs[lam] = c
        work = work - symmetrize_P(lam, n, ctx).scale(c)
    return coeffs


def symmetric_pieri_table(kappa, r: int, n: int,
                          ctx: ScalarContext = GENERIC) -> dict:
    """Coefficients of e_r(z) P_kappa expanded in the P basis (oracle side)."""
    kap = tuple(kappa) + (0,) * (n - len(kappa))
    product = elementary_symmetric(n, r, ctx) * symmetrize_P(kap, n, ctx)
    if product.is_zero:
        return {}
    return expand_in_P_basis(product, ctx)

"""Interpolation Macdonald polynomials.

Estar_eta is the unique polynomial of degree <= |eta| that is monic on
z^eta and vanishes at every spectral point mu-bar with |mu| <= |eta|,
mu != eta.  The family is generated recursively from 1 by the Hecke
operators H_i and the inhomogeneous raising operator
Phi = (z_n - t^(1-n)) Delta, where Delta cycles the variables and divides
the new last variable by q.

Also here: the eigenoperators Xi_i, spectral evaluation, the independent
linear-algebra construction from the vanishing conditions, the extra
vanishing predicate, and the generalized q,t-binomial coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    GENERIC,
    AlgebraError,
    ScalarContext,
    ZPolynomial,
    divided_difference,
)
from . import comb
from .comb import Composition


# ---------------------------------------------------------------------------
# operators
# ---------------------------------------------------------------------------

def apply_H(i: int, p: ZPolynomial, ctx: ScalarContext = GENERIC) -> ZPolynomial:
    """H_i p = t p + (z_i - t z_{i+1}) * (s_i p - p)/(z_i - z_{i+1})."""
    if not 1 <= i <= p.nvars - 1:
        raise AlgebraError(f"operator index {i} out of range for n={p.nvars}")
    mult = ZPolynomial(p.nvars, {
        tuple(1 if j == i - 1 else 0 for j in range(p.nvars)): ctx.one,
        tuple(1 if j == i else 0 for j in range(p.nvars)): -ctx.t,
    }, p.laurent)
    return p.scale(ctx.t) + mult * divided_difference(p, i)


def apply_phi_star(p: ZPolynomial, ctx: ScalarContext = GENERIC) -> ZPolynomial:
    """(z_n - t^(1-n)) * p(z_n/q, z_1, ..., z_{n-1})."""
    n = p.nvars
    shifted = {}
    for e, c in p.terms.items():
        new_e = e[1:] + (e[0],)
        shifted[new_e] = c * ctx.monomial(-e[0], 0)
    moved = ZPolynomial(n, shifted, p.laurent)
    zn = tuple(0 if j < n - 1 else 1 for j in range(n))
    mult = ZPolynomial(n, {
        zn: ctx.one,
        (0,) * n: -ctx.monomial(0, 1 - n),
    }, p.laurent)
    return mult * moved


def xi_apply(i: int, p: ZPolynomial, ctx: ScalarContext = GENERIC) -> ZPolynomial:
    """Xi_i p = z_i^{-1} p + z_i^{-1} H_i ... H_{n-1} Phi H_1 ... H_{i-1} p."""
    n = p.nvars
    if not 1 <= i <= n:
        raise AlgebraError(f"eigenoperator index {i} out of range for n={n}")
    word = p
    for j in range(i - 1, 0, -1):
        word = apply_H(j, word, ctx)
    word = apply_phi_star(word, ctx)
    for j in range(n - 1, i - 1, -1):
        word = apply_H(j, word, ctx)
    zi_inv = ZPolynomial.monomial(
        n, tuple(-1 if j == i - 1 else 0 for j in range(n)), ctx.one, laurent=True)
    return zi_inv * (p + word)


def delta_ratio(eta: Composition, i: int, ctx: ScalarContext = GENERIC):
    lp = comb.leg_colength_vector(eta)
    return ctx.monomial(eta[i - 1] - eta[i], lp[i] - lp[i - 1])


def act_H_basis(i: int, eta: Composition, ctx: ScalarContext = GENERIC) -> dict:
    """Expansion of H_i Estar_eta over {eta, s_i eta}."""
    n = len(eta)
    if not 1 <= i <= n - 1:
        raise AlgebraError(f"operator index {i} out of range for n={n}")
    if eta[i - 1] == eta[i]:
        return {eta: ctx.t}
    delta = delta_ratio(eta, i, ctx)
    diag = (ctx.t - ctx.one) / (ctx.one - delta ** -1)
    flip = comb.swap_entries(eta, i)
    if eta[i - 1] < eta[i]:
        return {eta: diag, flip: ctx.one}
    off = ((ctx.one - ctx.t * delta) * (ctx.t - delta)
           / (ctx.one - delta) ** 2)
    return {eta: diag, flip: off}


# ---------------------------------------------------------------------------
# recursive generation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InterpExpansion:
    label: Composition
    poly: ZPolynomial


_ESTAR_CACHE: dict = {}
_EVAL_CACHE: dict = {}


def generate_Estar(eta: Composition, ctx: ScalarContext = GENERIC) -> InterpExpansion:
    """Estar_eta via the recursive generation, cached.

    The raising step produces Estar of the raised label with prefactor
    q^(first entry), the switching step peels the last descent.
    """
    eta = comb.as_composition(eta)
    key = (ctx, eta)
    hit = _ESTAR_CACHE.get(key)
    if hit is not None:
        return hit
    n = len(eta)
    if all(x == 0 for x in eta):
        poly = ZPolynomial.constant(n, ctx.one)
    elif eta[-1] >= 1:
        mu = (eta[-1] - 1,) + eta[:-1]
        assert comb.phi_shift(mu) == eta
        poly = apply_phi_star(generate_Estar(mu, ctx).poly, ctx).scale(
            ctx.monomial(mu[0], 0))
    else:
        i = max(j for j in range(1, n) if eta[j - 1] > eta[j])
        mu = comb.swap_entries(eta, i)
        delta = delta_ratio(mu, i, ctx)
        diag = (ctx.t - ctx.one) / (ctx.one - delta ** -1)
        p_mu = generate_Estar(mu, ctx).poly
        poly = apply_H(i, p_mu, ctx) - p_mu.scale(diag)
    result = InterpExpansion(eta, poly)
    _ESTAR_CACHE.setdefault(key, result)
    return result


def spectral_evaluate(eta: Composition, mu: Composition,
                      ctx: ScalarContext = GENERIC):
    """Estar_eta evaluated at the spectral point of mu, memoized."""
    eta = comb.as_composition(eta)
    mu = comb.as_composition(mu)
    if len(eta) != len(mu):
        raise AlgebraError("spectral_evaluate requires equal lengths")
    key = (ctx, eta, mu)
    hit = _EVAL_CACHE.get(key)
    if hit is None:
        point = comb.spectral_vector(mu, ctx)
        hit = generate_Estar(eta, ctx).poly.at_point(point, ctx)
        _EVAL_CACHE.setdefault(key, hit)
    return hit


def principal_value(eta: Composition, ctx: ScalarContext = GENERIC):
    """Estar_eta at its own spectral point, in closed form:
    d'_eta at reciprocal parameters times the product of eta-bar_i^(eta_i)."""
    eta = comb.as_composition(eta)
    val = comb.hook_d_prime_inverted(eta, ctx)
    lp = comb.leg_colength_vector(eta)
    val = val * ctx.monomial(sum(x * x for x in eta),
                             -sum(x * l for x, l in zip(eta, lp)))
    return val


def extra_vanishing_test(eta: Composition, lam: Composition) -> bool:
    """Whether Estar_eta vanishes at the spectral point of lam: exactly when
    lam is not a successor of eta."""
    if comb.modulus(lam) < comb.modulus(eta):
        raise AlgebraError("extra vanishing requires |lam| >= |eta|")
    return not comb.is_successor(eta, lam)


# ---------------------------------------------------------------------------
# independent construction from the vanishing conditions
# ---------------------------------------------------------------------------

def vanishing_solve_oracle(eta: Composition,
                           ctx: ScalarContext = GENERIC) -> InterpExpansion:
    """Solve for Estar_eta directly from its defining vanishing conditions.

    Unknowns: coefficients of all monomials strictly below z^eta (any modulus
    up to |eta|); equations: vanishing at every spectral point mu-bar with
    |mu| <= |eta|, mu != eta.  Plain Gaussian elimination over the scalar
    field; the (overdetermined) system must be consistent with full rank.
    """
    eta = comb.as_composition(eta)
    n = len(eta)
    m = comb.modulus(eta)
    unknowns = [mu for mu in comb.compositions_up_to(n, m)
                if mu != eta and comb.prec(mu, eta)]
    points = [mu for mu in comb.compositions_up_to(n, m) if mu != eta]
    rows = []
    for mu in points:
        pt = comb.spectral_vector(mu, ctx)

        def mono_at(nu):
            v = ctx.one
            for x, k in zip(pt, nu):
                if k:
                    v = v * x ** k
            return v

        rows.append([mono_at(nu) for nu in unknowns] + [-mono_at(eta)])
    ncols = len(unknowns)
    # forward elimination with partial pivoting on nonzero entries
    pivot_row = 0
    where = []
    for col in range(ncols):
        sel = None
        for r in range(pivot_row, len(rows)):
            if rows[r][col]:
                sel = r
                break
        if sel is None:
            raise AlgebraError("singular vanishing system (implementation bug)")
        rows[pivot_row], rows[sel] = rows[sel], rows[pivot_row]
        prow = rows[pivot_row]
        inv = prow[col] ** -1
        for r in range(len(rows)):
            if r == pivot_row or not rows[r][col]:
                continue
            factor = rows[r][col] * inv
            row = rows[r]
            for c in range(col, ncols + 1):
                if prow[c]:
                    row[c] = row[c] - factor * prow[c]
        where.append(pivot_row)
        pivot_row += 1
    # consistency of the remaining equations
    for r in range(pivot_row, len(rows)):
        if rows[r][ncols]:
            raise AlgebraError("inconsistent vanishing system (implementation bug)")
    terms = {eta: ctx.one}
    for col, r in enumerate(where):
        c = rows[r][ncols] / rows[r][col]
        if c:
            terms[unknowns[col]] = c
    return InterpExpansion(eta, ZPolynomial(n, terms))


# ---------------------------------------------------------------------------
# one-step evaluation ratio and binomial coefficients
# ---------------------------------------------------------------------------

def delta_factor(eta: Composition, index_set, ctx: ScalarContext = GENERIC):
    """Product over the selected positions of (t-1)/(1 - lam-bar/eta-bar)."""
    lam = comb.c_I_apply(eta, index_set)
    eb = comb.spectral_vector(eta, ctx)
    lb = comb.spectral_vector(lam, ctx)
    val = ctx.one
    for tu in sorted(index_set):
        val = val * (ctx.t - ctx.one) / (ctx.one - lb[tu - 1] / eb[tu - 1])
    return val


def beta_factor(eta: Composition, index_set, ctx: ScalarContext = GENERIC):
    """Product of (X-t)(tX-1)/(X-1)^2 over unselected positions that carry an
    entry larger than the selected entry about to pass them.

    For i below the last selected position, X(i) compares eta-bar at the next
    selected position above i with eta-bar at i; beyond the last selected
    position the raised entry contributes q times the spectral value at the
    first selected position.
    """
    ts = sorted(index_set)
    t1, tlast = ts[0], ts[-1]
    eb = comb.spectral_vector(eta, ctx)
    in_set = set(ts)
    val = ctx.one
    for i in range(1, len(eta) + 1):
        if i in in_set:
            continue
        if i < tlast:
            tu = min(tt for tt in ts if tt > i)
            if eta[i - 1] > eta[tu - 1]:
                x = eb[tu - 1] / eb[i - 1]
            else:
                continue
        else:
            if eta[i - 1] > eta[t1 - 1] + 1:
                x = ctx.q * eb[t1 - 1] / eb[i - 1]
            else:
                continue
        val = val * (x - ctx.t) * (ctx.t * x - ctx.one) / (x - ctx.one) ** 2
    return val


def one_step_ratio(eta: Composition, lam: Composition,
                   ctx: ScalarContext = GENERIC):
    """Estar_eta(lam-bar) / Estar_lam(lam-bar) for |lam| = |eta| + 1:
    q^(-eta_{t1}) delta(eta,I) beta(eta,I) / (1 - t) when lam = c_I(eta) for
    a maximal I, zero otherwise."""
    if comb.modulus(lam) != comb.modulus(eta) + 1:
        raise AlgebraError("one_step_ratio requires a modulus gap of one")
    for index_set in comb.maximal_sets(eta):
        if comb.c_I_apply(eta, index_set) == lam:
            t1 = min(index_set)
            return (ctx.monomial(-eta[t1 - 1], 0)
                    * delta_factor(eta, index_set, ctx)
                    * beta_factor(eta, index_set, ctx)
                    / (ctx.one - ctx.t))
    return ctx.zero


def expand_eigenword(eta: Composition, k: int,
                     ctx: ScalarContext = GENERIC) -> dict:
    """Expansion of H_k ... H_{n-1} Phi H_1 ... H_{k-1} Estar_eta in the
    Estar basis: {label: coefficient}, zero coefficients dropped."""
    n = len(eta)
    if not 1 <= k <= n:
        raise AlgebraError(f"word index {k} out of range for n={n}")
    table = {comb.as_composition(eta): ctx.one}

    def apply_h(i, tab):
        out = {}
        for lab, coeff in tab.items():
            for lab2, c2 in act_H_basis(i, lab, ctx).items():
                s = out.get(lab2, ctx.zero) + coeff * c2
                if s:
                    out[lab2] = s
                else:
                    out.pop(lab2, None)
        return out

    for j in range(k - 1, 0, -1):
        table = apply_h(j, table)
    table = {comb.phi_shift(lab): coeff * ctx.monomial(-lab[0], 0)
             for lab, coeff in table.items()}
    for j in range(n - 1, k - 1, -1):
        table = apply_h(j, table)
    return table


def leftmost_frequency_mismatch(eta: Composition, nu: Composition) -> int:
    """1-based position of the leftmost entry of eta whose value occurs with
    different multiplicity in nu."""
    for i, x in enumerate(eta):
        if eta.count(x) != nu.count(x):
            return i + 1
    raise AlgebraError(f"{eta} and {nu} have identical content")


def recursion_position(eta: Composition, nu: Composition,
                       ctx: ScalarContext = GENERIC) -> int:
    """Position k driving the binomial recursion.

    Default is the leftmost frequency mismatch; the derivation additionally
    needs the spectral entries of eta and nu to differ at k (the prefactor
    divides by their ratio minus one), so when they coincide the leftmost
    spectral mismatch is used instead.
    """
    eb = comb.spectral_vector(eta, ctx)
    nb = comb.spectral_vector(nu, ctx)
    pos = leftmost_frequency_mismatch(eta, nu)
    if nb[pos - 1] != eb[pos - 1]:
        return pos
    for i in range(len(eta)):
        if nb[i] != eb[i]:
            return i + 1
    raise AlgebraError(f"{eta} and {nu} share their spectral point")


def binomial_direct(eta: Composition, nu: Composition,
                    ctx: ScalarContext = GENERIC):
    """The generalized binomial coefficient Estar_eta(nu-bar)/Estar_nu(nu-bar)."""
    return spectral_evaluate(eta, nu, ctx) / principal_value(nu, ctx)


def binomial_recursive(eta: Composition, nu: Composition,
                       ctx: ScalarContext = GENERIC, k: int | None = None):
    """The binomial coefficient through the layered recursion.

    A gap of one is the closed-form one-step ratio.  For larger gaps the
    value is a weighted sum over the labels nu' reached by the eigenoperator
    word at position k (defaulting to the leftmost frequency mismatch) that
    remain below nu, each weighted by
    (nu'-bar_k/eta-bar_k - 1)/(nu-bar_k/eta-bar_k - 1) times the one-step
    ratio into nu' times the recursive coefficient from nu' to nu.
    """
    eta = comb.as_composition(eta)
    nu = comb.as_composition(nu)
    gap = comb.modulus(nu) - comb.modulus(eta)
    if gap <= 0:
        raise AlgebraError("binomial_recursive requires |nu| > |eta|")
    if not comb.is_successor(eta, nu):
        return ctx.zero
    if gap == 1:
        return one_step_ratio(eta, nu, ctx)
    pos = k if k is not None else recursion_position(eta, nu, ctx)
    eb = comb.spectral_vector(eta, ctx)
    nb = comb.spectral_vector(nu, ctx)
    denom = nb[pos - 1] / eb[pos - 1] - ctx.one
    if not denom:
        raise AlgebraError(
            f"position k={pos} is unusable: the spectral entries of "
            f"{eta} and {nu} coincide there")
    total = ctx.zero
    for lab in expand_eigenword(eta, pos, ctx):
        if not comb.is_successor(lab, nu):
            continue
        lb = comb.spectral_vector(lab, ctx)
        weight = (lb[pos - 1] / eb[pos - 1] - ctx.one) / denom
        total = total + (weight * one_step_ratio(eta, lab, ctx)
                         * binomial_recursive(lab, nu, ctx))
    return total

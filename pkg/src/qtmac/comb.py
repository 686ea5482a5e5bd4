"""Composition combinatorics.

Compositions are plain tuples of nonnegative integers.  All public indices
(positions in compositions, entries of permutations, index sets I) are
1-based.  Permutations are tuples of images: sigma = (sigma(1),...,sigma(n)).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebra import GENERIC, AlgebraError, ScalarContext

Composition = tuple[int, ...]


def as_composition(parts) -> Composition:
    eta = tuple(int(x) for x in parts)
    if not eta:
        raise AlgebraError("compositions must have length >= 1")
    if any(x < 0 for x in eta):
        raise AlgebraError(f"composition parts must be nonnegative: {eta}")
    return eta


def modulus(eta: Composition) -> int:
    return sum(eta)


def comp_str(eta: Composition) -> str:
    return ",".join(str(x) for x in eta)


def parse_comp(s: str) -> Composition:
    try:
        return as_composition(s.split(","))
    except (ValueError, AlgebraError) as exc:
        raise AlgebraError(f"cannot parse composition {s!r}") from exc


def compositions(n: int, m: int):
    """All length-n compositions of modulus m, lexicographically."""
    if n == 1:
        yield (m,)
        return
    for first in range(m + 1):
        for rest in compositions(n - 1, m - first):
            yield (first,) + rest


def compositions_up_to(n: int, maxmod: int):
    for m in range(maxmod + 1):
        yield from compositions(n, m)


def partition_of(eta: Composition) -> Composition:
    """eta+: the weakly decreasing rearrangement."""
    return tuple(sorted(eta, reverse=True))


def is_partition(eta: Composition) -> bool:
    return all(eta[i] >= eta[i + 1] for i in range(len(eta) - 1))


# ---------------------------------------------------------------------------
# orderings
# ---------------------------------------------------------------------------

def dominance_lt(mu: Composition, eta: Composition) -> bool:
    """Strict dominance on equal-modulus compositions: every prefix sum of mu
    is <= the matching prefix sum of eta, and mu != eta."""
    if mu == eta:
        return False
    s_mu = s_eta = 0
    for a, b in zip(mu, eta):
        s_mu += a
        s_eta += b
        if s_mu > s_eta:
            return False
    return s_mu == s_eta


def prec(mu: Composition, eta: Composition) -> bool:
    """mu strictly below eta: rearranged partitions compared by dominance
    first, equal rearrangements broken by composition dominance.
    Compositions of strictly smaller modulus always compare below."""
    if len(mu) != len(eta):
        raise AlgebraError("prec compares compositions of equal length")
    if modulus(mu) != modulus(eta):
        return modulus(mu) < modulus(eta)
    mp, ep = partition_of(mu), partition_of(eta)
    if mp == ep:
        return dominance_lt(mu, eta)
    return dominance_lt(mp, ep)


# ---------------------------------------------------------------------------
# statistics and spectral data
# ---------------------------------------------------------------------------

def leg_colength_vector(eta: Composition) -> tuple[int, ...]:
    """l'(i) = #{j<i: eta_j >= eta_i} + #{j>i: eta_j > eta_i}."""
    n = len(eta)
    return tuple(
        sum(1 for j in range(i) if eta[j] >= eta[i])
        + sum(1 for j in range(i + 1, n) if eta[j] > eta[i])
        for i in range(n)
    )


def spectral_vector(eta: Composition, ctx: ScalarContext = GENERIC):
    """The evaluation point attached to eta: entry i is q^(eta_i) t^(-l'(i))."""
    lp = leg_colength_vector(eta)
    return tuple(ctx.monomial(eta[i], -lp[i]) for i in range(len(eta)))


def n_stat(lam: Composition) -> int:
    """sum_i (i-1) lam_i."""
    return sum(i * x for i, x in enumerate(lam))


@dataclass(frozen=True)
class HookTable:
    """Per-node arm/leg data of a composition diagram and the four products."""

    eta: Composition
    nodes: dict  # (i, j) 1-based -> (arm, arm_colength, leg, leg_colength)
    d: object
    d_prime: object
    e: object
    e_prime: object


def hook_products(eta: Composition, ctx: ScalarContext = GENERIC) -> HookTable:
    """Arm/leg statistics per node and the aggregate products d, d', e, e'.

    Node (i,j) of the diagram has arm eta_i - j, arm colength j - 1,
    leg #{k<i: j <= eta_k + 1 <= eta_i} + #{k>i: j <= eta_k <= eta_i},
    and leg colength equal to the row statistic l'(i).
    """
    n = len(eta)
    lp = leg_colength_vector(eta)
    nodes = {}
    d = ctx.one
    d_prime = ctx.one
    e = ctx.one
    e_prime = ctx.one
    for i in range(1, n + 1):
        for j in range(1, eta[i - 1] + 1):
            arm = eta[i - 1] - j
            arm_co = j - 1
            leg = sum(1 for k in range(1, i) if j <= eta[k - 1] + 1 <= eta[i - 1]) \
                + sum(1 for k in range(i + 1, n + 1) if j <= eta[k - 1] <= eta[i - 1])
            leg_co = lp[i - 1]
            nodes[(i, j)] = (arm, arm_co, leg, leg_co)
            d = d * (ctx.one - ctx.monomial(arm + 1, leg + 1))
            d_prime = d_prime * (ctx.one - ctx.monomial(arm + 1, leg))
            e = e * (ctx.one - ctx.monomial(arm_co + 1, n - leg_co))
            e_prime = e_prime * (ctx.one - ctx.monomial(arm_co + 1, n - 1 - leg_co))
    return HookTable(eta, nodes, d, d_prime, e, e_prime)


def hook_d_prime_inverted(eta: Composition, ctx: ScalarContext = GENERIC):
    """d' evaluated at reciprocal parameters, built directly."""
    n = len(eta)
    val = ctx.one
    for i in range(1, n + 1):
        for j in range(1, eta[i - 1] + 1):
            arm = eta[i - 1] - j
            leg = sum(1 for k in range(1, i) if j <= eta[k - 1] + 1 <= eta[i - 1]) \
                + sum(1 for k in range(i + 1, n + 1) if j <= eta[k - 1] <= eta[i - 1])
            val = val * (ctx.one - ctx.monomial(-(arm + 1), -leg))
    return val


# ---------------------------------------------------------------------------
# permutations
# ---------------------------------------------------------------------------

def perm_inverse(sigma: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(sigma)
    for i, v in enumerate(sigma, start=1):
        inv[v - 1] = i
    return tuple(inv)


def perm_compose(sigma: tuple[int, ...], rho: tuple[int, ...]) -> tuple[int, ...]:
    """(sigma o rho)(i) = sigma(rho(i))."""
    return tuple(sigma[r - 1] for r in rho)


def apply_perm(sigma: tuple[int, ...], eta: Composition) -> Composition:
    """(sigma eta)_j = eta_{sigma^{-1}(j)}."""
    inv = perm_inverse(sigma)
    return tuple(eta[inv[j] - 1] for j in range(len(eta)))


def sorting_permutation(eta: Composition) -> tuple[int, ...]:
    """The shortest permutation w with w^{-1}(eta) = eta+.

    Realized by a stable descending sort: w(j) is the position in eta of the
    j-th entry of eta+, equal entries keeping their left-to-right order.
    """
    order = sorted(range(len(eta)), key=lambda i: (-eta[i], i))
    return tuple(i + 1 for i in order)


# ---------------------------------------------------------------------------
# the successor order
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SuccessorWitness:
    """A permutation certifying that lam is a successor of eta."""

    sigma: tuple[int, ...]


def is_defining_permutation(eta: Composition, lam: Composition,
                            sigma: tuple[int, ...]) -> bool:
    for i in range(1, len(eta) + 1):
        j = sigma[i - 1]
        if i < j:
            if not eta[i - 1] < lam[j - 1]:
                return False
        else:
            if not eta[i - 1] <= lam[j - 1]:
                return False
    return True


def successor_test(eta: Composition, lam: Composition,
                   oracle: bool = False) -> SuccessorWitness | None:
    """Witness for eta <=' lam, or None.

    The fast path checks the single candidate w_lam o w_eta^{-1}; oracle mode
    searches all permutations instead (independent cross-check, n <= 7).
    """
    if len(eta) != len(lam):
        raise AlgebraError("successor_test requires equal lengths")
    if oracle:
        if len(eta) > 7:
            raise AlgebraError("oracle successor search is limited to n <= 7")
        for perm in itertools.permutations(range(1, len(eta) + 1)):
            if is_defining_permutation(eta, lam, perm):
                return SuccessorWitness(perm)
        return None
    sigma = perm_compose(sorting_permutation(lam),
                         perm_inverse(sorting_permutation(eta)))
    if is_defining_permutation(eta, lam, sigma):
        return SuccessorWitness(sigma)
    return None


def is_successor(eta: Composition, lam: Composition) -> bool:
    return successor_test(eta, lam) is not None


# ---------------------------------------------------------------------------
# minimal raises c_I and maximal index sets
# ---------------------------------------------------------------------------

def c_I_apply(eta: Composition, index_set) -> Composition:
    """Cycle the selected entries down one slot and raise the first by one.

    Position t_k receives eta_{t_{k+1}} (k < s), position t_s receives
    eta_{t_1} + 1, and positions outside I are untouched.
    """
    n = len(eta)
    ts = tuple(sorted(int(x) for x in index_set))
    if not ts or ts[0] < 1 or ts[-1] > n or len(set(ts)) != len(ts):
        raise AlgebraError(f"invalid index set {index_set} for n={n}")
    out = list(eta)
    s = len(ts)
    for k in range(s - 1):
        out[ts[k] - 1] = eta[ts[k + 1] - 1]
    out[ts[-1] - 1] = eta[ts[0] - 1] + 1
    return tuple(out)


def phi_shift(eta: Composition) -> Composition:
    """The raising map on labels: (eta_2,...,eta_n, eta_1 + 1)."""
    return eta[1:] + (eta[0] + 1,)


def swap_entries(eta: Composition, i: int) -> Composition:
    """s_i on compositions (1-based)."""
    le = list(eta)
    le[i - 1], le[i] = le[i], le[i - 1]
    return tuple(le)


def c_I_operator_word(eta: Composition, index_set) -> list[Composition]:
    """Intermediate compositions of the operator word realizing c_I.

    Applies s_{t_1 - 1},...,s_1, then the raising map, then for
    i = n,...,t_1 + 1 the switch s_{i-1} whenever i is outside I; returns
    every intermediate composition in order (the last equals c_I(eta)).
    """
    n = len(eta)
    ts = tuple(sorted(int(x) for x in index_set))
    if not ts or ts[0] < 1 or ts[-1] > n:
        raise AlgebraError(f"invalid index set {index_set} for n={n}")
    t1 = ts[0]
    steps = []
    cur = eta
    for j in range(t1 - 1, 0, -1):
        cur = swap_entries(cur, j)
        steps.append(cur)
    cur = phi_shift(cur)
    steps.append(cur)
    in_set = set(ts)
    for i in range(n, t1, -1):
        if i not in in_set:
            cur = swap_entries(cur, i - 1)
            steps.append(cur)
    return steps


def maximal_sets(eta: Composition) -> list[tuple[int, ...]]:
    """All index sets I maximal with respect to eta.

    I = {t_1 < ... < t_s} qualifies when no entry strictly between
    consecutive selected positions equals the next selected entry, and no
    entry after t_s equals eta_{t_1} + 1.
    """
    n = len(eta)
    out = []
    for mask in range(1, 1 << n):
        ts = [i + 1 for i in range(n) if mask >> i & 1]
        ok = True
        prev = 0
        for u, tu in enumerate(ts):
            for j in range(prev + 1, tu):
                if eta[j - 1] == eta[tu - 1]:
                    ok = False
                    break
            if not ok:
                break
            prev = tu
        if ok:
            for j in range(ts[-1] + 1, n + 1):
                if eta[j - 1] == eta[ts[0] - 1] + 1:
                    ok = False
                    break
        if ok:
            out.append(tuple(ts))
    return out


def successors_one_step(eta: Composition) -> list[Composition]:
    """All lam with |lam| = |eta| + 1 and eta <=' lam, via maximal sets."""
    return sorted({c_I_apply(eta, I) for I in maximal_sets(eta)})


def successors_layered(eta: Composition, k: int) -> list[Composition]:
    """All lam with |lam| = |eta| + k and eta <=' lam (k-fold one-step image)."""
    if k < 1:
        raise AlgebraError("layer index k must be >= 1")
    layer = {eta}
    for _ in range(k):
        layer = {lam for mu in layer for lam in successors_one_step(mu)}
    return sorted(layer)


def chi_r(eta: Composition, r: int) -> Composition:
    """Add one exactly to the entries whose leg colength is below r."""
    n = len(eta)
    if not 1 <= r <= n:
        raise AlgebraError(f"chi index r={r} out of range for n={n}")
    lp = leg_colength_vector(eta)
    return tuple(eta[i] + (1 if lp[i] < r else 0) for i in range(n))


def add_box_everywhere(eta: Composition, k: int = 1) -> Composition:
    """eta + (k^n)."""
    return tuple(x + k for x in eta)

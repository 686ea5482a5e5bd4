"""Pieri-type branching coefficients: all four routes and their contracts."""

import pytest

from qtmac.algebra import GENERIC, AlgebraError
from qtmac import comb, istar, pieri

G = GENERIC
Q, T = G.q, G.t


# ---------------------------------------------------------------------------
# interpolation expansion
# ---------------------------------------------------------------------------

def test_interpolation_expansion_layer1_example():
    table = pieri.interpolation_expansion((0, 0), 1)
    assert table.layers[0] == {
        (1, 0): G.one,
        (0, 1): T * (Q - 1) / (Q * T - 1),
    }
    assert pieri.interpolation_residual(table).is_zero


def test_interpolation_expansion_r2_top_layer():
    table = pieri.interpolation_expansion((0, 0), 2)
    assert table.layers[1][(1, 1)] == G.one
    assert pieri.interpolation_residual(table).is_zero


def test_interpolation_expansion_example_01():
    table = pieri.interpolation_expansion((0, 1), 1)
    assert table.layers[0] == {
        (0, 2): G.one,
        (1, 1): (Q - 1) / (Q * T - 1),
    }


def test_interpolation_expansion_keys_are_successors():
    table = pieri.interpolation_expansion((1, 0), 2)
    for i, layer in enumerate(table.layers, start=1):
        for lam in layer:
            assert comb.modulus(lam) == 1 + i
            assert comb.is_successor((1, 0), lam)


def test_interpolation_expansion_rejects_bad_r():
    with pytest.raises(AlgebraError):
        pieri.interpolation_expansion((0, 0), 3)


# ---------------------------------------------------------------------------
# homogeneous table
# ---------------------------------------------------------------------------

def test_pieri_homogeneous_examples():
    assert pieri.pieri_homogeneous((0, 0), 1) == {
        (1, 0): G.one,
        (0, 1): T * (Q - 1) / (Q * T - 1),
    }
    table = pieri.pieri_homogeneous((1, 0), 1)
    assert table[(2, 0)] == G.one
    assert pieri.pieri_homogeneous((1, 2), 2) == {(2, 3): G.one}


def test_pieri_homogeneous_residual_is_zero():
    for eta in [(0, 0), (1, 0), (0, 1)]:
        for r in (1, 2):
            table = pieri.pieri_homogeneous(eta, r)
            assert pieri.homogeneous_residual(eta, r, table).is_zero, (eta, r)


def test_top_layer_supports_the_ceiling_filter():
    # layer r keys additionally satisfy lam <=' eta + (1^n)
    eta = (1, 0)
    table = pieri.interpolation_expansion(eta, 2)
    ceiling = comb.add_box_everywhere(eta, 1)
    homog = pieri.pieri_homogeneous(eta, 2)
    for lam, c in table.layers[1].items():
        if comb.is_successor(lam, ceiling):
            assert homog[lam] == c
        else:
            assert lam not in homog
            assert not c  # the unfiltered coefficient is already zero


def test_unity_coefficient():
    for eta in [(0, 0), (1, 0), (0, 1, 2), (2, 1)]:
        n = len(eta)
        for r in range(1, n + 1):
            table = pieri.pieri_homogeneous(eta, r)
            assert table[comb.chi_r(eta, r)] == G.one, (eta, r)


# ---------------------------------------------------------------------------
# closed forms at r = 1
# ---------------------------------------------------------------------------

def test_pieri_r1_closed_hand_values():
    table = pieri.pieri_r1_closed((0, 0))
    assert table[(0, 1)] == T * (Q - 1) / (Q * T - 1)
    assert table[(1, 0)] == G.one
    assert pieri.pieri_r1_closed((0, 1))[(1, 1)] == (Q - 1) / (Q * T - 1)


def test_pieri_r1_closed_building_blocks():
    # eta=(0,0), lam=(0,1): gap q-1, delta = t(t-1)/(1-qt), beta = 1
    eta = (0, 0)
    eb = comb.spectral_vector(eta)
    lb = comb.spectral_vector((0, 1))
    assert sum(lb, G.zero) - sum(eb, G.zero) == Q - 1
    assert istar.delta_factor(eta, (1, 2)) == T * (T - 1) / (1 - Q * T)
    assert istar.beta_factor(eta, (1, 2)) == G.one
    assert istar.delta_factor(eta, (1,)) == (T - 1) / (1 - Q)
    assert istar.beta_factor(eta, (1,)) == G.one


def test_pieri_r1_product_form_hand_values():
    forms = {pf.lam: pf for pf in pieri.pieri_r1_product_form((0, 0))}
    pf10 = forms[(1, 0)]
    assert pf10.aI * pf10.bI == -(T - 1)
    assert pf10.coefficient == G.one
    pf01 = forms[(0, 1)]
    assert pf01.coefficient == T * (Q - 1) / (Q * T - 1)
    forms = {pf.lam: pf for pf in pieri.pieri_r1_product_form((0, 1))}
    assert forms[(1, 1)].coefficient == (Q - 1) / (Q * T - 1)


def test_product_form_g_sets_partition_positions():
    for pf in pieri.pieri_r1_product_form((1, 0, 2)):
        n = 3
        assert sorted(pf.g0 + pf.g1) == [1, 2, 3]
        assert len(pf.g1) == 1  # exactly one raised box at r = 1


# ---------------------------------------------------------------------------
# duality
# ---------------------------------------------------------------------------

def test_duality_hand_verified_instance():
    # n = 2: the dual route reproduces t(q-1)/(qt-1), with unit norm ratio
    assert pieri.duality_transfer((0, 0), (0, 1), 1) == \
        T * (Q - 1) / (Q * T - 1)
    assert pieri.duality_transfer((0, 0), (1, 0), 1) == G.one


def test_duality_vanishes_off_successors():
    assert comb.successor_test((0, 2), (3, 0)) is None
    assert pieri.duality_transfer((0, 2), (3, 0), 1) == G.zero


def test_duality_matches_direct():
    for eta in comb.compositions_up_to(3, 2):
        if len(eta) < 2:
            continue
        n = len(eta)
        for r in range(1, n):
            direct = pieri.pieri_homogeneous(eta, r)
            for lam in comb.successors_layered(eta, r):
                assert pieri.duality_transfer(eta, lam, r) == \
                    direct.get(lam, G.zero), (eta, lam, r)


def test_duality_rejects_bad_inputs():
    with pytest.raises(AlgebraError):
        pieri.duality_transfer((0, 0), (1, 1), 1)  # modulus gap 2 with r=1
    with pytest.raises(AlgebraError):
        pieri.duality_transfer((0, 0), (1, 1), 2)  # r = n


# ---------------------------------------------------------------------------
# brute-force oracle
# ---------------------------------------------------------------------------

def test_product_expand_oracle_examples():
    assert pieri.product_expand_oracle((0, 0), 1) == {
        (1, 0): G.one,
        (0, 1): T * (Q - 1) / (Q * T - 1),
    }
    assert pieri.product_expand_oracle((0, 0), 2) == {(1, 1): G.one}
    assert pieri.product_expand_oracle((0, 1), 1) == {
        (0, 2): G.one,
        (1, 1): (Q - 1) / (Q * T - 1),
    }


def test_oracle_support_law():
    for eta in [(0, 0), (1, 0), (0, 1, 0)]:
        n = len(eta)
        for r in range(1, n + 1):
            ceiling = comb.add_box_everywhere(eta, 1)
            for lam, c in pieri.product_expand_oracle(eta, r).items():
                assert comb.is_successor(eta, lam), (eta, r, lam)
                assert comb.is_successor(lam, ceiling), (eta, r, lam)
                witness = comb.successor_test(eta, lam)
                sigma = witness.sigma
                for i in range(1, n + 1):
                    assert lam[sigma[i - 1] - 1] - eta[i - 1] in (0, 1)


def test_four_way_agreement_small():
    for eta in [(0, 0), (1, 0), (0, 1), (1, 1), (0, 0, 0), (1, 0, 2)]:
        oracle = pieri.product_expand_oracle(eta, 1)
        assert pieri.pieri_r1_closed(eta) == oracle, eta
        assert pieri.pieri_homogeneous(eta, 1) == oracle, eta
        product = {pf.lam: pf.coefficient
                   for pf in pieri.pieri_r1_product_form(eta) if pf.coefficient}
        assert product == oracle, eta


def test_general_r_agreement_small():
    for eta in [(0, 0), (1, 0), (0, 1, 1)]:
        n = len(eta)
        for r in range(1, n + 1):
            assert pieri.pieri_homogeneous(eta, r) == \
                pieri.product_expand_oracle(eta, r), (eta, r)


def test_workers_give_identical_tables():
    base = pieri.pieri_homogeneous((1, 0, 1), 2, workers=1)
    threaded = pieri.pieri_homogeneous((1, 0, 1), 2, workers=4)
    assert base == threaded

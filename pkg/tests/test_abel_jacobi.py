import random
from fractions import Fraction

import pytest

from jacstab.abel_jacobi import (
    AJDatum,
    VinePhiTable,
    aj_multidegree,
    certify_unstable_on_vine,
    classify_extension,
    construct_prop_phi,
    sigma_extends,
    vine_bidegree,
)
from jacstab.corpus import random_stable_graph
from jacstab.errors import (
    IncompleteTableError,
    JacstabError,
    TrivialTwistError,
)
from jacstab.graph import DualGraph, enumerate_vines, make_vine
from jacstab.stability import is_nondegenerate, is_small_perturbation


def genus1_unmarked_vine():
    # genus-1 unmarked component joined to a marked rational one at 2 nodes
    return DualGraph.build([(0, 1, ()), (1, 0, (1,))], [(0, 1), (0, 1)], 1)


class TestAJMultidegree:
    @pytest.mark.parametrize("k", [-1, 1, 2])
    def test_dualizing_power_bidegree(self, k):
        g = genus1_unmarked_vine()
        aj = AJDatum(k, (2 * k,), g.g, g.n)
        assert aj_multidegree(g, aj) == {0: -2 * k, 1: 2 * k}

    def test_two_marking_bidegree(self):
        # a_i + a_j = t on the rational side carrying p_i, p_j gives (t, -t)
        g = DualGraph.build([(0, 0, (1, 2)), (1, 0, (3,))],
                            [(0, 1), (0, 1)], 3)
        aj = AJDatum(0, (1, 1, -2), g.g, g.n)
        assert aj_multidegree(g, aj) == {0: 2, 1: -2}

    def test_trivial_twist_is_zero(self):
        g = genus1_unmarked_vine()
        aj = AJDatum(0, (0,), g.g, g.n)
        assert aj.is_trivial
        assert aj_multidegree(g, aj) == {0: 0, 1: 0}

    def test_sums_to_zero_on_random_graphs(self):
        rng = random.Random(11)
        for _ in range(100):
            graph = random_stable_graph(rng)
            k = rng.randint(-2, 2)
            a = [rng.randint(-2, 2) for _ in range(graph.n)]
            a[-1] -= k * (2 - 2 * graph.g) + sum(a)
            aj = AJDatum(k, tuple(a), graph.g, graph.n)
            assert sum(aj_multidegree(graph, aj).values()) == 0

    def test_degree_constraint_enforced(self):
        with pytest.raises(JacstabError):
            AJDatum(0, (1,), 2, 1).check()

    def test_length_mismatch_rejected(self):
        with pytest.raises(JacstabError):
            AJDatum(0, (1, -1), 2, 1).check()

    def test_context_mismatch_rejected(self):
        g = genus1_unmarked_vine()
        with pytest.raises(JacstabError):
            aj_multidegree(g, AJDatum(0, (0, 0), 3, 2))


class TestVineBidegree:
    def test_matches_graph_multidegree(self):
        for vine in enumerate_vines(3, 2, 1):
            aj = AJDatum(0, (1, -1), 3, 2)
            graph = vine.to_graph()
            assert vine_bidegree(vine, aj) == aj_multidegree(graph, aj)[0]


class TestConstructPropPhi:
    def test_entries_shape(self):
        table = construct_prop_phi(3, 2, 1, 2)
        for vine, x in table.entries.items():
            if vine.e == 1:
                assert x == 0
                continue
            base = (Fraction(1, 2) * (1 in vine.S)
                    - Fraction(1, 2) * (2 in vine.S))
            eps = x - base
            assert 0 < abs(eps) < Fraction(1, 100)

    def test_postconditions(self):
        table = construct_prop_phi(2, 2, 2, 1, seed=5)
        aj = AJDatum(0, (-1, 1), 2, 2)
        from jacstab.atlas import vine_phi
        for vine, x in table.entries.items():
            if vine.e == 1:
                continue
            graph = vine.to_graph()
            phi = vine_phi(vine, x)
            assert is_nondegenerate(graph, phi)
            assert is_small_perturbation(graph, phi)
        assert sigma_extends(2, 2, aj, table).extends

    def test_equal_markings_rejected(self):
        with pytest.raises(JacstabError):
            construct_prop_phi(2, 2, 1, 1)

    def test_marking_out_of_range(self):
        with pytest.raises(JacstabError):
            construct_prop_phi(2, 2, 1, 3)


class TestSigmaExtends:
    def test_incomplete_table(self):
        table = VinePhiTable(3, 2, {})
        with pytest.raises(IncompleteTableError):
            sigma_extends(3, 2, AJDatum(0, (1, -1), 3, 2), table)

    def test_unit_difference_extends(self):
        table = construct_prop_phi(3, 2, 1, 2)
        assert sigma_extends(3, 2, AJDatum(0, (1, -1), 3, 2), table).extends

    def test_witness_is_first_canonical_failure(self):
        # doubled twist on one marking: no table stabilizes it
        aj = AJDatum(1, (2,), 2, 1)
        entries = {v: Fraction(0) if v.e == 1 else Fraction(1, 10)
                   for v in enumerate_vines(2, 1, 1)}
        result = sigma_extends(2, 1, aj, VinePhiTable(2, 1, entries))
        assert not result.extends
        assert result.witness == make_vine(0, 1, 2, (1,), 1)
        assert result.witness_bidegree == 2


class TestCertify:
    def test_stable_bidegree_has_no_certificate(self):
        vine = make_vine(0, 1, 2, (1,), 1)
        assert certify_unstable_on_vine(vine, 0) is None

    def test_unstable_bidegree_certified(self):
        vine = make_vine(0, 1, 2, (1,), 1)
        cert = certify_unstable_on_vine(vine, 2)
        assert cert is not None
        # e chambers inside the small-perturbation interval
        assert len(cert.chambers) == vine.e
        for lo, hi, degs in cert.chambers:
            assert 2 not in degs
            assert len(degs) == vine.e


class TestClassifyExtension:
    def test_unit_difference_yes(self):
        result = classify_extension(3, 2, AJDatum(0, (1, -1), 3, 2))
        assert result.extends
        assert result.witness is None
        check = sigma_extends(3, 2, AJDatum(0, (1, -1), 3, 2),
                              result.phi_table)
        assert check.extends

    def test_double_twist_no(self):
        result = classify_extension(2, 4, AJDatum(0, (1, 1, -1, -1), 2, 4))
        assert not result.extends
        assert result.witness == make_vine(0, 1, 2, (1, 2), 4)
        assert result.witness_bidegree == 2
        assert result.certificate is not None

    def test_dualizing_twist_no(self):
        result = classify_extension(2, 1, AJDatum(1, (2,), 2, 1))
        assert not result.extends
        assert result.witness == make_vine(0, 1, 2, (1,), 1)
        assert result.witness_bidegree == 2

    def test_trivial_twist_raises(self):
        with pytest.raises(TrivialTwistError):
            classify_extension(1, 1, AJDatum(1, (0,), 1, 1))
        with pytest.raises(TrivialTwistError):
            classify_extension(2, 2, AJDatum(0, (0, 0), 2, 2))

    def test_report_shape(self):
        result = classify_extension(2, 4, AJDatum(0, (1, 1, -1, -1), 2, 4))
        report = result.to_report()
        assert report["extends"] is False
        assert report["witness_vine"]["bidegree"] == [2, -2]
        assert report["certificate"]["chambers"]
        assert "note" in report


def test_phi_table_round_trip():
    table = construct_prop_phi(2, 2, 1, 2, seed=3)
    back = VinePhiTable.from_dict(table.to_dict())
    assert back.entries == table.entries
    assert back.to_dict() == table.to_dict()

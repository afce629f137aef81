from fractions import Fraction

import pytest

from girthspan import constructions as cons
from girthspan.errors import InputError, ResourceError
from girthspan.labelcover import Labeling, value
from girthspan.oracles import lc_value_exact
from girthspan.rng import Stream

from conftest import random_tiny_lc, xor_odd_4cycle


# --- gen_3sat5 -----------------------------------------------------------------

def test_gen_3sat5_smallest_instance_is_forced():
    f = cons.gen_3sat5(3, seed=11)
    assert f.clause_count == 5
    for clause in f.clauses:
        assert [v for v, _ in clause] == [0, 1, 2]


def test_gen_3sat5_planted_all_true():
    planted = (True,) * 6
    f = cons.gen_3sat5(6, seed=4, planted=planted)
    for c in range(f.clause_count):
        assert f.clause_satisfied(c, planted)
        assert any(positive for _, positive in f.clauses[c])


def test_gen_3sat5_deterministic():
    assert cons.gen_3sat5(6, seed=1) == cons.gen_3sat5(6, seed=1)
    assert cons.gen_3sat5(6, seed=1) != cons.gen_3sat5(6, seed=2)


def test_gen_3sat5_input_errors():
    with pytest.raises(InputError):
        cons.gen_3sat5(4, seed=0)
    with pytest.raises(InputError):
        cons.gen_3sat5(0, seed=0)
    with pytest.raises(InputError):
        cons.gen_3sat5(6, seed=0, planted=(True,) * 5)


def test_gen_3sat5_converges_across_sizes_and_seeds():
    for n in (3, 6, 9, 12, 30):
        for seed in range(3):
            f = cons.gen_3sat5(n, seed=seed)
            assert f.var_count == n   # constructor enforces 5-regularity


def test_clause_satisfying_bits():
    clause = ((0, True), (1, True), (2, True))
    rows = cons.clause_satisfying_bits(clause)
    assert len(rows) == 7
    assert (0, 0, 0) not in rows
    clause2 = ((0, False), (1, True), (2, False))
    rows2 = cons.clause_satisfying_bits(clause2)
    assert (1, 0, 1) not in rows2 and len(rows2) == 7


# --- lc_from_3sat5 -------------------------------------------------------------

def test_lc_from_3sat5_shape():
    f = cons.gen_3sat5(3, seed=7)
    lc = cons.lc_from_3sat5(f)
    assert (lc.a_count, lc.b_count) == (5, 3)
    assert (lc.sigma_a, lc.sigma_b) == (7, 2)
    assert lc.edge_count == 15
    assert all(len(lc.relation(e)) == 7 for e in range(lc.edge_count))
    assert set(lc.degrees_a().tolist()) == {3}
    assert set(lc.degrees_b().tolist()) == {5}


def test_lc_from_3sat5_satisfying_assignment_lifts_to_value_one():
    planted = (False, True, True, False, True, False)
    f = cons.gen_3sat5(6, seed=9, planted=planted)
    lc = cons.lc_from_3sat5(f)
    lab = cons.labeling_from_assignment(f, planted)
    assert value(lc, lab) == 1


def test_labeling_from_assignment_rejects_falsifying():
    f = cons.gen_3sat5(6, seed=9, planted=(True,) * 6)
    clause = f.clauses[0]
    bad = [not positive for _, positive in clause]
    assignment = [True] * 6
    for (v, _), b in zip(clause, bad):
        assignment[v] = b
    with pytest.raises(InputError):
        cons.labeling_from_assignment(f, assignment)


# --- regularize ----------------------------------------------------------------

def test_regularize_sizes_and_regularity():
    lc = cons.lc_from_3sat5(cons.gen_3sat5(3, seed=1))
    reg = cons.regularize(lc)
    assert reg.a_count == reg.b_count == 15
    assert reg.edge_count == 225
    assert set(reg.degrees_a().tolist()) == {15}
    assert set(reg.degrees_b().tolist()) == {15}


def test_regularize_preserves_value_one():
    planted = (True, False, True)
    f = cons.gen_3sat5(3, seed=2, planted=planted)
    lc = cons.lc_from_3sat5(f)
    lab = cons.labeling_from_assignment(f, planted)
    reg = cons.regularize(lc)
    lifted = cons.lift_labeling(lc, lab, "regularize")
    assert value(reg, lifted) == 1


def test_regularize_preserves_optimum_on_tiny_instances():
    stream = Stream(31)
    for _ in range(6):
        lc = random_tiny_lc(stream, 2 + stream.randbelow(2), 2, 2, 2)
        opt, _ = lc_value_exact(lc)
        reg = cons.regularize(lc, require_sat5_shape=False)
        opt_reg, _ = lc_value_exact(reg)
        assert opt_reg == opt


def test_regularize_shape_precondition():
    lc = xor_odd_4cycle()
    with pytest.raises(InputError):
        cons.regularize(lc)
    reg = cons.regularize(lc, require_sat5_shape=False)
    assert reg.a_count == 6 and reg.b_count == 10
    assert reg.edge_count == 15 * lc.edge_count


# --- parallel repetition ---------------------------------------------------------

def test_parrep_sizes_on_regularized_instance():
    reg = cons.regularize(cons.lc_from_3sat5(cons.gen_3sat5(3, seed=1)))
    rep = cons.parallel_repetition(reg, 2)
    assert rep.a_count == rep.b_count == 225
    assert (rep.sigma_a, rep.sigma_b) == (49, 4)
    assert rep.edge_count == 225 ** 2
    assert set(rep.degrees_a().tolist()) == {225}
    assert set(rep.degrees_b().tolist()) == {225}


def test_parrep_ell_one_is_identity(xor_lc):
    assert cons.parallel_repetition(xor_lc, 1) == xor_lc


def test_parrep_budget_error():
    reg = cons.regularize(cons.lc_from_3sat5(cons.gen_3sat5(3, seed=1)))
    with pytest.raises(ResourceError):
        cons.parallel_repetition(reg, 4, max_superedges=10 ** 6)


def test_parrep_relation_is_coordinatewise(xor_lc):
    rep = cons.parallel_repetition(xor_lc, 2)
    # edge ((0,0),(0,0)) pairs with tuple symbols: both coordinates must satisfy
    ea, eb, _ = rep.edge_arrays()
    e = next(i for i in range(rep.edge_count)
             if ea[i] == 0 and eb[i] == 0)  # a-tuple (0,0), b-tuple (0,0): eq x eq
    rel = rep.relation(e)
    expected = {(a1 * 2 + a2, b1 * 2 + b2)
                for a1, b1 in [(0, 0), (1, 1)] for a2, b2 in [(0, 0), (1, 1)]}
    assert set(rel.pairs) == expected


def test_parrep_sandwich_on_tiny_instance(xor_lc):
    base_opt, _ = lc_value_exact(xor_lc)
    rep = cons.parallel_repetition(xor_lc, 2)
    rep_opt, _ = lc_value_exact(rep)
    assert base_opt ** 2 <= rep_opt <= base_opt
    assert base_opt == Fraction(3, 4)


# --- lift_labeling ---------------------------------------------------------------

def test_lift_value_one_through_repetition():
    planted = (True,) * 3
    f = cons.gen_3sat5(3, seed=5, planted=planted)
    lc = cons.lc_from_3sat5(f)
    lab = cons.labeling_from_assignment(f, planted)
    rep = cons.parallel_repetition(lc, 2, max_superedges=10 ** 6)
    lifted = cons.lift_labeling(lc, lab, "repetition", ell=2)
    assert value(rep, lifted) == 1


def test_lift_value_is_squared_for_fixed_labeling(xor_lc):
    lab = Labeling((0, 0), (0, 0))
    assert value(xor_lc, lab) == Fraction(3, 4)
    rep = cons.parallel_repetition(xor_lc, 2)
    lifted = cons.lift_labeling(xor_lc, lab, "repetition", ell=2)
    assert value(rep, lifted) == Fraction(9, 16)


def test_lift_shape_and_stage_errors(xor_lc):
    lab = Labeling((0, 0), (0, 0))
    with pytest.raises(InputError):
        cons.lift_labeling(xor_lc, Labeling((0,), (0, 0)), "regularize")
    with pytest.raises(InputError):
        cons.lift_labeling(xor_lc, lab, "repetition")
    with pytest.raises(InputError):
        cons.lift_labeling(xor_lc, lab, "unknown")


# --- formula text format ----------------------------------------------------------

def test_formula_round_trip():
    f = cons.gen_3sat5(6, seed=1, planted=(True, False) * 3)
    text = cons.write_formula_text(f, seed=1, planted=(True, False) * 3)
    assert text.startswith("c 3sat5 seed=1 planted=101010\n")
    assert cons.parse_formula_text(text) == f


def test_formula_parse_rejections():
    with pytest.raises(InputError):
        cons.parse_formula_text("p cnf 3 1\n1 2 0\n")
    with pytest.raises(InputError):
        cons.parse_formula_text("1 2 3 0\n")

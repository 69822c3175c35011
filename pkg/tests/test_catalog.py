import json
from fractions import Fraction as F

import pytest

from borderrank.arith import LaurentPoly
from borderrank.catalog import CatalogError, curated_errata, entry_families, entry_ids, load_entry, load_entry_with_report
from borderrank.catalog.expr import ExprError, parse_factor, parse_scalar
from borderrank.catalog.model import (
    ErrataEdit,
    ErrataOverlay,
    RankOneCurve,
    BorderRankAlgorithm,
    algorithm_to_dict,
    apply_errata,
    expand_sum,
    generic_term_rank,
    load_algorithm,
    save_algorithm,
)
from borderrank.tensor import TensorSpace, bclrs_tensor, mat_mul_tensor
from borderrank.verify import residual_by_power, verify_border_rank

t = LaurentPoly.t()


def test_catalog_lists_all_entries():
    assert {"bclr", "as3", "m422", "smirnov333", "bclrs4", "bclrs4-p8", "bclrs4-p8-t0"} <= set(entry_ids())


@pytest.mark.parametrize(
    "entry, r, h, target",
    [("bclr", 5, 1, "bclrs(2)"), ("as3", 8, 2, "bclrs(3)"), ("smirnov333", 20, 6, "matmul(3,3,3)"), ("m422", 13, 2, "matmul(4,2,2)")],
)
def test_entry_shapes(entry, r, h, target):
    alg = load_entry(entry)
    assert (alg.r, alg.order, alg.target) == (r, h, target)


def test_smirnov_prefactors_folded_into_weights():
    alg = load_entry("smirnov333")
    assert min(w.valuation() for w in alg.weights) == 0
    assert any("t^6" in n for n in alg.notes)


def test_unknown_entry():
    with pytest.raises(CatalogError, match="unknown catalog entry"):
        load_entry("nope")


def test_expand_bclr():
    coeffs = expand_sum(load_entry("bclr"))
    assert 0 not in coeffs
    assert coeffs[1] == bclrs_tensor(2)


def test_expand_as3():
    coeffs = expand_sum(load_entry("as3"))
    assert 0 not in coeffs and 1 not in coeffs
    assert coeffs[2] == bclrs_tensor(3)


def _one_term_alg(curve, space, copies=1):
    return BorderRankAlgorithm(space, (curve,) * copies, (LaurentPoly.const(1),) * copies, 0)


def test_constant_curve_only_order_zero():
    sp = TensorSpace.plain(2, 2, 2)
    one = LaurentPoly.const(1)
    alg = _one_term_alg(RankOneCurve({0: one}, {1: one}, {0: one, 1: one}), sp)
    assert list(expand_sum(alg)) == [0]


def test_generic_rank():
    assert generic_term_rank(load_entry("bclr")) == 5
    assert generic_term_rank(load_entry("as3")) == 8
    sp = TensorSpace.plain(2, 2, 2)
    one = LaurentPoly.const(1)
    curve = RankOneCurve({0: one, 1: t}, {1: one}, {0: one})
    assert generic_term_rank(_one_term_alg(curve, sp, copies=2)) == 1


def test_document_roundtrip():
    for entry in ("bclr", "as3", "m422"):
        alg = load_entry(entry)
        again = load_algorithm(save_algorithm(alg))
        assert again == alg
        assert algorithm_to_dict(again) == algorithm_to_dict(alg)


def _doc(**changes):
    doc = json.loads(save_algorithm(load_entry("bclr")))
    doc.update(changes)
    return doc


def test_malformed_rational_reports_location():
    doc = _doc()
    doc["terms"][1]["b"] = "3//4 y^2_2"
    with pytest.raises(CatalogError, match=r"terms\[1\]"):
        load_algorithm(json.dumps(doc))


def test_unknown_label_reports_location():
    doc = _doc()
    doc["terms"][0]["c"] = "z^7_7"
    with pytest.raises(CatalogError, match=r"terms\[0\]"):
        load_algorithm(json.dumps(doc))


def test_dimension_mismatch():
    doc = _doc(space={"dims": [3, 4], "matmul": [2, 2, 2]})
    with pytest.raises(CatalogError, match="space"):
        load_algorithm(json.dumps(doc))


def test_expression_parser():
    sp = bclrs_tensor(2).space
    pf = parse_factor("-(x^1_2 - t x^2_2)", sp, "A")
    assert pf.vector[sp.parse_label("x^1_2")[1]] == LaurentPoly.const(-1)
    assert pf.vector[sp.parse_label("x^2_2")[1]] == t
    assert parse_scalar("t^-6 * 3/2") == LaurentPoly.monomial(-6, F(3, 2))
    with pytest.raises(ExprError):
        parse_factor("x^1_2 +", sp, "A")


def test_empty_overlay_is_identity():
    alg = load_entry("bclr", errata=None)
    same, rep = apply_errata(alg, ErrataOverlay("bclr"))
    assert same == alg and rep.lines() == []


def test_edit_then_inverse_is_identity():
    alg = load_entry("as3", errata=None)
    edit = ErrataEdit(4, "b", "y^1_1", 1, F(5), old=F(-1), why="probe")
    ov = ErrataOverlay("as3", (edit,))
    changed, _ = apply_errata(alg, ov)
    assert changed != alg
    back, _ = apply_errata(changed, ov.inverse())
    assert back == alg


def test_bad_slot_address():
    alg = load_entry("bclr", errata=None)
    with pytest.raises(CatalogError):
        apply_errata(alg, ErrataOverlay("bclr", (ErrataEdit(9, "a", "x^1_2", 0, F(1)),)))
    with pytest.raises(CatalogError):
        apply_errata(alg, ErrataOverlay("bclr", (ErrataEdit(1, "a", "y^1_2", 0, F(1)),)))


def test_curated_overlays_record_old_values():
    for entry in entry_ids():
        for e in curated_errata(entry).edits:
            assert e.old is not None and e.why


def test_errata_report_lines():
    _, rep = load_entry_with_report("bclr")
    assert rep.lines() == ["p2.c[z^2_1] t^1: 1 -> -1  (" + curated_errata("bclr").edits[0].why + ")"]


def _total(alg):
    return sum(T.nnz for T in residual_by_power(alg).values())


def test_reading_of_unreadable_token_shrinks_residual():
    # the other curated fixes applied, with and without the y^2_1 reading of p3
    for entry in ("bclrs4-p8-t0",):
        cur = curated_errata(entry)
        keep = tuple(e for e in cur.edits if not (e.term == 3 and e.coord == "y^2_1"))
        assert len(keep) == len(cur.edits) - 1
        without = load_entry(entry, errata=ErrataOverlay(entry, keep))
        with_it = load_entry(entry)
        assert _total(with_it) < _total(without)
    assert verify_border_rank(load_entry("bclrs4-p8-t0")).passed


def test_families_recorded():
    fams = entry_families("as3")
    assert set(fams) == {"conic", "line-family", "sub-segre"}
    assert set(entry_families("bclr")) == {"L12", "L21", "Lalpha"}


def test_target_space_mismatch():
    alg = load_entry("bclr")
    bad = BorderRankAlgorithm(alg.space, alg.terms, alg.weights, 1, target="matmul(2,2,2)")
    with pytest.raises(CatalogError):
        bad.target_value()
    assert mat_mul_tensor(2, 2, 2).space != alg.space

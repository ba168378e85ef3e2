"""Family validation, predictions, constructions, and the catalog."""

import numpy as np
import pytest

from levelalg import apolarity, families
from levelalg.families import (BERNSTEIN_H, FamilyError, existence_catalog,
                               extend_codim, f2_threshold, g3_socle_shift,
                               min_sufficient_s, predicted_h, realize_recipe,
                               require_valid, special_construction,
                               theorem_min_s, validate, validate_json,
                               verify_drop)


class TestThresholds:
    def test_f2_threshold(self):
        assert f2_threshold(21) == 36
        # defining property: i = M is admissible, i = M - 1 is not
        for a in (7, 9, 21, 101, 205):
            m = f2_threshold(a)
            assert validate("F2", a=a, i=m, s=10 ** 6).violations[0].startswith("s =")
            assert any(v.startswith("F2 requires i >=")
                       for v in validate("F2", a=a, i=m - 1, s=1).violations)

    def test_g3_socle_shift(self):
        # largest m with C(m+1,2) < ab
        assert g3_socle_shift(4, 4) == 5
        assert g3_socle_shift(2, 3) == 2
        for a, b in ((2, 5), (3, 7), (4, 9)):
            m = g3_socle_shift(a, b)
            assert m * (m + 1) // 2 < a * b <= (m + 1) * (m + 2) // 2


class TestValidation:
    def test_golden_instances_valid(self):
        golden = [("F1", dict(a=21, i=42, s=4)),
                  ("F2", dict(a=21, i=36, s=14)),
                  ("G1", dict(a=3, b=4, i=13, s=2)),
                  ("G2", dict(a=4, b=6, i=14, s=2)),
                  ("G3", dict(a=4, b=4, i=8, s=7)),
                  ("H1", dict(a=2, b=2, c=3, i=12, s=2))]
        for fam, kw in golden:
            res = validate(fam, **kw)
            assert res.valid, (fam, res.violations)
            assert res.params.t == kw["s"] + (2 if fam == "F2" else 1)

    def test_derived_shape(self):
        p = require_valid("F1", a=21, i=42, s=4)
        assert (p.r, p.j, p.u, p.i_f) == (3, 63, 1, 45)
        assert p.p_bounds == (20,) and p.q_bounds == ()
        p = require_valid("H1", a=2, b=2, c=3, i=12, s=2)
        assert (p.r, p.j, p.i_f) == (5, 24, 15)
        assert p.q_bounds == (24, 24, 24, 0, 0)

    def test_rejections(self):
        assert not validate("F1", a=3, i=10, s=1).valid
        assert not validate("F1", a=21, i=41, s=4).valid
        assert not validate("F2", a=8, i=100, s=10).valid
        assert not validate("G1", a=4, b=3, i=30, s=2).valid
        assert not validate("G2", a=3, b=3, i=30, s=2).valid
        assert not validate("G3", a=2, b=3, i=30, s=2).valid  # ab triangular
        assert not validate("H1", a=2, b=2, c=1, i=30, s=2).valid
        assert not validate("Z9", a=2, i=3, s=1).valid
        assert not validate("F1", a=21, i=42, s="4").valid
        assert not validate("F1", a=21, i=42, s=1).valid  # below minimum

    def test_validate_json(self):
        res = validate_json({"family": "G1", "a": 3, "b": 4, "i": 13, "s": 2})
        assert res.valid
        assert not validate_json({"family": "G1", "a": 3, "b": 4}).valid
        with pytest.raises(FamilyError):
            require_valid("F1", a=21, i=10, s=4)


class TestMinimumS:
    def test_known_values(self):
        assert min_sufficient_s("F1", 21, i=42) == 4
        assert min_sufficient_s("G3", 4, 4, i=8) == 7
        assert min_sufficient_s("H1", 2, 2, 3, i=12) == 2

    def test_closed_forms_agree(self):
        cases = [("F1", a, None, None, i)
                 for a in (4, 7, 21) for i in (2 * a, 2 * a + 9)]
        cases += [("F2", a, None, None, f2_threshold(a) + k)
                  for a in (7, 21, 35) for k in (0, 5)]
        cases += [("G1", a, b, None, a * b + 1 + k)
                  for a, b in ((2, 3), (3, 4), (4, 4)) for k in (0, 6)]
        cases += [("G2", a, b, None, a * b // 2 + 2 + k)
                  for a, b in ((2, 4), (4, 6)) for k in (0, 6)]
        cases += [("H1", a, b, c, a * b * c + k)
                  for a, b, c in ((2, 2, 3), (3, 3, 3)) for k in (0, 7)]
        for fam, a, b, c, i in cases:
            assert theorem_min_s(fam, a, b, c, i) == \
                min_sufficient_s(fam, a, b, c, i), (fam, a, b, c, i)
        with pytest.raises(FamilyError):
            theorem_min_s("G3", 4, 4, i=8)


class TestPredictions:
    @pytest.mark.parametrize("fam,kw", [
        ("F1", dict(a=21, i=42, s=4)), ("F2", dict(a=21, i=36, s=14)),
        ("G1", dict(a=3, b=4, i=13, s=2)), ("G2", dict(a=4, b=6, i=14, s=2)),
        ("G3", dict(a=4, b=4, i=8, s=7)), ("H1", dict(a=2, b=2, c=3, i=12, s=2))])
    def test_deltas_track_predicted_h(self, fam, kw):
        p = require_valid(fam, **kw)
        for d in range(p.i, p.i_f):
            big, small = families.deltas(p, d)
            assert predicted_h(p, d + 1) == predicted_h(p, d) + big + small

    def test_outside_critical_range(self):
        p = require_valid("F1", a=21, i=42, s=4)
        with pytest.raises(FamilyError):
            predicted_h(p, p.i - 1)


class TestConstruction:
    def test_deterministic(self):
        p = require_valid("G3", a=4, b=4, i=8, s=7)
        w1 = families.construct(p, 5)
        w2 = families.construct(p, 5)
        w3 = families.construct(p, 6)
        assert all(np.array_equal(a.coeffs, b.coeffs)
                   for a, b in zip(w1.blocks, w2.blocks))
        assert any(not np.array_equal(a.coeffs, b.coeffs)
                   for a, b in zip(w1.blocks, w3.blocks))

    def test_verify_drop_report(self):
        p = require_valid("G3", a=4, b=4, i=8, s=7)
        rep = verify_drop(p, seed=0)
        assert rep.verdict == "single_drop"
        assert rep.degrees == (8, 9, 10)
        assert rep.measured == rep.predicted
        obj = rep.to_json()
        assert obj["verdict"] == "single_drop"
        assert obj["attempts"][0]["seed"] == 0


class TestSpecialConstructions:
    def test_bernstein_variants(self):
        base = special_construction("bernstein_t1")
        h1 = apolarity.hilbert_vector(base).values
        assert h1 == BERNSTEIN_H
        for k, kind in ((2, "bernstein_t2"), (3, "bernstein_t3"),
                        (4, "bernstein_t4")):
            h = apolarity.hilbert_vector(special_construction(kind)).values
            assert h[:2] == (1, 5)
            assert all(h[d] == h1[d] + (k - 1) for d in range(2, 17))
            assert h[16] == k

    def test_unknown_kind(self):
        with pytest.raises(FamilyError):
            special_construction("bernstein_t9")

    def test_extend_codim_append(self):
        base = HomogeneousSubspaceFixture()
        ext = extend_codim(base.w, 2, "append")
        assert ext.r == base.w.r + 2
        h0 = apolarity.hilbert_vector(base.w).values
        h = apolarity.hilbert_vector(ext).values
        # two pure powers add 2 everywhere strictly between the ends
        assert h[0] == 1 and h[base.w.j] == h0[base.w.j] + 2
        assert all(h[d] == h0[d] + 2 for d in range(1, base.w.j))

    def test_extend_codim_summed(self):
        base = HomogeneousSubspaceFixture()
        ext = extend_codim(base.w, 1, "summed")
        h0 = apolarity.hilbert_vector(base.w).values
        h = apolarity.hilbert_vector(ext).values
        # type preserved, interior values shifted up by one
        assert h[base.w.j] == h0[base.w.j]
        assert all(h[d] == h0[d] + 1 for d in range(1, base.w.j))


class HomogeneousSubspaceFixture:
    def __init__(self):
        from levelalg.apolarity import HomogeneousSubspace
        self.w = HomogeneousSubspace.from_sparse(2, 4, [{(2, 2): 1, (4, 0): 3}])


class TestCatalog:
    def test_statuses(self):
        assert existence_catalog(1, 1).status == "unimodal_forced"
        assert existence_catalog(2, 7).status == "unimodal_forced"
        assert existence_catalog(3, 1).status == "unimodal_forced"
        assert existence_catalog(3, 3).status == "unknown"
        assert existence_catalog(4, 2).status == "unknown"
        for r, t in ((3, 5), (3, 9), (4, 3), (4, 8), (5, 1), (5, 2), (5, 3),
                     (5, 6), (6, 1), (6, 4), (8, 2)):
            assert existence_catalog(r, t).status == "exists_nonunimodal", (r, t)
        with pytest.raises(ValueError):
            existence_catalog(0, 1)

    def test_family_recipes_are_valid(self):
        for r, t in ((3, 5), (3, 8), (4, 3), (4, 6), (5, 3), (5, 5)):
            rec = existence_catalog(r, t).recipe
            res = validate_json(rec)
            assert res.valid, (r, t, rec)
            assert res.params.r == r and res.params.t == t

    def test_realize_family_recipe(self):
        rec = existence_catalog(4, 3).recipe
        w = realize_recipe(rec, seed=0)
        assert w.r == 4
        assert apolarity.hilbert_value(w, w.j) == 3

    def test_realize_extension_recipe(self):
        rec = existence_catalog(7, 2).recipe
        assert rec["kind"] == "extend_codim"
        w = realize_recipe(rec, seed=0)
        assert w.r == 7
        assert apolarity.hilbert_value(w, w.j) == 2

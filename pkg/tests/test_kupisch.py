import pytest
from hypothesis import given, settings, strategies as st

from nakct import kupisch
from nakct.kupisch import (CyclicInput, EntryTooSmall, GrowthViolation, NoSelfDegluePoint, NotConnected,
                           NotDecomposable, validate)
from strategies import acyclic_series, cyclic_series


class TestValidate:
    def test_acyclic_ok(self):
        s = validate((1, 2, 3, 3))
        assert s.entries == (1, 2, 3, 3) and not s.cyclic

    def test_growth_violation_position(self):
        with pytest.raises(GrowthViolation) as exc:
            validate((1, 3))
        assert exc.value.i == 2

    def test_cyclic_canonical_rotation(self):
        s = validate((4, 2, 3, 3, 2, 3), True)
        assert s.entries == (2, 3, 3, 2, 3, 4) and s.cyclic

    def test_cyclic_growth_wraps_around(self):
        # ℓ_1 = 5 exceeds ℓ_6 + 1 = 4
        with pytest.raises(GrowthViolation) as exc:
            validate((5, 2, 3, 3, 2, 3), True)
        assert exc.value.i == 1

    def test_not_connected(self):
        with pytest.raises(NotConnected):
            validate((2, 3))
        with pytest.raises(NotConnected):
            validate((1, 2, 1))

    def test_entry_too_small(self):
        with pytest.raises(EntryTooSmall):
            validate((1, 2), True)

    def test_parse(self):
        assert kupisch.parse("~5,5,5") == validate((5, 5, 5), True)
        assert kupisch.parse(" 1, 2 ,2") == validate((1, 2, 2))
        with pytest.raises(kupisch.KupischError):
            kupisch.parse("1,x")
        with pytest.raises(kupisch.KupischError):
            kupisch.parse("~")

    @given(cyclic_series())
    def test_canonical_is_minimal_rotation(self, s):
        e = s.entries
        assert all(e <= e[r:] + e[:r] for r in range(len(e)))
        assert validate(e[1:] + e[:1], True) == s


class TestGlue:
    def test_examples(self):
        assert kupisch.glue(validate((1, 2, 3, 3)), validate((1, 2, 3, 4))).entries == (1, 2, 3, 3, 2, 3, 4)
        assert kupisch.glue(validate((1,)), validate((1, 2))).entries == (1, 2)
        glued = kupisch.glue(kupisch.homogeneous(3, 8), kupisch.homogeneous(2, 6))
        assert glued.entries == (1, 2, 3, 3, 3, 3, 3, 3, 2, 2, 2, 2, 2)

    def test_cyclic_input(self):
        with pytest.raises(CyclicInput):
            kupisch.glue(validate((2, 2), True), validate((1, 2)))

    @given(acyclic_series(6), acyclic_series(6))
    def test_width(self, a, b):
        assert kupisch.glue(a, b).width == a.width + b.width - 1


class TestDeglue:
    def test_example_with_bridge(self):
        pieces, bridges = kupisch.deglue_all(validate((1, 2, 3, 3, 2, 3, 4)), 2)
        assert [p.entries for p in pieces] == [(1, 2, 3, 3), (1, 2, 3, 4)]
        assert bridges == [(4, 5, 6)]

    def test_homogeneous_single_piece(self):
        pieces, bridges = kupisch.deglue_all(validate((1, 2, 3, 3)), 2)
        assert [p.entries for p in pieces] == [(1, 2, 3, 3)] and bridges == []

    def test_not_decomposable(self):
        with pytest.raises(NotDecomposable) as exc:
            kupisch.deglue_all(validate((1, 2, 3, 3, 3, 4)), 1)
        assert exc.value.witness == 4 and exc.value.pattern == "a"

    def test_finer_split_of_two_runs(self):
        s = kupisch.homogeneous(2, 7)
        pieces, bridges = kupisch.deglue_all(s, 1, n=3)
        assert [p.entries for p in pieces] == [(1, 2, 2, 2)] * 2
        assert bridges == [(4, 5)]
        assert kupisch.glue_all(pieces) == s

    @given(st.lists(st.tuples(st.integers(2, 4), st.integers(0, 3)), min_size=1, max_size=3),
           st.integers(1, 3))
    def test_round_trip(self, shapes, d):
        pieces = [kupisch.homogeneous(ell, ell + extra) for ell, extra in shapes]
        s = kupisch.glue_all(pieces)
        got, bridges = kupisch.deglue_all(s, d)
        assert kupisch.glue_all(got) == s
        assert all(kupisch.is_homogeneous(p) for p in got)
        assert len(bridges) == len(got) - 1
        assert all(len(b) == d + 1 for b in bridges)


class TestSelfGlue:
    def test_examples(self):
        glued = kupisch.self_glue(validate((1, 2, 2, 3, 4, 5, 2, 2)))
        assert glued == validate((2, 2, 2, 3, 4, 5, 2), True)
        assert glued == validate((5, 2, 2, 2, 2, 3, 4), True)
        assert kupisch.self_deglue(validate((5, 2, 2, 2, 2, 3, 4), True)).entries == (1, 2, 2, 2, 2, 3, 4, 5)

    def test_no_point(self):
        with pytest.raises(NoSelfDegluePoint):
            kupisch.self_deglue(validate((2, 2, 2), True))

    @given(acyclic_series(8))
    def test_round_trip(self, s):
        if s.width < 2 or s.entries[-1] == 2:
            return
        found = kupisch.self_deglue_all(kupisch.self_glue(s))
        assert s in [p.series for p in found]


class TestShape:
    def test_examples(self):
        assert kupisch.classify_shape(kupisch.homogeneous(3, 8)).to_json() == {
            "tag": "AcyclicHomogeneous", "ell": 3, "m": 8}
        obs = kupisch.classify_shape(validate((1, 2, 3, 3, 4)))
        assert (obs.tag, obs.witness, obs.pattern) == ("Obstructed", 3, "a")
        cyc = kupisch.classify_shape(validate((5, 5, 5), True))
        assert (cyc.tag, cyc.ell, cyc.m) == ("CyclicHomogeneous", 5, 3)

    def test_pattern_b(self):
        shape = kupisch.classify_shape(validate((1, 2, 3, 4, 3)))
        assert (shape.tag, shape.pattern) == ("Obstructed", "b")

    @staticmethod
    def _scan(s):
        e, m = s.entries, s.width
        for j in range(m):
            w = [e[(j + t) % m] for t in range(3)] if s.cyclic else list(e[j:j + 3])
            if len(w) >= 3 and 2 < w[0] == w[1] < w[2]:
                return True
            if len(w) >= 2 and w[0] > w[1] > 2:
                return True
        return False

    @given(acyclic_series(10))
    def test_obstructed_iff_pattern_acyclic(self, s):
        assert (kupisch.classify_shape(s).tag == "Obstructed") == self._scan(s)

    @given(cyclic_series(6))
    def test_obstructed_iff_pattern_cyclic(self, s):
        assert (kupisch.classify_shape(s).tag == "Obstructed") == self._scan(s)

    @given(acyclic_series(10))
    def test_decomposable_pieces_reglue(self, s):
        shape = kupisch.classify_shape(s)
        if shape.tag == "AcyclicDecomposable":
            assert kupisch.glue_all(shape.pieces) == s
            assert all(kupisch.is_homogeneous(p) for p in shape.pieces)

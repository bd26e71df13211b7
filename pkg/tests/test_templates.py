import pytest
from hypothesis import given, strategies as st

from woz.errors import ConstraintViolation, MalformedSlotMarker, MissingBinding
from woz.templates import fill, match, normalize, parse_template


class TestParse:
    def test_single_slot(self):
        t = parse_template("I see {OBJ:FREE_TEXT}.")
        assert [s.literal for s in t.segments if not s.is_slot] == ["I see ", "."]
        assert [s.name for s in t.slots] == ["OBJ"]
        assert t.render() == "I see {OBJ:FREE_TEXT}."

    def test_slotless(self):
        t = parse_template("done")
        assert len(t.segments) == 1
        assert t.is_literal

    def test_distance_slot(self):
        t = parse_template("move forward {D:DISTANCE}")
        assert len([s for s in t.segments if not s.is_slot]) == 1
        assert len(t.slots) == 1

    @pytest.mark.parametrize("raw", [
        "I see {OBJ:FREE_TEXT.",     # unbalanced open
        "I see OBJ:FREE_TEXT}.",     # unbalanced close
        "I see {OBJ:WORDS}.",        # unknown kind
        "{A:NUMBER} and {A:NUMBER}",  # duplicate name
        "{A:NUMBER}{B:NUMBER}",      # adjacent slots
        "{obj:FREE_TEXT}",           # lowercase name
        "{OBJ}",                     # kind missing
        "",
    ])
    def test_malformed(self, raw):
        with pytest.raises(MalformedSlotMarker):
            parse_template(raw)

    def test_render_roundtrip(self):
        for raw in ("done", "I see {OBJ:FREE_TEXT}.", "a {X:NUMBER} b {Y:ANGLE} c"):
            assert parse_template(raw).render() == raw


class TestFill:
    def test_substitution(self):
        t = parse_template("I see {OBJ:FREE_TEXT}.")
        assert fill(t, {"OBJ": "a door on the left"}) == "I see a door on the left."

    def test_literal_identity(self):
        assert fill(parse_template("done"), {}) == "done"

    def test_distance(self):
        t = parse_template("move forward {D:DISTANCE}")
        # independent oracle: concatenate the segments by hand
        assert fill(t, {"D": "7 feet"}) == "move forward " + "7 feet"

    def test_missing_binding(self):
        with pytest.raises(MissingBinding):
            fill(parse_template("I see {OBJ:FREE_TEXT}."), {})

    def test_extra_binding(self):
        with pytest.raises(ConstraintViolation):
            fill(parse_template("done"), {"X": "y"})

    @pytest.mark.parametrize("value", ["abc", "-3 feet", "3", "3 bananas", ""])
    def test_bad_distance(self, value):
        t = parse_template("move forward {D:DISTANCE}")
        with pytest.raises(ConstraintViolation):
            fill(t, {"D": value})

    @pytest.mark.parametrize("value", ["90 degrees", "45 deg", "2 radians", "0.5 degrees"])
    def test_good_angle(self, value):
        t = parse_template("turn left {A:ANGLE}")
        assert fill(t, {"A": value}) == f"turn left {value}"

    def test_number(self):
        t = parse_template("wait {N:NUMBER} seconds")
        assert fill(t, {"N": "3"}) == "wait 3 seconds"
        with pytest.raises(ConstraintViolation):
            fill(t, {"N": "three"})

    def test_result_has_no_markers(self):
        t = parse_template("I see {OBJ:FREE_TEXT}.")
        assert "{" not in fill(t, {"OBJ": "a box"})


class TestNormalize:
    @pytest.mark.parametrize("raw,expected", [
        ("Done.", "done"),
        ("  Move   forward 3 feet ", "move forward 3 feet"),
        ("sent", "sent"),
        ("What?!", "what"),
        ("a.b", "a.b"),
    ])
    def test_examples(self, raw, expected):
        assert normalize(raw) == expected

    @given(st.text(max_size=60))
    def test_idempotent(self, s):
        once = normalize(s)
        assert normalize(once) == once

    @given(st.text(st.characters(codec="ascii"), max_size=60))
    def test_non_lengthening(self, s):
        # length monotonicity stated over ascii; case folding of some
        # unicode codepoints can legitimately add combining marks
        assert len(normalize(s)) <= len(s)


class TestMatch:
    def test_free_text(self):
        t = parse_template("I see {OBJ:FREE_TEXT}.")
        assert match(t, "i see a wall.") == {"OBJ": "a wall"}

    def test_literal(self):
        assert match(parse_template("done"), "done") == {}
        assert match(parse_template("done"), "Done.") == {}

    def test_no_match(self):
        assert match(parse_template("I see {OBJ:FREE_TEXT}."), "turn left") is None

    def test_distance_kind_enforced(self):
        t = parse_template("move forward {D:DISTANCE}")
        assert match(t, "move forward 7 feet") == {"D": "7 feet"}
        assert match(t, "move forward a lot") is None

    def test_roundtrip_through_fill(self):
        t = parse_template("move forward {D:DISTANCE}")
        binding = match(t, "move forward 7 feet")
        assert normalize(fill(t, binding)) == "move forward 7 feet"

    def test_requires_literals_in_order(self):
        t = parse_template("go to {X:FREE_TEXT} now")
        assert match(t, "now go to the door") is None

    def test_shortest_fill_wins(self):
        t = parse_template("a {X:FREE_TEXT} b {Y:FREE_TEXT} c")
        b = match(t, "a p b q b r c")
        assert b == {"X": "p", "Y": "q b r"}

import json
from fractions import Fraction
from pathlib import Path

import pytest

from genred import (
    Distribution,
    FileFormatError,
    Generator,
    catalog,
    minimal_reduction,
    validate,
    word_distribution,
)
from genred.formats import (
    dump_dot,
    dump_generator,
    dump_morphism,
    dump_word_table,
    generator_document,
    parse_generator_text,
    parse_morphism_text,
    parse_prob,
)

SCHEMA_PATH = Path(__file__).resolve().parent.parent / "schema" / "generator.schema.json"


def minimal_doc(**extra):
    doc = {
        "format_version": 1,
        "states": ["q"],
        "alphabet": ["h", "t"],
        "transitions": [
            {"from": "q", "to": "q", "symbol": "h", "prob": "1/2"},
            {"from": "q", "to": "q", "symbol": "t", "prob": "1/2"},
        ],
    }
    doc.update(extra)
    return doc


class TestParsing:
    def test_round_trip_is_identity_on_canonical_files(self):
        gen, mu = catalog("golden-mean")
        text = dump_generator(gen, mu)
        gen2, initial = parse_generator_text(text)
        assert gen2 == gen
        assert dump_generator(gen2, Distribution(initial)) == text

    def test_decimal_probs_convert_exactly(self):
        doc = minimal_doc(
            transitions=[
                {"from": "q", "to": "q", "symbol": "h", "prob": "0.25"},
                {"from": "q", "to": "q", "symbol": "t", "prob": "0.75"},
            ]
        )
        gen, _ = parse_generator_text(json.dumps(doc))
        assert gen.kernel["q"][("q", "h")] == Fraction(1, 4)
        assert gen.kernel["q"][("q", "t")] == Fraction(3, 4)

    def test_emission_always_uses_rationals(self):
        doc = minimal_doc(
            transitions=[
                {"from": "q", "to": "q", "symbol": "h", "prob": "0.5"},
                {"from": "q", "to": "q", "symbol": "t", "prob": "0.5"},
            ]
        )
        gen, _ = parse_generator_text(json.dumps(doc))
        assert '"prob": "1/2"' in dump_generator(gen)

    def test_numeric_probs_rejected(self):
        doc = minimal_doc(
            transitions=[{"from": "q", "to": "q", "symbol": "h", "prob": 0.5}]
        )
        with pytest.raises(FileFormatError):
            parse_generator_text(json.dumps(doc))

    def test_malformed_json_rejected(self):
        with pytest.raises(FileFormatError):
            parse_generator_text("{not json")

    @pytest.mark.parametrize(
        "mutation",
        [
            {"format_version": 2},
            {"states": []},
            {"alphabet": "ab"},
            {"transitions": {"from": "q"}},
            {"extra_key": 1},
        ],
    )
    def test_schema_violations_rejected(self, mutation):
        doc = minimal_doc(**mutation)
        with pytest.raises(FileFormatError):
            parse_generator_text(json.dumps(doc))

    def test_unknown_names_in_transitions_rejected(self):
        for bad in (
            {"from": "zz", "to": "q", "symbol": "h", "prob": "1/2"},
            {"from": "q", "to": "zz", "symbol": "h", "prob": "1/2"},
            {"from": "q", "to": "q", "symbol": "zz", "prob": "1/2"},
        ):
            doc = minimal_doc(transitions=[bad])
            with pytest.raises(FileFormatError):
                parse_generator_text(json.dumps(doc))

    def test_duplicate_transition_rejected(self):
        doc = minimal_doc()
        doc["transitions"].append(dict(doc["transitions"][0]))
        with pytest.raises(FileFormatError):
            parse_generator_text(json.dumps(doc))

    def test_initial_weights_for_unknown_state_rejected(self):
        doc = minimal_doc(initial={"zz": "1/1"})
        with pytest.raises(FileFormatError):
            parse_generator_text(json.dumps(doc))

    def test_quotient_key_is_tolerated(self):
        gen, mu = catalog("golden-mean-redundant")
        result, _ = minimal_reduction(gen)
        text = dump_generator(result.reduced, quotient=result.quotient_map)
        gen2, _ = parse_generator_text(text)
        assert gen2 == result.reduced

    def test_parse_prob_forms(self):
        assert parse_prob("1/2") == Fraction(1, 2)
        assert parse_prob("0.125") == Fraction(1, 8)
        assert parse_prob("1") == Fraction(1)
        with pytest.raises(FileFormatError):
            parse_prob("1/0")
        with pytest.raises(FileFormatError):
            parse_prob("h")


class TestTolerance:
    def test_near_one_rows_snap_exactly(self):
        third = "0.333333333"  # sums to 0.999999999, off by 1e-9
        doc = minimal_doc(
            states=["q"],
            alphabet=["a", "b", "c"],
            transitions=[
                {"from": "q", "to": "q", "symbol": s, "prob": third}
                for s in ("a", "b", "c")
            ],
        )
        text = json.dumps(doc)
        gen_raw, _ = parse_generator_text(text)
        assert validate(gen_raw) != []
        gen_snapped, _ = parse_generator_text(text, tolerance=Fraction(1, 10**9))
        assert validate(gen_snapped) == []
        assert gen_snapped.kernel["q"][("q", "a")] == Fraction(1, 3)

    def test_rows_outside_tolerance_still_fail(self):
        doc = minimal_doc(
            transitions=[{"from": "q", "to": "q", "symbol": "h", "prob": "0.9"}]
        )
        gen, _ = parse_generator_text(json.dumps(doc), tolerance=Fraction(1, 10**9))
        assert validate(gen) != []

    def test_initial_snaps_too(self):
        doc = minimal_doc(initial={"q": "0.999999999"})
        _, initial = parse_generator_text(json.dumps(doc), tolerance=Fraction(1, 10**9))
        assert initial == {"q": Fraction(1)}


class TestTextOutputs:
    def test_word_table_lines(self):
        gen, mu = catalog("randomness-2")
        table = word_distribution(gen, mu, 2)
        text = dump_word_table(table)
        assert text.splitlines() == [
            "ε 1/1",
            "a 1/2",
            "b 1/2",
            "aa 1/4",
            "ab 1/4",
            "ba 1/4",
            "bb 1/4",
        ]

    def test_multichar_symbols_join_with_commas(self):
        gen = Generator(
            ["q"], ["lo", "hi"],
            {"q": {("q", "lo"): Fraction(1, 2), ("q", "hi"): Fraction(1, 2)}},
        )
        table = word_distribution(gen, Distribution.point("q"), 2)
        text = dump_word_table(table)
        assert "lo,hi 1/4" in text.splitlines()

    def test_dot_output(self):
        gen, _ = catalog("golden-mean")
        dot = dump_dot(gen)
        assert dot.startswith("digraph generator {")
        assert '"A" -> "A" [label="0 : 1/2"];' in dot
        assert '"B" -> "A" [label="0 : 1/1"];' in dot
        assert dot.rstrip().endswith("}")

    def test_dot_quotes_special_names(self):
        gen = Generator(
            ['st"ate'], ["a"], {'st"ate': {('st"ate', "a"): 1}}
        )
        dot = dump_dot(gen)
        assert '"st\\"ate"' in dot


class TestMorphismFormat:
    def test_round_trip(self):
        f = {"A": "c_A", "B": "c_B", "C": "c_B"}
        g = {"0": "0", "1": "1"}
        text = dump_morphism(f, g)
        f2, g2 = parse_morphism_text(text)
        assert (f2, g2) == (f, g)

    def test_strict_keys(self):
        with pytest.raises(FileFormatError):
            parse_morphism_text(json.dumps({"f": {}}))
        with pytest.raises(FileFormatError):
            parse_morphism_text(json.dumps({"f": {}, "g": {}, "h": {}}))
        with pytest.raises(FileFormatError):
            parse_morphism_text(json.dumps({"f": {"a": 1}, "g": {}}))


class TestJsonSchema:
    def test_emitted_documents_validate_against_schema(self):
        jsonschema = pytest.importorskip("jsonschema")
        schema = json.loads(SCHEMA_PATH.read_text())
        for name in ("randomness-2", "rotation-p3", "golden-mean-redundant"):
            gen, mu = catalog(name)
            jsonschema.validate(generator_document(gen, mu), schema)
        gen, _ = catalog("golden-mean-redundant")
        result, _ = minimal_reduction(gen)
        jsonschema.validate(
            generator_document(result.reduced, quotient=result.quotient_map), schema
        )

    def test_schema_rejects_float_probs(self):
        jsonschema = pytest.importorskip("jsonschema")
        schema = json.loads(SCHEMA_PATH.read_text())
        doc = minimal_doc(
            transitions=[{"from": "q", "to": "q", "symbol": "h", "prob": 0.5}]
        )
        with pytest.raises(jsonschema.ValidationError):
            jsonschema.validate(doc, schema)

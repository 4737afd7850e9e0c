"""rod-v1 JSON serialization and parsing."""

import json

import numpy as np
import pytest

from alfrod.errors import (
    NonIncreasingKinks,
    ParseError,
    ValidationError,
    WeightsNotNormalized,
)
from alfrod.examples import chen_teo, kerr_taub_bolt
from alfrod.rodfile import parse_rod_file, serialize_rod


class TestRoundTrip:
    @pytest.mark.parametrize("rod", [chen_teo(0.3), kerr_taub_bolt(0.5, 1, 1, 0.5)],
                             ids=["chen_teo", "kerr_taub_bolt"])
    def test_exact_round_trip(self, rod):
        back = parse_rod_file(serialize_rod(rod))
        assert back.f.A == rod.f.A
        np.testing.assert_array_equal(back.f.kink_z, rod.f.kink_z)
        np.testing.assert_array_equal(back.f.kink_a, rod.f.kink_a)
        np.testing.assert_array_equal(back.angles, rod.angles)

    def test_serialized_shape(self):
        doc = json.loads(serialize_rod(chen_teo(0.3)))
        assert doc["format"] == "rod-v1"
        assert set(doc) == {"format", "A", "kinks", "angles"}
        assert all(set(k) == {"z", "a"} for k in doc["kinks"])

    def test_bytes_accepted(self):
        rod = chen_teo(0.3)
        back = parse_rod_file(serialize_rod(rod).encode("utf-8"))
        assert back.f.A == rod.f.A


class TestParsing:
    def test_angles_default_to_one(self):
        rod = parse_rod_file('{"A": 2.0, "kinks": [{"z": 0.0, "a": 1.0}]}')
        np.testing.assert_array_equal(rod.angles, [1.0, 1.0])

    @pytest.mark.parametrize("text,fragment", [
        ('{', "invalid JSON"),
        ('[]', "JSON object"),
        ('{"format": "rod-v2", "A": 1, "kinks": []}', "format tag"),
        ('{"A": 1, "kinks": [{"z": 0, "a": 1}], "bogus": 1}', "unknown fields"),
        ('{"A": 1}', "missing required"),
        ('{"A": true, "kinks": [{"z": 0, "a": 1}]}', "must be a number"),
        ('{"A": 1, "kinks": []}', "nonempty array"),
        ('{"A": 1, "kinks": [{"z": 0}]}', "kinks[0]"),
        ('{"A": 1, "kinks": [{"z": 0, "a": 1, "w": 2}]}', "kinks[0]"),
        ('{"A": 1, "kinks": [{"z": 0, "a": 1}], "angles": [1]}', "entries"),
        ('{"A": 1, "kinks": [{"z": 0, "a": 1}], "angles": [1, "x"]}', "numbers"),
    ])
    def test_parse_errors(self, text, fragment):
        with pytest.raises(ParseError, match=fragment.replace("[", "\\[")):
            parse_rod_file(text)

    def test_invalid_utf8(self):
        with pytest.raises(ParseError, match="UTF-8"):
            parse_rod_file(b"\xff\xfe{}")

    def test_validation_errors_pass_through(self):
        with pytest.raises(NonIncreasingKinks):
            parse_rod_file('{"A": 1, "kinks": [{"z": 1, "a": 0.5}, {"z": 0, "a": 0.5}]}')
        with pytest.raises(WeightsNotNormalized):
            parse_rod_file('{"A": 1, "kinks": [{"z": 0, "a": 0.4}]}')
        with pytest.raises(ValidationError):
            parse_rod_file('{"A": 1, "kinks": [{"z": 0, "a": 1}], "angles": [1, -1]}')

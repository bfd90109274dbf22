import json
from pathlib import Path

import numpy as np
import pytest

from kronlift.errors import SystemFileError
from kronlift.fileio import (
    dumps_system,
    load_system,
    parse_descriptor,
    problem_from_dict,
    save_system,
    system_from_dict,
    system_to_dict,
)
from kronlift.system_model import PolynomialSystem, random_system

FIXTURES = Path(__file__).parent / "fixtures"


class TestRoundTrip:
    def test_all_fixture_files(self):
        for path in sorted(FIXTURES.glob("*.json")):
            if path.name in ("corrupt.json", "bad_dims.json",
                             "random_descriptor.json", "constant_problem.json"):
                continue
            sys = load_system(path)
            again = system_from_dict(json.loads(dumps_system(sys)))
            np.testing.assert_array_equal(sys.D, again.D)
            np.testing.assert_array_equal(sys.b, again.b)
            if sys.G is not None:
                np.testing.assert_array_equal(sys.G, again.G)
            if sys.R is not None:
                np.testing.assert_array_equal(sys.R, again.R)
            assert sys.meta == again.meta

    def test_bitwise_on_awkward_floats(self, tmp_path):
        # shortest round-trip decimals must recover the exact binary64
        D = np.array([[0.1 + 0.2, 1e-308], [np.pi, -2.0 / 3.0]])
        sys = PolynomialSystem(D=D, b=[1e16 + 1.0, 5e-324], G=np.full((2, 4), 1.0 / 3.0))
        path = tmp_path / "sys.json"
        save_system(sys, path)
        loaded = load_system(path)
        assert loaded.D.tobytes() == sys.D.tobytes()
        assert loaded.b.tobytes() == sys.b.tobytes()
        assert loaded.G.tobytes() == sys.G.tobytes()

    def test_save_is_deterministic(self):
        sys = random_system(3, 3, seed=11)
        assert dumps_system(sys) == dumps_system(sys)


class TestValidation:
    def test_missing_schema_version(self):
        with pytest.raises(SystemFileError, match="schema_version"):
            system_from_dict({"n": 1, "D": [[1.0]], "b": [0.0]})

    def test_wrong_schema_version(self):
        with pytest.raises(SystemFileError, match="schema_version"):
            system_from_dict({"schema_version": 99, "n": 1, "D": [[1.0]], "b": [0.0]})

    def test_error_names_offending_field(self):
        data = {"schema_version": 1, "n": 2, "D": [[1.0, 0.0], [0.0, 1.0]],
                "G": [[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]], "b": [1.0, 2.0]}
        with pytest.raises(SystemFileError, match="field 'G'"):
            system_from_dict(data)

    def test_nonfinite_entry_rejected(self):
        data = {"schema_version": 1, "n": 1, "D": [[float("nan")]], "b": [0.0]}
        with pytest.raises(SystemFileError, match="field 'D'"):
            system_from_dict(data)

    def test_bad_row_count(self):
        data = {"schema_version": 1, "n": 2, "D": [[1.0, 0.0]], "b": [1.0, 2.0]}
        with pytest.raises(SystemFileError, match="field 'D'"):
            system_from_dict(data)

    def test_optional_blocks_roundtrip(self):
        d = system_to_dict(random_system(2, 2, seed=3))
        assert "G" in d and "R" not in d


class TestDescriptors:
    def test_random_descriptor(self):
        kind, payload = parse_descriptor({"random": {"n": 2, "degree": 2, "seed": 7}})
        assert kind == "random"
        assert payload == {"n": 2, "degree": 2, "seed": 7, "planted_root": None}

    def test_plant_root_parsed(self):
        kind, payload = parse_descriptor(
            {"random": {"n": 2, "degree": 3, "seed": 1, "plant_root": [1.0, -1.0]}}
        )
        np.testing.assert_array_equal(payload["planted_root"], [1.0, -1.0])

    def test_problem_descriptor(self):
        prob = problem_from_dict({
            "domain": [0.0, 1.0],
            "p": [[0, [1.0]]],
            "r": [[0, [1.0]]],
            "L": [],
            "f": 4.0,
            "n_basis": 1,
            "basis": "monomial",
            "bc": [],
        })
        assert prob.n_basis == 1
        assert prob.p.terms == ((0, (1.0,)),)
        assert prob.L.is_zero

    def test_problem_with_bc_and_samples(self):
        prob = problem_from_dict({
            "domain": [0.0, 2.0],
            "p": [[0, [1.0]]],
            "r": [[1, [1.0]]],
            "L": [[2, [-0.5]]],
            "f": {"samples": [1.0, 2.0]},
            "n_basis": 4,
            "bc": [
                {"endpoint": 0.0, "kind": "value", "value": 0.0},
                {"endpoint": 2.0, "kind": "derivative", "value": 1.0},
            ],
        })
        assert isinstance(prob.f, np.ndarray)
        assert prob.bc[1].kind == "derivative"

    def test_rejects_both_kinds(self):
        with pytest.raises(SystemFileError):
            parse_descriptor({"random": {}, "problem": {}})

    def test_rejects_neither_kind(self):
        with pytest.raises(SystemFileError):
            parse_descriptor({"something": 1})

    def test_rejects_bad_forcing(self):
        with pytest.raises(SystemFileError, match="field 'f'"):
            problem_from_dict({
                "domain": [0.0, 1.0], "p": [], "r": [], "L": [],
                "f": "sin", "n_basis": 3,
            })

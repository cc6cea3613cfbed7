import json
from pathlib import Path

import numpy as np
import pytest

from specled import (
    DEFAULT_GRID,
    ClampWarning,
    GridError,
    ParseError,
    RangeError,
    Reflectance,
    SchemaError,
    SpectralGrid,
    Spectrum,
    gaussian_bank,
    load_default_matcher,
    load_fixture_problem,
    oracle_grid,
)
from specled.fixtures import MATCHER_FILE, fixtures_dir
from specled.io import (
    bank_payload,
    load_bank_json,
    load_cmf_csv,
    load_problem,
    load_solution,
    load_spectrum_csv,
    problem_payload,
    save_bank_json,
    save_cmf_csv,
    save_solution,
    save_spectrum_csv,
    solution_json_str,
    solution_payload,
)


GRID6 = SpectralGrid(400.0, 10.0, 6)
GRID31 = SpectralGrid(400.0, 10.0, 31)


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return p


def sixty_fourths(seq):
    # exactly representable and short under %.9g, so round-trips are bitwise
    return np.array([k / 64.0 for k in seq])


class TestSpectrumCsv:
    def test_round_trip_idempotent(self, tmp_path):
        s = Spectrum(GRID6, sixty_fourths([3, 10, 40, 64, 22, 7]))
        p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
        save_spectrum_csv(p1, s)
        loaded = load_spectrum_csv(p1)
        assert np.array_equal(loaded.values, s.values)
        assert loaded.grid == s.grid
        save_spectrum_csv(p2, loaded)
        assert p1.read_bytes() == p2.read_bytes()

    def test_reflectance_kind_bounds(self, tmp_path):
        p = write(
            tmp_path, "r.csv", "wavelength_nm,value\n400,0.2\n410,0.9\n"
        )
        r = load_spectrum_csv(p, kind="reflectance")
        assert isinstance(r, Reflectance)

    def test_bad_header(self, tmp_path):
        p = write(tmp_path, "r.csv", "lambda,value\n400,0.5\n410,0.5\n")
        with pytest.raises(ParseError) as err:
            load_spectrum_csv(p)
        assert err.value.line == 1

    def test_bad_float_reports_line(self, tmp_path):
        p = write(
            tmp_path, "r.csv", "wavelength_nm,value\n400,0.5\n410,oops\n420,0.5\n"
        )
        with pytest.raises(ParseError) as err:
            load_spectrum_csv(p)
        assert err.value.line == 3

    def test_wrong_column_count(self, tmp_path):
        p = write(tmp_path, "r.csv", "wavelength_nm,value\n400,0.5,9\n410,0.5\n")
        with pytest.raises(ParseError) as err:
            load_spectrum_csv(p)
        assert err.value.line == 2

    def test_descending_wavelengths(self, tmp_path):
        p = write(tmp_path, "r.csv", "wavelength_nm,value\n410,0.5\n400,0.5\n")
        with pytest.raises(ParseError):
            load_spectrum_csv(p)

    def test_non_uniform_spacing(self, tmp_path):
        p = write(
            tmp_path, "r.csv", "wavelength_nm,value\n400,0.5\n410,0.5\n425,0.5\n"
        )
        with pytest.raises(GridError):
            load_spectrum_csv(p)

    def test_too_few_samples(self, tmp_path):
        p = write(tmp_path, "r.csv", "wavelength_nm,value\n400,0.5\n")
        with pytest.raises(ParseError):
            load_spectrum_csv(p)

    def test_tiny_overshoot_clamps_with_warning(self, tmp_path):
        p = write(
            tmp_path,
            "r.csv",
            "wavelength_nm,value\n400,1.0000000003\n410,0.5\n",
        )
        with pytest.warns(ClampWarning):
            r = load_spectrum_csv(p, kind="reflectance")
        assert r.values[0] == 1.0

    def test_large_overshoot_raises(self, tmp_path):
        p = write(tmp_path, "r.csv", "wavelength_nm,value\n400,1.1\n410,0.5\n")
        with pytest.raises(RangeError):
            load_spectrum_csv(p, kind="reflectance")

    def test_negative_spectrum(self, tmp_path):
        near = write(
            tmp_path, "a.csv", "wavelength_nm,value\n400,-1e-12\n410,0.5\n"
        )
        with pytest.warns(ClampWarning):
            s = load_spectrum_csv(near)
        assert s.values[0] == 0.0
        far = write(tmp_path, "b.csv", "wavelength_nm,value\n400,-1.0\n410,0.5\n")
        with pytest.raises(RangeError):
            load_spectrum_csv(far)

    def test_crlf_accepted(self, tmp_path):
        p = tmp_path / "r.csv"
        p.write_bytes(b"wavelength_nm,value\r\n400,0.5\r\n410,0.25\r\n")
        s = load_spectrum_csv(p)
        assert np.array_equal(s.values, [0.5, 0.25])


class TestCmfCsv:
    def test_bundled_table(self):
        matcher = load_cmf_csv(fixtures_dir() / MATCHER_FILE)
        assert matcher.grid == DEFAULT_GRID
        peak_nm = 380.0 + 5.0 * int(np.argmax(matcher.cy))
        assert 550.0 <= peak_nm <= 560.0

    def test_round_trip_idempotent(self, tmp_path):
        matcher = load_default_matcher()
        p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
        save_cmf_csv(p1, matcher)
        save_cmf_csv(p2, load_cmf_csv(p1))
        assert p1.read_bytes() == p2.read_bytes()

    def test_misplaced_luminance_peak_rejected(self, tmp_path):
        lines = ["wavelength_nm,xbar,ybar,zbar"]
        for k in range(5):
            wl = 600 + 10 * k
            lines.append(f"{wl},0.1,{0.1 * (k + 1)},0.1")
        p = write(tmp_path, "cmf.csv", "\n".join(lines) + "\n")
        with pytest.raises(SchemaError):
            load_cmf_csv(p)


class TestBankJson:
    def test_round_trip_idempotent(self, tmp_path):
        bank = gaussian_bank(3, (450.0, 650.0), 40.0, GRID31, seed=9)
        p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
        save_bank_json(p1, bank)
        loaded = load_bank_json(p1)
        assert loaded.channel_labels == bank.channel_labels
        for a, b in zip(loaded.basis, bank.basis):
            assert np.array_equal(a.values, b.values)
        save_bank_json(p2, loaded)
        assert p1.read_bytes() == p2.read_bytes()

    def test_channel_order_preserved(self, tmp_path):
        payload = bank_payload(gaussian_bank(3, (450.0, 650.0), 40.0, GRID31, seed=9))
        payload["channels"].reverse()
        p = write(tmp_path, "bank.json", json.dumps(payload))
        loaded = load_bank_json(p)
        assert list(loaded.channel_labels) == [
            c["label"] for c in payload["channels"]
        ]

    def test_length_mismatch_names_channel(self, tmp_path):
        payload = bank_payload(gaussian_bank(2, (450.0, 650.0), 40.0, GRID31, seed=9))
        payload["channels"][1]["values"].append(0.0)
        p = write(tmp_path, "bank.json", json.dumps(payload))
        with pytest.raises(SchemaError) as err:
            load_bank_json(p)
        assert "channels[1]" in str(err.value)

    def test_missing_field(self, tmp_path):
        payload = bank_payload(gaussian_bank(2, (450.0, 650.0), 40.0, GRID31, seed=9))
        del payload["max_weight"]
        p = write(tmp_path, "bank.json", json.dumps(payload))
        with pytest.raises(SchemaError) as err:
            load_bank_json(p)
        assert "max_weight" in str(err.value)

    def test_malformed_json(self, tmp_path):
        p = write(tmp_path, "bank.json", "{not json")
        with pytest.raises(ParseError):
            load_bank_json(p)


@pytest.fixture(scope="module")
def solution(iso_problem):
    return oracle_grid(iso_problem, 3)


class TestSolutionJson:
    def test_payload_key_order(self, solution):
        assert list(solution_payload(solution)) == [
            "mode",
            "constraint_form",
            "alpha1",
            "alpha2",
            "objective",
            "feasible",
            "constraints",
            "seed",
        ]

    def test_scc_payload_has_no_form(self, scc_problem):
        sol = oracle_grid(scc_problem, 3)
        assert "constraint_form" not in solution_payload(sol)

    def test_round_trip_bitwise(self, tmp_path, solution):
        p = tmp_path / "sol.json"
        save_solution(p, solution)
        assert p.read_text(encoding="utf-8") == solution_json_str(solution)
        loaded = load_solution(p)
        assert np.array_equal(loaded.alpha1, solution.alpha1)
        assert np.array_equal(loaded.alpha2, solution.alpha2)
        assert loaded.objective == solution.objective
        assert loaded.feasible == solution.feasible
        assert loaded.seed == solution.seed
        for a, b in zip(
            loaded.constraint_report.rows, solution.constraint_report.rows
        ):
            assert (a.name, a.value, a.bound) == (b.name, b.value, b.bound)

    def test_unknown_mode_rejected(self, tmp_path, solution):
        payload = solution_payload(solution)
        payload["mode"] = "polychromatic"
        p = write(tmp_path, "sol.json", json.dumps(payload))
        with pytest.raises(SchemaError):
            load_solution(p)

    def test_form_on_scc_rejected(self, tmp_path, scc_problem):
        payload = solution_payload(oracle_grid(scc_problem, 3))
        payload["constraint_form"] = "as_printed"
        p = write(tmp_path, "sol.json", json.dumps(payload))
        with pytest.raises(SchemaError):
            load_solution(p)

    def test_unknown_form_rejected(self, tmp_path, solution):
        payload = solution_payload(solution)
        payload["constraint_form"] = "upside_down"
        p = write(tmp_path, "sol.json", json.dumps(payload))
        with pytest.raises(SchemaError):
            load_solution(p)


class TestProblemLoading:
    def test_fixture_problem_round_trip(self, iso_problem):
        back = load_problem(problem_payload(iso_problem))
        assert back.mode == iso_problem.mode
        assert back.params == iso_problem.params
        assert np.array_equal(back.r1.values, iso_problem.r1.values)
        assert np.array_equal(back.r2.values, iso_problem.r2.values)
        for a, b in zip(back.bank.basis, iso_problem.bank.basis):
            assert np.array_equal(a.values, b.values)

    def test_file_refs_resolve_relative(self):
        name = "iso_3ch"
        path = fixtures_dir() / "problems" / f"{name}.json"
        direct = load_problem(path)
        via_fixture = load_fixture_problem(name)
        assert np.array_equal(direct.r1.values, via_fixture.r1.values)
        assert direct.params == via_fixture.params

    def test_fine_grid_material_resampled(self, iso_problem):
        payload = problem_payload(iso_problem)
        fine = SpectralGrid(400.0, 1.0, 301)
        lam = fine.wavelengths()
        payload["materials"]["r1"] = {
            "grid": {"start_nm": 400.0, "step_nm": 1.0, "count": 301},
            "values": list(0.1 + 0.8 * np.exp(-(((lam - 540.0) / 35.0) ** 2))),
        }
        p = load_problem(payload)
        assert p.r1.grid == p.bank.grid
        assert np.all(p.r1.values >= 0.0) and np.all(p.r1.values <= 1.0)

    def test_disjoint_material_grid_rejected(self, iso_problem):
        payload = problem_payload(iso_problem)
        payload["materials"]["r2"] = {
            "grid": {"start_nm": 900.0, "step_nm": 10.0, "count": 11},
            "values": [0.5] * 11,
        }
        with pytest.raises(GridError):
            load_problem(payload)

    def test_unknown_top_level_field(self, iso_problem):
        payload = problem_payload(iso_problem)
        payload["gamma"] = 2.2
        with pytest.raises(SchemaError) as err:
            load_problem(payload)
        assert "gamma" in str(err.value)

    def test_unknown_param_field(self, iso_problem):
        payload = problem_payload(iso_problem)
        payload["params"]["rho"] = 10.0
        with pytest.raises(SchemaError) as err:
            load_problem(payload)
        assert "rho" in str(err.value)

    def test_missing_delta(self, iso_problem):
        payload = problem_payload(iso_problem)
        del payload["params"]["delta"]
        with pytest.raises(SchemaError):
            load_problem(payload)

    def test_invalid_delta_value(self, iso_problem):
        payload = problem_payload(iso_problem)
        payload["params"]["delta"] = -0.5
        with pytest.raises(SchemaError):
            load_problem(payload)

    @pytest.mark.parametrize("bad", [[0.2], [0.2, True], "center", [0.1, None]])
    def test_bad_white_target(self, iso_problem, bad):
        payload = problem_payload(iso_problem)
        payload["params"]["white_target"] = bad
        with pytest.raises(SchemaError):
            load_problem(payload)

    def test_white_target_round_trip(self, iso_problem):
        payload = problem_payload(iso_problem)
        payload["params"]["white_target"] = [0.21, 0.47]
        payload["params"]["white_target_tol"] = 0.02
        p = load_problem(payload)
        assert p.params.white_target == (0.21, 0.47)
        assert p.params.white_target_tol == 0.02
        again = problem_payload(p)
        assert again["params"]["white_target"] == [0.21, 0.47]
        assert again["params"]["white_target_tol"] == 0.02

    def test_matcher_must_be_path(self, iso_problem):
        payload = problem_payload(iso_problem)
        payload["matcher"] = {"grid": {}}
        with pytest.raises(SchemaError):
            load_problem(payload)

    def test_default_matcher_override(self, iso_problem, toy_matcher):
        payload = problem_payload(iso_problem)
        p = load_problem(payload, default_matcher=toy_matcher)
        assert np.all(p.matcher.cy == 1.0)

    def test_non_object_payload(self):
        with pytest.raises(SchemaError):
            load_problem([1, 2, 3])

import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import admissible_configs
from ptinvis import cli
from ptinvis.analysis import reflectionless_band, verify_duality
from ptinvis.core import Side, SlabConfig
from ptinvis.errors import DomainError
from ptinvis.io import (
    CSV_COLUMNS,
    ScanRequest,
    config_to_json,
    format_csv,
    parse_complex,
    parse_config,
    read_csv,
    run_scan,
    scan_table,
)
from ptinvis.nonpt import NonPTSeed, solve_nonpt

PT_GOLD = SlabConfig(3.4 - 0.003421628027759j, 3.4 + 0.003421628027759j)
PT_CAPTION = SlabConfig(3.4 - 0.003422j, 3.4 + 0.003422j)


class TestJSON:
    @settings(max_examples=200)
    @given(admissible_configs(), st.floats(1e-9, 1.0, allow_nan=False))
    def test_round_trip(self, c, L):
        c = SlabConfig(c.n1, c.n2, L)
        assert parse_config(config_to_json(c)) == c

    def test_schema(self):
        doc = json.loads(config_to_json(SlabConfig(2 + 0.5j, 3, 300e-6)))
        assert doc == {"n1": {"re": 2.0, "im": 0.5}, "n2": {"re": 3.0, "im": 0.0}, "L_um": 300}

    def test_errors(self):
        with pytest.raises(DomainError):
            parse_config("{nope")
        with pytest.raises(DomainError):
            parse_config('{"n1": {"re": 2}}')
        with pytest.raises(DomainError):
            parse_config("[1, 2]")

    def test_parse_complex(self):
        assert parse_complex("3.4-0.003422i") == 3.4 - 0.003422j
        assert parse_complex("2") == 2
        assert parse_complex({"re": 1, "im": -1}) == 1 - 1j
        with pytest.raises(DomainError):
            parse_complex("abc")


class TestScan:
    def test_columns_and_order(self, tmp_path):
        out = tmp_path / "s.csv"
        table = run_scan(ScanRequest(PT_CAPTION, 1995, 2005, 101, str(out)))
        assert np.all(np.diff(table[:, 0]) > 0)
        text = out.read_text()
        assert text.splitlines()[0] == "K,lambda_nm,T2m1,argT,Rl2,Rr2"
        assert text.endswith("\n") and len(text.splitlines()) == 102
        back = read_csv(out)
        assert back.shape == (101, len(CSV_COLUMNS))
        np.testing.assert_allclose(back, table, rtol=1e-11)

    def test_bit_stable(self):
        a = format_csv(run_scan(ScanRequest(PT_CAPTION, 1995, 2005, 500)))
        b = format_csv(run_scan(ScanRequest(PT_CAPTION, 1995, 2005, 500)))
        assert a == b

    def test_common_zero_fig1(self):
        t = run_scan(ScanRequest(PT_CAPTION, 1995, 2005, 10_000))
        # Rl alone also vanishes elsewhere; the common zero needs all three curves
        i = int(np.argmin(np.abs(t[:, 2]) + np.abs(t[:, 3]) + t[:, 4]))
        assert t[i, 0] == pytest.approx(2000.148, abs=2e-3)
        assert abs(t[i, 2]) < 3e-3 and abs(t[i, 3]) < 3e-2

    def test_common_zero_fig2(self):
        sol = solve_nonpt(NonPTSeed(764, 318, 318, -6))
        t = run_scan(ScanRequest(sol.config(), 1995, 2005, 10_000))
        i = int(np.argmin(np.abs(t[:, 2]) + np.abs(t[:, 3]) + t[:, 4]))
        assert t[i, 0] == pytest.approx(1998.050, abs=2e-3)

    def test_empty_slab(self):
        t = scan_table(SlabConfig(1, 1), np.linspace(1, 100, 50))
        assert np.max(np.abs(t[:, [2, 4, 5]])) < 1e-14

    def test_request_validation(self):
        with pytest.raises(DomainError):
            ScanRequest(PT_GOLD, 5, 1)
        with pytest.raises(DomainError):
            ScanRequest(PT_GOLD, 1, 5, 1)

    def test_unwritable(self, tmp_path):
        with pytest.raises(OSError):
            run_scan(ScanRequest(PT_GOLD, 1, 5, 3, str(tmp_path / "missing" / "x.csv")))


class TestBand:
    def test_empty_slab_full_range(self):
        b = reflectionless_band(SlabConfig(1, 1), 800, 1000, 1e-4)
        assert (b.lambda_min, b.lambda_max, b.width) == (800, 1000, 200)

    def test_no_band(self):
        b = reflectionless_band(SlabConfig(2, 3), 800.1, 800.4, 1e-12)
        assert b.is_empty and b.width == 0

    def test_contains_invisibility_point(self):
        sol = solve_nonpt(NonPTSeed(764, 318, 318, -6))
        lam = sol.wavelength_nm()
        b = reflectionless_band(sol.config(), 940, 946, 1e-2, lambda_star=lam)
        assert b.lambda_min <= lam <= b.lambda_max
        assert 0 < b.width < 1.0

    def test_validation(self):
        with pytest.raises(DomainError):
            reflectionless_band(PT_GOLD, 10, 5, 1e-4)
        with pytest.raises(DomainError):
            reflectionless_band(PT_GOLD, 5, 10, 0)


class TestDuality:
    def test_pt_golden(self):
        r = verify_duality(PT_GOLD, 2000.1475516262)
        assert r.side is Side.LEFT and r.side_pt is Side.LEFT and r.side_conj is Side.RIGHT
        assert r.passed

    def test_nonpt(self):
        sol = solve_nonpt(NonPTSeed(764, 318, 318, -6))
        r = verify_duality(sol.config(), sol.K)
        assert r.side is Side.LEFT and r.side_pt is Side.LEFT and r.side_conj is Side.RIGHT
        assert r.passed and r.conj_gap < 1e-10

    @given(st.floats(1, 5), st.floats(1, 5), st.floats(1, 3000))
    def test_real_never_unidirectional(self, a, b, K):
        r = verify_duality(SlabConfig(a, b), K)
        assert r.side not in (Side.LEFT, Side.RIGHT)
        assert r.passed


class TestCLI:
    def run(self, capsys, *argv):
        code = cli.main(list(argv))
        out = capsys.readouterr()
        return code, out.out, out.err

    def test_solve_pt(self, capsys):
        code, out, _ = self.run(capsys, "solve-pt", "--eta", "3.4")
        sols = json.loads(out)
        assert code == 0 and len(sols) == 5
        assert any(s["side"] == "left" and abs(s["K"] - 2000.147552) < 1e-4 for s in sols)

    def test_no_solution_exit(self, capsys):
        assert self.run(capsys, "solve-pt", "--eta", "1.0")[0] == cli.EXIT_NO_SOLUTION

    def test_invalid_input_exit(self, capsys):
        assert self.run(capsys, "bidir", "--m", "2", "--m1", "3", "--m2", "2")[0] == cli.EXIT_INPUT
        assert self.run(capsys, "verify", "--n1", "zz", "--n2", "1", "--K", "1")[0] == cli.EXIT_INPUT

    def test_range_exit(self, capsys):
        assert self.run(capsys, "verify", "--n1", "1+1j", "--n2", "2", "--K", "3000")[0] == cli.EXIT_RANGE

    def test_config_file_and_override(self, capsys, tmp_path):
        p = tmp_path / "c.json"
        p.write_text(config_to_json(SlabConfig(2, 3, 1e-6)))
        code, out, _ = self.run(capsys, "scan", "--config", str(p), "--n2", "1", "--K-lo", "1", "--K-hi", "2", "--samples", "2")
        assert code == 0
        rows = out.strip().splitlines()
        assert rows[0] == ",".join(CSV_COLUMNS)
        # L = 1 um from the file, K = 1 -> lambda = 2 pi um
        assert float(rows[1].split(",")[1]) == pytest.approx(2000 * math.pi)

    def test_scan_to_file(self, capsys, tmp_path):
        out = tmp_path / "scan.csv"
        code, _, _ = self.run(capsys, "scan", "--n1", "1", "--n2", "1", "--K-lo", "1", "--K-hi", "2", "--samples", "5", "-o", str(out))
        assert code == 0 and len(out.read_text().splitlines()) == 6

    def test_solve_nonpt_and_digits(self, capsys):
        code, out, _ = self.run(
            capsys, "solve-nonpt", "--m-plus", "764", "--m-minus", "318", "--m0", "318", "--gamma0", "-6", "--digits", "7"
        )
        doc = json.loads(out)
        assert code == 0 and doc["side"] == "left" and doc["K"] == 1998.050
        code, out, _ = self.run(capsys, "solve-nonpt", "--eta1", "3.4", "--eta2", "2.0", "--K-target", "2000", "--gamma0", "-2")
        assert json.loads(out)["seed"]["m_plus"] == 859

    def test_bidir(self, capsys):
        code, out, _ = self.run(capsys, "bidir", "--m", "1", "--m1", "1", "--m2", "2", "--L-um", "1")
        doc = json.loads(out)
        assert code == 0 and doc["identity_error"] < 1e-12 and doc["lambda_nm"] == pytest.approx(2000)

    def test_band_and_verify(self, capsys):
        code, out, _ = self.run(capsys, "band", "--n1", "1", "--n2", "1", "--lambda-lo", "900", "--lambda-hi", "901")
        assert code == 0 and json.loads(out)["width"] == pytest.approx(1.0)
        code, out, _ = self.run(capsys, "verify", "--n1", "3.4-0.003421628027759j", "--n2", "3.4+0.003421628027759j", "--K", "2000.1475516262")
        assert code == 0 and json.loads(out)["statement_ii"] is True

    def test_oracle_check(self, capsys):
        code, out, _ = self.run(capsys, "oracle-check", "--n1", "2.3+0.01j", "--n2", "1.7-0.02j", "--K", "37.5", "--steps", "100000")
        assert code == 0 and json.loads(out)["deviation"] < 1e-6

    def test_missing_indices(self, capsys):
        assert self.run(capsys, "verify", "--n1", "2", "--K", "1")[0] == cli.EXIT_INPUT

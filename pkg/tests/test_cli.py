"""CLI: subcommands, formats, determinism, exit codes."""

import io
import json
import os

import pytest

from oplab.cli import CATALOG, run, sweep_family


def invoke(*argv, stdin=None, monkeypatch=None):
    out = io.StringIO()
    if stdin is not None:
        assert monkeypatch is not None
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = run(list(argv), out=out)
    return code, out.getvalue()


class TestDims:
    def test_fibonacci_preset(self):
        code, text = invoke("dims", "--preset", "ex53-2", "--max-arity", "10")
        assert code == 0
        lines = text.strip().splitlines()
        assert lines[0] == "index,dim,partial_sum,log_n_partial_sum"
        dims = [int(line.split(",")[1]) for line in lines[1:]]
        assert dims == [0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55]

    def test_engine_choice(self):
        _, brute = invoke("dims", "--preset", "ex53-2", "--max-arity", "9",
                          "--engine", "brute")
        _, dp = invoke("dims", "--preset", "ex53-2", "--max-arity", "9",
                       "--engine", "dp")
        assert brute == dp

    def test_json_metadata(self):
        code, text = invoke("dims", "--preset", "ex53-1", "--max-arity", "6",
                            "--emit", "json")
        assert code == 0
        payload = json.loads(text)
        assert payload["values"] == ["0", "1", "1", "2", "4", "8", "16"]
        assert payload["engine"] == "dp"
        assert payload["exact"] is True
        assert len(payload["sha256"]) == 64

    def test_presentation_file(self, tmp_path):
        f = tmp_path / "p.txt"
        f.write_text("generator a 2\nrelation a(a(*,*),a(*,*))\n")
        code, text = invoke("dims", "--presentation", str(f), "--max-arity", "5")
        assert code == 0
        assert text.splitlines()[5].startswith("4,4,")

    def test_order_flags_validated(self):
        code, _ = invoke("dims", "--preset", "ex53-2", "--max-arity", "5",
                         "--order", "degrevlex", "--rank", "a")
        assert code == 0
        code, _ = invoke("dims", "--preset", "ex53-2", "--max-arity", "5",
                         "--rank", "a,z")
        assert code == 1

    def test_every_operad_preset_agrees_with_brute_recount(self):
        for spec in ("ex53-1", "ex53-2", "ex53-3", "free-operad:2", "free-operad:3"):
            _, dp = invoke("dims", "--preset", spec, "--max-arity", "9")
            _, brute = invoke("dims", "--preset", spec, "--max-arity", "9",
                              "--engine", "brute")
            assert dp == brute, spec


class TestSeriesPipes:
    def test_partition_guess_pipe(self, monkeypatch):
        _, series_csv = invoke("series", "--preset", "ex64-partition", "--max", "50")
        code, text = invoke("guess", "--max-order", "4", "--max-degree", "4",
                            stdin=series_csv, monkeypatch=monkeypatch)
        assert code == 0
        assert "no recurrence found at bounds (R=4, D=4, N=50)" in text

    def test_fibonacci_fit_pipe(self, monkeypatch):
        _, series_csv = invoke("series", "--preset", "fibonacci", "--max", "60")
        code, text = invoke("fit", stdin=series_csv, monkeypatch=monkeypatch)
        assert code == 0
        assert "denominator=[1, -1, -1]" in text

    def test_binomial_guess(self, monkeypatch):
        _, series_csv = invoke("series", "--preset", "polyring:3", "--max", "60")
        code, text = invoke("guess", "--max-order", "3", "--max-degree", "3",
                            stdin=series_csv, monkeypatch=monkeypatch)
        assert code == 0
        assert "order=1" in text

    def test_series_from_algebra_file(self, tmp_path):
        f = tmp_path / "alg.txt"
        f.write_text("var x1\nvar x2\nforbid x1 x1\n")
        code, text = invoke("series", "--source", str(f), "--max", "8")
        assert code == 0
        assert text.splitlines()[9].startswith("8,55,")

    def test_gk_preset(self):
        code, text = invoke("gk", "--preset", "floorpow:1.5", "--N", "3000")
        assert code == 0
        slope = float(next(l for l in text.splitlines()
                           if l.startswith("slope,")).split(",")[1])
        assert abs(slope - 1.5) < 0.05

    def test_gk_json(self):
        code, text = invoke("gk", "--preset", "free:2", "--N", "120", "--emit", "json")
        payload = json.loads(text)
        assert payload["exp_flag"] is True


class TestGapcheck:
    def test_csv_report(self):
        code, text = invoke("gapcheck", "--preset", "ex53-3", "--max-weight", "30")
        assert code == 0
        assert "# criterion_d=5" in text
        assert "# growth_class=linear" in text
        assert "# first_violation=none" in text

    def test_json_report(self):
        code, text = invoke("gapcheck", "--preset", "free-operad:2",
                            "--max-weight", "12", "--emit", "json")
        payload = json.loads(text)
        assert payload["criterion_d"] is None
        assert payload["growth_class"] == "superlinear_witness"

    def test_horizon_too_small_is_computation_error(self, capsys):
        code, _ = invoke("gapcheck", "--preset", "ex53-3", "--max-weight", "3")
        assert code == 2


class TestSweep:
    def test_weight2_family_has_four_rows(self):
        code, text = invoke("sweep", "--relation-weight", "2", "--horizon", "12")
        assert code == 0
        lines = [l for l in text.splitlines() if l and not l.startswith("#")]
        assert len(lines) == 1 + 4
        assert "dichotomy holds" in text

    def test_weight3_family_is_128(self):
        assert len(sweep_family(3)) == 128
        assert len(sweep_family(2)) == 4

    def test_deterministic_across_threads(self, monkeypatch):
        monkeypatch.setenv("OPLAB_THREADS", "1")
        _, one = invoke("sweep", "--relation-weight", "2", "--horizon", "10")
        monkeypatch.setenv("OPLAB_THREADS", "4")
        _, four = invoke("sweep", "--relation-weight", "2", "--horizon", "10")
        assert one == four

    def test_repeat_runs_identical(self):
        _, a = invoke("sweep", "--relation-weight", "2", "--horizon", "10")
        _, b = invoke("sweep", "--relation-weight", "2", "--horizon", "10")
        assert a == b

    def test_horizon_cap(self):
        code, _ = invoke("sweep", "--horizon", "50")
        assert code == 1


class TestOperadizeCommand:
    def test_emit_and_reload(self, tmp_path):
        alg = tmp_path / "alg.txt"
        alg.write_text("var x1\nvar x2\nforbid x1 x1\n")
        out_file = tmp_path / "op.txt"
        code, text = invoke("operadize", "--algebra", str(alg), "--emit", str(out_file))
        assert code == 0 and "wrote" in text
        code, dims_text = invoke("dims", "--presentation", str(out_file), "--max-arity", "8")
        dims = [int(l.split(",")[1]) for l in dims_text.strip().splitlines()[1:]]
        assert dims == [0, 1, 1, 2, 3, 5, 8, 13, 21]

    def test_emit_stdout(self, tmp_path):
        alg = tmp_path / "alg.txt"
        alg.write_text("var x1\nvar x2\n")
        code, text = invoke("operadize", "--algebra", str(alg), "--emit", "-")
        assert code == 0
        assert "generator a 2" in text
        assert "relation a(a(*,*),a(*,*))" in text

    def test_malformed_algebra_is_usage_error(self, tmp_path):
        alg = tmp_path / "bad.txt"
        alg.write_text("var x\nforbid x zz\n")
        code, _ = invoke("operadize", "--algebra", str(alg), "--emit", "-")
        assert code == 1


class TestEnvelope:
    def test_min_partition(self):
        code, text = invoke("envelope", "--kind", "min", "--preset", "ex64-partition",
                            "--max-index", "8")
        dims = [int(l.split(",")[1]) for l in text.strip().splitlines()[1:]]
        assert dims == [0, 1, 1, 2, 3, 5, 7, 11, 15]

    def test_sym_partition(self):
        code, text = invoke("envelope", "--kind", "sym", "--preset", "ex64-partition",
                            "--max-index", "6")
        dims = [int(l.split(",")[1]) for l in text.strip().splitlines()[1:]]
        assert dims == [0, 1, 2, 6, 12, 25, 42]


class TestUsageErrors:
    def test_unknown_preset(self):
        code, _ = invoke("dims", "--preset", "nonsense", "--max-arity", "5")
        assert code == 1

    def test_missing_source_target(self):
        code, _ = invoke("dims", "--max-arity", "5")
        assert code == 1

    def test_both_source_and_preset(self):
        code, _ = invoke("series", "--source", "fibonacci", "--preset", "fibonacci",
                         "--max", "10")
        assert code == 1

    def test_parametrized_preset_requires_param(self):
        code, _ = invoke("series", "--preset", "warfield", "--max", "10")
        assert code == 1

    def test_malformed_presentation_reports_line(self, tmp_path, capsys):
        f = tmp_path / "bad.txt"
        f.write_text("generator a 2\nrelation b(*,*)\n")
        code, _ = invoke("dims", "--presentation", str(f), "--max-arity", "4")
        assert code == 1
        assert "line 2" in capsys.readouterr().err

    def test_unary_preset_needs_weight_cap(self, tmp_path):
        f = tmp_path / "unary.txt"
        f.write_text("generator u 1\ngenerator b 2\n")
        code, _ = invoke("dims", "--presentation", str(f), "--max-arity", "4")
        assert code == 2  # completeness error is a computation error
        code, _ = invoke("dims", "--presentation", str(f), "--max-arity", "4",
                         "--weight-cap", "3")
        assert code == 0


class TestPresetList:
    def test_contains_required_names(self):
        code, text = invoke("preset-list")
        assert code == 0
        for name in ("ex34:<alpha>", "ex35:<r>", "ex53-1", "ex53-2", "ex53-3",
                     "ex62", "ex64-partition", "ex46-avoidance", "free-operad:<arity>",
                     "warfield:<r>", "example62", "partition", "floorpow:<alpha>",
                     "polyring:<d>", "free:<d>"):
            assert name in text, name

    def test_catalog_keys_resolve(self):
        from oplab.cli import preset_dims
        for name in CATALOG:
            preset = CATALOG[name]
            spec = {"ex34": "ex34:1.5", "floorpow": "floorpow:1.5",
                    "ex35": "ex35:2.5", "warfield": "warfield:2.5",
                    "polyring": "polyring:2", "free": "free:2",
                    "free-operad": "free-operad:2"}.get(name, name)
            dims, _ = preset_dims(spec, 8)
            assert len(dims.values) >= 5


class TestCsvInput:
    def test_round_trip_through_csv(self, tmp_path):
        _, text = invoke("series", "--preset", "fibonacci", "--max", "40")
        f = tmp_path / "fib.csv"
        f.write_text(text)
        code, out = invoke("fit", "--source", str(f))
        assert code == 0 and "denominator=[1, -1, -1]" in out

    def test_gnuplot_block(self):
        code, text = invoke("series", "--preset", "ex53-1", "--max", "6",
                            "--emit", "gnuplot")
        assert code == 0
        assert text.startswith("# series ex53-1\n$data << EOD\n")
        assert text.rstrip().endswith("EOD")

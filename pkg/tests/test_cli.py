import io
import json
import subprocess
import sys

import pytest

from metasweep.cli import CliOptions, main, parse_args, run
from metasweep.domain import EffectSizeKind
from metasweep.errors import InvalidAlpha, InvalidKind, UsageError

from conftest import DATA

HEADER = "study;variable;n_1;n_2;mean_1;std_1;mean_2;std_2;condition_1;condition_2"


def test_parse_documented_command_line():
    opts = parse_args(["--input_fname", "in.csv", "--alpha", "0.05", "--which_delta", "Hedges"])
    assert opts.input_path.name == "in.csv"
    assert opts.alpha == 0.05
    assert opts.which_delta is EffectSizeKind.HEDGES


def test_defaults():
    opts = parse_args(["--input_fname", "in.csv"])
    assert (opts.alpha, opts.which_delta, str(opts.output_dir)) == (
        0.05, EffectSizeKind.HEDGES, "output"
    )


def test_cohen_and_alpha():
    opts = parse_args(["--input_fname", "x", "--alpha", "0.01", "--which_delta", "Cohen"])
    assert opts.alpha == 0.01 and opts.which_delta is EffectSizeKind.COHEN


@pytest.mark.parametrize(
    "argv, error",
    [
        (["--input_fname", "x", "--which_delta", "Tukey"], InvalidKind),
        (["--input_fname", "x", "--which_delta", "hedges"], InvalidKind),
        (["--input_fname", "x", "--alpha", "0"], InvalidAlpha),
        (["--input_fname", "x", "--alpha", "1.5"], InvalidAlpha),
        (["--input_fname", "x", "--alpha", "five"], InvalidAlpha),
        (["--which_delta", "Hedges"], UsageError),
        (["--input_fname", "x", "--bogus"], UsageError),
        (["--input_f", "x"], UsageError),
    ],
)
def test_usage_errors(argv, error):
    with pytest.raises(error):
        parse_args(argv)


def test_unknown_kind_exits_2(capsys):
    assert main(["--input_fname", "x", "--which_delta", "Tukey"]) == 2
    assert "Tukey" in capsys.readouterr().err


def test_missing_input_exits_2(tmp_path):
    assert main(["--input_fname", str(tmp_path / "nope.csv"), "--output_dir", str(tmp_path)]) == 2


def test_parse_error_exits_3(tmp_path, caplog):
    code = main(["--input_fname", str(DATA / "mistakes" / "trailing_semicolon.csv"),
                 "--output_dir", str(tmp_path / "o")])
    assert code == 3
    assert "line 4" in caplog.text and "TrailingSeparator" in caplog.text


def test_io_error_exits_5(tmp_path):
    blocker = tmp_path / "f"
    blocker.write_text("")
    code = main(["--input_fname", str(DATA / "sample.csv"), "--output_dir", str(blocker / "o")])
    assert code == 5


def test_run_sample(tmp_path):
    out = io.StringIO()
    opts = CliOptions(DATA / "sample.csv", output_dir=tmp_path / "o", pdf=False)
    assert run(opts, out) == 0
    lines = out.getvalue().splitlines()
    assert len(lines) == 9
    assert lines[-1].startswith("manifest: ")
    assert any(line.startswith("AP mean velocity-EO|Retro: K=3 RandomEffects") for line in lines)
    assert len([p for p in (tmp_path / "o").iterdir() if p.is_dir()]) == 8


def test_summary_numbers_appear_in_data_csv(tmp_path):
    out = io.StringIO()
    run(CliOptions(DATA / "sample.csv", output_dir=tmp_path / "o", pdf=False), out)
    for line in out.getvalue().splitlines()[:-1]:
        name, rest = line.split(": K=", 1)
        data = (tmp_path / "o" / name / "data.csv").read_text(encoding="utf-8")
        values = {v for row in data.splitlines() for v in row.split(";")}
        mu = rest.split("mu=")[1].split(" ")[0]
        lo, hi = rest.split("[")[1].split("]")[0].split(", ")
        p = rest.split("p=")[1]
        assert {mu, lo, hi, p} <= values


def test_zero_sd_subgroup_is_skipped(tmp_path):
    text = "\n".join(
        [
            HEADER,
            "A;X;10;10;1;1;0;1;a;u",
            "B;X;12;10;2;1;0;1;a;u",
            "C;X;10;10;1;0;0;0;b;v",
            "D;X;10;10;1;1;0;1;b;v",
        ]
    ) + "\n"
    src = tmp_path / "in.csv"
    src.write_text(text, encoding="utf-8")
    out = io.StringIO()
    assert run(CliOptions(src, output_dir=tmp_path / "o", pdf=False), out) == 0
    doc = json.loads((tmp_path / "o" / "manifest.json").read_text(encoding="utf-8"))
    failed = {f["name"] for f in doc["failed"]}
    assert failed == {"X-b", "X-b|v", "X-v"}
    assert all("ZeroPooledSd" in f["reason"] and "'C'" in f["reason"] for f in doc["failed"])
    assert {f["name"] for f in doc["folders"]} == {"X-a", "X-a|u", "X-u"}
    assert "X-b: skipped" in out.getvalue()


def test_special_characters_reach_latex_escaped(tmp_path):
    text = HEADER + "\nSmith_#1 50%;X;10;10;1;1;0;1;a;u\nJones $2;X;12;10;2;1;0;1;a;u\n"
    src = tmp_path / "in.csv"
    src.write_text(text, encoding="utf-8")
    assert run(CliOptions(src, output_dir=tmp_path / "o", pdf=False), io.StringIO()) == 0
    tex = (tmp_path / "o" / "X-a|u" / "forest_plot.tex").read_text(encoding="utf-8")
    assert r"Smith\_\#1 50\%" in tex and r"Jones \$2" in tex


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "metasweep", "--input_fname", str(DATA / "sample.csv"),
         "--alpha", "0.05", "--which_delta", "Hedges", "--output_dir", str(tmp_path / "o"),
         "--no-pdf"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.count("AP mean velocity-") == 8

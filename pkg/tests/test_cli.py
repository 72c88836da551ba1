import pytest

from lmg_entanglement import cli
from lmg_entanglement.sweep import CSV_HEADER


def test_sweep_is_byte_identical(tmp_path):
    args = ["sweep", "--coupling", "ferro", "--gamma", "0.5", "--n", "10,20",
            "--h-start", "0", "--h-stop", "1.2", "--h-step", "0.2", "--method", "dicke,hp"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert cli.main(args + ["--out", str(a)]) == 0
    assert cli.main(args + ["--out", str(b), "--jobs", "2"]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().splitlines()[0] == ",".join(CSV_HEADER)


def test_sweep_to_stdout(capsys):
    assert cli.main(["sweep", "--n", "4", "--h-start", "0.5", "--h-stop", "0.5"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert len(out) == 2 and out[1].startswith("ferro,0.5,0.5,4,dicke,")


@pytest.mark.parametrize(
    "args",
    [
        ["sweep", "--method", "iso", "--gamma", "0.5"],
        ["sweep", "--h-step", "0"],
        ["sweep", "--gamma", "2"],
        ["sweep", "--coupling", "up"],
        ["scale", "--n", "20,10", "--h-star", "1"],
        ["nonsense"],
    ],
)
def test_config_errors_exit_one(args):
    with pytest.raises(SystemExit) as info:
        code = cli.main(args)
        raise SystemExit(code)
    assert info.value.code == 1


def test_unwritable_output_exits_three(tmp_path):
    bad = tmp_path / "missing" / "x.csv"
    assert cli.main(["sweep", "--n", "4", "--h-start", "0", "--h-stop", "0", "--out", str(bad)]) == 3


def test_scale(capsys):
    assert cli.main(["scale", "--n", "10,20", "--h-star", "1"]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 3


def test_derive_reports_one_sided_slopes(tmp_path, capsys):
    src = tmp_path / "s.csv"
    cli.main(["sweep", "--n", "30", "--h-start", "0.8", "--h-stop", "1.2", "--h-step", "0.1",
              "--out", str(src)])
    assert cli.main(["derive", "--in", str(src), "--h-star", "1.0"]) == 0
    captured = capsys.readouterr()
    assert "left=" in captured.err and "right=" in captured.err
    assert captured.out.splitlines()[0] == "n,method,h,dq_dh,de_g_dh"


def test_oracle_check(tmp_path, capsys):
    code = cli.main(["oracle-check", "--coupling", "antiferro", "--gamma", "0.5", "--n", "4,5",
                     "--h-start", "-0.5", "--h-stop", "0.5", "--h-step", "0.5"])
    assert code == 0
    assert "max abs difference" in capsys.readouterr().err


def test_oracle_check_global_sector_mismatch():
    code = cli.main(["oracle-check", "--coupling", "antiferro", "--gamma", "1", "--n", "2",
                     "--h-start", "0.1", "--h-stop", "0.1", "--sector", "global"])
    assert code == 2


def test_recipe_fig2(capsys):
    assert cli.main(["fig2"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 11

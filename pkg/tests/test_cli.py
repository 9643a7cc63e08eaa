import pytest

from rdn.bench import RESULT_HEADER, TRACE_HEADER
from rdn.cli import main


def test_single_run_converges(tmp_path, capsys):
    out = tmp_path / "r.csv"
    code = main(
        [
            "--family", "f1", "--ratio", "0.1", "--dim", "10", "--method", "damped",
            "--seed", "7", "--init-range", "9,10", "--out", str(out),
        ]
    )
    assert code == 0
    assert out.read_text().splitlines()[0] == RESULT_HEADER
    assert "converged" in capsys.readouterr().out


def test_single_run_trace(tmp_path):
    trace = tmp_path / "t.csv"
    code = main(
        [
            "--family", "f2", "--ratio", "0.01", "--dim", "5", "--method", "full",
            "--seed", "3", "--init-range", "9,10", "--trace", str(trace), "--quiet",
        ]
    )
    assert code == 0
    assert trace.read_text().splitlines()[0] == TRACE_HEADER


def test_nonconverged_run_exits_nonzero(tmp_path):
    code = main(
        [
            "--family", "f2", "--ratio", "0.001", "--dim", "1", "--method", "full",
            "--seed", "0", "--init-range", "1,1.01", "--max-iters", "50", "--quiet",
        ]
    )
    assert code == 1


def test_missing_arguments_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--family", "f1"])
    assert exc.value.code == 2
    assert "--ratio" in capsys.readouterr().err


def test_trace_with_table1_rejected(capsys):
    with pytest.raises(SystemExit):
        main(["--table1", "--trace", "t.csv"])
    assert "single run" in capsys.readouterr().err


def test_bad_init_range(capsys):
    with pytest.raises(SystemExit):
        main(["--family", "f1", "--ratio", "1", "--dim", "2", "--method", "full",
              "--init-range", "banana"])
    assert "LOW,HIGH" in capsys.readouterr().err


def test_table1_capped_grid(tmp_path, capsys):
    out = tmp_path / "grid.csv"
    code = main(["--table1", "--max-dim", "1", "--seed", "5", "--out", str(out), "--quiet"])
    lines = out.read_text().splitlines()
    assert lines[0] == RESULT_HEADER
    assert len(lines) == 13  # 6 cells at dim 1, both methods
    assert code in (0, 1)


def test_table1_deterministic_in_process(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    main(["--table1", "--max-dim", "10", "--seed", "9", "--out", str(a), "--quiet"])
    main(["--table1", "--max-dim", "10", "--seed", "9", "--out", str(b), "--quiet"])
    assert a.read_bytes() == b.read_bytes()

import pytest
from click.testing import CliRunner

from pauliforge.cli import main

HAM = "qubits 3\n0.3 ZYY\n0.5 ZZY\n-0.2 XYY\n0.7 XZY\n0.1 IZZ\n"


@pytest.fixture
def runner():
    return CliRunner()


def _write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


class TestCompile:
    def test_writes_circuit_and_report(self, runner, tmp_path):
        ham = _write(tmp_path, "ham.txt", HAM)
        out = tmp_path / "circ.txt"
        result = runner.invoke(main, ["compile", ham, "--out", str(out)])
        assert result.exit_code == 0, result.output
        assert out.read_text().startswith("qubits 3")
        assert "n_2q=" in result.output

    def test_order_out(self, runner, tmp_path):
        ham = _write(tmp_path, "ham.txt", HAM)
        out, order = tmp_path / "c.txt", tmp_path / "order.txt"
        result = runner.invoke(main, [
            "compile", ham, "--out", str(out), "--order-out", str(order),
        ])
        assert result.exit_code == 0
        assert order.read_text().startswith("qubits 3")

    def test_su4(self, runner, tmp_path):
        ham = _write(tmp_path, "ham.txt", HAM)
        out = tmp_path / "c.txt"
        result = runner.invoke(main, ["compile", ham, "--isa", "su4", "--out", str(out)])
        assert result.exit_code == 0
        assert "su4" in out.read_text()

    def test_heavy_hex(self, runner, tmp_path):
        ham = _write(tmp_path, "ham.txt", HAM)
        out = tmp_path / "c.txt"
        result = runner.invoke(main, ["compile", ham, "--heavy-hex", "1x1",
                                      "--out", str(out)])
        assert result.exit_code == 0
        assert "routed=1" in result.output

    def test_conflicting_topology(self, runner, tmp_path):
        ham = _write(tmp_path, "ham.txt", HAM)
        result = runner.invoke(main, [
            "compile", ham, "--topology", "all-to-all", "--heavy-hex", "1x1",
        ])
        assert result.exit_code != 0

    def test_bad_trotter_spec(self, runner, tmp_path):
        ham = _write(tmp_path, "ham.txt", HAM)
        result = runner.invoke(main, ["compile", ham, "--trotter", "order=two"])
        assert result.exit_code != 0

    def test_parse_error_message(self, runner, tmp_path):
        ham = _write(tmp_path, "ham.txt", "qubits 2\nbogus line\n")
        result = runner.invoke(main, ["compile", ham])
        assert result.exit_code != 0
        assert "line 2" in result.output

    def test_deterministic_output(self, runner, tmp_path):
        ham = _write(tmp_path, "ham.txt", HAM)
        outs = []
        for name in ("a.txt", "b.txt"):
            out = tmp_path / name
            result = runner.invoke(main, ["compile", ham, "--out", str(out)])
            assert result.exit_code == 0
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]


class TestVerifyAndStats:
    def test_compile_verify_stats(self, runner, tmp_path):
        ham = _write(tmp_path, "ham.txt", HAM)
        out, order = tmp_path / "c.txt", tmp_path / "o.txt"
        assert runner.invoke(main, [
            "compile", ham, "--out", str(out), "--order-out", str(order),
        ]).exit_code == 0
        result = runner.invoke(main, ["verify", str(out), str(order)])
        assert result.exit_code == 0
        assert float(result.output.split("=")[1]) < 1e-9
        result = runner.invoke(main, ["stats", str(out)])
        assert result.exit_code == 0
        assert "n_2q=" in result.output


class TestBench:
    def test_qaoa_deterministic(self, runner, tmp_path):
        files = []
        for name in ("q1.txt", "q2.txt"):
            out = tmp_path / name
            result = runner.invoke(main, [
                "bench-qaoa", "--size", "8", "--seed", "5", "--out", str(out),
            ])
            assert result.exit_code == 0
            files.append(out.read_bytes())
        assert files[0] == files[1]

    def test_random(self, runner, tmp_path):
        out = tmp_path / "r.txt"
        result = runner.invoke(main, [
            "bench-random", "--qubits", "6", "--terms", "8", "--out", str(out),
        ])
        assert result.exit_code == 0
        assert out.read_text().startswith("qubits 6")

    def test_qaoa_infeasible(self, runner):
        result = runner.invoke(main, ["bench-qaoa", "--size", "7"])
        assert result.exit_code != 0

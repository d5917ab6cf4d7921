import importlib.util
from pathlib import Path

BENCH = Path(__file__).resolve().parents[1] / "benchmarks" / "bench_quadrature.py"


def test_benchmark_runs_both_backends(capsys):
    spec = importlib.util.spec_from_file_location("bench_quadrature", BENCH)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    assert mod.main(["--sizes", "16", "--repeats", "1"]) == 0
    out = capsys.readouterr().out
    assert "numpy" in out and "speedup" in out

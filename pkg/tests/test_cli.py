import json
import math
import subprocess
import sys

import pytest

from flamecast.cli import choose_algorithm, main
from flamecast.errors import UnsupportedCase
from flamecast.fileio import layout_to_dict, load_instance, save_instance, write_json
from flamecast.generators import circular_instance, random_instance, triangle_instance
from flamecast.model import Instance, InstanceClass, Layout, Topology, classify, evaluate_cost
from flamecast.reductions.sat import example_drawing


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def report(text):
    return dict(line.split(": ", 1) for line in text.strip().splitlines() if ": " in line)


def test_solve_circular_auto(tmp_path, capsys):
    save_instance(tmp_path / "c.json", circular_instance(4, capacities=(4, 1, 1)))
    code, out, _ = run(["solve", tmp_path / "c.json", "--output", tmp_path / "l.json"], capsys)
    rep = report(out)
    assert code == 0 and rep["algorithm"] == "circular-dp"
    assert float(rep["cost"]) == 4.0
    assert (tmp_path / "l.json").exists()
    assert run(["verify", tmp_path / "c.json", tmp_path / "l.json"], capsys)[0] == 0


def test_solve_triangle_auto(tmp_path, capsys):
    save_instance(tmp_path / "t.json", triangle_instance())
    code, out, _ = run(["solve", tmp_path / "t.json"], capsys)
    rep = report(out)
    assert code == 0 and rep["algorithm"] == "convex-dp"
    assert rep["cost"] == "9.65685424949"  # 12 significant digits
    assert (tmp_path / "t.layout.json").exists()


def test_solve_lambda_zero_is_matching(tmp_path, capsys):
    save_instance(tmp_path / "m.json", random_instance(5, 2, seed=1, capacities=(3, 1)))
    code, out, _ = run(["solve", tmp_path / "m.json"], capsys)
    assert code == 0 and report(out)["algorithm"] == "matching"


@pytest.mark.parametrize(
    "inst, expected",
    [
        (random_instance(4, 1, seed=0, alpha=1.0, capacities=(4, 2, 1)), "matching"),
        (circular_instance(5, alpha=0.3, capacities=(5, 2, 1)), "circular-dp"),
        (triangle_instance(), "convex-dp"),
        (random_instance(6, 2, seed=3, alpha=0.5, capacities=(6, 3, 1)), "oracle"),
    ],
)
def test_dispatch(inst, expected):
    assert choose_algorithm(inst) == expected


def test_unsupported_names_nearest_solver(tmp_path, capsys):
    save_instance(tmp_path / "r.json", random_instance(12, 2, seed=0, alpha=0.5, capacities=(12, 12, 1)))
    code, _, err = run(["solve", tmp_path / "r.json"], capsys)
    assert code == 4 and "nearest is" in err
    with pytest.raises(UnsupportedCase):
        choose_algorithm(load_instance(tmp_path / "r.json"))


def test_wrong_explicit_algorithm_is_unsupported(tmp_path, capsys):
    save_instance(tmp_path / "r.json", random_instance(5, 1, seed=0, alpha=0.5))
    assert run(["solve", tmp_path / "r.json", "--algorithm", "circular-dp"], capsys)[0] == 4


def test_infeasible_and_parse_errors(tmp_path, capsys):
    save_instance(tmp_path / "x.json", Instance([(0, 0)] * 5, [(1, 1)] * 2, (2, 1), 0.5))
    assert run(["solve", tmp_path / "x.json"], capsys)[0] == 3
    (tmp_path / "bad.json").write_text("{\"sources\": 3}", encoding="utf-8")
    assert run(["solve", tmp_path / "bad.json"], capsys)[0] == 2
    assert run(["solve", tmp_path / "missing.json"], capsys)[0] == 2
    assert run(["solve", tmp_path / "x.json", "--epsilon", "-1"], capsys)[0] == 2


def test_verify_capacity_violation(tmp_path, capsys):
    inst = circular_instance(4, capacities=(4, 1, 1))
    layout = Layout(Topology(4, 1, [5, 5, 6, 6, None, 4, 4]), tuple(inst.sources) + ((0, 0), (0.5, 0.5), (-0.5, -0.5)))
    save_instance(tmp_path / "c.json", inst)
    write_json(tmp_path / "l.json", layout_to_dict(layout, inst, evaluate_cost(layout, inst)))
    code, out, _ = run(["verify", tmp_path / "c.json", tmp_path / "l.json"], capsys)
    assert code == 5 and "vertex 5 in layer 1" in out


def test_verify_stale_cost(tmp_path, capsys):
    save_instance(tmp_path / "c.json", circular_instance(4, capacities=(4, 1, 1)))
    run(["solve", tmp_path / "c.json", "--output", tmp_path / "l.json"], capsys)
    doc = json.loads((tmp_path / "l.json").read_text())
    doc["cost"] = 3.0
    (tmp_path / "l.json").write_text(json.dumps(doc))
    code, out, _ = run(["verify", tmp_path / "c.json", tmp_path / "l.json"], capsys)
    assert code == 5 and "recomputed cost: 4" in out


def test_verify_moved_source(tmp_path, capsys):
    save_instance(tmp_path / "c.json", circular_instance(4, capacities=(4, 1, 1)))
    run(["solve", tmp_path / "c.json", "--output", tmp_path / "l.json"], capsys)
    doc = json.loads((tmp_path / "l.json").read_text())
    doc["vertices"][0]["pos"] = [0.9, 0.0]
    (tmp_path / "l.json").write_text(json.dumps(doc))
    assert run(["verify", tmp_path / "c.json", tmp_path / "l.json"], capsys)[0] == 5


def test_generate(tmp_path, capsys):
    assert run(["generate", "circular", "--n", 6, "--radius", 1, "--output", tmp_path / "c.json"], capsys)[0] == 0
    inst = load_instance(tmp_path / "c.json")
    for k, p in enumerate(inst.sources):
        assert math.isclose(math.atan2(p.y, p.x) % (2 * math.pi), (k * math.pi / 3) % (2 * math.pi), abs_tol=1e-12)
    assert classify(inst) is InstanceClass.SOURCE_EQUALLY_SPACED

    run(["generate", "convex", "--n", 5, "--seed", 7, "--output", tmp_path / "v.json"], capsys)
    assert classify(load_instance(tmp_path / "v.json")) is InstanceClass.CONVEX
    run(["generate", "convex", "--n", 5, "--seed", 7, "--output", tmp_path / "v2.json"], capsys)
    assert (tmp_path / "v.json").read_bytes() == (tmp_path / "v2.json").read_bytes()

    run(["generate", "random", "--n", 5, "--sinks", 2, "--output", tmp_path / "r.json"], capsys)
    assert load_instance(tmp_path / "r.json").n_sinks == 2
    assert run(["generate", "circular", "--n", 0], capsys)[0] == 2
    assert run(["generate", "circular", "--n", 4, "--capacities", "1,2,1"], capsys)[0] == 2


def test_reduce_partition(tmp_path, capsys):
    (tmp_path / "p.json").write_text(json.dumps({"z": [4, 5, 6], "t": 15, "k": 1, "alpha": 0}))
    code, _, _ = run(["reduce", "3partition", tmp_path / "p.json", "--output", tmp_path / "i.json"], capsys)
    meta = json.loads((tmp_path / "i.meta.json").read_text())
    assert code == 0 and meta["canonical_cost"] == 3 and meta["c_hat"] == 8
    (tmp_path / "q.json").write_text(json.dumps({"z": [4, 5, 7], "t": 15, "k": 1, "alpha": 0}))
    assert run(["reduce", "3partition", tmp_path / "q.json", "--output", tmp_path / "j.json"], capsys)[0] == 6
    (tmp_path / "r.json").write_text(json.dumps({"z": [4, 5, 6]}))
    assert run(["reduce", "3partition", tmp_path / "r.json", "--output", tmp_path / "k.json"], capsys)[0] == 2


def test_reduce_sat(tmp_path, capsys):
    data = example_drawing().to_dict()
    (tmp_path / "d.json").write_text(json.dumps(data))
    code, _, _ = run(
        ["reduce", "sat3", tmp_path / "d.json", "--g", 7, "--alpha", 0.5, "--output", tmp_path / "s.json"], capsys
    )
    meta = json.loads((tmp_path / "s.meta.json").read_text())
    assert code == 0
    expected = meta["n_g"] * 7**0.5 + meta["n_2g"] * 14**0.5
    assert abs(meta["canonical_cost"] - expected) < 1e-9
    assert len(meta["gadget_index"]) == load_instance(tmp_path / "s.json").n_sinks
    data["clauses"][0]["pos"][0] += 1
    (tmp_path / "odd.json").write_text(json.dumps(data))
    assert run(["reduce", "sat3", tmp_path / "odd.json", "--output", tmp_path / "o.json"], capsys)[0] == 6


def test_render(tmp_path, capsys):
    save_instance(tmp_path / "t.json", triangle_instance())
    run(["solve", tmp_path / "t.json"], capsys)
    assert run(["render", tmp_path / "t.json", tmp_path / "t.layout.json", "--output", tmp_path / "t.svg"], capsys)[0] == 0
    assert (tmp_path / "t.svg").read_text().startswith("<?xml")
    code, out, _ = run(["render", tmp_path / "t.json"], capsys)
    assert code == 0 and "<svg" in out
    (tmp_path / "bad.json").write_text("[]")
    assert run(["render", tmp_path / "bad.json"], capsys)[0] == 2


def test_bench_matching(tmp_path, capsys):
    assert run(["bench", "matching-small", "--out", tmp_path / "b.csv"], capsys)[0] == 0
    rows = (tmp_path / "b.csv").read_text().strip().splitlines()
    assert rows[0] == "instance_id,algorithm,cost,oracle_cost,ratio,time"
    assert len(rows) == 21
    assert all(float(r.split(",")[4]) == 1.0 for r in rows[1:])


def test_console_entry_point(tmp_path):
    save_instance(tmp_path / "c.json", circular_instance(4, capacities=(4, 1, 1)))
    proc = subprocess.run(
        [sys.executable, "-m", "flamecast.cli", "solve", str(tmp_path / "c.json")], capture_output=True, text=True
    )
    assert proc.returncode == 0 and "circular-dp" in proc.stdout
    assert subprocess.run([sys.executable, "-m", "flamecast.cli"], capture_output=True).returncode == 2

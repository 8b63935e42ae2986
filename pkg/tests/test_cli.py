"""Command-line interface: JSON envelopes, determinism, exit codes, SVG."""
import json
import math

import pytest

from polysym.cli import run


@pytest.fixture
def invoke(capsys):
    def _invoke(*argv):
        code = run(list(argv))
        out = capsys.readouterr()
        return code, out.out, out.err

    return _invoke


def _result(stdout):
    env = json.loads(stdout)
    assert set(env) == {"tool_version", "input", "result", "timing"}
    assert env["timing"] is None
    return env["result"]


def test_aut_square(invoke):
    code, out, _ = invoke("aut", "--lengths", "1,1,1,1")
    assert code == 0
    r = _result(out)
    assert r["order"] == 8 and r["group"] == "Dihedral(4)"


def test_aut_examples(invoke):
    for lengths, order in (("2,3,2,4", 2), ("1,3,1,3", 4), ("3,1,1,3", 2),
                           ("1,2,3,2,1,4", 2), ("1,2,1,2,1,2", 6)):
        code, out, _ = invoke("aut", "--lengths", lengths)
        assert code == 0
        assert _result(out)["order"] == order


def test_rational_inputs(invoke):
    code, out, _ = invoke("aut", "--lengths", "1/2,0.5,1/2,0.5")
    assert code == 0
    assert _result(out)["order"] == 8  # all four lengths are exactly equal


def test_complex_and_homology_round_trip(invoke, tmp_path):
    code, out, _ = invoke("complex", "--lengths", "1,1,1,1,1",
                          "--space", "reduced")
    assert code == 0
    payload = _result(out)
    assert payload["f_vector"] == [30, 60, 24]
    f = tmp_path / "cx.json"
    f.write_text(out)
    code, direct, _ = invoke("homology", "--lengths", "1,1,1,1,1",
                             "--space", "reduced")
    assert code == 0
    code, via_json, _ = invoke("homology", "--from-json", str(f))
    assert code == 0
    assert _result(direct)["betti"] == [1, 8, 1]
    assert _result(direct)["betti"] == _result(via_json)["betti"]
    assert _result(direct)["torsion"] == _result(via_json)["torsion"]


def test_homology_fully_reduced(invoke):
    code, out, _ = invoke("homology", "--lengths", "1,1,1,1,1",
                          "--space", "fully-reduced")
    r = _result(out)
    assert r["betti"] == [1, 4, 0]
    assert r["torsion"] == [[], [2], []]
    assert r["orientable"] is False


def test_quotient_square_interval(invoke):
    code, out, _ = invoke("quotient", "--lengths", "1,1,1,1",
                          "--group", "full")
    assert code == 0
    r = _result(out)
    assert r["homology"]["betti"][:2] == [1, 0]


def test_determinism_byte_identical(invoke, tmp_path):
    outs = set()
    for _ in range(3):
        code, out, _ = invoke("pentagon-report", "--grid", "60")
        assert code == 0
        outs.add(out)
    assert len(outs) == 1
    svgs = set()
    for i in range(2):
        p = tmp_path / f"r{i}.svg"
        code, _, _ = invoke("render", "--lengths", "2,3,2,4",
                            "--out", str(p), "--seed", "7")
        assert code == 0
        svgs.add(p.read_bytes())
    assert len(svgs) == 1


def test_seed_echoed(invoke):
    code, out, _ = invoke("aut", "--lengths", "1,1,1", "--seed", "9")
    env = json.loads(out)
    assert env["input"]["seed"] == 9


def test_sample_subcommand(invoke):
    code, out, _ = invoke("sample", "--lengths", "1,1,1,1,1",
                          "--cell", "1,2|3|4|5")
    assert code == 0
    r = _result(out)
    assert r["cell"] == "1,2|3|4|5"
    assert math.hypot(*r["residual"]) <= 1e-10
    assert len(r["thetas"]) == 5


def test_fixed_set_subcommands(invoke):
    code, out, _ = invoke("fixed-set", "--lengths", "1,1,1,1,1",
                          "--reflection", "0", "--count", "2")
    assert code == 0
    r = _result(out)
    assert r["kind"] == "reflection" and all(r["verified"])
    code, out, _ = invoke("fixed-set", "--lengths", "1,1,1,1,1,1",
                          "--dihedral", "2", "--span", "1.5")
    assert code == 0
    r = _result(out)
    assert all(r["verified"]) and abs(r["max_span"] - 5 ** 0.5) < 1e-9


def test_classify_quad_with_svg(invoke, tmp_path):
    svg = tmp_path / "sq.svg"
    code, out, _ = invoke("classify-quad", "--lengths", "1,1,1,1",
                          "--svg", str(svg))
    assert code == 0
    r = _result(out)
    assert r["case"] == "interval"
    text = svg.read_text()
    assert text.startswith("<?xml") and 'width="512"' in text


def test_arrow_diagram_svg(invoke, tmp_path):
    svg = tmp_path / "a.svg"
    code, out, _ = invoke("sample", "--lengths", "1,1,1,1,1",
                          "--cell", "1|2|3|4|5", "--svg", str(svg))
    assert code == 0
    text = svg.read_text()
    assert text.count("marker-end") == 5  # one arrow per edge


def test_reports_with_figures_and_csv(invoke, tmp_path):
    figs = tmp_path / "figs"
    csvf = tmp_path / "hex.csv"
    code, out, _ = invoke("hexagon-report", "--figures-dir", str(figs),
                          "--csv", str(csvf))
    assert code == 0
    r = _result(out)
    assert r["convex_boundary_f_vector"] == [5, 9, 6]
    assert len(r["figures"]) == 2
    assert all((tmp_path / "figs").joinpath(p.split("/")[-1]).exists()
               for p in r["figures"])
    lines = csvf.read_text().strip().splitlines()
    assert lines[0] == "quantity,value"
    assert len(lines) == 11


def test_triangle_subcommand(invoke):
    code, out, _ = invoke("triangle", "--lengths", "2,3,4")
    assert code == 0
    assert _result(out)["kind"] == "scalene"


def test_exit_code_input_error(invoke):
    code, _, err = invoke("aut", "--lengths", "0,1,1")
    assert code == 2 and "error" in err
    code, _, err = invoke("homology", "--lengths", "1,1,1,1",
                          "--space", "nonsense")
    assert code == 2
    code, _, err = invoke("sample", "--lengths", "1,1,1,1",
                          "--cell", "bogus")
    assert code == 2


def test_exit_code_infeasible(invoke):
    code, _, err = invoke("complex", "--lengths", "1,1,1,9")
    assert code == 3 and "infeasible" in err
    code, _, err = invoke("classify-quad", "--lengths", "1,1,1,3")
    assert code == 3
    code, _, err = invoke("fixed-set", "--lengths", "1,1,1,1,1,1",
                          "--dihedral", "2", "--span", "9")
    assert code == 3


def test_render_rejects_surface_complex(invoke, tmp_path):
    code, _, err = invoke("render", "--lengths", "1,1,1,1,1",
                          "--out", str(tmp_path / "x.svg"))
    assert code == 2  # reduced pentagon complex is 2-dimensional

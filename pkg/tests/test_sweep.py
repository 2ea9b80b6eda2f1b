"""Tests for job parsing, sweep execution, and the CSV/SVG emitters."""

import math
import xml.etree.ElementTree as ET

import pytest

from coarsebell.sweep import (
    JobError,
    SeriesSpec,
    SweepRow,
    SweepResult,
    SweepSpec,
    emit_csv,
    emit_svg,
    optimized_point,
    parse_job,
    run_sweep,
)

JOB_TEXT = """\
# two outcome sizes under reference coarsening
system = generic-ref
sweep.variable = V
sweep.min = 0.0
sweep.max = 0.5
sweep.steps = 3

series[0].label = n=2
series[0].params.n = 2
series[1].label = n=3
series[1].params.n = 3
"""


@pytest.fixture(scope="module")
def small_result():
    spec = parse_job(JOB_TEXT)
    return run_sweep(spec, starts=16)


# ---------------------------------------------------------------------------
# parsing


def test_parse_job_happy_path():
    spec = parse_job(JOB_TEXT)
    assert spec.system == "generic-ref"
    assert spec.variable == "V"
    assert (spec.vmin, spec.vmax, spec.steps) == (0.0, 0.5, 3)
    assert [s.label for s in spec.series] == ["n=2", "n=3"]
    assert spec.series[0].params == {"n": 2.0}
    assert list(spec.grid()) == [0.0, 0.25, 0.5]


def test_parse_job_defaults_variable_and_labels():
    spec = parse_job(
        "system = lg-spin\nsweep.min = 0\nsweep.max = 1\nsweep.steps = 2\n"
        "series[3].params.j = 1.5\n"
    )
    assert spec.variable == "V"
    assert spec.series[0].label == "series3"


@pytest.mark.parametrize(
    "text,needle",
    [
        ("system = warp\nsweep.min=0\nsweep.max=1\nsweep.steps=2\n", "unknown system"),
        ("sweep.min = 0\nsweep.max = 1\nsweep.steps = 2\n", "missing the 'system' key"),
        ("system = photon\nsweep.max = 1\nsweep.steps = 2\n", "sweep.min"),
        ("system = photon\nsweep.min=0\nsweep.max=1\nsweep.steps=2\nbogus.key = 1\n", "unrecognized key"),
        ("system = photon\nsystem = photon\nsweep.min=0\nsweep.max=1\nsweep.steps=2\n", "duplicate key"),
        ("system = photon\nsweep.min=zero\nsweep.max=1\nsweep.steps=2\n", "not a number"),
        ("system = photon\nsweep.min=0\nsweep.max=1\nsweep.steps=2.5\n", "must be an integer"),
        ("system = photon\nsweep.variable = eta\nsweep.min=0\nsweep.max=1\nsweep.steps=2\n", "sweeps 'V'"),
        ("system = photon\nsweep.min=1\nsweep.max=0\nsweep.steps=2\n", "sweep.min < sweep.max"),
        ("system = photon\nsweep.min=0\nsweep.max=1\nsweep.steps=0\n", "steps must be >= 1"),
        ("system = photon\nsweep.min=0\nsweep.max=1\nsweep.steps=1\n", "single-point"),
        (
            "system = photon\nsweep.min=0\nsweep.max=1\nsweep.steps=2\n"
            "series[0].params.V = 1\n",
            "is the sweep variable",
        ),
        (
            "system = photon\nsweep.min=0\nsweep.max=1\nsweep.steps=2\n"
            "series[0].params.alpha = 1\n",
            "unknown parameter",
        ),
        ("system = photon\nnot a key value line\n", "expected 'key = value'"),
        ("system = photon\nsweep.min =\nsweep.max=1\nsweep.steps=2\n", "empty value"),
    ],
)
def test_parse_job_diagnostics(text, needle):
    with pytest.raises(JobError, match=needle):
        parse_job(text)


def test_single_point_grid_is_allowed():
    spec = parse_job(
        "system = generic-ref\nsweep.min = 0.25\nsweep.max = 0.25\nsweep.steps = 1\n"
        "series[0].label = only\nseries[0].params.n = 1\n"
    )
    assert list(spec.grid()) == [0.25]


def test_comments_and_blank_lines_are_ignored():
    spec = parse_job("# header\n\n  # indented comment\nsystem = ecs-ref\n" "sweep.min=0\nsweep.max=1\nsweep.steps=2\n")
    assert spec.system == "ecs-ref"


def test_integer_parameters_reject_fractions():
    with pytest.raises(JobError, match="must be an integer"):
        parse_job(
            "system = photon\nsweep.min=0\nsweep.max=1\nsweep.steps=2\n"
            "series[0].params.n = 2.5\n"
        )


def test_eta_grid_domain_is_validated_at_run_time():
    spec = SweepSpec(
        system="ecs-eta",
        variable="eta",
        vmin=0.5,
        vmax=1.5,
        steps=3,
        series=(SeriesSpec(label="a10", params={"alpha": 10.0}),),
    )
    with pytest.raises(JobError, match="eta grid"):
        run_sweep(spec, starts=16)


# ---------------------------------------------------------------------------
# execution


def test_run_sweep_matches_the_closed_form(small_result):
    rows = small_result.sorted_rows()
    assert len(rows) == 6
    for row in rows:
        want = 2.0 * math.sqrt(2.0) * math.exp(-4.0 * row.sweep_value)
        assert row.value == pytest.approx(want, abs=1e-6)
        assert row.converged
    # lexicographic (series, sweep_value) ordering
    keys = [(r.series, r.sweep_value) for r in rows]
    assert keys == sorted(keys)


def test_optimized_point_accepts_the_sweep_variable_as_parameter():
    res = optimized_point("generic-ref", {"n": 2, "V": 0.25}, starts=16)
    assert res.value == pytest.approx(2.0 * math.sqrt(2.0) * math.exp(-1.0), abs=1e-6)
    sharp = optimized_point("generic-ref", {"n": 2}, starts=16)
    assert sharp.value == pytest.approx(2.0 * math.sqrt(2.0), abs=1e-6)


def test_optimized_point_rejects_bad_input():
    with pytest.raises(JobError, match="unknown system"):
        optimized_point("warp", {})
    with pytest.raises(JobError, match="unknown parameter"):
        optimized_point("photon", {"alpha": 3})
    with pytest.raises(JobError, match="eta grid"):
        optimized_point("ecs-eta", {"eta": 1.2})
    with pytest.raises(JobError, match="must be an integer"):
        optimized_point("photon", {"n": 1.5})
    with pytest.raises(JobError):
        optimized_point("photon", {"n": 9})  # cutoff range comes from the model


# ---------------------------------------------------------------------------
# CSV


def test_csv_layout_and_round_trip(tmp_path, small_result):
    path = tmp_path / "out.csv"
    emit_csv(small_result, str(path))
    data = path.read_bytes().decode()
    lines = data.split("\n")
    assert lines[0] == "series,sweep_value,value,converged"
    assert lines[-1] == ""  # trailing LF
    assert len(lines) == 8  # header + 6 rows + trailing empty
    assert "\r" not in data
    for line, row in zip(lines[1:], small_result.sorted_rows()):
        series, sv, value, conv = line.split(",")
        assert series == row.series
        assert abs(float(sv) - row.sweep_value) <= 1e-11 * max(1.0, abs(row.sweep_value))
        assert abs(float(value) - row.value) <= 1e-11 * max(1.0, abs(row.value))
        assert conv == ("true" if row.converged else "false")


def test_csv_emits_header_only_without_series(tmp_path):
    spec = SweepSpec(system="generic-ref", variable="V", vmin=0.0, vmax=1.0, steps=3)
    result = run_sweep(spec, starts=16)
    path = tmp_path / "empty.csv"
    emit_csv(result, str(path))
    assert path.read_text() == "series,sweep_value,value,converged\n"


def test_csv_bytes_are_deterministic(tmp_path, small_result):
    p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
    emit_csv(small_result, str(p1))
    emit_csv(small_result, str(p2))
    assert p1.read_bytes() == p2.read_bytes()


# ---------------------------------------------------------------------------
# SVG


def test_svg_structure(tmp_path, small_result):
    path = tmp_path / "plot.svg"
    emit_svg(small_result, str(path), title="demo")
    raw = path.read_text()
    root = ET.fromstring(raw)  # well-formed XML
    assert root.tag.endswith("svg")
    assert root.attrib["viewBox"] == "0 0 800 600"
    ns = "{http://www.w3.org/2000/svg}"
    polylines = root.findall(f"{ns}polyline")
    assert len(polylines) == 2  # one per series
    dashed = [e for e in root.iter(f"{ns}line") if "stroke-dasharray" in e.attrib]
    assert len(dashed) == 1
    texts = [e.text for e in root.iter(f"{ns}text")]
    assert "n=2" in texts and "n=3" in texts and "demo" in texts


def test_svg_points_are_affine_in_the_data(tmp_path, small_result):
    path = tmp_path / "plot.svg"
    emit_svg(small_result, str(path))
    root = ET.fromstring(path.read_text())
    ns = "{http://www.w3.org/2000/svg}"
    poly = root.findall(f"{ns}polyline")[0]
    pts = [tuple(map(float, p.split(","))) for p in poly.attrib["points"].split()]
    assert len(pts) == 3
    xs = [p[0] for p in pts]
    # a uniform sweep grid lands on uniformly spaced pixel columns
    assert xs[1] - xs[0] == pytest.approx(xs[2] - xs[1], abs=2e-3)
    assert xs == sorted(xs)
    # the dashed rule sits at the pixel row of value 2.0, inside the frame
    dashed = [e for e in root.iter(f"{ns}line") if "stroke-dasharray" in e.attrib][0]
    y_rule = float(dashed.attrib["y1"])
    assert dashed.attrib["y1"] == dashed.attrib["y2"]
    ys = [p[1] for p in pts]
    rows = [r for r in small_result.sorted_rows() if r.series == "n=2"]
    above = [p for p, r in zip(ys, rows) if r.value > 2.0]
    below = [p for p, r in zip(ys, rows) if r.value < 2.0]
    assert all(y < y_rule for y in above)  # larger value = higher = smaller y
    assert all(y > y_rule for y in below)


def test_svg_bytes_are_deterministic(tmp_path, small_result):
    p1, p2 = tmp_path / "a.svg", tmp_path / "b.svg"
    emit_svg(small_result, str(p1), title="t")
    emit_svg(small_result, str(p2), title="t")
    assert p1.read_bytes() == p2.read_bytes()


def test_svg_escapes_markup_in_labels(tmp_path):
    rows = (
        SweepRow(series="a<b>&", sweep_value=0.0, value=1.0, converged=True),
        SweepRow(series="a<b>&", sweep_value=1.0, value=0.5, converged=True),
    )
    spec = SweepSpec(system="generic-ref", variable="V", vmin=0.0, vmax=1.0, steps=2)
    path = tmp_path / "esc.svg"
    emit_svg(SweepResult(spec=spec, rows=rows), str(path))
    root = ET.fromstring(path.read_text())
    assert any((e.text or "") == "a<b>&" for e in root.iter())

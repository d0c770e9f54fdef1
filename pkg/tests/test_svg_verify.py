import xml.etree.ElementTree as ET

import numpy as np

from vekua_ohm.config import RunConfig
from vekua_ohm.svg import render_streamlines
from vekua_ohm.verify import CheckResult, check_fit, check_sequence, report, run_all


def test_svg_is_well_formed():
    line = np.column_stack([np.linspace(-0.5, 0.5, 60), np.zeros(60)])
    text = render_streamlines([line, line[:1]], arrow_every=20, title="demo")
    root = ET.fromstring(text)
    ns = "{http://www.w3.org/2000/svg}"
    assert len(root.findall(f"{ns}polyline")) == 1
    assert len(root.findall(f"{ns}polygon")) == 2
    assert root.find(f"{ns}circle") is not None


def test_svg_orientation():
    text = render_streamlines([np.array([[0.0, 0.0], [0.0, 1.0]])], size=100, margin=0)
    assert 'points="50.000,50.000 50.000,0.000"' in text


def test_check_result_formatting():
    ok = CheckResult("a", 1e-9, 1e-6)
    bad = CheckResult("b", float("nan"), 1.0)
    assert ok.passed and not bad.passed
    text = report([ok, bad])
    assert "PASS" in text and "FAIL" in text and text.endswith("1/2 checks passed\n")


def test_suites_subset_deterministic():
    cfg = RunConfig(seed=5)
    a = report(run_all(cfg, [check_sequence, check_fit]))
    b = report(run_all(cfg, [check_sequence, check_fit]))
    assert a == b and "FAIL" not in a

import xml.etree.ElementTree as ET

from sqfree.figures import SIZE, Frame, dominant_pole, phase_svg, poles_svg
from sqfree.genfun import rational_gf
from sqfree.roots import pole_zero_report
from sqfree.thermo import critical_curve

NS = "{http://www.w3.org/2000/svg}"


def test_frame_corners():
    f = Frame(-1, 1, 0, 2)
    assert f(-1, 0) == (60, 740)
    assert f(1, 2) == (740, 60)


def test_poles_svg_is_valid_and_stable():
    ps = pole_zero_report(rational_gf(4))
    a = poles_svg([ps])
    assert a == poles_svg([pole_zero_report(rational_gf(4))])
    root = ET.fromstring(a)
    assert root.get("width") == str(SIZE) and root.get("height") == str(SIZE)
    circles = root.findall(f"{NS}circle")
    # unit circle, 13 zeros, dominant ring, legend glyphs
    assert len([c for c in circles if c.get("stroke") == "blue"]) == 13 + 1
    assert any(c.get("stroke") == "green" for c in circles)


def test_dominant_pole():
    ps = pole_zero_report(rational_gf(2))
    assert abs(dominant_pole(ps) - 0.6180339887) < 1e-9


def test_phase_svg(table40):
    curve = critical_curve(table40, [0.5, 1.0, 2.0], "finite")
    svg = phase_svg(curve)
    root = ET.fromstring(svg)
    assert len(root.findall(f"{NS}polyline")) == 2
    assert svg == phase_svg(curve)

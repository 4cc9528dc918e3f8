import xml.etree.ElementTree as ET

from flamecast.convex_dp import solve_convex
from flamecast.generators import circular_instance, triangle_instance
from flamecast.model import Instance
from flamecast.render import render_svg

NS = "{http://www.w3.org/2000/svg}"


def parse(svg):
    return ET.fromstring(svg.split("?>", 1)[1])


def test_instance_only_point_plot():
    root = parse(render_svg(circular_instance(6)))
    assert len(root.findall(f".//{NS}g[@id='sources']/{NS}circle")) == 6
    assert len(root.findall(f".//{NS}g[@id='sinks']/{NS}rect")) == 1
    assert root.find(f".//{NS}g[@id='edges']") is None


def test_triangle_layout_is_well_formed_and_deterministic():
    inst = triangle_instance()
    layout = solve_convex(inst).layout
    svg = render_svg(inst, layout)
    assert svg == render_svg(inst, layout)
    root = parse(svg)
    lines = root.findall(f".//{NS}g[@id='edges']/{NS}line")
    assert len(lines) == len(layout.topology.edges())
    widths = {float(l.get("stroke-width")) for l in lines}
    assert len(widths) == 1  # alpha = 0: every edge has the same width


def test_viewbox_has_five_percent_margin():
    inst = Instance([(0, 0), (10, 0)], [(10, 10)], (2, 1), 0.5)
    x, y, w, h = (float(t) for t in parse(render_svg(inst)).get("viewBox").split())
    assert (x, y, w, h) == (-0.5, -10.5, 11.0, 11.0)


def test_stroke_width_grows_with_load():
    inst = Instance([(1, 0), (1, 0)], [(0, 0)], (2, 2, 1), 1.0)
    from flamecast.model import Layout, Topology

    layout = Layout(Topology(2, 1, [3, 3, None, 2]), tuple(inst.sources) + ((0, 0), (0.5, 0)))
    root = parse(render_svg(inst, layout))
    widths = sorted(float(l.get("stroke-width")) for l in root.findall(f".//{NS}line"))
    assert widths[-1] == 2 * widths[0]


def test_empty_instance():
    root = parse(render_svg(Instance([], [], (1, 1), 0.0)))
    assert root.tag == f"{NS}svg"

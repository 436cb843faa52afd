import re
import xml.etree.ElementTree as ET

import pytest
from hypothesis import given, settings

from graphmodal.image_encoder import (
    DISTINCT_PALETTE,
    IMAGE_STYLES,
    MUTED_PALETTE,
    TARGET_COLOR,
    ImageEncoding,
    RenderConfig,
    layout,
    render_svg,
)
from graphmodal.graph import LabeledGraph
from helpers import as_sample, samples, triangle_sample

_CIRCLE_RE = re.compile(r'<circle cx="([\d.]+)" cy="([\d.]+)" r="([\d.]+)" fill="(#[0-9a-f]{6})"')
_TEXT_RE = re.compile(r'<text [^>]*fill="(#[0-9a-f]{6})">([^<]*)</text>')


def circles(doc: str) -> list[tuple[float, float, float, str]]:
    return [(float(x), float(y), float(r), fill) for x, y, r, fill in _CIRCLE_RE.findall(doc)]


def texts(doc: str) -> list[tuple[str, str]]:
    return _TEXT_RE.findall(doc)


def sample_with_labels(labels, edges, target, class_count=None):
    g = LabeledGraph(list(labels), edges, labels, class_count=class_count)
    return as_sample(g, target)


# -- layout --------------------------------------------------------------------


def test_layout_deterministic():
    s = triangle_sample()
    assert layout(s, seed=5) == layout(s, seed=5)
    assert layout(s, seed=5) != layout(s, seed=6)


def test_layout_respects_margins():
    s = triangle_sample()
    for (x, y) in layout(s, margin=60.0).values():
        assert 60.0 <= x <= 1024.0 - 60.0
        assert 60.0 <= y <= 1024.0 - 60.0


def test_layout_singleton_centered():
    s = as_sample(LabeledGraph([3], labels={3: 1}, class_count=2), 3)
    assert layout(s) == {3: (512.0, 512.0)}


@settings(deadline=None, max_examples=25)
@given(samples(max_nodes=14))
def test_layout_covers_every_node(sample):
    pos = layout(sample, iterations=30)
    assert set(pos) == set(sample.subgraph.nodes)


# -- document structure -----------------------------------------------------------


def test_svg_is_well_formed_xml():
    for style in IMAGE_STYLES:
        doc = render_svg(triangle_sample(), style).svg_document
        root = ET.fromstring(doc)
        assert root.tag.endswith("svg")
        assert root.get("style") == "background-color:#ffffff"


def test_rendering_is_deterministic():
    a = render_svg(triangle_sample(), "aggregate").svg_document
    b = render_svg(triangle_sample(), "aggregate").svg_document
    assert a == b


def test_element_counts():
    s = triangle_sample()
    doc = render_svg(s, "original").svg_document
    assert doc.count("<line ") == s.subgraph.edge_count
    assert doc.count("<circle ") == s.subgraph.node_count
    assert doc.count("<text ") == s.subgraph.node_count


def test_target_is_red_question_mark():
    for style in IMAGE_STYLES:
        doc = render_svg(triangle_sample(), style).svg_document
        fills = [fill for *_, fill in circles(doc)]
        assert fills.count(TARGET_COLOR) == 1
        assert any(body == "?" for _, body in texts(doc))


def test_metadata_and_token_cost():
    enc = render_svg(triangle_sample(), "original")
    assert isinstance(enc, ImageEncoding)
    assert enc.style == "original"
    assert enc.modality == "image"
    assert enc.token_estimate == 765
    custom = render_svg(triangle_sample(), "original", RenderConfig(image_token_cost=9))
    assert custom.token_estimate == 9


def test_unknown_style():
    with pytest.raises(ValueError, match="unknown image style"):
        render_svg(triangle_sample(), "sepia")


# -- style semantics -----------------------------------------------------------------


def two_hop_sample():
    # target 0; node 1 is one hop away, node 2 two hops
    labels = {0: 0, 1: 1, 2: 2}
    return sample_with_labels(labels, [(0, 1), (1, 2)], target=0, class_count=3)


def test_node_size_increase_scales_every_node():
    s = two_hop_sample()
    base = {fill: r for _, _, r, fill in circles(render_svg(s, "original").svg_document)}
    boosted = {fill: r for _, _, r, fill in circles(render_svg(s, "node_size_increase").svg_document)}
    for fill, r in base.items():
        assert boosted[fill] == pytest.approx(r * 1.6, abs=0.02)


def test_hop_scaled_size_scales_only_neighbors():
    s = two_hop_sample()
    doc = render_svg(s, "hop_scaled_size").svg_document
    radii = {fill: r for _, _, r, fill in circles(doc)}
    target_r = radii[TARGET_COLOR]
    one_hop_r = radii[MUTED_PALETTE[1]]
    two_hop_r = radii[MUTED_PALETTE[2]]
    assert one_hop_r == pytest.approx(target_r * 1.5, abs=0.02)
    assert two_hop_r == pytest.approx(target_r, abs=0.02)


def test_distinct_colors_switches_palette():
    s = two_hop_sample()
    muted = {fill for *_, fill in circles(render_svg(s, "original").svg_document)}
    distinct = {fill for *_, fill in circles(render_svg(s, "distinct_colors").svg_document)}
    assert muted - {TARGET_COLOR} <= set(MUTED_PALETTE)
    assert distinct - {TARGET_COLOR} <= set(DISTINCT_PALETTE)
    assert muted != distinct


def test_contrast_text_flips_on_dark_fills():
    # label 0 maps to a dark blue in both palettes, so contrast text is white
    s = two_hop_sample()
    plain = dict(texts(render_svg(s, "original").svg_document))
    contrast = texts(render_svg(s, "contrast_text").svg_document)
    assert set(plain) == {"#000000"}
    assert any(color == "#ffffff" for color, _ in contrast)


def test_aggregate_combines_all_boosts():
    s = two_hop_sample()
    doc = render_svg(s, "aggregate").svg_document
    radii = {fill: r for _, _, r, fill in circles(doc)}
    assert radii[TARGET_COLOR] == pytest.approx(12.0 * 1.6, abs=0.02)
    assert radii[DISTINCT_PALETTE[1]] == pytest.approx(12.0 * 1.6 * 1.5, abs=0.02)
    assert radii[DISTINCT_PALETTE[2]] == pytest.approx(12.0 * 1.6, abs=0.02)


def test_palette_exhaustion_raises():
    labels = {v: v for v in range(9)}
    g = LabeledGraph(list(range(9)), [], labels, class_count=9)
    s = as_sample(g, 0)
    with pytest.raises(ValueError, match="palette"):
        render_svg(s, "distinct_colors")


def test_config_validation():
    with pytest.raises(ValueError, match="margin"):
        RenderConfig(width=100, height=100, margin=60.0)
    with pytest.raises(ValueError, match="positive"):
        RenderConfig(base_radius=0)
    with pytest.raises(ValueError, match="reserved"):
        RenderConfig(palette=("#ff0000",))


@settings(deadline=None, max_examples=20)
@given(samples(max_nodes=10))
def test_all_coordinates_have_two_decimals(sample):
    doc = render_svg(sample, "original").svg_document
    for attr in re.findall(r'(?<![\w-])(?:cx|cy|x1|y1|x2|y2|r)="([^"]+)"', doc):
        assert re.fullmatch(r"\d+\.\d{2}", attr), attr

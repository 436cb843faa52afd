"""SVG renderings of a sample under six visual styles.

The layout is a seeded force-directed embedding, so rendering the same
sample with the same config is byte-identical.  The target node is always
drawn red with a "?" glyph; class colors come from a palette that never
contains red.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .sampling import SubgraphSample

IMAGE_STYLES = (
    "original",
    "node_size_increase",
    "contrast_text",
    "distinct_colors",
    "hop_scaled_size",
    "aggregate",
)

TARGET_COLOR = "#ff0000"

#: high-contrast class palette (red is reserved for the target)
DISTINCT_PALETTE = (
    "#1f77b4",
    "#2ca02c",
    "#ff7f0e",
    "#9467bd",
    "#8c564b",
    "#e377c2",
    "#17becf",
    "#bcbd22",
)

#: low-contrast blue-grey ramp used when distinct colors are not requested
MUTED_PALETTE = (
    "#4f6d9e",
    "#5878a8",
    "#6283b2",
    "#6c8ebc",
    "#7699c6",
    "#80a4d0",
    "#8aafda",
    "#94bae4",
)

DEFAULT_IMAGE_TOKEN_COST = 765


@dataclass(frozen=True)
class RenderConfig:
    width: int = 1024
    height: int = 1024
    base_radius: float = 12.0
    size_boost_factor: float = 1.6
    hop_scale_factor: float = 1.5
    palette: tuple[str, ...] = DISTINCT_PALETTE
    muted_palette: tuple[str, ...] = MUTED_PALETTE
    layout_seed: int = 0
    layout_iterations: int = 300
    margin: float = 60.0
    edge_color: str = "#999999"
    image_token_cost: int = DEFAULT_IMAGE_TOKEN_COST

    def __post_init__(self):
        if min(self.width, self.height) <= 2 * self.margin:
            raise ValueError("canvas too small for the margin")
        if self.base_radius <= 0 or self.size_boost_factor <= 0 or self.hop_scale_factor <= 0:
            raise ValueError("radius and scale factors must be positive")
        if self.layout_iterations < 1:
            raise ValueError("layout_iterations must be >= 1")
        for colors in (self.palette, self.muted_palette):
            if not colors:
                raise ValueError("palette must not be empty")
            if TARGET_COLOR in colors:
                raise ValueError("the target color is reserved and cannot appear in a palette")


@dataclass(frozen=True)
class ImageEncoding:
    svg_document: str
    token_estimate: int
    style: str | None = None
    modality: str = "image"


def layout(
    sample: SubgraphSample,
    seed: int = 0,
    iterations: int = 300,
    width: float = 1024.0,
    height: float = 1024.0,
    margin: float = 60.0,
) -> dict[int, tuple[float, float]]:
    """Seeded force-directed node positions inside the canvas margins."""
    order = sample.subgraph.sorted_nodes()
    n = len(order)
    if n == 0:
        return {}
    if n == 1:
        return {order[0]: (width / 2.0, height / 2.0)}
    index = {v: i for i, v in enumerate(order)}
    src = np.array([index[a] for a, b in sample.subgraph.sorted_edges()], dtype=int)
    dst = np.array([index[b] for a, b in sample.subgraph.sorted_edges()], dtype=int)
    rng = np.random.default_rng(seed)
    lo = np.array([margin, margin])
    hi = np.array([width - margin, height - margin])
    pos = rng.uniform(lo, hi, size=(n, 2))
    k = np.sqrt((hi - lo).prod() / n)
    temp = min(width, height) / 10.0
    cooling = temp / iterations
    for _ in range(iterations):
        delta = pos[:, None, :] - pos[None, :, :]
        dist = np.maximum(np.sqrt((delta**2).sum(axis=2)), 1e-9)
        disp = (delta * (k * k / dist**2)[:, :, None]).sum(axis=1)
        if len(src):
            d = pos[src] - pos[dst]
            dl = np.maximum(np.sqrt((d**2).sum(axis=1)), 1e-9)
            pull = d * (dl / k)[:, None]
            np.add.at(disp, src, -pull)
            np.add.at(disp, dst, pull)
        length = np.maximum(np.sqrt((disp**2).sum(axis=1)), 1e-9)
        step = np.minimum(length, temp)
        pos += disp / length[:, None] * step[:, None]
        pos = np.clip(pos, lo, hi)
        temp = max(temp - cooling, 1e-3)
    return {v: (float(pos[i, 0]), float(pos[i, 1])) for v, i in index.items()}


def _luminance(color: str) -> float:
    r, g, b = (int(color[i : i + 2], 16) / 255.0 for i in (1, 3, 5))
    return 0.2126 * r + 0.7152 * g + 0.0722 * b


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def render_svg(sample: SubgraphSample, style: str = "original", config: RenderConfig | None = None) -> ImageEncoding:
    """Render one sample to an SVG document in the requested style."""
    if style not in IMAGE_STYLES:
        raise ValueError(f"unknown image style {style!r}")
    config = config or RenderConfig()
    g = sample.subgraph
    palette = config.palette if style in ("distinct_colors", "aggregate") else config.muted_palette
    if g.class_count > len(palette):
        raise ValueError(f"palette has {len(palette)} colors but the graph declares {g.class_count} classes")
    boost = config.size_boost_factor if style in ("node_size_increase", "aggregate") else 1.0
    hop_scale = config.hop_scale_factor if style in ("hop_scaled_size", "aggregate") else 1.0
    contrast = style in ("contrast_text", "aggregate")
    pos = layout(
        sample,
        seed=config.layout_seed,
        iterations=config.layout_iterations,
        width=config.width,
        height=config.height,
        margin=config.margin,
    )
    one_hop = g.neighbors(sample.target)
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{config.width}" height="{config.height}"'
        f' viewBox="0 0 {config.width} {config.height}" style="background-color:#ffffff">'
    ]
    for a, b in g.sorted_edges():
        (x1, y1), (x2, y2) = pos[a], pos[b]
        lines.append(
            f'  <line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}"'
            f' stroke="{config.edge_color}" stroke-width="1.50" />'
        )
    for v in g.sorted_nodes():
        x, y = pos[v]
        r = config.base_radius * boost
        if v in one_hop:
            r *= hop_scale
        fill = TARGET_COLOR if v == sample.target else palette[g.labels[v]]
        text = "?" if v == sample.target else str(g.labels[v])
        text_color = ("#000000" if _luminance(fill) > 0.5 else "#ffffff") if contrast else "#000000"
        lines.append(
            f'  <circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(r)}" fill="{fill}"'
            f' stroke="#333333" stroke-width="1.00" />'
        )
        lines.append(
            f'  <text x="{_fmt(x)}" y="{_fmt(y)}" text-anchor="middle" dominant-baseline="central"'
            f' font-family="sans-serif" font-size="{_fmt(r * 1.1)}" fill="{text_color}">{text}</text>'
        )
    lines.append("</svg>")
    return ImageEncoding(
        svg_document="\n".join(lines),
        token_estimate=config.image_token_cost,
        style=style,
    )

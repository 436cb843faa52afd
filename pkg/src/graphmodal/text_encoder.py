"""Text serializations of a sample: node-label mapping plus edge structure.

Five edge representations are supported.  The edge list, edge text and
adjacency list representations are prefixed with the node-label mapping
block; GML and GraphML carry labels inline and stand alone.  All output is
canonical: node ids ascending, edges ascending by (min, max), so encoding
never depends on construction order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .metrics import TokenEstimator, estimate_tokens
from .sampling import SubgraphSample

EDGE_REPRESENTATIONS = ("edgelist", "edgetext", "adjacency", "gml", "graphml")

#: representations whose payload is the mapping block plus the edge block
_MAPPED_REPRESENTATIONS = ("edgelist", "edgetext", "adjacency")

GRAPHML_HEADER = (
    '<graphml xmlns="http://graphml.graphdrawing.org/xmlns"'
    ' xmlns:xsi="http://www.w3.org/2001/XMLSchema-instance"'
    ' xsi:schemaLocation="http://graphml.graphdrawing.org/xmlns'
    ' http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd">'
)


@dataclass(frozen=True)
class TextEncoding:
    payload: str
    token_estimate: int
    representation: str | None = None
    modality: str = "text"


def _label_text(sample: SubgraphSample, v: int) -> str:
    return "?" if v == sample.target else str(sample.subgraph.labels[v])


def encode_node_label_mapping(sample: SubgraphSample) -> str:
    """``Node <id>: Label <label>|`` entries, ids ascending, target masked."""
    return " ".join(
        f"Node {v}: Label {_label_text(sample, v)}|" for v in sample.subgraph.sorted_nodes()
    )


def _encode_edgelist(sample: SubgraphSample) -> str:
    pairs = ", ".join(f"({a}, {b})" for a, b in sample.subgraph.sorted_edges())
    return f"Edge list: [{pairs}]"


def _encode_edgetext(sample: SubgraphSample) -> str:
    head = "Edge connections (source node - target node):"
    sentences = " ".join(
        f"Node {a} is connected to Node {b}." for a, b in sample.subgraph.sorted_edges()
    )
    return f"{head} {sentences}" if sentences else head


def _encode_adjacency(sample: SubgraphSample) -> str:
    g = sample.subgraph
    body = ", ".join(
        f"{v}: [{', '.join(str(u) for u in sorted(g.neighbors(v)))}]" for v in g.sorted_nodes()
    )
    return f"Adjacency list: {{{body}}}"


def _encode_gml(sample: SubgraphSample) -> str:
    lines = ["graph ["]
    for v in sample.subgraph.sorted_nodes():
        lines += ["  node [", f"    id {v}", f"    label {_label_text(sample, v)}", "  ]"]
    for a, b in sample.subgraph.sorted_edges():
        lines += ["  edge [", f"    source {a}", f"    target {b}", "  ]"]
    lines.append("]")
    return "\n".join(lines)


def _encode_graphml(sample: SubgraphSample) -> str:
    lines = [GRAPHML_HEADER, '    <graph edgedefault="undirected">']
    for v in sample.subgraph.sorted_nodes():
        lines.append(f'        <node id="{v}" label="{_label_text(sample, v)}" />')
    for a, b in sample.subgraph.sorted_edges():
        lines.append(f'        <edge source="{a}" target="{b}" />')
    lines += ["    </graph>", "</graphml>"]
    return "\n".join(lines)


_ENCODERS = {
    "edgelist": _encode_edgelist,
    "edgetext": _encode_edgetext,
    "adjacency": _encode_adjacency,
    "gml": _encode_gml,
    "graphml": _encode_graphml,
}


def encode_edges(sample: SubgraphSample, representation: str) -> str:
    """The edge block alone, in the requested representation."""
    try:
        encoder = _ENCODERS[representation]
    except KeyError:
        raise ValueError(f"unknown representation {representation!r}") from None
    return encoder(sample)


def encode_text(
    sample: SubgraphSample,
    representation: str = "adjacency",
    estimator: TokenEstimator = estimate_tokens,
) -> TextEncoding:
    """Full text payload for a sample in one representation."""
    edge_block = encode_edges(sample, representation)
    if representation in _MAPPED_REPRESENTATIONS:
        payload = f"{encode_node_label_mapping(sample)}\n{edge_block}"
    else:
        payload = edge_block
    return TextEncoding(
        payload=payload,
        token_estimate=estimator(payload),
        representation=representation,
    )

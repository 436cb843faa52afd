"""Prompt assembly and response parsing for node label prediction.

Instructions are fixed per modality; payloads ride along separately so a
backend can wrap them however its wire format requires.  Responses are
parsed by scanning for the last ``Label of Node = <integer>`` occurrence.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .image_encoder import ImageEncoding
from .text_encoder import TextEncoding

MODALITIES = ("text", "motif", "image", "text+image")

ANSWER_FORMAT = (
    'The response should be in the format "Label of Node = <predicted label>".'
    ' If the predicted label cannot be determined, return "Label of Node = -1".'
)

_ADJACENCY_CLAUSE = (
    'the adjacency list information as a dictionary of type "node: neighborhood"'
    " and node-label mapping in the text enclosed in triple backticks"
)

TEXT_INSTRUCTION = (
    "Task: Node Label Prediction (Predict the label of the node marked with a ?)"
    f" given {_ADJACENCY_CLAUSE}. {ANSWER_FORMAT}"
)

MOTIF_INSTRUCTION = (
    "Task: Node Label Prediction (Predict the label of the node marked with a ?)"
    " given the node-label mapping and graph motif information in the text enclosed"
    f" in triple backticks. {ANSWER_FORMAT}"
)

IMAGE_INSTRUCTION = (
    "Task: Node Label Prediction (Predict the label of the red node marked with a ?,"
    " given the graph structure information in the image)."
    ' The response should be in the format "Label of Node = <predicted label>."'
    ' If the predicted label cannot be determined, return "Label of Node = -1."'
)

TEXT_PLUS_IMAGE_INSTRUCTION = (
    "Task: Node Label Prediction (Predict the label of the red node marked with a ?)"
    f" given {_ADJACENCY_CLAUSE}, and the graph structure information in the image."
    f" {ANSWER_FORMAT}"
)

_INSTRUCTIONS = {
    "text": TEXT_INSTRUCTION,
    "motif": MOTIF_INSTRUCTION,
    "image": IMAGE_INSTRUCTION,
    "text+image": TEXT_PLUS_IMAGE_INSTRUCTION,
}

_ANSWER_RE = re.compile(r"Label\s+of\s+Node\s*=\s*(-?\d+)")


@dataclass(frozen=True)
class PromptBundle:
    instruction: str
    modality_tag: str
    text_payload: str | None = None
    image_payload: ImageEncoding | None = None

    def message_text(self) -> str:
        """Instruction plus the text payload wrapped in triple backticks."""
        if self.text_payload is None:
            return self.instruction
        return f"{self.instruction}\n```\n{self.text_payload}\n```"


@dataclass(frozen=True)
class ParsedPrediction:
    kind: str  # "label" | "denial" | "unparseable"
    value: int | None = None
    raw: str | None = None

    def __post_init__(self):
        if self.kind not in ("label", "denial", "unparseable"):
            raise ValueError(f"unknown prediction kind {self.kind!r}")
        if self.kind == "label" and (self.value is None or self.value < 0):
            raise ValueError("label predictions need a non-negative value")

    @classmethod
    def label(cls, value: int) -> "ParsedPrediction":
        return cls("label", value=value)

    @classmethod
    def denial(cls) -> "ParsedPrediction":
        return cls("denial")

    @classmethod
    def unparseable(cls, raw: str) -> "ParsedPrediction":
        return cls("unparseable", raw=raw)


def build_prompt(
    modality_tag: str,
    text: TextEncoding | None = None,
    image: ImageEncoding | None = None,
) -> PromptBundle:
    """Pair the fixed instruction for ``modality_tag`` with the given payloads."""
    if modality_tag not in MODALITIES:
        raise ValueError(f"unknown modality {modality_tag!r}")
    needs_text = modality_tag in ("text", "motif", "text+image")
    needs_image = modality_tag in ("image", "text+image")
    if needs_text != (text is not None):
        raise ValueError(f"modality {modality_tag!r} {'requires' if needs_text else 'forbids'} a text encoding")
    if needs_image != (image is not None):
        raise ValueError(f"modality {modality_tag!r} {'requires' if needs_image else 'forbids'} an image encoding")
    return PromptBundle(
        instruction=_INSTRUCTIONS[modality_tag],
        modality_tag=modality_tag,
        text_payload=text.payload if text else None,
        image_payload=image,
    )


def format_answer(value: int) -> str:
    return f"Label of Node = {value}"


def parse_response(raw: str) -> ParsedPrediction:
    """Take the last answer-format match; -1 is a denial, no match is unparseable."""
    matches = _ANSWER_RE.findall(raw)
    if not matches:
        return ParsedPrediction.unparseable(raw)
    value = int(matches[-1])
    if value == -1:
        return ParsedPrediction.denial()
    if value < 0:
        return ParsedPrediction.unparseable(raw)
    return ParsedPrediction.label(value)

"""Prediction backends: a majority-vote oracle, a random baseline, and a
chat-completions client with rate limiting and retry.

The remote client takes injectable transport and clock objects so its
throttling and backoff behavior is fully testable offline.
"""

from __future__ import annotations

import base64
import io
import json
import logging
import random
import threading
import time
import urllib.error
import urllib.request
import xml.etree.ElementTree as ET
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Mapping

from .prompting import PromptBundle, format_answer
from .sampling import SubgraphSample

logger = logging.getLogger(__name__)


class BackendError(RuntimeError):
    """Remote prediction failed after exhausting retries, or was rejected."""


# -- offline backends ---------------------------------------------------------


@dataclass(frozen=True)
class MajorityVoteConfig:
    kind: str = "majority_vote"


@dataclass(frozen=True)
class UniformRandomConfig:
    seed: int = 0
    kind: str = "uniform_random"


def majority_vote_predict(sample: SubgraphSample) -> str:
    """Deterministic oracle: strict plurality among the target's labeled neighbors.

    The response is a full sentence ending with the standard answer format,
    with -1 on a tie or when no labeled neighbor exists.
    """
    g = sample.subgraph
    t = sample.target
    neighbors = sorted(v for v in g.neighbors(t) if v in g.labels)
    if not neighbors:
        return (
            f"The node {t} has no labeled neighbors, so its label cannot be determined. "
            + format_answer(-1)
        )
    labels = [g.labels[v] for v in neighbors]
    listed = ", ".join(str(v) for v in neighbors)
    label_text = ", ".join(str(lab) for lab in labels)
    counts = Counter(labels).most_common()
    if len(counts) > 1 and counts[0][1] == counts[1][1]:
        return (
            f"The node {t} is connected to nodes {listed}. The labels of these nodes are "
            f"{label_text} respectively. There is no clear majority label among these, so the "
            f"label of node {t} cannot be determined. " + format_answer(-1)
        )
    winner = counts[0][0]
    return (
        f"The node {t} is connected to nodes {listed}. The labels of these nodes are "
        f"{label_text} respectively. Since the majority of the connected nodes have the label "
        f"{winner}, the label of node {t} is predicted to be {winner}. " + format_answer(winner)
    )


def uniform_random_predict(sample: SubgraphSample, config: UniformRandomConfig, run_id: int = 0) -> str:
    """Uniform draw over the declared classes, deterministic per (seed, run, sample)."""
    rng = random.Random(f"{config.seed}:{run_id}:{sample.sample_id}")
    return format_answer(rng.randrange(sample.subgraph.class_count))


# -- throttling ----------------------------------------------------------------


class SystemClock:
    def now(self) -> float:
        return time.monotonic()

    def sleep(self, seconds: float) -> None:
        time.sleep(seconds)


MINUTE = 60.0
DAY = 86400.0


class RateLimiter:
    """Fixed-window request throttle: per-minute and per-day budgets.

    Windows are aligned to multiples of the window length on the injected
    clock; counters reset when the window rolls over.  ``acquire`` blocks by
    sleeping on the clock until a slot opens.
    """

    def __init__(self, requests_per_minute: int, requests_per_day: int, clock=None):
        if requests_per_minute < 1 or requests_per_day < 1:
            raise ValueError("rate limits must be >= 1")
        self.requests_per_minute = requests_per_minute
        self.requests_per_day = requests_per_day
        self._clock = clock or SystemClock()
        self._lock = threading.Lock()
        self._minute_window = -1
        self._minute_count = 0
        self._day_window = -1
        self._day_count = 0

    def _refresh(self, now: float) -> None:
        minute = int(now // MINUTE)
        day = int(now // DAY)
        if minute != self._minute_window:
            self._minute_window = minute
            self._minute_count = 0
        if day != self._day_window:
            self._day_window = day
            self._day_count = 0

    def _wait_locked(self, now: float) -> float:
        self._refresh(now)
        wait = 0.0
        if self._minute_count >= self.requests_per_minute:
            wait = (self._minute_window + 1) * MINUTE - now
        if self._day_count >= self.requests_per_day:
            wait = max(wait, (self._day_window + 1) * DAY - now)
        return wait

    def wait_time(self) -> float:
        """Seconds until a request would be admitted; 0 means go ahead."""
        with self._lock:
            return self._wait_locked(self._clock.now())

    def acquire(self) -> None:
        """Block until a slot is available, then consume it."""
        while True:
            with self._lock:
                wait = self._wait_locked(self._clock.now())
                if wait <= 0:
                    self._minute_count += 1
                    self._day_count += 1
                    return
            self._clock.sleep(wait)


# -- SVG rasterization ----------------------------------------------------------


def rasterize_svg(svg_document: str) -> bytes:
    """Rasterize the renderer's SVG subset (lines, circles, text) to PNG bytes."""
    from PIL import Image, ImageDraw

    root = ET.fromstring(svg_document)
    width = int(float(root.get("width", "1024")))
    height = int(float(root.get("height", "1024")))
    img = Image.new("RGB", (width, height), "#ffffff")
    draw = ImageDraw.Draw(img)
    for el in root:
        tag = el.tag.rsplit("}", 1)[-1]
        if tag == "line":
            draw.line(
                [float(el.get("x1")), float(el.get("y1")), float(el.get("x2")), float(el.get("y2"))],
                fill=el.get("stroke", "#000000"),
                width=max(1, round(float(el.get("stroke-width", "1")))),
            )
        elif tag == "circle":
            x, y, r = float(el.get("cx")), float(el.get("cy")), float(el.get("r"))
            draw.ellipse([x - r, y - r, x + r, y + r], fill=el.get("fill"), outline=el.get("stroke"))
        elif tag == "text":
            x, y = float(el.get("x")), float(el.get("y"))
            content = el.text or ""
            # the default bitmap font has no anchor support; center approximately
            draw.text((x - 3 * len(content), y - 5), content, fill=el.get("fill", "#000000"))
    buf = io.BytesIO()
    img.save(buf, format="PNG")
    return buf.getvalue()


# -- remote backend --------------------------------------------------------------


@dataclass(frozen=True)
class RemoteConfig:
    endpoint: str
    model: str
    api_key_env: str = "GRAPHMODAL_API_KEY"
    requests_per_minute: int = 10000
    requests_per_day: int = 100
    max_retries: int = 3
    timeout: float = 60.0
    vision_capable: bool = False
    extra: Mapping[str, object] = field(default_factory=dict)
    kind: str = "remote"


@dataclass(frozen=True)
class RemoteReply:
    text: str
    usage_tokens: int | None
    attempts: int


BackendConfig = MajorityVoteConfig | UniformRandomConfig | RemoteConfig

#: transport(url, headers, body) -> (status, headers, response_text)
Transport = Callable[[str, Mapping[str, str], bytes], tuple[int, Mapping[str, str], str]]


def _urllib_transport(timeout: float) -> Transport:
    def post(url: str, headers: Mapping[str, str], body: bytes):
        request = urllib.request.Request(url, data=body, headers=dict(headers), method="POST")
        try:
            with urllib.request.urlopen(request, timeout=timeout) as resp:
                return resp.status, dict(resp.headers), resp.read().decode("utf-8")
        except urllib.error.HTTPError as err:
            return err.code, dict(err.headers or {}), err.read().decode("utf-8", "replace")

    return post


def _build_messages(bundle: PromptBundle) -> list[dict]:
    text = bundle.message_text()
    if bundle.image_payload is None:
        return [{"role": "user", "content": text}]
    encoded = base64.b64encode(rasterize_svg(bundle.image_payload.svg_document)).decode("ascii")
    return [
        {
            "role": "user",
            "content": [
                {"type": "text", "text": text},
                {"type": "image_url", "image_url": {"url": f"data:image/png;base64,{encoded}"}},
            ],
        }
    ]


def remote_predict(
    bundle: PromptBundle,
    config: RemoteConfig,
    transport: Transport | None = None,
    limiter: RateLimiter | None = None,
    clock=None,
    api_key: str | None = None,
) -> RemoteReply:
    """Send one prompt to a chat-completions endpoint and return the reply text.

    Retries on 429 and 5xx responses and transport failures with exponential
    backoff (honoring Retry-After when present), up to ``max_retries`` extra
    attempts.  Raises :class:`BackendError` otherwise.
    """
    if bundle.image_payload is not None and not config.vision_capable:
        raise BackendError("image payload given but the configured model is not vision capable")
    clock = clock or SystemClock()
    transport = transport or _urllib_transport(config.timeout)
    if api_key is None:
        import os

        api_key = os.environ.get(config.api_key_env)
    headers = {"Content-Type": "application/json"}
    if api_key:
        headers["Authorization"] = f"Bearer {api_key}"
    body_obj = {"model": config.model, "messages": _build_messages(bundle)}
    body_obj.update(config.extra)
    body = json.dumps(body_obj).encode("utf-8")
    last_error = "no attempt made"
    for attempt in range(1, config.max_retries + 2):
        if limiter is not None:
            limiter.acquire()
        try:
            status, resp_headers, text = transport(config.endpoint, headers, body)
        except OSError as err:
            last_error = f"transport failure: {err}"
            logger.warning("attempt %d: %s", attempt, last_error)
            clock.sleep(2.0 ** (attempt - 1))
            continue
        if 200 <= status < 300:
            try:
                payload = json.loads(text)
                content = payload["choices"][0]["message"]["content"]
                usage = payload.get("usage", {}).get("total_tokens")
            except (KeyError, IndexError, TypeError, ValueError) as err:
                raise BackendError(f"malformed completion response: {err}") from err
            logger.info("completion ok on attempt %d (usage=%s)", attempt, usage)
            return RemoteReply(text=content, usage_tokens=usage, attempts=attempt)
        if status == 429 or status >= 500:
            retry_after = resp_headers.get("Retry-After") or resp_headers.get("retry-after")
            try:
                wait = float(retry_after) if retry_after else 2.0 ** (attempt - 1)
            except ValueError:
                wait = 2.0 ** (attempt - 1)
            last_error = f"status {status}"
            logger.warning("attempt %d got status %d, backing off %.1fs", attempt, status, wait)
            clock.sleep(wait)
            continue
        raise BackendError(f"request rejected with status {status}: {text[:200]}")
    raise BackendError(f"gave up after {config.max_retries + 1} attempts ({last_error})")

"""Language-model backends: live HTTP, recording wrapper, cassette replay."""
from __future__ import annotations

import hashlib
import json
import logging
import os
from pathlib import Path
from typing import Dict, Iterable, Optional, Protocol

import httpx

from .errors import MissingRecording, ModelBackendError

log = logging.getLogger(__name__)


def prompt_digest(prompt: str) -> str:
    return hashlib.sha256(prompt.encode("utf-8")).hexdigest()


class ModelBackend(Protocol):
    def complete(self, prompt: str) -> str:
        ...


class HttpBackend:
    """OpenAI-compatible chat-completions client, one user message per call."""

    def __init__(
        self,
        endpoint: str,
        model: str,
        api_key: Optional[str] = None,
        timeout: float = 120.0,
        transport: Optional[httpx.BaseTransport] = None,
    ):
        self.url = endpoint.rstrip("/") + "/chat/completions"
        self.model = model
        self.api_key = api_key
        self.timeout = timeout
        self.transport = transport

    def request_body(self, prompt: str) -> dict:
        return {
            "model": self.model,
            "messages": [{"role": "user", "content": prompt}],
            "temperature": 0,
        }

    def complete(self, prompt: str) -> str:
        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        # a fresh client per call keeps concurrent sessions independent
        with httpx.Client(timeout=self.timeout, transport=self.transport) as client:
            try:
                resp = client.post(self.url, json=self.request_body(prompt), headers=headers)
                resp.raise_for_status()
                data = resp.json()
                return data["choices"][0]["message"]["content"]
            except httpx.HTTPError as exc:
                raise ModelBackendError(f"model request failed: {exc}") from exc
            except (ValueError, KeyError, IndexError, TypeError) as exc:
                raise ModelBackendError(f"malformed model response: {exc}") from exc


def read_cassette(path: os.PathLike) -> Iterable[dict]:
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
                rec["digest"], rec["response"]
            except (ValueError, KeyError, TypeError) as exc:
                raise ModelBackendError(f"{path}:{lineno}: bad cassette record") from exc
            yield rec


class ReplayBackend:
    """Answers prompts from a cassette; a pure function of the prompt text."""

    def __init__(self, path: Optional[os.PathLike] = None, records: Iterable[dict] = ()):
        self.responses: Dict[str, str] = {}
        if path is not None:
            records = list(read_cassette(path))
        for rec in records:
            self.responses.setdefault(rec["digest"], rec["response"])

    def complete(self, prompt: str) -> str:
        digest = prompt_digest(prompt)
        try:
            return self.responses[digest]
        except KeyError:
            raise MissingRecording(digest) from None


class RecordingBackend:
    """Wraps another backend and appends every exchange to a JSONL cassette."""

    def __init__(self, inner: ModelBackend, path: os.PathLike):
        self.inner = inner
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)

    def complete(self, prompt: str) -> str:
        response = self.inner.complete(prompt)
        rec = {"digest": prompt_digest(prompt), "prompt": prompt, "response": response}
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")
        return response

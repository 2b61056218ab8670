from __future__ import annotations

import json

import httpx
import pytest

from portfix.errors import MissingRecording, ModelBackendError
from portfix.models import HttpBackend, RecordingBackend, ReplayBackend, prompt_digest, read_cassette


class Echo:
    def __init__(self):
        self.seen = []

    def complete(self, prompt):
        self.seen.append(prompt)
        return "answer:" + prompt


def test_digest_is_sha256_hex():
    d = prompt_digest("hello")
    assert d == "2cf24dba5fb0a30e26e83b2ac5b9e29e1b161e5c1fa7425e73043362938b9824"


def test_record_then_replay(tmp_path):
    path = tmp_path / "c" / "cassette.jsonl"
    rec = RecordingBackend(Echo(), path)
    assert rec.complete("p1") == "answer:p1"
    rec.complete("p2")
    lines = [json.loads(x) for x in path.read_text().splitlines()]
    assert [(r["prompt"], r["digest"]) for r in lines] == [("p1", prompt_digest("p1")), ("p2", prompt_digest("p2"))]
    replay = ReplayBackend(path)
    assert replay.complete("p2") == "answer:p2"
    assert replay.complete("p2") == replay.complete("p2")
    with pytest.raises(MissingRecording) as exc:
        replay.complete("p3")
    assert exc.value.digest == prompt_digest("p3")
    assert isinstance(exc.value, ModelBackendError)


def test_bad_cassette(tmp_path):
    p = tmp_path / "bad.jsonl"
    p.write_text('{"digest": "x", "response": "y"}\nnot json\n')
    with pytest.raises(ModelBackendError):
        list(read_cassette(p))


def test_http_backend_request_and_parse():
    seen = {}

    def handler(request: httpx.Request):
        seen["url"] = str(request.url)
        seen["auth"] = request.headers.get("authorization")
        seen["body"] = json.loads(request.content)
        return httpx.Response(200, json={"choices": [{"message": {"content": "```c\nint f(void)\n{\n}\n```"}}]})

    be = HttpBackend("http://model.local/v1/", "m-1", api_key="sekret", transport=httpx.MockTransport(handler))
    out = be.complete("fix this")
    assert out.startswith("```c")
    assert seen["url"] == "http://model.local/v1/chat/completions"
    assert seen["auth"] == "Bearer sekret"
    assert seen["body"] == {"model": "m-1", "messages": [{"role": "user", "content": "fix this"}], "temperature": 0}


@pytest.mark.parametrize(
    "response",
    [httpx.Response(500, text="boom"), httpx.Response(200, json={"nope": 1}), httpx.Response(200, text="<html>")],
)
def test_http_backend_errors(response):
    be = HttpBackend("http://model.local/v1", "m", transport=httpx.MockTransport(lambda r: response))
    with pytest.raises(ModelBackendError):
        be.complete("x")

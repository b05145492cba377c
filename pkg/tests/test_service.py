import json
import threading
import urllib.error
import urllib.request
import xml.etree.ElementTree as ET
from concurrent.futures import ThreadPoolExecutor

import pytest

from storygem.pipeline import RunConfig
from storygem.service import make_server

from conftest import TINY_TEXT

FAST_PARAMS = {"max_words": 10, "rotation_step": 30, "hyphenate": False, "seed": 3}


@pytest.fixture(scope="module")
def server(tmp_path_factory):
    samples = __import__("conftest").SAMPLES
    ui_dir = tmp_path_factory.mktemp("ui")
    (ui_dir / "index.html").write_text("<!doctype html><title>storygem</title>")
    config = RunConfig(embedding_path=str(samples / "toy.vec"))
    srv = make_server(config, port=0, ui_dir=ui_dir)
    thread = threading.Thread(target=srv.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{srv.server_address[1]}"
    srv.shutdown()
    srv.server_close()


def post(url, payload):
    req = urllib.request.Request(
        url,
        data=json.dumps(payload).encode(),
        headers={"Content-Type": "application/json"},
        method="POST",
    )
    try:
        with urllib.request.urlopen(req, timeout=60) as resp:
            return resp.status, dict(resp.headers), resp.read()
    except urllib.error.HTTPError as err:
        return err.code, dict(err.headers), err.read()


def get(url):
    try:
        with urllib.request.urlopen(url, timeout=60) as resp:
            return resp.status, dict(resp.headers), resp.read()
    except urllib.error.HTTPError as err:
        return err.code, dict(err.headers), err.read()


def test_health(server):
    status, _, body = get(f"{server}/api/health")
    assert status == 200
    data = json.loads(body)
    assert data["status"] == "ok"
    assert data["embedding_loaded"] is True
    assert data["dimension"] == 64


def test_layout_returns_document(server):
    status, headers, body = post(
        f"{server}/api/layout", {"text": TINY_TEXT, "params": FAST_PARAMS}
    )
    assert status == 200
    doc = json.loads(body)
    assert len(doc["cells"]) == doc["meta"]["clusters"]
    assert "fontfit" in json.loads(headers["X-Storygem-Timings"])


def test_empty_text_400(server):
    status, _, body = post(f"{server}/api/layout", {"text": "   "})
    assert status == 400
    assert json.loads(body)["stage"] == "validation"


def test_all_oov_text_422(server):
    status, _, body = post(
        f"{server}/api/layout", {"text": "qqqq zzzz xxxx qqqq zzzz xxxx"}
    )
    assert status == 422
    assert json.loads(body)["stage"] == "embeddings"


def test_unknown_param_400(server):
    status, _, body = post(
        f"{server}/api/layout", {"text": TINY_TEXT, "params": {"surprise": 1}}
    )
    assert status == 400
    assert "surprise" in json.loads(body)["detail"]


def test_bad_param_value_400(server):
    status, _, body = post(
        f"{server}/api/layout", {"text": TINY_TEXT, "params": {"k": 0}}
    )
    assert status == 400
    assert "--k" in json.loads(body)["detail"]


def test_oversized_text_400(server):
    status, _, body = post(f"{server}/api/layout", {"text": "a " * 600_000})
    assert status == 400
    assert "1 MiB" in json.loads(body)["detail"]


def test_render_post_svg(server):
    status, headers, body = post(
        f"{server}/api/render", {"text": TINY_TEXT, "params": FAST_PARAMS}
    )
    assert status == 200
    assert headers["Content-Type"] == "image/svg+xml"
    assert body
    ET.fromstring(body)  # parseable XML


def test_render_get_query_params(server):
    from urllib.parse import urlencode

    query = urlencode({"text": "hops malt beer hops malt beer yeast",
                       "format": "svg", "max_words": 5, "rotation_step": 45,
                       "hyphenate": "false", "seed": 1})
    status, headers, body = get(f"{server}/api/render?{query}")
    assert status == 200
    assert headers["Content-Type"] == "image/svg+xml"
    ET.fromstring(body)


def test_stateless_identical_bodies(server):
    payload = {"text": TINY_TEXT, "params": FAST_PARAMS}
    _, _, first = post(f"{server}/api/layout", payload)
    _, _, second = post(f"{server}/api/layout", payload)
    assert first == second


def test_concurrent_requests_do_not_interleave(server):
    payload_a = {"text": TINY_TEXT, "params": FAST_PARAMS}
    payload_b = {"text": "plum blossom tree plum branch flower plum garden",
                 "params": FAST_PARAMS}

    def call(p):
        return post(f"{server}/api/layout", p)

    with ThreadPoolExecutor(4) as pool:
        results = list(pool.map(call, [payload_a, payload_b] * 3))
    a_bodies = {r[2] for r in results[0::2]}
    b_bodies = {r[2] for r in results[1::2]}
    assert len(a_bodies) == 1
    assert len(b_bodies) == 1
    assert a_bodies != b_bodies


def test_static_ui_served(server):
    status, headers, body = get(f"{server}/")
    assert status == 200
    assert "text/html" in headers["Content-Type"]
    assert b"storygem" in body


def test_unknown_endpoint_404(server):
    status, _, _ = post(f"{server}/api/nope", {"text": "x"})
    assert status == 404


def test_cors_preflight(server):
    req = urllib.request.Request(f"{server}/api/layout", method="OPTIONS")
    with urllib.request.urlopen(req, timeout=10) as resp:
        assert resp.status == 204
        assert resp.headers["Access-Control-Allow-Origin"] == "*"


def test_health_before_embedding_load():
    from storygem.service import App

    samples = __import__("conftest").SAMPLES
    app = App(RunConfig(embedding_path=str(samples / "toy.vec")))
    assert app.health_payload() == {
        "status": "ok", "embedding_loaded": False, "dimension": 0,
    }
    app.load()
    payload = app.health_payload()
    assert payload["embedding_loaded"] is True
    assert payload["dimension"] == 64

import json
import time
import urllib.error
import urllib.request

import pytest

from conftest import CORPUS_DIR, corpus_text
from slicetool.pipeline import analyze_source
from slicetool.report import export_slice_json, report_json
from slicetool.server import ApiServer
from slicetool.slicer import SliceOptions


@pytest.fixture(scope="module")
def api():
    server = ApiServer(port=0, corpus_dir=CORPUS_DIR)
    server.start()
    yield server
    server.stop()


def _get(api, path):
    try:
        with urllib.request.urlopen(f"http://127.0.0.1:{api.port}{path}") as resp:
            return resp.status, resp.read().decode("utf-8")
    except urllib.error.HTTPError as err:
        return err.code, err.read().decode("utf-8")


def _post(api, path, document):
    body = json.dumps(document).encode("utf-8")
    request = urllib.request.Request(
        f"http://127.0.0.1:{api.port}{path}", data=body,
        headers={"Content-Type": "application/json"}, method="POST")
    try:
        with urllib.request.urlopen(request) as resp:
            return resp.status, resp.read().decode("utf-8")
    except urllib.error.HTTPError as err:
        return err.code, err.read().decode("utf-8")


def _wait_done(api, job_id, timeout=10.0):
    deadline = time.monotonic() + timeout
    while time.monotonic() < deadline:
        status, body = _get(api, f"/api/analyses/{job_id}")
        assert status == 200
        doc = json.loads(body)
        if "slices" in doc:
            return body
        if doc.get("status") == "error":
            raise AssertionError(f"job failed: {doc}")
        time.sleep(0.02)
    raise AssertionError("job did not finish in time")


def test_health(api):
    status, body = _get(api, "/api/health")
    assert status == 200
    assert json.loads(body) == {"status": "ok"}


def test_programs_lists_corpus(api):
    status, body = _get(api, "/api/programs")
    assert status == 200
    programs = json.loads(body)["programs"]
    assert programs == sorted(p.name for p in CORPUS_DIR.glob("*.slir"))
    assert "roidsec_like.slir" in programs


def test_datasets_exposed(api):
    status, body = _get(api, "/api/datasets")
    assert status == 200
    doc = json.loads(body)
    assert len(doc["identifiers"]) == 25
    assert doc["category_map"]["analytics"] == "third_party_sharing"


def test_submit_corpus_job_returns_202(api):
    status, body = _post(api, "/api/analyses", {"corpus": "straightline.slir"})
    assert status == 202
    doc = json.loads(body)
    assert doc["id"]
    assert doc["status"] == "pending"


def test_unknown_corpus_404(api):
    status, _ = _post(api, "/api/analyses", {"corpus": "nope.slir"})
    assert status == 404


def test_bad_options_400(api):
    status, body = _post(api, "/api/analyses",
                         {"corpus": "straightline.slir",
                          "options": {"max_nodes": 0}})
    assert status == 400
    status, _ = _post(api, "/api/analyses",
                      {"corpus": "straightline.slir",
                       "options": {"bogus": 1}})
    assert status == 400


def test_oversize_payload_413(api):
    big = "x" * (2 << 20)
    status, _ = _post(api, "/api/analyses", {"program": big})
    assert status == 413


def test_unknown_job_404(api):
    status, _ = _get(api, "/api/analyses/zz-unknown")
    assert status == 404


def test_report_matches_cli_bytes(api):
    status, body = _post(api, "/api/analyses", {"corpus": "roidsec_like.slir"})
    assert status == 202
    job_id = json.loads(body)["id"]
    api_report = _wait_done(api, job_id)
    local = analyze_source(corpus_text("roidsec_like.slir"), "roidsec_like.slir",
                           SliceOptions())
    assert api_report == report_json(local.report)


def test_slice_views_match_direct_export(api):
    status, body = _post(api, "/api/analyses",
                         {"corpus": "interproc.slir",
                          "options": {"include_control": True}})
    job_id = json.loads(body)["id"]
    _wait_done(api, job_id)
    local = analyze_source(corpus_text("interproc.slir"), "interproc.slir")
    for view_name in ("jimple", "java"):
        status, body = _get(api, f"/api/analyses/{job_id}/slices/0?view={view_name}")
        assert status == 200
        result = local.result_by_id(0)
        view = result.jimple if view_name == "jimple" else result.java
        assert body == export_slice_json(view)


def test_slice_of_pending_job_409(api):
    # create a job in the store without queueing it: it stays pending
    job = api.store.create("stuck.slir", corpus_text("straightline.slir"),
                           SliceOptions())
    status, _ = _get(api, f"/api/analyses/{job.id}/slices/0?view=java")
    assert status == 409
    status, body = _get(api, f"/api/analyses/{job.id}")
    assert status == 200
    assert json.loads(body) == {"status": "pending"}


def test_unknown_slice_404(api):
    status, body = _post(api, "/api/analyses", {"corpus": "straightline.slir"})
    job_id = json.loads(body)["id"]
    _wait_done(api, job_id)
    status, _ = _get(api, f"/api/analyses/{job_id}/slices/42?view=java")
    assert status == 404


def test_bad_view_400(api):
    status, body = _post(api, "/api/analyses", {"corpus": "pseudo.slir"})
    job_id = json.loads(body)["id"]
    _wait_done(api, job_id)
    status, _ = _get(api, f"/api/analyses/{job_id}/slices/0?view=swift")
    assert status == 400


def test_risk_filter_via_api(api):
    status, body = _post(api, "/api/analyses",
                         {"corpus": "diamond.slir",
                          "options": {"risk_filter": [1]}})
    job_id = json.loads(body)["id"]
    report = json.loads(_wait_done(api, job_id))
    assert len(report["slices"]) == 1
    assert report["slices"][0]["risk"] == 1


def test_concurrent_jobs_do_not_interleave(api):
    programs = ["branchy.slir", "pseudo.slir", "latlike.slir", "diamond.slir"]
    job_ids = {}
    for name in programs:
        status, body = _post(api, "/api/analyses", {"corpus": name})
        assert status == 202
        job_ids[name] = json.loads(body)["id"]
    for name, job_id in job_ids.items():
        report = json.loads(_wait_done(api, job_id))
        assert report["program_name"] == name
        local = analyze_source(corpus_text(name), name)
        assert report == json.loads(report_json(local.report))


def test_cors_headers_present(api):
    request = urllib.request.Request(
        f"http://127.0.0.1:{api.port}/api/health", method="GET")
    with urllib.request.urlopen(request) as resp:
        assert resp.headers["Access-Control-Allow-Origin"] == "*"


def test_port_already_in_use_raises_bind_error(api):
    from slicetool.server import BindError
    with pytest.raises(BindError):
        ApiServer(port=api.port, corpus_dir=CORPUS_DIR)

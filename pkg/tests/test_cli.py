"""Command-line interface: subcommands, exit codes, report documents."""

import json

import pytest

from galrep.cli import main
from galrep.records import GaloisPolyRecord, get_record, load_record, save_record


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_tables_dims(capsys):
    code, doc = run(capsys, "tables", "dims")
    assert code == 0
    rows = [(r["k"], r["ell"], r["gcd"], r["dim_j1"], r["dim_jh"])
            for r in doc["results"]["rows"]]
    assert rows == [(12, 31, 10, 26, 6), (16, 29, 14, 22, 4),
                    (20, 31, 6, 26, 6), (22, 31, 10, 26, 6)]


def test_tables_genus(capsys):
    for ell, want in ((31, 26), (29, 22), (11, 1)):
        code, doc = run(capsys, "tables", "genus", "--ell", str(ell))
        assert code == 0
        assert doc["results"]["genus_x1"] == want
    code, _ = run(capsys, "tables", "genus")
    assert code == 2


def test_tables_modsym_check(capsys):
    code, doc = run(capsys, "tables", "modsym-check",
                    "--k", "12", "--ell", "31", "--pmax", "7")
    assert code == 0
    res = doc["results"]
    assert res["ok"] is True
    assert res["joint_kernel_dim"] >= 2
    assert res["cuspidal_dim"] == res["expected_cuspidal_dim"]


def test_tau_mod(capsys):
    code, doc = run(capsys, "tau-mod", "--record", "k12l31", "--p", "7")
    assert code == 0
    # tau(7) = -16744 = 27 mod 31
    assert 27 in doc["results"]["residues"]
    assert doc["results"]["trace_zero"] is False
    assert doc["results"]["ell"] == 31


def test_tau_mod_bad_inputs(capsys):
    code, _ = run(capsys, "tau-mod", "--record", "nosuch", "--p", "7")
    assert code == 2
    code, _ = run(capsys, "tau-mod", "--record", "k12l31", "--p", "10")
    assert code == 2
    code, _ = run(capsys, "tau-mod", "--record", "k12l31", "--p", "bogus")
    assert code == 2


def test_verify_pass(capsys):
    code, doc = run(capsys, "verify", "--record", "k20l31", "--pmax", "60")
    assert code == 0
    assert doc["results"]["verdict"] == "pass"


def test_verify_mutant_and_malformed(tmp_path, capsys):
    base = get_record("k12l31")
    coeffs = list(base.coeffs)
    coeffs[4] += 1
    mutant = GaloisPolyRecord(base.weight, base.ell, base.kind,
                              tuple(coeffs), source="mutant")
    path = tmp_path / "mutant.galrep"
    save_record(mutant, str(path))
    code, doc = run(capsys, "verify", "--file", str(path))
    assert code == 1
    assert doc["results"]["verdict"] == "fail"

    bad = tmp_path / "bad.galrep"
    bad.write_text("not a record\n")
    code, _ = run(capsys, "verify", "--file", str(bad))
    assert code == 2


def test_lehmer_verify_candidate(capsys):
    code, doc = run(capsys, "lehmer", "verify-candidate",
                    "--p", "982149821766199295999", "--detectors", "11,31")
    assert code == 0
    assert doc["results"]["accepted"] is True
    code, doc = run(capsys, "lehmer", "verify-candidate",
                    "--p", "101", "--detectors", "31")
    assert code == 1
    assert doc["results"]["accepted"] is False


def test_lehmer_missing_detector(capsys):
    code, doc = run(capsys, "lehmer", "verify-candidate",
                    "--p", "101", "--detectors", "13,31")
    assert code == 2
    assert doc is None  # error goes to stderr only


def test_lehmer_external_record_ingest(tmp_path, capsys):
    # a stand-in mod-13 record makes the detector assemble; the
    # candidate then fails the congruence stage as usual
    stub = GaloisPolyRecord(12, 13, "projective",
                            tuple([-1, -1] + [0] * 12 + [1]), source="stub")
    save_record(stub, str(tmp_path / "k12l13.galrep"))
    code, doc = run(capsys, "lehmer", "verify-candidate", "--p", "101",
                    "--detectors", "13,31", "--records", str(tmp_path))
    assert code == 1
    assert doc["results"]["accepted"] is False
    assert {d["ell"] for d in doc["results"]["detectors"]} == {13, 31}


def test_lehmer_external_records_env_fallback(tmp_path, capsys, monkeypatch):
    stub = GaloisPolyRecord(12, 13, "projective",
                            tuple([-1, -1] + [0] * 12 + [1]), source="stub")
    save_record(stub, str(tmp_path / "k12l13.galrep"))
    monkeypatch.setenv("GALREP_EXTERNAL_RECORDS", str(tmp_path))
    code, doc = run(capsys, "lehmer", "verify-candidate", "--p", "101",
                    "--detectors", "13,31")
    assert code == 1
    assert {d["ell"] for d in doc["results"]["detectors"]} == {13, 31}
    # a stale env var pointing nowhere is ignored, not an error
    monkeypatch.setenv("GALREP_EXTERNAL_RECORDS", str(tmp_path / "nope"))
    code, doc = run(capsys, "lehmer", "verify-candidate",
                    "--p", "101", "--detectors", "31")
    assert code == 1


def test_lehmer_search(tmp_path, capsys):
    ck = str(tmp_path / "ck.txt")
    code, doc = run(capsys, "lehmer", "search", "--from", "0", "--to", "2e15",
                    "--detectors", "31", "--workers", "1",
                    "--checkpoint", ck)
    assert code == 0
    assert doc["results"]["found"] == "1021727768831999"
    assert open(ck).readline().startswith("lehmer-checkpoint v1")


def test_lehmer_search_worker_pool(capsys):
    code, doc = run(capsys, "lehmer", "search", "--from", "0", "--to", "2e15",
                    "--detectors", "31", "--workers", "2")
    assert code == 0
    assert doc["results"]["found"] == "1021727768831999"


def test_build_genus1(tmp_path, capsys):
    out1 = tmp_path / "a.galrep"
    out2 = tmp_path / "b.galrep"
    code, doc = run(capsys, "build-genus1", "--bits", "300",
                    "--out", str(out1))
    assert code == 0
    assert doc["results"]["record"] == "k12l11"
    assert doc["results"]["degree"] == 12
    code, _ = run(capsys, "build-genus1", "--bits", "364", "--out", str(out2))
    assert code == 0
    assert out1.read_bytes() == out2.read_bytes()
    rec = load_record(str(out1))
    assert rec.ell == 11 and rec.degree == 12

    code, _ = run(capsys, "build-genus1", "--bits", "100")
    assert code == 2


def test_build_genus1_full(tmp_path, capsys):
    out = tmp_path / "full.galrep"
    code, doc = run(capsys, "build-genus1", "--kind", "full",
                    "--out", str(out))
    assert code == 0
    assert doc["results"]["record"] == "k12l11full"
    assert load_record(str(out)).degree == 120


def test_report_determinism(capsys):
    def doc_without_timings(*argv):
        code, doc = run(capsys, *argv)
        del doc["timings"]
        return code, json.dumps(doc, sort_keys=True)

    for argv in (("tables", "dims"),
                 ("tau-mod", "--record", "k12l31", "--p", "101"),
                 ("lehmer", "verify-candidate", "--p", "101",
                  "--detectors", "31")):
        assert doc_without_timings(*argv) == doc_without_timings(*argv)


def test_report_envelope(capsys):
    code, doc = run(capsys, "tables", "genus", "--ell", "31")
    assert code == 0
    assert set(doc) == {"command", "inputs", "results", "timings", "version"}
    assert doc["command"] == "tables"


def test_usage_errors(capsys):
    assert main(["nosuch"]) == 2
    assert main([]) == 2
    assert main(["verify"]) == 2  # neither --record nor --file
    assert main(["--version"]) == 0

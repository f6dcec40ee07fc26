import json

import pytest

from schurlab.cli import main
from schurlab.groups import build_group
from schurlab.serialize import (
    certificate_from_dict,
    certificate_to_dict,
    group_from_dict,
    group_to_dict,
    dump_json,
    load_json,
    report_to_csv,
    report_to_dict,
    sring_from_dict,
    sring_to_dict,
)
from schurlab.fusion import enumerate_central
from schurlab.schurity import is_schurian, verify_certificate
from schurlab.srings import center_sring


def test_group_round_trip():
    G = build_group("frobenius:5:4")
    assert group_from_dict(group_to_dict(G)) == G


def test_sring_round_trip():
    G = build_group("dihedral:10")
    A = center_sring(G)
    data = sring_to_dict(A)
    assert sring_from_dict(data) == A


def test_certificate_round_trip():
    G = build_group("dihedral:8")
    A = center_sring(G)
    cert = is_schurian(A)
    back = certificate_from_dict(certificate_to_dict(cert))
    assert back == cert
    assert verify_certificate(A, back)


def test_report_serialization():
    rep = enumerate_central(build_group("dihedral:8"))
    d = report_to_dict(rep)
    assert d["count"] == rep.count and len(d["srings"]) == rep.count
    csv_text = report_to_csv(rep)
    assert csv_text.count("\n") == rep.count + 1


def test_cli_group_info(tmp_path, capsys):
    path = tmp_path / "a5.json"
    assert main(["group", "A5", "info", "--json", str(path)]) == 0
    out = capsys.readouterr().out
    assert "class_sizes: [1, 12, 12, 15, 20]" in out
    payload = load_json(path)
    assert payload["order"] == 60


def test_cli_enumerate_and_check(tmp_path, capsys):
    assert main(["enumerate", "dihedral:8", "--mode", "central", "--out", str(tmp_path)]) == 0
    data = load_json(tmp_path / "enumerate-dihedral_8-central.json")
    assert data["count"] == 9
    assert (tmp_path / "enumerate-dihedral_8-central.csv").exists()
    # check one member through the file interface
    member = data["srings"][2]
    sfile = tmp_path / "member.json"
    dump_json({"group_spec": "dihedral:8", "order": 8, "blocks": member["blocks"]}, sfile)
    assert main(["check", "dihedral:8", str(sfile), "--out", str(tmp_path)]) == 0
    cert = load_json(tmp_path / "certificate-dihedral_8.json")
    assert cert["verdict"] in ("schurian", "nonschurian")


def test_cli_gschur(tmp_path, capsys):
    assert main(["gschur", "dihedral:10", "--out", str(tmp_path)]) == 0
    payload = load_json(tmp_path / "gschur-dihedral_10.json")
    assert payload["verdict"] is True


def test_cli_exit_codes(tmp_path):
    assert main(["group", "cyclic:0", "info"]) == 2
    assert main(["enumerate", "cyclic:32", "--mode", "central", "--out", str(tmp_path)]) == 20


def test_cli_config_file(tmp_path):
    cfg = tmp_path / "schurlab.cfg"
    cfg.write_text("cap_atoms=32\nout=" + str(tmp_path) + "\n")
    assert main(["--config", str(cfg), "enumerate", "cyclic:32", "--mode", "central"]) == 0
    assert (tmp_path / "enumerate-cyclic_32-central.json").exists()


def test_jobs_env(monkeypatch):
    from schurlab.recipes import default_jobs

    monkeypatch.setenv("SCHURLAB_JOBS", "3")
    assert default_jobs() == 3
    monkeypatch.setenv("SCHURLAB_JOBS", "junk")
    assert default_jobs() == 1

"""JSON / CSV round-tripping for groups, S-rings, certificates and reports."""

from __future__ import annotations

import csv
import io
import json
from typing import Any, Optional

import numpy as np

from . import __version__
from .fusion import EnumerationReport
from .groups import Group, build_group, _from_table
from .schurity import SchurityCertificate
from .srings import SRing, from_partition_strict


def group_to_dict(G: Group) -> dict[str, Any]:
    return {
        "order": G.n,
        "spec": G.spec,
        "labels": list(G.labels),
        "mul": [int(v) for v in G.mul.reshape(-1)],
    }


def group_from_dict(data: dict[str, Any]) -> Group:
    n = int(data["order"])
    mul = np.array(data["mul"], dtype=np.int64).reshape(n, n)
    labels = data.get("labels") or [str(i) for i in range(n)]
    return _from_table(mul, labels, spec=data.get("spec", "table"))


def sring_to_dict(A: SRing) -> dict[str, Any]:
    return {
        "group_spec": A.group.spec,
        "order": A.group.n,
        "blocks": [list(b) for b in A.blocks],
        "rank": A.rank,
        "sizes": list(A.sizes),
    }


def sring_from_dict(data: dict[str, Any], group: Optional[Group] = None) -> SRing:
    G = group if group is not None else build_group(data["group_spec"])
    if G.n != int(data["order"]):
        raise ValueError("stored order does not match the group")
    return from_partition_strict(G, data["blocks"])


def permgroup_to_dict(K) -> dict[str, Any]:
    return {
        "degree": K.degree,
        "generators": [list(g) for g in K.generators],
        "order": K.order(),
    }


def certificate_to_dict(cert: SchurityCertificate) -> dict[str, Any]:
    return {
        "verdict": cert.verdict,
        "aut_order": cert.aut_order,
        "aut_generators": [list(g) for g in cert.aut_generators],
        "stabilizer_generators": [list(g) for g in cert.stabilizer_generators],
        "witness_block": list(cert.witness_block) if cert.witness_block else None,
        "witness_orbit": list(cert.witness_orbit) if cert.witness_orbit else None,
        "nodes": cert.nodes,
    }


def certificate_from_dict(data: dict[str, Any]) -> SchurityCertificate:
    return SchurityCertificate(
        verdict=data["verdict"],
        aut_order=data["aut_order"],
        aut_generators=tuple(tuple(g) for g in data["aut_generators"]),
        stabilizer_generators=tuple(tuple(g) for g in data["stabilizer_generators"]),
        witness_block=tuple(data["witness_block"]) if data.get("witness_block") else None,
        witness_orbit=tuple(data["witness_orbit"]) if data.get("witness_orbit") else None,
        nodes=int(data.get("nodes", 0)),
    )


def report_to_dict(report: EnumerationReport, config: Optional[dict[str, Any]] = None) -> dict[str, Any]:
    return {
        "tool": {"name": "schurlab", "version": __version__, "config": config or {}},
        "group_spec": report.group_spec,
        "mode": report.mode,
        "count": report.count,
        "stats": {
            "nodes": report.stats.nodes,
            "prunes": report.stats.prunes,
            "seconds": report.stats.seconds,
        },
        "srings": [
            {
                "blocks": [list(b) for b in A.blocks],
                "rank": ann.rank,
                "sizes": list(ann.sizes),
                "central": ann.central,
                "primitive": ann.primitive,
                "schurian": ann.schurian,
                "tags": list(ann.tags),
            }
            for A, ann in zip(report.srings, report.annotations)
        ],
    }


def report_to_csv(report: EnumerationReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["index", "rank", "sizes", "central", "primitive", "schurian", "tags"])
    for i, (A, ann) in enumerate(zip(report.srings, report.annotations)):
        writer.writerow(
            [
                i,
                ann.rank,
                " ".join(map(str, ann.sizes)),
                ann.central,
                ann.primitive,
                ann.schurian,
                ";".join(ann.tags),
            ]
        )
    return buf.getvalue()


def dump_json(data: dict[str, Any], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_json(path) -> dict[str, Any]:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)

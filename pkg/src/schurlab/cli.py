"""Command-line front end.

Exit codes: 0 = everything computed and passed, 10 = computed with failures,
20 = undecided because a cap or node budget was exhausted.
"""

from __future__ import annotations

import argparse
import re
import sys
import time
from pathlib import Path
from typing import Optional

from . import __version__
from .fusion import annotate_decomposition_tags, enumerate_all, enumerate_central
from .groups import (
    CapExceeded,
    GroupSpecError,
    build_group,
    camina_kernels,
    center,
    conjugacy_classes,
    frattini,
    has_maximal_cyclic_subgroup,
    _prime_power,
)
from .recipes import RECIPES, default_jobs
from .schurity import NodeBudgetExceeded, is_generalized_schur, is_schurian
from .serialize import (
    certificate_to_dict,
    dump_json,
    group_to_dict,
    load_json,
    report_to_csv,
    report_to_dict,
    sring_from_dict,
    sring_to_dict,
)

EXIT_OK = 0
EXIT_FAILED = 10
EXIT_UNDECIDED = 20


def _slug(spec: str) -> str:
    return re.sub(r"[^A-Za-z0-9]+", "_", spec).strip("_")


def _load_config(path: Optional[str]) -> dict:
    cfg = {}
    if path:
        for line in Path(path).read_text().splitlines():
            line = line.strip()
            if not line or line.startswith("#") or "=" not in line:
                continue
            key, val = line.split("=", 1)
            cfg[key.strip()] = val.strip()
    return cfg


def _outdir(args) -> Path:
    out = Path(getattr(args, "out", None) or ".")
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_group_info(args) -> int:
    G = build_group(args.spec)
    classes = conjugacy_classes(G)
    info = {
        "spec": G.spec,
        "order": G.n,
        "abelian": G.is_abelian,
        "class_sizes": sorted(len(c) for c in classes),
        "center_order": len(center(G)),
    }
    if G.n <= 64:
        info["frattini_order"] = len(frattini(G))
        info["camina_kernels"] = [list(H.elements) for H in camina_kernels(G)]
    if _prime_power(G.n):
        info["has_maximal_cyclic_subgroup"] = has_maximal_cyclic_subgroup(G)
    for key, val in info.items():
        print(f"{key}: {val}")
    if args.json:
        payload = dict(info)
        payload["group"] = group_to_dict(G)
        dump_json(payload, args.json)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    G = build_group(args.spec)
    try:
        if args.mode == "central":
            report = enumerate_central(G, atom_cap=args.cap_atoms)
        else:
            report = enumerate_all(G, order_cap=args.cap_order)
    except CapExceeded as exc:
        print(f"undecided: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED
    if args.schurity:
        for i, A in enumerate(report.srings):
            cert = is_schurian(A, args.node_budget)
            report.annotations[i].schurian = {"schurian": True, "nonschurian": False}.get(cert.verdict)
    if G.n <= 64:
        annotate_decomposition_tags(report, G)
    out = _outdir(args)
    base = out / f"enumerate-{_slug(G.spec)}-{args.mode}"
    config = {k: v for k, v in vars(args).items() if isinstance(v, (str, int, bool, type(None)))}
    dump_json(report_to_dict(report, config=config), base.with_suffix(".json"))
    base.with_suffix(".csv").write_text(report_to_csv(report))
    print(f"{report.count} S-rings over {G.spec} (mode={args.mode}) -> {base}.json / .csv")
    return EXIT_OK


def cmd_check(args) -> int:
    G = build_group(args.spec)
    data = load_json(args.sring)
    A = sring_from_dict(data, group=G)
    cert = is_schurian(A, args.node_budget)
    out = _outdir(args)
    path = out / f"certificate-{_slug(G.spec)}.json"
    dump_json(certificate_to_dict(cert), path)
    print(f"verdict: {cert.verdict} (aut order {cert.aut_order}) -> {path}")
    return EXIT_UNDECIDED if cert.verdict == "undecided" else EXIT_OK


def cmd_gschur(args) -> int:
    G = build_group(args.spec)
    t0 = time.perf_counter()
    try:
        res = is_generalized_schur(G, atom_cap=args.cap_atoms, node_budget=args.node_budget)
    except CapExceeded as exc:
        print(f"undecided: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED
    out = _outdir(args)
    payload = {
        "tool": {"name": "schurlab", "version": __version__},
        "group_spec": G.spec,
        "verdict": res.verdict,
        "central_srings": res.report.count,
        "nonschurian_members": res.nonschurian,
        "undecided_members": res.undecided,
        "seconds": time.perf_counter() - t0,
    }
    base = out / f"gschur-{_slug(G.spec)}"
    dump_json(payload, base.with_suffix(".json"))
    if res.nonschurian:
        i = res.nonschurian[0]
        witness = {
            "sring": sring_to_dict(res.report.srings[i]),
            "certificate": certificate_to_dict(res.certificates[i]),
        }
        dump_json(witness, out / f"gschur-{_slug(G.spec)}-witness.json")
    print(f"generalized Schur: {res.verdict} ({res.report.count} central S-rings) -> {base}.json")
    return EXIT_UNDECIDED if res.verdict is None else EXIT_OK


def cmd_verify(args) -> int:
    if args.recipe not in RECIPES:
        print(f"unknown recipe {args.recipe!r}; choose from {sorted(RECIPES)}", file=sys.stderr)
        return 2
    kwargs = {}
    if args.recipe == "thm1-positive":
        kwargs["jobs"] = args.jobs
    if args.recipe == "thm3-dihedral":
        kwargs["include_long"] = args.long
    if args.node_budget:
        kwargs["node_budget"] = args.node_budget
    report = RECIPES[args.recipe](**kwargs)
    for line in report.lines():
        print(line)
    out = _outdir(args)
    dump_json(
        {
            "recipe": report.recipe,
            "tool": {"name": "schurlab", "version": __version__},
            "checks": [vars(c) for c in report.checks],
            "exit_code": report.exit_code,
        },
        out / f"verify-{report.recipe}.json",
    )
    return report.exit_code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="schurlab", description="S-rings over finite groups: construction, enumeration, schurity")
    parser.add_argument("--version", action="version", version=f"schurlab {__version__}")
    parser.add_argument("--config", help="key=value config file", default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("group", help="inspect a group")
    p.add_argument("spec")
    p.add_argument("action", choices=["info"])
    p.add_argument("--json", default=None, help="also write a JSON report here")
    p.set_defaults(fn=cmd_group_info)

    p = sub.add_parser("enumerate", help="enumerate S-rings")
    p.add_argument("spec")
    p.add_argument("--mode", choices=["central", "all"], default="central")
    p.add_argument("--cap-atoms", type=int, default=None)
    p.add_argument("--cap-order", type=int, default=None)
    p.add_argument("--schurity", action="store_true", help="also decide schurity per member")
    p.add_argument("--node-budget", type=int, default=None)
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_enumerate)

    p = sub.add_parser("check", help="schurity-check an S-ring from a JSON file")
    p.add_argument("spec")
    p.add_argument("sring")
    p.add_argument("--node-budget", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("gschur", help="decide the generalized Schur property")
    p.add_argument("spec")
    p.add_argument("--cap-atoms", type=int, default=None)
    p.add_argument("--node-budget", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_gschur)

    p = sub.add_parser("verify", help="run a named verification recipe")
    p.add_argument("recipe", choices=sorted(RECIPES))
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--long", action="store_true", help="include long-running checks")
    p.add_argument("--node-budget", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_verify)
    return parser


_CONFIG_DEFAULTS = {"cap_atoms": 24, "cap_order": 25, "node_budget": None, "jobs": None}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = _load_config(args.config)
    for key, fallback in _CONFIG_DEFAULTS.items():
        if not hasattr(args, key):
            continue
        if getattr(args, key) is None and key in cfg:
            setattr(args, key, int(cfg[key]))
        if getattr(args, key) is None and key in ("cap_atoms", "cap_order"):
            setattr(args, key, _CONFIG_DEFAULTS[key] if fallback is not None else None)
    if getattr(args, "jobs", None) is None:
        args.jobs = default_jobs()
    if "out" in cfg and getattr(args, "out", None) is None:
        args.out = cfg["out"]
    try:
        return args.fn(args)
    except (GroupSpecError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NodeBudgetExceeded as exc:
        print(f"undecided: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED


if __name__ == "__main__":
    raise SystemExit(main())

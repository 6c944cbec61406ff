"""Command-line client.

Builds a :class:`RunConfig` from an optional JSON config file plus flag
overrides, sends it to the service (in-process by default, or a running
server with ``--server``) and writes the certificate bundle.

Exit codes: 0 pass, 1 fail, 2 usage error.
"""

from __future__ import annotations

import argparse
import asyncio
import csv
import json
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

import httpx
from pydantic import ValidationError

from .schemas import Certificate, RunConfig

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# flag dest -> location inside RunConfig
_OVERRIDES = {
    "Lx": ("Lx",),
    "Ly": ("Ly",),
    "direction": ("direction",),
    "nu": ("nu",),
    "scales": ("scales",),
    "t": ("physical", "t"),
    "mu": ("physical", "mu"),
    "mu_prime": ("physical", "mu_prime"),
    "delta": ("physical", "delta"),
    "delta_phi": ("physical", "delta_phi"),
    "eps": ("filter", "eps"),
    "n_max": ("filter", "n_max"),
    "n_grid": ("filter", "n_grid"),
    "nk": ("grids", "nk"),
    "n_lambda": ("grids", "n_lambda"),
    "n_steps": ("grids", "n_steps"),
    "lambdas": ("grids", "band_lambdas"),
    "tol_gap": ("tolerances", "gap"),
    "tol_occupation": ("tolerances", "occupation"),
    "tol_covariance": ("tolerances", "covariance"),
    "tol_ed": ("tolerances", "ed"),
    "out": ("out_dir",),
    "seed": ("seed",),
}


class UsageError(Exception):
    pass


def _common(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("run")
    g.add_argument("--config", type=Path, help="JSON config file; flags override its fields")
    g.add_argument("--out", help="output directory (default: out)")
    g.add_argument("--server", help="base URL of a running service; in-process when omitted")
    g.add_argument("--seed", type=int)
    g.add_argument("--Lx", type=int, help="torus width")
    g.add_argument("--Ly", type=int, help="torus height (defaults to Lx)")
    g.add_argument("--direction", choices=["x", "y"])
    ph = p.add_argument_group("model")
    ph.add_argument("--t", type=float)
    ph.add_argument("--mu", type=float)
    ph.add_argument("--mu-prime", dest="mu_prime", type=float)
    ph.add_argument("--delta", type=float)
    ph.add_argument("--delta-phi", dest="delta_phi", type=float)
    gr = p.add_argument_group("grids and tolerances")
    gr.add_argument("--nk", type=int)
    gr.add_argument("--n-lambda", dest="n_lambda", type=int)
    gr.add_argument("--n-steps", dest="n_steps", type=int)
    gr.add_argument("--tol-gap", dest="tol_gap", type=float)
    gr.add_argument("--tol-occupation", dest="tol_occupation", type=float)
    gr.add_argument("--tol-covariance", dest="tol_covariance", type=float)
    gr.add_argument("--tol-ed", dest="tol_ed", type=float)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="artifact", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("bands", help="quasiparticle bands along Gamma-X-M-Gamma and gaps per lambda")
    _common(p)
    p.add_argument("--lambdas", type=float, nargs="+", help="interpolation parameters to sample")

    p = sub.add_parser("gap-scan", help="minimum gap over the Brillouin zone along the path")
    _common(p)

    p = sub.add_parser("filter", help="filter function tables and decay fit")
    _common(p)
    p.add_argument("--eps", choices=["log"])
    p.add_argument("--n-max", dest="n_max", type=int)
    p.add_argument("--n-grid", dest="n_grid", type=int)

    p = sub.add_parser("verify", help="run a certificate")
    p.add_argument("target", choices=["stab", "appendixB", "bosonization", "duality", "meraqle"])
    _common(p)
    p.add_argument("--nu", type=int, nargs="+", help="numbers of superconducting layers (meraqle)")
    p.add_argument("--scales", type=int, help="successive layers (meraqle)")
    p.add_argument("--eps", choices=["log"])
    p.add_argument("--n-max", dest="n_max", type=int)
    p.add_argument("--n-grid", dest="n_grid", type=int)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    raw: Dict[str, Any] = {}
    if args.config is not None:
        try:
            raw = json.loads(args.config.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config: {exc}") from exc
    raw["subcommand"] = args.subcommand
    if args.subcommand == "verify":
        raw["target"] = args.target
    for dest, loc in _OVERRIDES.items():
        val = getattr(args, dest, None)
        if val is None:
            continue
        node = raw
        for key in loc[:-1]:
            node = node.setdefault(key, {})
        node[loc[-1]] = val
    try:
        return RunConfig.model_validate(raw)
    except ValidationError as exc:
        raise UsageError(str(exc)) from exc


def call_service(cfg: RunConfig, server: Optional[str] = None, timeout: float = 3600.0) -> Certificate:
    body = cfg.model_dump(mode="json")
    if server:
        with httpx.Client(base_url=server, timeout=timeout) as client:
            r = client.post("/run", json=body)
    else:
        from .service import app

        async def _local() -> httpx.Response:
            transport = httpx.ASGITransport(app=app)
            async with httpx.AsyncClient(transport=transport, base_url="http://local", timeout=timeout) as client:
                return await client.post("/run", json=body)

        r = asyncio.run(_local())
    if r.status_code == 422:
        raise UsageError(json.dumps(r.json().get("detail")))
    r.raise_for_status()
    return Certificate.model_validate(r.json())


def write_bundle(cert: Certificate, out_dir: Path) -> List[Path]:
    """CSV per table plus one JSON certificate; returns the written paths."""
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = cert.kind
    written = []
    files = {}
    for name, table in cert.tables.items():
        path = out_dir / f"{stem}_{name}.csv"
        with path.open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(table.columns)
            w.writerows([repr(float(v)) for v in row] for row in table.rows)
        files[name] = path.name
        written.append(path)
    doc = cert.model_dump(mode="json", exclude={"tables"})
    doc["tables"] = files
    path = out_dir / f"{stem}.json"
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    written.append(path)
    cfg_path = out_dir / f"{stem}.config.json"
    cfg_path.write_text(cert.config.model_dump_json(indent=2) + "\n")
    written.append(cfg_path)
    return written


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    try:
        cfg = config_from_args(args)
        cert = call_service(cfg, args.server)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    paths = write_bundle(cert, Path(cfg.out_dir))
    failed = [k for k, v in cert.checks.items() if not v]
    print(f"{cert.kind}: {cert.status}" + (f" ({cert.message})" if cert.message else ""))
    for k in failed:
        print(f"  failed: {k}")
    for p in paths:
        print(f"  wrote {p}")
    return EXIT_PASS if cert.passed else EXIT_FAIL


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()

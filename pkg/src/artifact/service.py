"""HTTP service exposing every computation and certificate as one ``/run`` call."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, Tuple

import numpy as np
from fastapi import FastAPI, HTTPException

from . import __version__
from .bdg import InterpolationPath, PathParams, gap_scan, grid_gap
from .bosonization import dictionary_certificate
from .clifford_renorm import build_c_z2, verify_all_figures, verify_appendix_b, verify_fixed_point
from .lattice import Direction, build_torus
from .meraqle import sixteenfold_metadata, spectral_duality_check, toric_ground_space_check, verify_scales
from .quasi_adiabatic import build_filter, check_rho, decay_fit
from .schemas import Certificate, Health, RunConfig, Table

DEFAULT_SIZE = {"stab": 4, "appendixB": 8, "bosonization": 4, "duality": 2, "meraqle": 8}
ED_MAX_FACES = 9


def _status(checks: Dict[str, bool]) -> str:
    vals = list(checks.values())
    return "pass" if all(vals) else ("partial" if any(vals) else "fail")


def _cert(kind: str, cfg: RunConfig, checks: Dict[str, bool], message: str = "", **kw) -> Certificate:
    passed = bool(checks) and all(checks.values())
    return Certificate(kind=kind, passed=passed, status=_status(checks), message=message, config=cfg, checks=checks, **kw)


def _size(cfg: RunConfig, default: int) -> Tuple[int, int]:
    return cfg.Lx or default, cfg.Ly or cfg.Lx or default


def _path(cfg: RunConfig) -> InterpolationPath:
    p = cfg.physical
    return InterpolationPath(Direction.parse(cfg.direction), PathParams(p.t, p.mu, p.mu_prime, p.delta))


def _symmetry_line(nk: int) -> Tuple[np.ndarray, np.ndarray]:
    """Gamma -> X -> M -> Gamma with ``nk`` points per leg; returns (arc length, k)."""
    corners = np.array([[0.0, 0.0], [np.pi, 0.0], [np.pi, np.pi], [0.0, 0.0]])
    ks, s, acc = [], [], 0.0
    for a, b in zip(corners[:-1], corners[1:]):
        f = np.linspace(0.0, 1.0, nk, endpoint=False)
        seg = a + f[:, None] * (b - a)
        ks.append(seg)
        s.append(acc + f * np.linalg.norm(b - a))
        acc += np.linalg.norm(b - a)
    ks.append(corners[-1:])
    s.append(np.array([acc]))
    return np.concatenate(s), np.concatenate(ks)


# ---------------------------------------------------------------- subcommands


def run_bands(cfg: RunConfig) -> Certificate:
    path = _path(cfg)
    g = cfg.grids
    s, ks = _symmetry_line(g.nk)
    rows = []
    for lam in g.band_lambdas:
        w = np.linalg.eigvalsh(path.block(lam, ks))
        rows += [[lam, float(si), float(k[0]), float(k[1]), *map(float, wi)] for si, k, wi in zip(s, ks, w)]
    nb = len(rows[0]) - 4
    bands = Table(columns=["lambda", "s", "kx", "ky"] + [f"E{i}" for i in range(nb)], rows=rows)
    gaps = [[lam, grid_gap(path, lam, g.nk)] for lam in g.band_lambdas]
    min_gap = min(v for _, v in gaps)
    ok = min_gap > cfg.tolerances.gap
    msg = "" if ok else f"gap closes: min gap {min_gap:.3e}"
    return _cert(
        "bands",
        cfg,
        {"gapped": ok},
        msg,
        data={"min_gap": min_gap},
        tables={"bands": bands, "gaps": Table(columns=["lambda", "gap"], rows=gaps)},
    )


def run_gap_scan(cfg: RunConfig) -> Certificate:
    g = cfg.grids
    scan = gap_scan(_path(cfg), n_lambda=g.n_lambda, nk=g.nk)
    ok = scan.min_gap > cfg.tolerances.gap
    msg = "" if ok else f"gap closes near lambda={scan.argmin_lambda:.4f}"
    return _cert(
        "gap-scan",
        cfg,
        {"gapped": ok},
        msg,
        data={"min_gap": scan.min_gap, "argmin_lambda": scan.argmin_lambda, "nk": g.nk, "n_lambda": g.n_lambda},
        tables={"gap_scan": Table(columns=["lambda", "gap"], rows=[[float(a), float(b)] for a, b in zip(scan.lambdas, scan.gaps)])},
    )


def run_filter(cfg: RunConfig) -> Certificate:
    fp = cfg.filter
    filt = build_filter(fp.eps, fp.n_max, fp.n_grid)
    check_rho(filt.rho)
    w = np.linspace(-1.5, 1.5, 601)
    gt, Ft = filt.g_tilde(w), filt.F_tilde(w)
    tail = np.abs(w) >= 1.0
    tail_err = float(np.max(np.abs(Ft[tail] + 1.0 / w[tail])))
    y = np.linspace(0.0, 200.0, 401)
    gy = filt.g(y)
    fit = decay_fit(filt)
    checks = {
        "support_within_unit_interval": filt.support <= 1.0,
        "g_tilde_zero_outside_support": bool(np.all(filt.g_tilde(w[np.abs(w) >= filt.support]) == 0.0)),
        "g_tilde_normalized": abs(float(filt.g_tilde(0.0)) - 1.0) < 1e-9,
        "F_tilde_tail_exact": tail_err < cfg.tolerances.filter_tail,
        "decay_exponent_at_least_half": fit.alpha >= 0.5,
    }
    return _cert(
        "filter",
        cfg,
        checks,
        data={
            "support": filt.support,
            "normalization_c": filt.c,
            "lower_bound_ratio": filt.lower_bound_ratio(),
            "F_tilde_tail_error": tail_err,
            "decay_fit": {"alpha": fit.alpha, "b": fit.b, "log_c": fit.log_c, "window": [10.0, 200.0]},
        },
        tables={
            "spectral": Table(columns=["omega", "g_tilde", "F_tilde"], rows=[[float(a), float(b), float(c)] for a, b, c in zip(w, gt, Ft)]),
            "time_domain": Table(columns=["y", "g"], rows=[[float(a), float(b)] for a, b in zip(y, gy)]),
        },
    )


def _verify_stab(cfg: RunConfig) -> Certificate:
    lat = build_torus(*_size(cfg, DEFAULT_SIZE["stab"]))
    panels = verify_all_figures(lat)
    fixed = [verify_fixed_point(lat, d, k) for d in ("x", "y") for k in ("toric", "z2f")]
    checks = {f"panel_{p.panel}": p.passed for p in panels}
    checks.update({f"fixed_point_{r.kind}_{r.direction}": r.passed for r in fixed})
    circuits = {}
    for d in ("x", "y"):
        spec = build_c_z2(lat, d)
        circuits[d] = {"n_gates": spec.n_gates, "depth": spec.depth(), "all_commute": spec.all_commute()}
    return _cert(
        "verify-stab",
        cfg,
        checks,
        data={"lattice": [lat.Lx, lat.Ly], "panels": [p.to_dict() for p in panels], "circuits": circuits},
    )


def _verify_appendix_b(cfg: RunConfig) -> Certificate:
    lat = build_torus(*_size(cfg, DEFAULT_SIZE["appendixB"]))
    res = [r for d in ("x", "y") for r in verify_appendix_b(d, lat)]
    checks = {f"{r.name}_{r.direction}": r.passed for r in res}
    return _cert("verify-appendixB", cfg, checks, data={"lattice": [lat.Lx, lat.Ly], "identities": [r.to_dict() for r in res]})


def _verify_bosonization(cfg: RunConfig) -> Certificate:
    lat = build_torus(*_size(cfg, DEFAULT_SIZE["bosonization"]))
    p = cfg.physical
    checks = dictionary_certificate(lat, p.t, p.mu, p.delta)
    return _cert("verify-bosonization", cfg, checks, data={"lattice": [lat.Lx, lat.Ly]})


def _verify_duality(cfg: RunConfig) -> Certificate:
    Lx, Ly = _size(cfg, DEFAULT_SIZE["duality"])
    if Lx * Ly > ED_MAX_FACES:
        raise ValueError(f"exact diagonalization is limited to {ED_MAX_FACES} faces")
    p = cfg.physical
    rep = spectral_duality_check(p.t, p.mu, p.delta, Lx, Ly, tol=cfg.tolerances.ed)
    tg = toric_ground_space_check(2)
    checks = {
        "sectors_matched": rep.passed,
        "toric_ground_energy": abs(tg.in_sector_ground_energy + tg.n_faces) < cfg.tolerances.ed,
        "toric_ground_space": tg.projector_error < cfg.tolerances.ed,
    }
    return _cert(
        "verify-duality",
        cfg,
        checks,
        data={"duality": rep.to_dict(), "toric": tg.__dict__},
    )


def _verify_meraqle(cfg: RunConfig) -> Certificate:
    L, _ = _size(cfg, DEFAULT_SIZE["meraqle"])
    filt = build_filter(cfg.filter.eps, cfg.filter.n_max, cfg.filter.n_grid)

    def one(nu: int):
        return verify_scales(nu, L=L, scales=cfg.scales, n_steps=cfg.grids.n_steps, filt=filt)

    # independent certificates; numpy releases the GIL in the heavy parts
    with ThreadPoolExecutor() as pool:
        certs = list(pool.map(one, cfg.nu))
    checks: Dict[str, bool] = {}
    for c in certs:
        checks[f"nu{c.nu}_spin"] = all(s.passed for s in c.spin)
        checks[f"nu{c.nu}_fermion"] = c.fermion.passed
    return _cert(
        "verify-meraqle",
        cfg,
        checks,
        data={
            "certificates": [c.to_dict() for c in certs],
            "sixteenfold": [sixteenfold_metadata(nu).to_dict() for nu in cfg.nu],
        },
    )


VERIFY: Dict[str, Callable[[RunConfig], Certificate]] = {
    "stab": _verify_stab,
    "appendixB": _verify_appendix_b,
    "bosonization": _verify_bosonization,
    "duality": _verify_duality,
    "meraqle": _verify_meraqle,
}


def run(cfg: RunConfig) -> Certificate:
    if cfg.subcommand == "bands":
        return run_bands(cfg)
    if cfg.subcommand == "gap-scan":
        return run_gap_scan(cfg)
    if cfg.subcommand == "filter":
        return run_filter(cfg)
    return VERIFY[cfg.target](cfg)


# ---------------------------------------------------------------- app


def create_app() -> FastAPI:
    app = FastAPI(title="artifact", version=__version__)

    @app.get("/health", response_model=Health)
    def health() -> Health:
        return Health(version=__version__)

    @app.post("/run", response_model=Certificate)
    def run_endpoint(cfg: RunConfig) -> Certificate:
        try:
            return run(cfg)
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc

    @app.get("/sixteenfold/{nu}")
    def sixteenfold(nu: int) -> Dict[str, object]:
        try:
            return sixteenfold_metadata(nu).to_dict()
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc

    return app


app = create_app()

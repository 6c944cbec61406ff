"""Acceptance checks, one per criterion.

Each test records a one-line verdict; ``conftest.py`` prints them all at the
end of the session.  Run ``python tests/test_acceptance.py`` for the lines alone.
"""

import time

import numpy as np
import pytest

from artifact.bdg import InterpolationPath, PathParams, b_band_variance, gap_scan, pip_chern
from artifact.clifford_renorm import verify_all_figures, verify_appendix_b, verify_fixed_point
from artifact.lattice import Direction, build_torus
from artifact.meraqle import spectral_duality_check, toric_ground_space_check, verify_scales
from artifact.quasi_adiabatic import (
    convergence_order,
    decay_fit,
    locality_report,
    torus_path_gap,
    transport_error,
)

pytestmark = pytest.mark.acceptance

# first computed value of criterion 1, kept as a regression anchor
MIN_GAP_REFERENCE = 1.1283244689599647

VERDICTS = {}


def record(n, ok, text):
    VERDICTS[n] = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {text}"
    return ok


def test_c01_gapped_interpolation():
    t0 = time.perf_counter()
    scan = gap_scan(InterpolationPath(Direction.X, PathParams(1.0, -2.0, -8.0, 1.0)), n_lambda=256, nk=256)
    dt = time.perf_counter() - t0
    frozen = abs(scan.min_gap - MIN_GAP_REFERENCE) < 1e-9 * MIN_GAP_REFERENCE
    ok = bool(np.all(scan.gaps > 0)) and frozen and dt <= 60.0
    record(1, ok, f"min gap {scan.min_gap:.12f} at lambda {scan.argmin_lambda:.4f}, matches frozen value: {frozen}, {dt:.1f} s")
    assert ok


def test_c02_flat_bands():
    var = b_band_variance(InterpolationPath(Direction.X), nk=64)
    ok = var < 1e-12
    record(2, ok, f"B-block band variance at lambda=1: {var:.2e}")
    assert ok


def test_c03_chern_numbers():
    t0 = time.perf_counter()
    got = {nk: (pip_chern(1.0, -2.0, 1.0, nk), pip_chern(1.0, -4.5, 1.0, nk), pip_chern(1.0, -6.0, 1.0, nk)) for nk in (24, 48)}
    dt = time.perf_counter() - t0
    ok = all(abs(a) == 1 and b == 0 and c == 0 for a, b, c in got.values()) and got[24] == got[48]
    record(3, ok, f"C(mu=-2, -4.5, -6) on 24^2 {got[24]}, on 48^2 {got[48]}, {dt:.2f} s")
    assert ok


def test_c04_stabilizer_figures():
    t0 = time.perf_counter()
    panels, fixed = [], []
    for L in (4, 8):
        lat = build_torus(L, L)
        panels += verify_all_figures(lat)
        fixed += [verify_fixed_point(lat, d, k) for d in ("x", "y") for k in ("toric", "z2f")]
    dt = time.perf_counter() - t0
    ok = all(p.passed for p in panels) and all(f.passed for f in fixed) and dt < 1.0
    n_ok = sum(p.passed for p in panels)
    record(4, ok, f"{n_ok}/{len(panels)} panels, {sum(f.passed for f in fixed)}/{len(fixed)} group equalities on 4x4 and 8x8, {dt:.2f} s")
    assert ok


def test_c05_generator_identities():
    t0 = time.perf_counter()
    res = [r for d in ("x", "y") for r in verify_appendix_b(d, build_torus(8, 8))]
    dt = time.perf_counter() - t0
    ok = all(r.passed for r in res) and len(res) >= 6 and dt < 1.0
    record(5, ok, f"{sum(r.passed for r in res)}/{len(res)} identities (hops along and across, both parities, x and y), {dt:.2f} s")
    assert ok


def test_c06_filter(filt):
    w = np.concatenate([np.linspace(-50.0, -1.0, 2000), np.linspace(1.0, 50.0, 2000)])
    tail = float(np.max(np.abs(filt.F_tilde(w) + 1.0 / w)))
    inside = np.linspace(-1.5, 1.5, 3001)
    outside = inside[np.abs(inside) >= filt.support]
    support_ok = filt.support <= 1.0 and bool(np.all(filt.g_tilde(outside) == 0.0))
    alpha = decay_fit(filt, 10.0, 200.0).alpha
    ok = tail < 1e-10 and support_ok and alpha >= 0.5
    record(6, ok, f"F~ tail error {tail:.1e}, support {filt.support:.9f} exact: {support_ok}, decay alpha {alpha:.3f}")
    assert ok


def test_c07_transport(filt):
    t0 = time.perf_counter()
    lat = build_torus(6, 6)
    path = InterpolationPath(Direction.X)
    gap = torus_path_gap(path, lat)
    errs, last = [], None
    for n in (64, 128, 256, 512):
        e, last = transport_error(path, lat, filt, n, gap)
        errs.append(e)
    orders = convergence_order(errs)
    b = [f for f in range(lat.n_faces) if lat.face_xy(f)[0] % 2]
    b_occ = float(np.max(last.gamma.occupations()[b]))
    dt = time.perf_counter() - t0
    # second order is approached from below; see the notes on tolerance
    ok = errs[-1] < 1e-3 and min(orders) >= 1.99 and b_occ < 1e-6 and dt <= 120.0
    record(
        7,
        ok,
        f"|dGamma|_F {errs[-1]:.3e} at 512 steps, orders {', '.join(f'{o:.6f}' for o in orders)}, "
        f"max B occupation {b_occ:.1e}, {dt:.1f} s",
    )
    assert ok


def test_c08_quasi_locality(filt):
    lat = build_torus(12, 12)
    path = InterpolationPath(Direction.X)
    rep = locality_report(path, lat, 0.5, filt, torus_path_gap(path, lat, 33))
    ok = rep.tail_slope < -4.0
    record(
        8,
        ok,
        f"log-log slope {rep.tail_slope:.2f} for R > {rep.core_radius:.2f} (beyond the range of dH); "
        f"slope over all radii {rep.full_slope:.2f}",
    )
    assert ok


def test_c09_spectral_duality():
    t0 = time.perf_counter()
    rep = spectral_duality_check(1.0, -2.0, 1.0, 2, 2, tol=1e-8)
    tg = toric_ground_space_check(2)
    dt = time.perf_counter() - t0
    ok = rep.passed and tg.passed
    matched = ", ".join(str(s["matched"]) for s in rep.sectors)
    record(9, ok, f"2x2 blocks matched to {matched}; toric ground space error {tg.projector_error:.1e}, {dt:.1f} s")
    assert ok


def test_c10_meraqle_scale_invariance(filt):
    t0 = time.perf_counter()
    certs = [verify_scales(nu, L=8, scales=2, n_steps=256, filt=filt) for nu in (0, 1, 2)]
    dt = time.perf_counter() - t0
    ok = all(c.passed for c in certs) and dt <= 600.0
    parts = []
    for c in certs:
        reps = [r for rs in c.fermion.layers.values() for r in rs]
        cov = max((r.covariance_error for r in reps), default=0.0)
        parts.append(f"nu={c.nu} spin {all(s.passed for s in c.spin)} cov {cov:.1e}")
    record(10, ok, "; ".join(parts) + f", {dt:.1f} s")
    assert ok


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))

"""Exit criteria.  Each test records one PASS/FAIL line, printed in the
pytest terminal summary (or directly when run as a script)."""
import json
import math

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.optimize import brentq
from scipy.special import beta

from boundary_forge.cli import main
from boundary_forge.dynamics import SimConfig, simulate
from boundary_forge.force import Duffing, Polynomial, eval_force
from boundary_forge.synthesis import (
    BranchId,
    BranchStatus,
    DesignSpec,
    energy_residual,
    enumerate_configurations,
    make_branch,
    roundtrip_force,
)

from conftest import random_family, random_polynomial

RESULTS: list[str] = []

K3 = -5000.0
K_MAG = 100.0
DELTA = 0.01
L = 0.05


def record(n, title, ok, detail):
    RESULTS.append(f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {title} ({detail})")
    assert ok, detail


def _random_censuses():
    rng = np.random.default_rng(7)
    out = []
    for _ in range(200):
        force, _ = random_polynomial(rng, lowest=int(rng.integers(0, 6)))
        k_mag, delta_mag, rod = random_family(rng)
        out.append((force, enumerate_configurations(force, k_mag, delta_mag, rod)))
    return out


@pytest.fixture(scope="module")
def random_censuses():
    return _random_censuses()


def test_1_duffing_closed_form():
    worst = 0.0
    checked = 0
    for k in (K_MAG, -K_MAG):
        for delta in (DELTA, -DELTA, 0.0):
            spec = DesignSpec(Duffing(K3), k, delta, L)
            for name in ("Y1", "Y2"):
                bid = BranchId.from_name(name + BranchId.for_spec(spec).name[2])
                branch = make_branch(spec, bid)
                if branch.status is not BranchStatus.NON_DEGENERATE:
                    continue
                x, y = branch.sample(1001)[:, :2].T
                closed = bid.sign.value * np.sqrt(delta**2 + K3 * x**4 / (2 * k))
                worst = max(worst, float(np.max(np.abs(y - closed))))
                checked += 1
    record(1, "Duffing pipeline vs closed form", worst < 1e-9 and checked == 10,
           f"{checked} branches, max |dY| = {worst:.2e} m < 1e-9")


def test_2_census_counts():
    soft = enumerate_configurations(Duffing(-5000.0), K_MAG, DELTA, L)
    hard = enumerate_configurations(Duffing(5000.0), K_MAG, DELTA, L)
    quad_ = enumerate_configurations(Polynomial([0.0, 0.0, 50.0]), K_MAG, DELTA, L)
    got = (soft.strict_count, soft.lenient_count, hard.strict_count, quad_.strict_count)
    record(2, "census counts", got == (6, 7, 6, 8),
           f"softening {got[0]}/{got[1]}, hardening {got[2]}, 50X^2 {got[3]}; expected 6/7, 6, 8")


def test_3_domain_bounds():
    census = enumerate_configurations(Duffing(K3), K_MAG, DELTA, L)
    y11 = census.branches["Y11"].domain
    y14 = census.branches["Y14"].domain
    oracle11 = brentq(lambda x: DELTA**2 + K3 * x**4 / (2 * K_MAG), 0.0, 1.0, xtol=1e-15)
    oracle14 = brentq(lambda x: K3 * x**4 / (2 * -K_MAG) - L**2, 0.0, 1.0, xtol=1e-15)
    errs = [abs(y11.hi - oracle11), abs(-y11.lo - oracle11), abs(y14.hi - oracle14), abs(-y14.lo - oracle14),
            abs(oracle11 - 0.044721), abs(oracle14 - 0.1)]
    record(3, "domain half-widths", max(errs[:4]) <= 1e-6 and errs[4] < 1e-6 and errs[5] < 1e-6,
           f"Y11 {y11.hi:.6f} m, Y14 {y14.hi:.6f} m, max error vs bisection {max(errs[:4]):.1e} <= 1e-6")


def test_4_energy_identity(random_censuses):
    worst = 0.0
    n_branches = 0
    for _, census in random_censuses:
        for b in census.live():
            x, y = b.sample(1001)[:, :2].T
            worst = max(worst, float(np.max(np.abs(energy_residual(b.spec, x, y)))))
            n_branches += 1
    record(4, "energy identity", worst < 1e-12,
           f"{n_branches} branches over 200 specs, max residual {worst:.2e} < 1e-12")


def test_5_roundtrip_force(random_censuses):
    worst = 0.0
    for force, census in random_censuses:
        for b in census.live():
            x = b.sample(1001)[:, 0]
            p = np.asarray(eval_force(force, x))
            rebuilt = np.array([roundtrip_force(b.spec, b.id, float(v)) for v in x])
            worst = max(worst, float(np.max(np.abs(rebuilt - p)) / max(1.0, np.max(np.abs(p)))))
    record(5, "round-trip force", worst < 1e-8, f"max relative residual {worst:.2e} < 1e-8")


def test_6_dynamics():
    mass, amp, k3 = 1.0, 0.05, 5000.0

    def integrand(theta):
        x = amp * math.sin(theta)
        return 1.0 / math.sqrt(2.0 / mass * k3 * (amp**2 + x**2) / 4.0)

    T_quad = 4.0 * quad(integrand, 0.0, math.pi / 2, epsrel=1e-13)[0]
    T_beta = math.sqrt(2.0 * mass / k3) / amp * beta(0.25, 0.5)
    assert abs(T_quad / T_beta - 1) < 1e-12

    spec = DesignSpec(Duffing(k3), K_MAG, 0.0, L)
    bid = BranchId.from_name("Y13")
    dt = T_quad / 6000
    r = simulate(spec, bid, SimConfig(mass, dt, 1e4 * dt, x0=amp))
    idx = np.nonzero((r.x[:-1] > 0) & (r.x[1:] <= 0))[0]
    tc = r.t[idx] + dt * r.x[idx] / (r.x[idx] - r.x[idx + 1])
    period_err = abs((tc[1] - tc[0]) / T_quad - 1)
    drift = float(np.max(np.abs(r.e - r.e[0])) / max(abs(r.e[0]), 0.5 * mass * np.max(r.v**2)))
    back = simulate(spec, bid, SimConfig(mass, dt, 1e4 * dt, x0=float(r.x[-1]), v0=-float(r.v[-1])))
    reversal = max(abs(back.x[-1] - amp), abs(back.v[-1]))
    ok = period_err < 1e-3 and drift < 1e-6 and reversal < 1e-9 and len(r.t) == 10001
    record(6, "Verlet dynamics", ok,
           f"period error {period_err:.1e} < 1e-3, drift {drift:.1e} < 1e-6 over 1e4 steps, "
           f"reversal {reversal:.1e} < 1e-9")


def test_7_negative_controls(tmp_path):
    base = {"force": {"type": "duffing", "k3": K3}, "k_eff": K_MAG, "delta": DELTA, "rod_length": L}
    codes = {}
    for label, change in [("k_eff=0", {"k_eff": 0}), ("delta=L", {"delta": L}), ("delta=-1.2L", {"delta": -1.2 * L})]:
        path = tmp_path / f"{label}.json"
        path.write_text(json.dumps({**base, **change}))
        codes[label] = main(["design", "--config", str(path), "--out", str(tmp_path / "x.csv")])

    good = tmp_path / "good.json"
    good.write_text(json.dumps(base))
    track = tmp_path / "track.csv"
    main(["design", "--config", str(good), "--out", str(track)])
    lines = track.read_text().splitlines()
    x, y, u, fr = lines[300].split(",")
    lines[300] = ",".join([x, repr(float(y) + 1e-4), u, fr])
    corrupt = tmp_path / "corrupt.csv"
    corrupt.write_text("\n".join(lines) + "\n")
    codes["corrupt table"] = main(["verify", "--config", str(good), "--table", str(corrupt)])
    codes["clean table"] = main(["verify", "--config", str(good), "--table", str(track)])

    expected = {"k_eff=0": 3, "delta=L": 3, "delta=-1.2L": 3, "corrupt table": 1, "clean table": 0}
    record(7, "negative controls", codes == expected, ", ".join(f"{k} -> {v}" for k, v in codes.items()))


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))

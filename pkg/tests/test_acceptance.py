"""Acceptance gate: one test per criterion, each printing a verdict line.

Run with ``pytest tests/test_acceptance.py -s`` to see the per-criterion
report; the whole module stays under five minutes.
"""

import subprocess
import sys
import time
from pathlib import Path

import numpy as np
import pytest

from dephasing_pdd.dynamics import (ControlProtocol, ProtocolTag,
                                    attenuation_functions, singlet)
from dephasing_pdd.pulses import (ControlledDecoherence,
                                  controlled_gamma_quadrature,
                                  free_decoherence, pdd_schedule)
from dephasing_pdd.qsl import QslInputs, phi0, qslt_general, qslt_ratio
from dephasing_pdd.spectral import (SpectralParams, gamma0_analytic,
                                    gamma0_quadrature)
from dephasing_pdd.verify import (check_baseline_degeneracy,
                                  check_concurrence_oracle, check_continuity,
                                  check_hand_anchor,
                                  check_protocol_identities)

REPO = Path(__file__).resolve().parent.parent


def verdict(number, name, passed, detail):
    line = (f"criterion {number} ({name}): "
            f"{'PASS' if passed else 'FAIL'} ({detail})")
    print(line)
    assert passed, line


def rel_err(a, b, floor=1e-12):
    return abs(a - b) / max(abs(b), floor)


def test_criterion_01_spectral_oracle():
    start = time.perf_counter()
    worst = 0.0
    ts = np.linspace(0.0, 30.0, 50)
    for s in (0.5, 1.0, 3.0):
        for eta in (0.1, 0.5):
            p = SpectralParams(s, eta)
            for t in ts:
                ref = gamma0_quadrature(p, float(t), tol=1e-9)
                worst = max(worst, rel_err(gamma0_analytic(p, float(t)), ref))
    elapsed = time.perf_counter() - start
    verdict(1, "spectral oracle", worst < 1e-6 and elapsed < 10.0,
            f"worst rel err {worst:.3e} < 1e-6, {elapsed:.1f}s < 10s")


def test_criterion_02_filter_function_oracle():
    start = time.perf_counter()
    worst = 0.0
    tau_f = 10.0
    ts = np.linspace(0.0, 2.0 * tau_f, 9)
    for s in (1.0, 3.0):
        p = SpectralParams(s, 0.5)
        for n in (1, 2, 5, 10):
            sched = pdd_schedule(n, tau_f)
            gamma = ControlledDecoherence(free_decoherence(p), sched)
            for t in ts:
                ref = controlled_gamma_quadrature(p, sched, float(t),
                                                  tol=1e-8)
                worst = max(worst, rel_err(gamma(float(t)), ref))
    elapsed = time.perf_counter() - start
    verdict(2, "filter-function oracle", worst < 1e-5 and elapsed < 60.0,
            f"worst rel err {worst:.3e} < 1e-5, {elapsed:.1f}s < 60s")


def test_criterion_03_hand_anchor():
    result = check_hand_anchor()
    verdict(3, "hand-derived anchor", result.measured < 1e-6,
            f"abs err {result.measured:.3e} < 1e-6")


def test_criterion_04_pulse_instant_continuity():
    result = check_continuity(n_schedules=20)
    verdict(4, "pulse-instant continuity", result.passed,
            f"worst normalized jump {result.measured:.3e} < 1 "
            "over 20 randomized schedules")


def test_criterion_05_protocol_identities():
    square, symmetry = check_protocol_identities()
    verdict(5, "protocol identities",
            square.measured < 1e-12 and symmetry.measured < 1e-15,
            f"max |Q10^2 - Q00 Q11| {square.measured:.3e} < 1e-12, "
            f"max |Q10 - Q01| {symmetry.measured:.3e} < 1e-15")


def test_criterion_06_concurrence_oracle():
    result = check_concurrence_oracle(n_states=200)
    verdict(6, "concurrence oracle", result.measured < 1e-10,
            f"worst abs err {result.measured:.3e} < 1e-10 over 200 "
            "X-states x 4 attenuation levels")


def test_criterion_07_qslt_cross_formula():
    rho0 = singlet()
    pref = phi0(rho0)
    sched = pdd_schedule(4, 10.0)
    worst = 0.0
    for s in (1.0, 3.0):
        p = SpectralParams(s, 0.5)
        for tag in ("Q00", "Q10", "Q11"):
            proto = ControlProtocol(ProtocolTag(tag), sched)
            q_of_t, qdot_of_t = attenuation_functions(proto, p)
            inputs = QslInputs(pref, q_of_t, tau_d=20.0,
                               breakpoints=sched.instants,
                               qdot_of_t=qdot_of_t)
            for te in (1.0, 5.0, 10.0, 15.0, 20.0):
                ratio = qslt_ratio(inputs, te, rel_tol=1e-9)
                general = qslt_general(rho0, q_of_t, qdot_of_t, te,
                                       breakpoints=sched.instants,
                                       rel_tol=1e-9)
                worst = max(worst, rel_err(general / te, ratio))
    verdict(7, "QSLT cross-formula consistency", worst < 1e-6,
            f"worst rel err {worst:.3e} < 1e-6 across "
            "Q00/Q10/Q11, s in {1, 3}")


def test_criterion_08_baseline_degeneracy():
    result = check_baseline_degeneracy()
    verdict(8, "baseline degeneracy", result.measured < 1e-6,
            f"max |ratio - 1| {result.measured:.3e} < 1e-6 for the "
            "uncontrolled Ohmic singlet")


def test_criterion_09_figure_trends():
    tau_f = 10.0
    pref = phi0(singlet())
    checks = []

    # (a) Q11(tau_f) rises with N and its gap to 1 shrinks, both baths
    q11 = {}
    for s in (1.0, 3.0):
        p = SpectralParams(s, 0.5)
        gaps = []
        for n in (10, 20, 100):
            sched = pdd_schedule(n, tau_f)
            gamma = ControlledDecoherence(free_decoherence(p), sched)
            q11[(s, n)] = float(np.exp(-2.0 * gamma(tau_f)))
            gaps.append(1.0 - q11[(s, n)])
        checks.append(("a", gaps[0] > gaps[1] > gaps[2] > 0.0))

    # (b) the super-Ohmic bath needs more pulses for the same recovery
    checks.append(("b", all(q11[(3.0, n)] < q11[(1.0, n)]
                            for n in (10, 20, 100))))

    # (c) one-sided control sits at the geometric mean of none and both
    for s in (1.0, 3.0):
        p = SpectralParams(s, 0.5)
        sched = pdd_schedule(20, tau_f)
        qs = {tag: attenuation_functions(
            ControlProtocol(ProtocolTag(tag), sched), p)[0](tau_f)
            for tag in ("Q00", "Q10", "Q11")}
        gap = abs(qs["Q10"] - np.sqrt(qs["Q00"] * qs["Q11"]))
        checks.append(("c", gap < 1e-12))

    # (d) short-term Q11 qslt_ratio decreases toward 0 as N grows
    for s in (1.0, 3.0):
        p = SpectralParams(s, 0.5)
        ratios = []
        for n in (10, 20, 100):
            sched = pdd_schedule(n, tau_f)
            proto = ControlProtocol(ProtocolTag.Q11, sched)
            q_of_t, qdot_of_t = attenuation_functions(proto, p)
            inputs = QslInputs(pref, q_of_t, tau_d=tau_f,
                               breakpoints=sched.instants,
                               qdot_of_t=qdot_of_t)
            ratios.append(qslt_ratio(inputs, tau_f))
        checks.append(("d", ratios[0] > ratios[1] > ratios[2]
                       and ratios[2] < 0.05))

    failed = [label for label, ok in checks if not ok]
    verdict(9, "figure trends", not failed,
            "all ordered comparisons hold" if not failed
            else f"failed sub-checks: {failed}")


def test_criterion_10_determinism(tmp_path):
    cfg = REPO / "configs" / "fig5_trace_markovian.cfg"
    assert cfg.exists(), "checked-in figure config missing"
    outputs = []
    for i in (1, 2):
        out = tmp_path / f"run{i}.csv"
        proc = subprocess.run(
            [sys.executable, "-m", "dephasing_pdd", "trace",
             "--config", str(cfg), "--out", str(out)],
            capture_output=True, text=True)
        assert proc.returncode == 0, proc.stderr
        outputs.append(out.read_bytes())
    verdict(10, "determinism", outputs[0] == outputs[1],
            f"two runs byte-identical ({len(outputs[0])} bytes)")

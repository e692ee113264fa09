"""Engine-vs-oracle comparisons shared by the property and acceptance tests."""

from __future__ import annotations

import random
from typing import List

import numpy as np

from isgcodes.logical import lpg_init, lpg_measure
from isgcodes.pauli import PauliOperator, multiply
from isgcodes.schedule import ErrorEvent, inject, run
from isgcodes.tableau import OutcomeId, OutcomeRegistry, StabilizerTableau
from isgcodes.zoo import random_schedule

import oracle

MAX_MEASUREMENTS = 9


def small_random_schedule(rng: random.Random):
    """Random schedule with n <= 4, at most 6 rounds and few enough outcomes to branch on."""
    n = rng.randint(1, 4)
    n_rounds = rng.randint(1, 6)
    per_round = max(1, min(3, MAX_MEASUREMENTS // n_rounds))
    while True:
        sched = random_schedule(rng, n, n_rounds, max_per_round=per_round)
        if sum(len(r) for r in sched.rounds) <= MAX_MEASUREMENTS:
            return sched


def _stack(n: int):
    keys, mats = [], []
    for x, z, m in oracle.all_paulis(n):
        keys.append((x, z))
        mats.append(m)
    return keys, np.array(mats)


def _oracle_stab(keys, mats, rho):
    vals = np.real(np.einsum("kij,ji->k", mats, rho))
    return {k: (1 if v > 0 else -1) for k, v in zip(keys, vals) if abs(abs(v) - 1) < 1e-7}


def _canonical_sign(p: PauliOperator) -> int:
    """``p = s * Q`` with ``Q`` the canonical Hermitian matrix for ``(x, z)``."""
    c = (p.x & p.z).bit_count()
    return -1 if (p.phase - c) % 4 == 2 else 1


def _tableau_group(tab: StabilizerTableau, outcomes) -> dict:
    out = {}
    gens = tab.generators
    for sel in range(1 << len(gens)):
        p = PauliOperator.identity(tab.n)
        mask = 0
        for i, g in enumerate(gens):
            if (sel >> i) & 1:
                p = multiply(p, g.pauli)
                mask ^= g.mask
        val = 1
        for i, o in enumerate(outcomes):
            if (mask >> i) & 1:
                val *= o
        out[(p.x, p.z)] = val * _canonical_sign(p)
    return out


def _anti(a, b) -> bool:
    return bool(((a[0] & b[1]).bit_count() + (a[1] & b[0]).bit_count()) & 1)


def _span(vecs) -> set:
    span = {(0, 0)}
    for v in vecs:
        span |= {(a ^ v[0], b ^ v[1]) for a, b in span}
    return span


def symbolic_steps(sched, t_max: int):
    """Tableau and presentation after every single measurement, plus the cases and detectors."""
    reg = OutcomeRegistry()
    tab = StabilizerTableau(sched.n, reg)
    lp = lpg_init(sched.n)
    steps = []
    for t in range(t_max + 1):
        for j, p in enumerate(sched.round(t)):
            res = tab.measure(p, OutcomeId(str(p), t, j))
            lp = lpg_measure(lp, p, res.case, res.removed.pauli if res.removed else None)
            steps.append((p, res, tab.copy(), lp))
    return steps


def check_schedule(sched) -> List[str]:
    """Compare the symbolic engine with exhaustive dense branching. Returns failure messages."""
    n = sched.n
    t_max = len(sched.rounds) - 1
    steps = symbolic_steps(sched, t_max)
    keys, mats = _stack(n)
    fails: List[str] = []
    leaves = []

    def walk(rho, i, outs):
        if i == len(steps):
            leaves.append(outs)
            return
        p, res, tab, lp = steps[i]
        before = _oracle_stab(keys, mats, rho)
        m = oracle.matrix(p)
        plus = float(np.real(np.trace(oracle.projector(m, 1) @ rho)))
        if abs(plus) < 1e-7 or abs(plus - 1) < 1e-7:
            case = 2
        elif all(not _anti((p.x, p.z), s) for s in before):
            case = 1
        else:
            case = 3
        if case != res.case:
            fails.append(f"step {i}: engine case {res.case}, oracle case {case}")
        for o in (1, -1):
            new, prob = oracle.measure(rho, m, o)
            if new is None:
                continue
            hist = outs + [o]
            stab = _oracle_stab(keys, mats, new)
            if _tableau_group(tab, hist) != stab:
                fails.append(f"step {i} outcomes {hist}: post-measurement group differs")
            norm = oracle.normalizer(stab, n)
            reps = [(r.x, r.z) for r in lp.representatives()]
            if not all(r in norm for r in reps):
                fails.append(f"step {i}: representative outside the normalizer")
            if _span(list(stab) + reps) != norm or len(_span(list(stab) + reps)) != len(stab) * 4 ** lp.k:
                fails.append(f"step {i}: representatives do not generate N(S)/S")
            for a, (xa, za) in enumerate(lp.pairs):
                for b, (xb, zb) in enumerate(lp.pairs):
                    want = a == b
                    if _anti((xa.x, xa.z), (zb.x, zb.z)) != want:
                        fails.append(f"step {i}: pair structure broken")
            walk(new, i + 1, hist)

    walk(np.eye(1 << n, dtype=complex) / (1 << n), 0, [])

    # detector group against deterministic products
    dets = [res.detector for _, res, _, _ in steps if res.detector is not None]
    det_vals = {}
    for d in dets:
        for m_old, v_old in list(det_vals.items()) + [(0, 1)]:
            det_vals.setdefault(m_old ^ d.mask, v_old * d.sign)
    det_vals.setdefault(0, 1)
    truth = oracle.deterministic_products(leaves)
    if truth != det_vals:
        fails.append(f"detector group mismatch: oracle {len(truth)} elements, engine {len(det_vals)}")
    return fails


def check_injection(sched, rng: random.Random, trials: int = 3) -> List[str]:
    """Frame propagation and residual classification against forced pure-state runs."""
    n = sched.n
    t_max = len(sched.rounds) - 1
    report = run(sched, t_max)
    # Before the logical count settles, errors on soon-destroyed logicals are
    # judged against the surviving ones only; a generic input entangles the two,
    # so the pure-state comparison is exact only after the last drop in k.
    ks = report.ks
    settled = max((t for t in range(len(ks)) if t == 0 or ks[t] != ks[t - 1]), default=0)
    fails = []
    for _ in range(trials):
        psi = np.array([complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(1 << n)])
        psi /= np.linalg.norm(psi)
        outs = sample_outcomes(sched, t_max, psi, rng)
        events = [ErrorEvent(rng.randrange(n), rng.choice("XYZ"), rng.randint(settled, t_max))
                  for _ in range(rng.randint(1, 2))]
        res = inject(report, events)
        flipped = [o * (-1 if (res.flipped >> i) & 1 else 1) for i, o in enumerate(outs)]
        mats = [(e.t, oracle.single_qubit(n, e.qubit, e.pauli)) for e in events]
        noisy = oracle.evolve_pure(sched, t_max, psi, flipped, mats)
        if noisy is None:
            fails.append(f"{events}: flipped record has zero probability in the noisy run")
            continue
        clean = oracle.evolve_pure(sched, t_max, psi, flipped)
        if res.violated:
            if clean is not None:
                fails.append(f"{events}: violated detectors but the record is reachable without errors")
            continue
        if clean is None:
            fails.append(f"{events}: no violated detector but the record is unreachable")
            continue
        overlap = abs(np.vdot(clean, noisy))
        if (res.logical_effect == "trivial") != (overlap > 1 - 1e-6):
            fails.append(f"{events}: effect {res.logical_effect} but overlap {overlap:.6f}")
        if res.logical_effect == "syndrome" and overlap > 1e-6:
            fails.append(f"{events}: pending syndrome but states overlap {overlap:.6f}")
    return fails


def sample_outcomes(sched, t_max: int, psi, rng: random.Random):
    state = psi.copy()
    outs = []
    for t in range(t_max + 1):
        for p in sched.round(t):
            m = oracle.matrix(p)
            plus = oracle.projector(m, 1) @ state
            prob = float(np.real(np.vdot(plus, plus)))
            o = 1 if rng.random() < prob else -1
            state = oracle.projector(m, o) @ state
            state /= np.linalg.norm(state)
            outs.append(o)
    return outs

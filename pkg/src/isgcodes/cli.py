"""Command-line front end: ``isgcodes <command> ...``.

Every command takes a schedule source, which is either a schedule file or the
name of a built-in code. Output comes as readable text or as stable
``key=value`` lines (``--format kv``). The exit status is 0 only when every
check the command performs passes.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from typing import List, Optional, Sequence

from . import zoo
from .logical import min_weight_logical
from .schedule import (EstablishmentError, MeasurementSchedule, ScheduleError, compare_schedules,
                       dump_schedule, inject, parameters, parse_error_spec, parse_schedule, run)
from .subsystem import bare_distance, bare_logicals, center_mod_phase, gauge_of_schedule, is_associated_isg
from .tableau import ContractError, format_detector
from .verify import SUITES, verify_code
from .zxweb import (UnsupportedDiagram, classify_web, compile_schedule, coverage, cross_check,
                    enumerate_webs, to_dot, to_text, web_output_operator)


def load_source(source: str) -> MeasurementSchedule:
    if os.path.exists(source):
        with open(source) as fh:
            return parse_schedule(fh.read(), name=os.path.basename(source))
    try:
        return zoo.by_name(source)
    except KeyError as exc:
        raise ScheduleError(f"{source!r} is neither a file nor a built-in code ({exc.args[0]})") from None


def _t_max(args, sched: MeasurementSchedule) -> int:
    if args.t_max is not None:
        return args.t_max
    rounds = args.horizon if args.horizon is not None else sched.default_horizon()
    return max(rounds, 1) - 1


def _emit(args, rows: Sequence[tuple], text_lines: Sequence[str]) -> None:
    if args.format == "kv":
        for key, value in rows:
            print(f"{key}={value}")
    else:
        for line in text_lines:
            print(line)


def cmd_analyze(args) -> int:
    sched = load_source(args.source)
    report = run(sched, _t_max(args, sched))
    params = parameters(sched, w_max=args.w_max, report=report)
    rows = [("n", params.n), ("k", params.k), ("d", params.d_text()),
            ("d_defined", int(params.d_defined)),
            ("period", sched.period if sched.period is not None else "inf"),
            ("T", params.T), ("provisional", int(params.provisional)),
            ("rounds", report.t_max + 1), ("detectors", len(report.detectors)),
            ("ranks", ",".join(map(str, report.ranks)))]
    lines = [f"{sched.name or 'schedule'}: {params}",
             f"period={rows[4][1]} T={params.T} rounds={report.t_max + 1} detectors={len(report.detectors)}"]
    if params.provisional:
        lines.append("provisional: infinite period, establishment judged over the simulated window")
    if not params.d_defined:
        lines.append("distance undefined: no protected logical qubits")
    elif params.d is None:
        lines.append(f"distance undetermined beyond weight {args.w_max}")
    if args.verbose:
        for t, (tab, lp) in enumerate(zip(report.tableaux, report.presentations)):
            lines.append(f"t={t} rank={tab.rank()} k={lp.k}")
            lines.append(f"  S = {tab.format(sched.labels)}")
            lines.append(f"  L = {lp.format(sched.labels)}")
    _emit(args, rows, lines)
    return 0


def cmd_detectors(args) -> int:
    sched = load_source(args.source)
    report = run(sched, _t_max(args, sched))
    lines = [format_detector(k, d, report.registry) for k, d in enumerate(report.detectors)]
    rows = [("count", len(lines))] + [(f"D{k}", line.split(" : ", 1)[1]) for k, line in enumerate(lines)]
    _emit(args, rows, lines or ["no detectors"])
    return 0


def cmd_inject(args) -> int:
    sched = load_source(args.source)
    report = run(sched, _t_max(args, sched))
    events = [e for spec in args.error for e in parse_error_spec(spec, sched)]
    res = inject(report, events)
    violated = sorted(res.violated)
    rows = [("violated", ",".join(f"D{i}" for i in violated)), ("logical_effect", res.logical_effect),
            ("flipped", len(report.registry.ids_of(res.flipped)))]
    lines = [f"errors: {', '.join(f'{e.pauli}@q{e.qubit},t{e.t}' for e in events)}",
             f"violated: {len(violated)}"]
    lines += ["  " + format_detector(i, report.detectors[i], report.registry) for i in violated]
    lines.append(f"logical effect: {res.logical_effect}")
    _emit(args, rows, lines)
    return 0


def cmd_verify_paper(args) -> int:
    names = list(SUITES) if args.name == "all" else [args.name]
    ok = True
    for name in names:
        suite = verify_code(name)
        ok &= suite.passed
        for c in suite.checks:
            status = "pass" if c.passed else "FAIL"
            if args.format == "kv":
                print(f"{name}.{c.claim.replace(' ', '_')}={status} expected={c.expected!r} computed={c.computed!r}")
            else:
                print(f"[{status}] {name}: {c.claim} ({c.source}) expected={c.expected} computed={c.computed}")
        if args.format != "kv":
            print(f"{name}: {'pass' if suite.passed else 'FAIL'}")
    return 0 if ok else 1


def cmd_subsystem(args) -> int:
    sched = load_source(args.source)
    g = gauge_of_schedule(sched)
    centre = center_mod_phase(g)
    bare = bare_logicals(g)
    show = sched.show
    rows = [("gauge_generators", len(g.generators)), ("centre_rank", len(centre)), ("k_subsystem", len(bare))]
    lines = [f"gauge generators: {len(g.generators)}",
             "centre: " + (", ".join(show(c) for c in centre) or "trivial"),
             "bare logicals: " + (", ".join(f"({show(x)}, {show(z)})" for x, z in bare) or "none")]
    ok = True
    if args.check_associated:
        rep = is_associated_isg(sched, g, run(sched, _t_max(args, sched)))
        rows += [("associated", int(rep.associated)), ("k_isg", rep.k_isg)]
        lines.append(f"associated ISG code: {rep.associated} (T={rep.T}, k_isg={rep.k_isg}, "
                     f"k_subsystem={rep.k_subsystem})")
        lines += [f"  {r}" for r in rep.reasons]
        if rep.k_isg is not None and rep.k_isg < rep.k_subsystem:
            ok = False
            lines.append("  bound violated: k_isg < k_subsystem")
    if args.bare_distance:
        bd = bare_distance(g, args.w_max)
        rows.append(("bare_distance", bd if bd is not None else f">{args.w_max}"))
        lines.append(f"bare distance: {bd if bd is not None else f'>{args.w_max}'}")
    _emit(args, rows, lines)
    return 0 if ok else 1


def cmd_webs(args) -> int:
    sched = load_source(args.source)
    t_max = args.t_max if args.t_max is not None else 2 * sched.period_rounds() - 1
    d = compile_schedule(sched, t_max)
    rows: List[tuple] = [("nodes", len(d.nodes)), ("edges", len(d.edges))]
    lines = [f"diagram over rounds 0..{t_max}: {len(d.nodes)} nodes, {len(d.edges)} edges"]
    ok = True
    if args.enumerate or args.classify:
        webs = enumerate_webs(d)
        rows.append(("webs", len(webs)))
        lines.append(f"web basis: {len(webs)}")
        for i, w in enumerate(webs):
            parts = [f"W{i}"] + ([classify_web(d, w)] if args.classify else [])
            parts += [f"edges={(w.green | w.red).bit_count()}", f"out={sched.show(web_output_operator(d, w))}"]
            lines.append("  " + " ".join(parts))
        cov = coverage(d)
        rows += [(f"coverage_{k}", v) for k, v in cov.items()]
        lines.append(f"coverage: {cov['covered']}/{cov['edges']} edges in detecting regions")
    if args.cross_check:
        report = run(sched, t_max)
        for t in range(t_max + 1):
            cc = cross_check(report, t)
            ok &= cc.ok
            rows.append((f"cross_check_t{t}", "pass" if cc.ok else "FAIL"))
            lines.append(f"t={t} stabilizing={cc.stabilizers_match} detecting={cc.detectors_match} "
                         f"operating={cc.logicals_match} {cc.detail}")
        lines.append(f"cross-check: {'pass' if ok else 'FAIL'}")
    _emit(args, rows, lines)
    return 0 if ok else 1


def cmd_export(args) -> int:
    sched = load_source(args.source)
    t_max = args.t_max if args.t_max is not None else sched.period_rounds() - 1
    d = compile_schedule(sched, t_max)
    if args.format == "dot":
        web = None
        if args.web is not None:
            webs = enumerate_webs(d, allow_inputs=False, allow_outputs=False)
            if not 0 <= args.web < len(webs):
                raise ContractError(f"web index {args.web} outside 0..{len(webs) - 1}")
            web = webs[args.web]
        sys.stdout.write(to_dot(d, web))
    elif args.format == "schedule":
        sys.stdout.write(dump_schedule(sched))
    else:
        sys.stdout.write(to_text(d))
    return 0


def cmd_compare(args) -> int:
    a, b = load_source(args.a), load_source(args.b)
    rep = compare_schedules(a, b, w_max=args.w_max)
    rows = [(f"{side}_{k}", v) for side in ("a", "b") for k, v in rep[side].items()]
    rows.append(("same_parameters", int(rep["same_parameters"])))
    lines = [f"a: {rep['a']}", f"b: {rep['b']}", f"same parameters: {rep['same_parameters']}"]
    _emit(args, rows, lines)
    return 0


def cmd_distance(args) -> int:
    sched = load_source(args.source)
    report = run(sched, _t_max(args, sched))
    if report.T is None:
        raise EstablishmentError("rank still changing; raise --horizon")
    lines, rows = [], []
    for t in range(report.T, report.T + sched.period_rounds()):
        w, op = min_weight_logical(report.tableaux[t], args.w_max)
        shown = sched.show(op) if op is not None else "-"
        rows.append((f"t{t}", w if w is not None else f">{args.w_max}"))
        lines.append(f"t={t} min logical weight={w if w is not None else f'>{args.w_max}'} {shown}")
    _emit(args, rows, lines)
    return 0


def cmd_random(args) -> int:
    rng = random.Random(args.seed)
    sched = zoo.random_schedule(rng, args.n, args.rounds)
    sys.stdout.write(dump_schedule(sched))
    return 0


def cmd_tile(args) -> int:
    tile = zoo.load_floquet_tile(args.tile)
    print(f"tile ok: period={tile.period} entries={len(tile.entries)} tiling={tile.tiling} step={tile.step}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--t-max", type=int, help="last round to simulate")
    common.add_argument("--horizon", type=int, help="rounds to simulate when --t-max is not given")
    common.add_argument("--w-max", type=int, default=4, help="weight bound for distance searches")
    common.add_argument("--seed", type=int, default=2024, help="seed for anything random")
    common.add_argument("--format", choices=("text", "kv", "dot", "schedule"), default="text")
    common.add_argument("--tile", help=f"Floquet tile file (else ${zoo.TILE_ENV} or the bundled one)")

    p = argparse.ArgumentParser(prog="isgcodes", description="ISG code analysis")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(func=func)
        return sp

    sp = add("analyze", cmd_analyze, "code parameters and establishment")
    sp.add_argument("source")
    sp.add_argument("-v", "--verbose", action="store_true", help="print ISG and logicals per round")
    add("detectors", cmd_detectors, "list detectors").add_argument("source")
    sp = add("inject", cmd_inject, "propagate single errors")
    sp.add_argument("source")
    sp.add_argument("--error", action="append", required=True, help="e.g. X@q3,t2 (repeatable)")
    sp = add("verify-paper", cmd_verify_paper, "structural checks for a built-in code")
    sp.add_argument("name", choices=list(SUITES) + ["all"])
    sp = add("subsystem", cmd_subsystem, "gauge group analysis")
    sp.add_argument("source")
    sp.add_argument("--check-associated", action="store_true")
    sp.add_argument("--bare-distance", action="store_true")
    sp = add("webs", cmd_webs, "Pauli webs of the compiled diagram")
    sp.add_argument("source")
    sp.add_argument("--enumerate", action="store_true")
    sp.add_argument("--classify", action="store_true")
    sp.add_argument("--cross-check", action="store_true")
    sp = add("export", cmd_export, "write the diagram as text or dot, or the schedule file")
    sp.add_argument("source")
    sp.add_argument("--web", type=int, help="highlight this detecting-region basis web")
    sp = add("compare", cmd_compare, "side-by-side report for two schedules")
    sp.add_argument("a")
    sp.add_argument("b")
    add("distance", cmd_distance, "minimum-weight logical per established round").add_argument("source")
    sp = add("random", cmd_random, "print a random schedule")
    sp.add_argument("--n", type=int, default=4)
    sp.add_argument("--rounds", type=int, default=3)
    add("tile", cmd_tile, "validate a Floquet tile file")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    saved = os.environ.get(zoo.TILE_ENV)
    if args.tile:
        os.environ[zoo.TILE_ENV] = args.tile
    try:
        return args.func(args)
    except (ScheduleError, zoo.TileError, UnsupportedDiagram, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (EstablishmentError, ContractError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    finally:
        if saved is None:
            os.environ.pop(zoo.TILE_ENV, None)
        else:
            os.environ[zoo.TILE_ENV] = saved


if __name__ == "__main__":
    sys.exit(main())

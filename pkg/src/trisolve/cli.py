"""``trisolve`` command line.

Exit codes: 0 ok or matching the reference values, 2 mismatch (including a
solution that fails verification), 3 budget exhausted or indeterminate
cells, 4 usage or input errors.
"""

from __future__ import annotations

import csv
import functools
import io
import json
import logging
import sys
import time
from pathlib import Path
from typing import Any, Callable

import click

from . import __version__
from .board import BoardError, IllegalMoveError, Move, Position, apply_move, build_geometry, parse_position
from .classes import feasibility_matrix, jump_span_basis
from .merson import best_lower_bound, lower_bound, max_packing
from .records import ResultStore, RunRecord
from .search import (
    BudgetExhausted,
    Problem,
    SearchBudget,
    SearchStats,
    Solution,
    Unsolvable,
    enumerate_problems,
    expected_jump_count,
    jump_sets,
    min_move_distribution,
    min_move_solution,
    undirected,
)
from .sweeps import (
    defect_sweep_candidates,
    euler_traversable,
    family_stats,
    family_start_vacancy,
    longest_geometric_sweep,
    max_sweep_length,
    maximal_pattern,
    solve_with_final_sweep,
    sweep_start_position,
)

EXIT_OK = 0
EXIT_MISMATCH = 2
EXIT_BUDGET = 3
EXIT_USAGE = 4

# reference counts for minimal solution lengths, keyed by (n, complement only)
TABLE2_REFERENCE: dict[tuple[int, bool], dict[str, Any]] = {
    (5, False): {"total": 17, "solvable": 12, "histogram": {9: 2, 10: 6, 11: 4}},
    (6, False): {"total": 29, "solvable": 29, "histogram": {9: 16, 10: 11, 11: 2}},
    (7, False): {"total": 27, "solvable": 27, "histogram": {12: 19, 13: 8}},
    (8, True): {"total": 8, "solvable": 8, "histogram": {13: 1, 14: 5, 15: 2}},
}

# long-sweep family rows (holes, sweep, % removed, forward moves)
TABLE1_REFERENCE: dict[int, tuple[int, int, str, int]] = {
    1: (78, 42, "55.3", 29),
    2: (300, 191, "64.1", 97),
    3: (666, 448, "67.5", 201),
    10: (7260, 5271, "72.6", 1937),
}

log = logging.getLogger("trisolve")


class Failure(Exception):
    def __init__(self, code: int, message: str = ""):
        super().__init__(message)
        self.code = code


# ---------------------------------------------------------------------------
# shared options and plumbing


def budget_options(f: Callable) -> Callable:
    @click.option("--budget-nodes", type=click.IntRange(min=1), default=2_000_000_000, show_default=True,
                  help="Search node limit.")
    @click.option("--budget-seconds", type=click.FloatRange(min=0, min_open=True), default=None,
                  help="Wall-clock limit.")
    @click.option("--threads", type=click.IntRange(min=1), default=1, show_default=True,
                  help="Workers for the minimal-move search.")
    @functools.wraps(f)
    def wrapper(*args, budget_nodes: int, budget_seconds: float | None, **kwargs):
        kwargs["budget"] = SearchBudget(node_limit=budget_nodes, time_limit=budget_seconds)
        return f(*args, **kwargs)

    return wrapper


def store_options(f: Callable) -> Callable:
    @click.option("--results-file", type=click.Path(dir_okay=False), default=None,
                  help="JSON-lines results store (default $TRISOLVE_RESULTS or ./trisolve-results.jsonl).")
    @click.option("--force", is_flag=True, help="Recompute even when a stored result exists.")
    @click.option("--no-store", is_flag=True, help="Neither read nor write the results store.")
    @functools.wraps(f)
    def wrapper(*args, results_file: str | None, force: bool, no_store: bool, **kwargs):
        kwargs["store"] = None if no_store else ResultStore(results_file)
        kwargs["force"] = force
        return f(*args, **kwargs)

    return wrapper


def format_option(*choices: str, default: str = "text") -> Callable:
    return click.option("--format", "fmt", type=click.Choice(choices), default=default, show_default=True)


def figures_option(f: Callable) -> Callable:
    return click.option("--figures", type=click.Path(file_okay=False), default=None,
                        help="Directory for SVG figures.")(f)


def _cached(store: ResultStore | None, force: bool, command: str, config: dict[str, Any],
            compute: Callable[[], RunRecord]) -> RunRecord:
    if store is not None and not force:
        hit = store.lookup(command, config)
        if hit is not None:
            log.info("using stored result from %s", store.path)
            return hit
    rec = compute()
    rec.command, rec.config, rec.argv = command, config, list(sys.argv[1:])
    if store is not None and rec.status != "budget":
        store.append(rec)
    return rec


def _emit_json(obj: Any) -> None:
    click.echo(json.dumps(obj, indent=2, sort_keys=False))


def _csv(rows: list[list[Any]]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue().rstrip("\n")


def _problem(n: int, vacate: str, finish: str | None) -> Problem:
    try:
        return Problem.make(n, vacate, None if finish in (None, "any") else finish)
    except BoardError as exc:
        raise click.BadParameter(str(exc)) from None


def _save_fig(fig, figures: str | None, name: str) -> None:
    if figures is None:
        return
    from .render import save_figure

    path = save_figure(fig, Path(figures) / name)
    click.echo(f"figure: {path}", err=True)


def solution_payload(prob: Problem, status: str, sol: Solution | None, elapsed: float, nodes: int,
                     min_moves: int | None = None) -> dict[str, Any]:
    out: dict[str, Any] = {
        "problem": (sol.problem if sol is not None else prob).to_json(),
        "status": status,
        "min_moves": min_moves,
        "solution": sol.move_strings() if sol is not None else [],
        "jump_count": sol.jump_count if sol is not None else None,
        "elapsed_s": round(elapsed, 3),
        "nodes": nodes,
    }
    if sol is not None:
        out["move_count"] = sol.move_count
        out["final_sweep_length"] = sol.final_sweep_length
        if sol.revisiting_moves():
            out["revisiting_moves"] = sol.revisiting_moves()
    return out


def solution_from_payload(d: dict[str, Any]) -> Solution:
    prob = Problem.from_json(d["problem"])
    g = prob.board
    return Solution(prob, tuple(Move.parse(s, g) for s in d["solution"]))


# ---------------------------------------------------------------------------


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(__version__, prog_name="trisolve")
@click.option("-v", "--verbose", count=True, help="More logging.")
def main(verbose: int) -> None:
    """Triangular peg solitaire: minimal solutions, long sweeps and bounds."""
    logging.basicConfig(level=logging.WARNING - 10 * min(verbose, 2),
                        format="%(levelname)s %(name)s: %(message)s")


@main.command()
@click.option("--n", type=click.IntRange(min=3), required=True)
@click.option("--vacate", required=True, help="Starting vacancy, e.g. c5.")
@click.option("--finish", default=None, help="Finishing hole (default: anywhere).")
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Also write the solution JSON here.")
@budget_options
@store_options
@format_option("text", "json")
@figures_option
def solve(n, vacate, finish, out, budget, threads, store, force, fmt, figures):
    """Provably minimal solution of one problem."""
    prob = _problem(n, vacate, finish)

    def compute() -> RunRecord:
        stats = SearchStats()
        t0 = time.monotonic()
        try:
            L, sol = min_move_solution(prob, budget, threads=threads, stats=stats)
            payload = solution_payload(prob, "solved", sol, time.monotonic() - t0, stats.nodes, L)
        except Unsolvable:
            payload = solution_payload(prob, "unsolvable", None, time.monotonic() - t0, stats.nodes)
        except BudgetExhausted as exc:
            payload = solution_payload(prob, "budget", None, time.monotonic() - t0, stats.nodes + exc.nodes)
        return RunRecord("", {}, payload["status"], payload, str(prob),
                         elapsed_s=payload["elapsed_s"], nodes=payload["nodes"])

    rec = _cached(store, force, "solve", {"n": n, "vacate": prob.vacancy.label,
                                          "finish": finish if finish is None else prob.finish.label}, compute)
    payload = rec.payload
    if out:
        Path(out).write_text(json.dumps(payload, indent=2) + "\n")
    if fmt == "json":
        _emit_json(payload)
    else:
        click.echo(f"{payload['problem']['vacancy']} -> {payload['problem']['finish'] or 'any'} "
                   f"on Triangle({n}): {payload['status']}")
        if payload["status"] == "solved":
            click.echo(f"{payload['min_moves']} moves, {payload['jump_count']} jumps")
            for k, s in enumerate(payload["solution"], 1):
                click.echo(f"{k:3d}. {s}")
    if payload["status"] == "solved" and figures:
        from .render import solution_figure

        _save_fig(solution_figure(solution_from_payload(payload)), figures,
                  f"solve-T{n}-{prob.vacancy.label}.svg")
    if payload["status"] == "budget":
        raise Failure(EXIT_BUDGET)


def _distribution(n: int, complement_only: bool, budget: SearchBudget, threads: int,
                  store: ResultStore | None, force: bool, method: str):
    """Whole-board table; per-problem results are stored as they arrive so
    an interrupted campaign resumes where it stopped."""
    known: dict[Problem, tuple[str, int | None]] = {}
    if store is not None and not force:
        for p in enumerate_problems(n, complement_only=complement_only):
            hit = store.lookup("minmoves", {"problem": str(p)})
            if hit is not None:
                known[p] = (hit.status, hit.payload.get("min_moves"))

    def on_result(p: Problem, status: str, L: int | None) -> None:
        if store is not None and status != "budget":
            store.append(RunRecord("minmoves", {"problem": str(p)}, status,
                                   {"problem": p.to_json(), "status": status, "min_moves": L},
                                   str(p), argv=list(sys.argv[1:])))

    return min_move_distribution(n, complement_only, budget, method=method, on_result=on_result,
                                 known=known, threads=threads)


@main.command()
@click.option("--n", type=click.IntRange(min=3, max=10), required=True)
@click.option("--complement-only", is_flag=True)
@click.option("--method", type=click.Choice(["auto", "layered", "iddfs"]), default="auto", show_default=True)
@budget_options
@store_options
@format_option("csv", "json", default="csv")
def minmoves(n, complement_only, method, budget, threads, store, force, fmt):
    """Minimal solution length of every distinct problem on a board."""
    d = _distribution(n, complement_only, budget, threads, store, force, method)
    rows = [[p.vacancy.label, p.finish.label, d.lengths[p] if d.lengths[p] is not None else "", d.status[p]]
            for p in sorted(d.lengths)]
    if fmt == "json":
        _emit_json([dict(zip(["vacancy", "finish", "min_moves", "status"], r)) for r in rows])
    else:
        click.echo(_csv([["vacancy", "finish", "min_moves", "status"]] + rows))
    if d.indeterminate:
        raise Failure(EXIT_BUDGET)


@main.command()
@click.option("--n", "ns", type=click.IntRange(min=3, max=10), multiple=True,
              help="Board sizes (repeatable; default 5 and 6).")
@click.option("--complement-only", is_flag=True)
@click.option("--method", type=click.Choice(["auto", "layered", "iddfs"]), default="auto", show_default=True)
@budget_options
@store_options
@format_option("csv", "json", default="csv")
@figures_option
def table2(ns, complement_only, method, budget, threads, store, force, fmt, figures):
    """Counts of distinct problems by minimal solution length, checked
    against the reference table."""
    ns = ns or (5, 6)
    reports = []
    dists = []
    code = EXIT_OK
    for n in ns:
        d = _distribution(n, complement_only, budget, threads, store, force, method)
        dists.append(d)
        ref = TABLE2_REFERENCE.get((n, complement_only))
        got = {"total": d.total, "solvable": d.solvable, "histogram": d.histogram}
        if d.indeterminate:
            verdict = "indeterminate"
            code = max(code, EXIT_BUDGET) if code != EXIT_MISMATCH else code
        elif ref is None:
            verdict = "no-reference"
        elif got == ref:
            verdict = "match"
        else:
            verdict = "MISMATCH"
            code = EXIT_MISMATCH
        reports.append({"n": n, "complement_only": complement_only, **got,
                        "indeterminate": d.indeterminate, "reference": ref, "verdict": verdict,
                        "elapsed_s": round(d.elapsed, 1)})
    if fmt == "json":
        _emit_json([{**r, "histogram": {str(k): v for k, v in r["histogram"].items()},
                     "reference": None if r["reference"] is None else
                     {**r["reference"], "histogram": {str(k): v for k, v in r["reference"]["histogram"].items()}}}
                    for r in reports])
    else:
        lengths = sorted({k for r in reports for k in r["histogram"]}
                         | {k for r in reports if r["reference"] for k in r["reference"]["histogram"]})
        rows = [["board", "complement_only", "total", "solvable"] + [str(k) for k in lengths]
                + ["indeterminate", "verdict"]]
        for r in reports:
            rows.append([f"Triangle({r['n']})", int(r["complement_only"]), r["total"], r["solvable"]]
                        + [r["histogram"].get(k, 0) for k in lengths] + [r["indeterminate"], r["verdict"]])
            if r["reference"]:
                ref = r["reference"]
                rows.append([f"reference Triangle({r['n']})", int(r["complement_only"]), ref["total"],
                             ref["solvable"]] + [ref["histogram"].get(k, 0) for k in lengths] + ["", ""])
        click.echo(_csv(rows))
    if figures:
        from .render import histogram_figure

        expected = {n: ref for (n, c), ref in TABLE2_REFERENCE.items() if c == complement_only}
        _save_fig(histogram_figure(dists, expected), figures,
                  "table2" + ("-complement" if complement_only else "") + ".svg")
    if code:
        raise Failure(code)


@main.command()
@click.option("--n", type=click.IntRange(min=3), required=True)
@click.option("--complement-only", is_flag=True)
@click.option("--all", "include_all", is_flag=True, help="Include class-infeasible pairs.")
@format_option("csv", "json", default="csv")
def problems(n, complement_only, include_all, fmt):
    """Distinct problems up to symmetry, with feasibility and lower bound."""
    g = build_geometry(n)
    feas = feasibility_matrix(g)
    rows = []
    for p in enumerate_problems(n, complement_only=complement_only, feasible_only=not include_all):
        v, f = g.hole(p.vacancy), g.hole(p.finish)
        rows.append([p.vacancy.label, p.finish.label, int(feas[v][f]), lower_bound(g, v)])
    header = ["vacancy", "finish", "feasible", "lower_bound"]
    if fmt == "json":
        _emit_json([dict(zip(header, r)) for r in rows])
    else:
        click.echo(_csv([header] + rows))


@main.command()
@click.option("--n", type=click.IntRange(min=3), required=True)
@click.option("--vacate", required=True)
@click.option("--finish", required=True)
@click.option("--length", type=click.IntRange(min=1), default=None,
              help="Move count (default: the minimum, found first).")
@budget_options
@store_options
def unique(n, vacate, finish, length, budget, threads, store, force):
    """Count distinct jump sets among solutions of a given length, with
    jumps directed and with each jump taken as an undirected line."""
    prob = _problem(n, vacate, finish)

    def compute() -> RunRecord:
        t0 = time.monotonic()
        L = length
        try:
            if L is None:
                L, _ = min_move_solution(prob, budget, threads=threads)
            sets = jump_sets(prob, L, budget)
            payload = {"problem": prob.to_json(), "status": "done", "length": L, "jump_sets": len(sets),
                       "jump_sets_undirected": len({undirected(s) for s in sets})}
        except Unsolvable:
            payload = {"problem": prob.to_json(), "status": "unsolvable", "length": L, "jump_sets": 0}
        except BudgetExhausted as exc:
            payload = {"problem": prob.to_json(), "status": "budget", "length": L,
                       "jump_sets_at_least": exc.best}
        payload["elapsed_s"] = round(time.monotonic() - t0, 3)
        return RunRecord("", {}, payload["status"], payload, str(prob), elapsed_s=payload["elapsed_s"])

    rec = _cached(store, force, "unique", {"problem": str(prob), "length": length}, compute)
    _emit_json(rec.payload)
    if rec.status == "budget":
        raise Failure(EXIT_BUDGET)


@main.command()
@click.option("--n", type=click.IntRange(min=3), required=True)
@click.option("--vacate", default=None)
@click.option("--finish", default=None)
@click.option("--min-sweep", type=click.IntRange(min=1), default=None,
              help="Shortest acceptable final sweep (default: the maximal length).")
@click.option("--slot", type=click.Choice(["last", "second-last"]), default="last", show_default=True)
@click.option("--defects", type=click.IntRange(min=1), default=None,
              help="List near-maximal a1-to-a3 patterns up to this many edges short.")
@click.option("--limit", type=click.IntRange(min=1), default=20, show_default=True)
@click.option("--lead", type=click.Choice(["greedy", "sampled", "exact"]), default="sampled", show_default=True,
              help="How the moves before the sweep are chosen.")
@budget_options
@store_options
@format_option("text", "json")
@figures_option
def sweep(n, vacate, finish, min_sweep, slot, defects, limit, lead, budget, threads, store, force, fmt, figures):
    """Maximal sweeps, defect patterns, and solutions ending in a long sweep."""
    g = build_geometry(n)
    if defects is not None:
        rows = []
        for sp in defect_sweep_candidates(n, defects, limit=limit):
            rep = euler_traversable(sp.edges())
            rows.append({"length": sp.length, "start": sp.start.label, "end": sp.end.label,
                         "odd_nodes": [g.label(v) for v in rep.odd_nodes], "sweep": str(sp.circuit)})
        if fmt == "json":
            _emit_json(rows)
        else:
            click.echo(_csv([["length", "start", "end", "sweep"]]
                            + [[r["length"], r["start"], r["end"], r["sweep"]] for r in rows]))
        return
    if vacate is None or finish is None:
        rep = longest_geometric_sweep(n, budget)
        sp = rep.pattern
        b = sweep_start_position(sp)
        from .board import legal_jumps

        payload = {"n": n, "longest": rep.length, "exhaustive": rep.exhaustive, "nodes": rep.nodes,
                   "formula": max_sweep_length(n) if n % 2 else max_sweep_length(n - 1),
                   "sweep": str(sp.circuit),
                   "all_even": euler_traversable(sp.edges()).closed,
                   "complement_jumps": len(legal_jumps(b.complement()))}
        if fmt == "json":
            _emit_json(payload)
        else:
            for k, v in payload.items():
                click.echo(f"{k}: {v}")
        if figures:
            from .render import position_figure

            _save_fig(position_figure(b, sp.circuit), figures, f"sweep-T{n}.svg")
        if not rep.exhaustive:
            raise Failure(EXIT_BUDGET)
        return

    prob = _problem(n, vacate, finish)
    if min_sweep is None:
        min_sweep = max_sweep_length(n if n % 2 else n - 1)

    def compute() -> RunRecord:
        t0 = time.monotonic()
        try:
            r = solve_with_final_sweep(prob, min_sweep, slot, budget, lead=lead)
        except BudgetExhausted:
            r = None
        sol = r.solution if r else None
        status = "solved" if sol else ("not-found" if r and r.exhaustive else "budget")
        payload = solution_payload(prob, status, sol, time.monotonic() - t0, 0)
        payload.update({"min_sweep": min_sweep, "slot": slot,
                        "candidates_tried": r.candidates_tried if r else None,
                        "exhaustive": bool(r and r.exhaustive)})
        return RunRecord("", {}, status, payload, str(prob), elapsed_s=payload["elapsed_s"])

    rec = _cached(store, force, "sweep", {"problem": str(prob), "min_sweep": min_sweep, "slot": slot,
                                          "lead": lead}, compute)
    payload = rec.payload
    if fmt == "json":
        _emit_json(payload)
    else:
        click.echo(f"{prob}, {slot} move a sweep of at least {min_sweep}: {payload['status']} "
                   f"({payload['candidates_tried']} candidate patterns)")
        for k, s in enumerate(payload["solution"], 1):
            click.echo(f"{k:3d}. {s}")
    if payload["status"] == "solved" and figures:
        from .render import solution_figure

        _save_fig(solution_figure(solution_from_payload(payload)), figures,
                  f"sweep-T{n}-{prob.vacancy.label}-{prob.finish.label}.svg")
    if payload["status"] == "budget":
        raise Failure(EXIT_BUDGET)


@main.command()
@click.option("--i", "indices", default="1,2,3,10", show_default=True, help="Comma-separated family indices.")
@figures_option
def family(indices, figures):
    """Closed-form statistics of the long-sweep family on Triangle(12i)."""
    try:
        idx = [int(s) for s in indices.split(",") if s.strip()]
        rows = [family_stats(i) for i in idx]
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint="--i") from None
    code = EXIT_OK
    out = [["i", "board", "holes", "sweep_len", "pct_removed", "forward_moves", "forward_jumps",
            "maximal_len", "start_vacancy", "reference"]]
    for r in rows:
        pct = f"{100 * float(r.pct_removed):.1f}"
        ref = TABLE1_REFERENCE.get(r.i)
        verdict = ""
        if ref is not None:
            verdict = "match" if ref == (r.holes, r.sweep_len, pct, r.forward_moves) else "MISMATCH"
            if verdict == "MISMATCH":
                code = EXIT_MISMATCH
        out.append([r.i, f"Triangle({r.n})", r.holes, r.sweep_len, pct, r.forward_moves, r.forward_jumps,
                    r.maximal_len, family_start_vacancy(r.i).label, verdict])
    click.echo(_csv(out))
    if figures:
        from .render import family_figure

        _save_fig(family_figure(rows), figures, "family.svg")
    if code:
        raise Failure(code)


@main.command()
@click.option("--n", type=click.IntRange(min=3, max=12), required=True)
@click.option("--colour/--no-colour", default=None, help="ANSI colours (default: when a terminal).")
@figures_option
def merson(n, colour, figures):
    """Region packing and per-vacancy lower bounds on solution length."""
    from .render import packing_text

    g = build_geometry(n)
    pk = max_packing(g)
    if colour is None:
        colour = sys.stdout.isatty()
    click.echo(f"Triangle({n}): R = {pk.R}")
    click.echo(packing_text(pk, colour=colour))
    for k, r in enumerate(pk.regions):
        click.echo(f"  {chr(ord('A') + k % 26)} {r.kind}: {r.labels(g)}")
    rows = [["vacancy", "lower_bound", "best_lower_bound"]]
    seen = set()
    for v in range(g.size):
        key = min(g.orbit(v))
        if key in seen:
            continue
        seen.add(key)
        rows.append([g.label(v), lower_bound(g, v, pk), best_lower_bound(g, v)])
    click.echo(_csv(rows))
    if figures:
        from .render import packing_figure

        _save_fig(packing_figure(pk), figures, f"merson-T{n}.svg")


@main.command()
@click.option("--n", type=click.IntRange(min=3), required=True)
def classes(n):
    """Rank of the jump span, class count and the feasibility matrix."""
    g = build_geometry(n)
    span = jump_span_basis(g)
    click.echo(f"Triangle({n}): holes {g.size}, jumps {len(g.jumps)}, rank {span.rank}, "
               f"classes {span.class_count}")
    feas = feasibility_matrix(g)
    labels = [g.label(i) for i in range(g.size)]
    click.echo(_csv([["vacancy\\finish"] + labels]
                    + [[labels[v]] + [int(x) for x in feas[v]] for v in range(g.size)]))


def _load_render_input(source: str) -> Position | Solution:
    path = Path(source)
    text = path.read_text() if path.is_file() else source
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            return solution_from_payload(json.loads(stripped))
        except (json.JSONDecodeError, KeyError) as exc:
            raise click.BadParameter(f"not a solution file: {exc}", param_hint="SOURCE") from None
    try:
        return parse_position(text)
    except BoardError as exc:
        raise click.BadParameter(str(exc), param_hint="SOURCE") from None


@main.command()
@click.argument("source")
@click.option("--format", "fmt", type=click.Choice(["text", "svg"]), default="text", show_default=True)
@click.option("--move", "move_no", type=click.IntRange(min=1), default=None,
              help="For a solution: only the snapshot before this move (1-based).")
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write here instead of stdout.")
def render(source, fmt, move_no, out):
    """Draw a position (text or hex, inline or in a file) or a solution file."""
    from .render import position_svg, solution_svg, solution_text

    obj = _load_render_input(source)
    if isinstance(obj, Position):
        body = obj.to_text() + "\n" if fmt == "text" else position_svg(obj)
    else:
        if move_no is not None and move_no > obj.move_count:
            raise click.BadParameter(f"solution has {obj.move_count} moves", param_hint="--move")
        if fmt == "text":
            if move_no is None:
                body = solution_text(obj)
            else:
                before = obj.replay()[move_no - 1]
                body = f"{move_no}. {obj.moves[move_no - 1]}\n{before.to_text()}\n"
        else:
            body = solution_svg(obj, moves=None if move_no is None else [move_no - 1])
    if out:
        Path(out).write_text(body)
    else:
        click.echo(body, nl=False)


@main.command()
@click.argument("solution_file", type=click.Path(exists=True, dir_okay=False))
def verify(solution_file):
    """Replay a solution file and check its declared statistics."""
    try:
        d = json.loads(Path(solution_file).read_text())
        prob = Problem.from_json(d["problem"])
    except (json.JSONDecodeError, KeyError, BoardError) as exc:
        raise click.BadParameter(f"unreadable solution file: {exc}", param_hint="SOLUTION_FILE") from None
    g = prob.board
    p = prob.start()
    problems: list[str] = []
    moves = []
    for k, s in enumerate(d.get("solution", []), 1):
        try:
            mv = Move.parse(s, g)
            p = apply_move(p, mv)
        except IllegalMoveError as exc:
            click.echo(f"illegal: move {k} ({s}), hop {exc.hop + 1}: {exc}")
            raise Failure(EXIT_MISMATCH)
        except BoardError as exc:
            click.echo(f"illegal: move {k} ({s}): {exc}")
            raise Failure(EXIT_MISMATCH)
        moves.append(mv)
    sol = Solution(prob, tuple(moves))
    if p.count != 1:
        problems.append(f"{p.count} pegs remain")
    elif prob.finish is not None and not p.has_peg(prob.finish):
        problems.append(f"finishes at {p.peg_coords()[0].label}, not {prob.finish.label}")
    if sol.jump_count != expected_jump_count(prob.n):
        problems.append(f"{sol.jump_count} jumps, expected {expected_jump_count(prob.n)}")
    for key, actual in (("jump_count", sol.jump_count), ("move_count", sol.move_count),
                        ("min_moves", sol.move_count), ("final_sweep_length", sol.final_sweep_length)):
        if d.get(key) is not None and d[key] != actual:
            problems.append(f"declared {key} {d[key]} but replay gives {actual}")
    if problems:
        for msg in problems:
            click.echo(f"mismatch: {msg}")
        raise Failure(EXIT_MISMATCH)
    click.echo(f"ok: {prob}, {sol.move_count} moves, {sol.jump_count} jumps, "
               f"final sweep {sol.final_sweep_length}")


def run(argv: list[str] | None = None) -> int:
    """Entry point returning the exit code instead of exiting."""
    try:
        rv = main.main(args=argv, prog_name="trisolve", standalone_mode=False)
    except Failure as exc:
        return exc.code
    except click.UsageError as exc:
        exc.show()
        return EXIT_USAGE
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return 1
    except (BoardError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_USAGE
    return rv if isinstance(rv, int) else EXIT_OK


def entry() -> None:
    sys.exit(run())

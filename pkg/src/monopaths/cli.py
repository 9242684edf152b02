"""Command-line front end.

Exit codes: 0 success, 1 bad input, 2 hypothesis not met, 3 defect (a
construction or certificate failed validation).  Results are JSON objects
with ``"v": 1`` and sorted keys.  ``--trace`` writes JSON lines to stderr
(or to a file); ``partition --replay FILE`` re-runs a recorded trace and
checks that the result is identical.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from typing import Optional

from . import kernels
from .graph import ClassShape, DefectError, HypothesisError, PathPair, validate_cover
from .graphio import InputError, dumps, graph_from_json, graph_to_json, load_graph, pair_json, path_json, cycle_json

EXIT_OK, EXIT_INPUT, EXIT_HYPOTHESIS, EXIT_DEFECT = 0, 1, 2, 3


class TraceWriter:
    def __init__(self, target: Optional[str]):
        self.target = target
        self.fh = None
        if target == "-":
            self.fh = sys.stderr
        elif target:
            self.fh = open(target, "w")

    def write(self, event: dict) -> None:
        if self.fh is not None:
            self.fh.write(dumps({"v": 1, **event}) + "\n")
            self.fh.flush()

    def close(self) -> None:
        if self.fh is not None and self.fh is not sys.stderr:
            self.fh.close()


def _emit(result: dict) -> None:
    print(dumps({"v": 1, **result}))


def _result_hash(result: dict) -> str:
    return hashlib.sha256(dumps(result).encode()).hexdigest()


def run_partition(g, mode: str, delta: Optional[float], seed: int, steps: Optional[list]) -> dict:
    """Dispatch one partition request and re-validate what comes back."""
    if mode == "paths":
        if g.k == 2:
            from .bipartite import SplitWitness, partition_bipartite_paths

            got = partition_bipartite_paths(g, seed=seed)
            if isinstance(got, SplitWitness):
                raise SplitObstruction(got)
            pair = got
        else:
            from .paths import partition_paths

            pair = partition_paths(g, steps)
        _revalidate(g, [pair])
        return {"mode": mode, "paths": pair_json(pair)}
    if mode == "path-cycle":
        from .paths import partition_path_cycle

        path, cycle, uncovered = partition_path_cycle(g, steps)
        _revalidate(g, [path, cycle], missing=1)
        return {"mode": mode, "path": path_json(path), "cycle": cycle_json(cycle), "uncovered": uncovered}
    if mode == "matchings":
        from .matchings import cover_matchings_exact, validate_matching_cover

        red, blue = cover_matchings_exact(g, steps)
        rep = validate_matching_cover(g, red, blue)
        if not rep:
            raise DefectError(f"matching output failed re-validation: {rep.violation}", g)
        return {"mode": mode, "red": red.to_json(), "blue": blue.to_json()}
    if mode == "cycles":
        from .bipartite import EXACT_LIMIT, split_distance
        from .cycles import split_three_cycle_cover

        if delta is None:
            raise InputError("--delta is required for --mode cycles")
        report = split_distance(g, "exact" if g.n <= EXACT_LIMIT else "heuristic", seed=seed)
        cover = split_three_cycle_cover(g, delta, report, seed=seed)
        _revalidate(g, cover.cycles, missing=g.n)
        if steps is not None:
            steps.append({"step": "split-distance", "deleted": report.count, "exact": report.exact})
        return {"mode": mode, **{k: v for k, v in cover.to_json().items() if k != "v"}}
    raise InputError(f"unknown mode {mode!r}")


class SplitObstruction(HypothesisError):
    def __init__(self, witness):
        super().__init__("split colouring: no red and blue path partition")
        self.witness = witness


def _revalidate(g, structures, missing: int = 0) -> None:
    rep = validate_cover(g, structures, mode="cover" if missing else "partition", missing=missing)
    if not rep:
        raise DefectError(f"output failed re-validation: {rep.violation}", g, detail=rep.detail)


def _seed(args) -> int:
    from .bipartite import _seed as env_seed

    return env_seed(args.seed)


def cmd_partition(args) -> int:
    trace = TraceWriter(args.trace)
    try:
        if args.replay:
            return _replay(args.replay)
        if not args.file:
            raise InputError("a graph file is required")
        g = load_graph(args.file)
        seed = _seed(args)
        trace.write({"kind": "input", "graph": graph_to_json(g), "mode": args.mode, "delta": args.delta, "seed": seed, "backend": kernels.BACKEND})
        steps: list = []
        result = run_partition(g, args.mode, args.delta, seed, steps)
        for s in steps:
            trace.write({"kind": "step", **s})
        trace.write({"kind": "result", "hash": _result_hash(result)})
        _emit(result)
        return EXIT_OK
    finally:
        trace.close()


def _replay(path: str) -> int:
    try:
        with open(path) as fh:
            lines = [json.loads(line) for line in fh if line.strip()]
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read trace {path}: {exc}") from exc
    head = next((e for e in lines if e.get("kind") == "input"), None)
    tail = next((e for e in lines if e.get("kind") == "result"), None)
    if head is None or tail is None:
        raise InputError("trace lacks an input or result line")
    g = graph_from_json(head["graph"])
    steps: list = []
    result = run_partition(g, head["mode"], head.get("delta"), head["seed"], steps)
    recorded = [{k: v for k, v in e.items() if k not in ("kind", "v")} for e in lines if e.get("kind") == "step"]
    same = _result_hash(result) == tail["hash"] and json.loads(dumps(steps)) == recorded
    _emit({"replay": "identical" if same else "different", "result": result})
    return EXIT_OK if same else EXIT_DEFECT


def cmd_verify(args) -> int:
    from .sweep import sweep

    try:
        shape = ClassShape.parse(args.shape)
    except ValueError as exc:
        raise InputError(f"bad shape {args.shape!r}: {exc}") from exc
    try:
        rep = sweep(shape, args.theorem, jobs=args.jobs, symmetry=not args.no_symmetry)
    except ValueError as exc:
        if isinstance(exc, HypothesisError):
            raise
        raise InputError(str(exc)) from exc
    _emit({k: v for k, v in rep.to_json().items() if k != "v"})
    return EXIT_OK if rep.ok else EXIT_DEFECT


def cmd_distance(args) -> int:
    from .bipartite import split_distance

    g = load_graph(args.file)
    mode = "heuristic" if args.heuristic else "exact"
    rep = split_distance(g, mode, restarts=args.restarts, seed=_seed(args))
    if not rep.is_valid_for(g):
        raise DefectError("split distance report failed re-validation", g)
    _emit({k: v for k, v in rep.to_json().items() if k != "v"})
    return EXIT_OK


def cmd_probe(args) -> int:
    from .cycles import two_cycle_partition_search

    g = load_graph(args.file)
    res = two_cycle_partition_search(g, budget=args.budget, seed=_seed(args), distinct=not args.any_colours)
    if res.found:
        _revalidate(g, list(res.cycles))
    _emit({k: v for k, v in res.to_json().items() if k != "v"})
    return EXIT_OK


def cmd_bench(args) -> int:
    from .bench import run

    out = run(repeat=args.repeat, seed=_seed(args))
    out["backend"] = kernels.BACKEND
    _emit({k: v for k, v in out.items() if k != "v"})
    return EXIT_OK if all(r.get("agree", True) for r in out["kernels"].values()) else EXIT_DEFECT


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="monopaths", description="Monochromatic partitions of 2-coloured complete multipartite graphs.")
    ap.add_argument("--seed", type=int, default=None, help="seed for randomized steps (default: $MONO_SEED or 0)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("partition", help="partition a graph file into monochromatic structures")
    p.add_argument("file", nargs="?")
    p.add_argument("--mode", choices=["paths", "path-cycle", "matchings", "cycles"], default="paths")
    p.add_argument("--delta", type=float, default=None, help="closeness to a split colouring (cycles mode)")
    p.add_argument("--trace", nargs="?", const="-", default=None, metavar="FILE", help="JSON-lines trace to FILE (stderr if omitted)")
    p.add_argument("--replay", metavar="TRACE", help="re-run a recorded trace and compare")
    p.set_defaults(func=cmd_partition)

    v = sub.add_parser("verify", help="exhaustive sweep of one shape")
    v.add_argument("--shape", required=True, help="class sizes, e.g. 2,2,1")
    v.add_argument("--theorem", required=True, help="t14, t13-iff, c15, l41, gg, t12 or p71")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--no-symmetry", action="store_true")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("distance", help="edge deletions to a split colouring")
    d.add_argument("file")
    mode = d.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--heuristic", action="store_true")
    d.add_argument("--restarts", type=int, default=50)
    d.set_defaults(func=cmd_distance)

    t = sub.add_parser("probe-two-cycles", help="look for two monochromatic cycles partitioning the graph")
    t.add_argument("file")
    t.add_argument("--budget", type=float, default=10.0, help="seconds for the heuristic above 14 vertices")
    t.add_argument("--any-colours", action="store_true", help="allow both cycles to have the same colour")
    t.set_defaults(func=cmd_probe)

    b = sub.add_parser("bench", help="compare compiled and pure-Python kernels")
    b.add_argument("--repeat", type=int, default=3)
    b.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        _emit({"error": "input", "message": str(exc)})
        return EXIT_INPUT
    except SplitObstruction as exc:
        _emit({"error": "hypothesis", "message": str(exc), "witness": exc.witness.to_json()})
        return EXIT_HYPOTHESIS
    except HypothesisError as exc:
        _emit({"error": "hypothesis", "message": str(exc)})
        return EXIT_HYPOTHESIS
    except DefectError as exc:
        out = {"error": "defect", "message": str(exc), "context": exc.context}
        if exc.graph is not None:
            out["graph"] = graph_to_json(exc.graph)
        _emit(out)
        return EXIT_DEFECT


if __name__ == "__main__":
    sys.exit(main())

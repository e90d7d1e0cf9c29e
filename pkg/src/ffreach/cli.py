"""Command-line frontend: solve instances and generate random-walk benchmarks.

Exit codes: 0 reachable, 1 proven unreachable, 2 search exhausted (unknown),
64 usage error, 65 unreadable or invalid input.  Reports go to stdout as
text or JSON; the JSON payload contains no timing so identical invocations
produce byte-identical output.  Set FFREACH_LOG=debug for diagnostics on
stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from .heuristics import DEFAULT_ILP_NODE_BUDGET, HEURISTIC_NAMES, make_heuristic
from .instance_io import (
    FnetParseError,
    Instance,
    TargetSpec,
    desugar_init,
    generator_names,
    parse_instance,
    serialize_instance,
)
from .net import Marking, NetDefinitionError, PetriNet
from .prune import PruneVerdict, prune_instance
from .search import SearchLimits, SearchResult, Strategy, Verdict, directed_search

EXIT_REACHABLE = 0
EXIT_UNREACHABLE = 1
EXIT_UNKNOWN = 2
EXIT_USAGE = 64
EXIT_DATA = 65

logger = logging.getLogger("ffreach")

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """Tiny deterministic PRNG; identical streams on every platform."""

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def randrange(self, n: int) -> int:
        return self.next_u64() % n


def random_walk(net: PetriNet, init: Marking, length: int, seed: int) -> tuple[Marking, list[int]]:
    """Fire ``length`` uniformly chosen enabled transitions; stops early at a
    dead marking.  Same inputs, same walk, byte for byte."""
    if length < 0:
        raise ValueError("walk length must be >= 0")
    rng = SplitMix64(seed)
    m = net.check_marking(init)
    walk: list[int] = []
    for _ in range(length):
        enabled = [t for t in range(net.num_transitions) if net.is_firable(m, t)]
        if not enabled:
            break
        t = enabled[rng.randrange(len(enabled))]
        m = net.fire(m, t)
        walk.append(t)
    return m, walk


@dataclass
class SolveReport:
    """Everything cmd_solve prints; JSON keys are stable and timing-free."""

    verdict: str
    distance: Fraction | None
    witness_ids: list[str] | None
    generator_firings: int | None
    reason: str | None
    expanded: int
    discovered: int
    heuristic_calls: int
    wall_time_ms: float
    config: dict

    def to_json_dict(self) -> dict:
        payload: dict = {"verdict": self.verdict}
        if self.distance is not None:
            payload["distance"] = {
                "fraction": str(self.distance),
                "decimal": float(self.distance),
            }
            payload["witness"] = list(self.witness_ids or [])
            payload["generator_firings"] = self.generator_firings or 0
        if self.reason is not None:
            payload["reason"] = self.reason
        payload["stats"] = {
            "expanded": self.expanded,
            "discovered": self.discovered,
            "heuristic_calls": self.heuristic_calls,
        }
        payload["config"] = self.config
        return payload

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)

    def to_text(self) -> str:
        lines = [f"verdict: {self.verdict}"]
        if self.distance is not None:
            lines.append(f"distance: {self.distance} ({float(self.distance)})")
            lines.append("witness: " + (" ".join(self.witness_ids) if self.witness_ids else "(empty)"))
            lines.append(f"generator firings: {self.generator_firings or 0}")
        if self.reason is not None:
            lines.append(f"reason: {self.reason}")
        lines.append(
            f"expanded: {self.expanded}  discovered: {self.discovered}  "
            f"heuristic calls: {self.heuristic_calls}"
        )
        lines.append(f"wall time: {self.wall_time_ms:.1f} ms")
        cfg = self.config
        lines.append(
            "config: strategy={strategy} heuristic={heuristic} prune={prune}".format(
                strategy=cfg["strategy"],
                heuristic=cfg["heuristic"],
                prune="on" if cfg["prune"] else "off",
            )
        )
        return "\n".join(lines)


def solve_instance(
    inst: Instance,
    strategy: Strategy = Strategy.ASTAR,
    heuristic_name: str = "q",
    prune: bool = True,
    ilp_node_budget: int = DEFAULT_ILP_NODE_BUDGET,
    limits: SearchLimits | None = None,
) -> tuple[SearchResult, list[str], int]:
    """Library entry point behind ``ffreach solve``.

    Runs desugar -> (prune) -> heuristic -> search and returns the result
    together with the witness transition names and the number of generator
    firings in the witness.
    """
    desugared = desugar_init(inst)
    gen_names = generator_names(inst, desugared)
    search_inst = desugared
    if prune:
        pruned = prune_instance(desugared)
        logger.debug(
            "prune: %d/%d places, %d/%d transitions kept, verdict %s",
            pruned.pruned_instance.net.num_places,
            desugared.net.num_places,
            pruned.pruned_instance.net.num_transitions,
            desugared.net.num_transitions,
            pruned.verdict.value,
        )
        if pruned.verdict is PruneVerdict.IMMEDIATELY_UNREACHABLE:
            result = SearchResult(Verdict.UNREACHABLE)
            result.reason = "target demands tokens in a place that can never be marked"
            return result, [], 0
        search_inst = pruned.pruned_instance

    heuristic = make_heuristic(heuristic_name, search_inst, ilp_node_budget)
    result = directed_search(search_inst, strategy, heuristic, limits)
    logger.debug(
        "search: verdict=%s expanded=%d discovered=%d",
        result.verdict.value,
        result.stats.expanded,
        result.stats.discovered,
    )
    witness_ids: list[str] = []
    generator_firings = 0
    if result.witness is not None:
        names = [search_inst.net.transitions[t].name for t in result.witness.sequence]
        witness_ids = names
        generator_firings = sum(1 for n in names if n in gen_names)
    return result, witness_ids, generator_firings


def cmd_solve(args: argparse.Namespace) -> int:
    try:
        with open(args.file, encoding="utf-8") as fh:
            inst = parse_instance(fh.read())
    except (OSError, FnetParseError, NetDefinitionError, UnicodeDecodeError) as exc:
        print(f"ffreach: {args.file}: {exc}", file=sys.stderr)
        return EXIT_DATA

    strategy = Strategy(args.strategy)
    limits = SearchLimits(max_expansions=args.max_expansions, max_time_ms=args.max_time_ms)
    result, witness_ids, generator_firings = solve_instance(
        inst,
        strategy=strategy,
        heuristic_name=args.heuristic,
        prune=not args.no_prune,
        ilp_node_budget=args.ilp_node_budget,
        limits=limits,
    )

    report = SolveReport(
        verdict=result.verdict.value,
        distance=result.distance,
        witness_ids=witness_ids if result.reachable else None,
        generator_firings=generator_firings if result.reachable else None,
        reason=result.reason,
        expanded=result.stats.expanded,
        discovered=result.stats.discovered,
        heuristic_calls=result.stats.heuristic_calls,
        wall_time_ms=result.stats.wall_time_ms,
        config={
            "file": args.file,
            "strategy": args.strategy,
            "heuristic": args.heuristic,
            "prune": not args.no_prune,
            "ilp_node_budget": args.ilp_node_budget,
            "max_expansions": args.max_expansions,
            "max_time_ms": args.max_time_ms,
        },
    )
    print(report.to_json() if args.format == "json" else report.to_text())

    if result.verdict is Verdict.REACHABLE:
        return EXIT_REACHABLE
    if result.verdict is Verdict.UNREACHABLE:
        return EXIT_UNREACHABLE
    return EXIT_UNKNOWN


def cmd_genwalk(args: argparse.Namespace) -> int:
    try:
        with open(args.file, encoding="utf-8") as fh:
            inst = parse_instance(fh.read())
    except (OSError, FnetParseError, NetDefinitionError, UnicodeDecodeError) as exc:
        print(f"ffreach: {args.file}: {exc}", file=sys.stderr)
        return EXIT_DATA

    start = list(inst.init)
    if args.init_tokens is not None:
        for p in inst.init_upward:
            start[p] = max(start[p], args.init_tokens)
    endpoint, walk = random_walk(inst.net, tuple(start), args.length, args.seed)

    target = TargetSpec.exact(endpoint)
    out_inst = Instance(inst.net, inst.init, inst.init_upward, target).validate()
    walk_names = " ".join(inst.net.transitions[t].name for t in walk)
    header = (
        f"# random-walk instance: length={args.length} seed={args.seed}"
        f" init-tokens={args.init_tokens if args.init_tokens is not None else '-'}\n"
        f"# walk: {walk_names}\n"
    )
    try:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(header + serialize_instance(out_inst))
    except OSError as exc:
        print(f"ffreach: {args.out}: {exc}", file=sys.stderr)
        return EXIT_DATA
    logger.debug("gen-walk: wrote %s (walk of %d steps)", args.out, len(walk))
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 64, not argparse's default 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ffreach", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="decide reachability of an instance file")
    solve.add_argument("file", help=".fnet instance file")
    solve.add_argument("--strategy", choices=[s.value for s in Strategy], default="astar")
    solve.add_argument("--heuristic", choices=list(HEURISTIC_NAMES), default="q")
    solve.add_argument("--no-prune", action="store_true", help="skip sign-analysis pruning")
    solve.add_argument("--ilp-node-budget", type=int, default=DEFAULT_ILP_NODE_BUDGET, metavar="N")
    solve.add_argument("--max-expansions", type=int, default=None, metavar="N")
    solve.add_argument("--max-time-ms", type=float, default=None, metavar="N")
    solve.add_argument("--format", choices=["text", "json"], default="text")
    solve.set_defaults(func=cmd_solve)

    genwalk = sub.add_parser("gen-walk", help="derive a reachable instance from a random walk")
    genwalk.add_argument("file", help=".fnet instance file to walk on")
    genwalk.add_argument("--length", type=int, required=True, metavar="N")
    genwalk.add_argument("--seed", type=int, required=True, metavar="S")
    genwalk.add_argument("--out", required=True, metavar="FILE")
    genwalk.add_argument(
        "--init-tokens",
        type=int,
        default=None,
        metavar="N",
        help="raise upward-flagged places to N tokens before walking",
    )
    genwalk.set_defaults(func=cmd_genwalk)
    return parser


def _configure_logging() -> None:
    level_name = os.environ.get("FFREACH_LOG", "").upper()
    if level_name:
        level = getattr(logging, level_name, logging.INFO)
        logging.basicConfig(stream=sys.stderr, level=level, format="ffreach %(levelname)s: %(message)s")


def main(argv: list[str] | None = None) -> int:
    _configure_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "length", None) is not None and args.length < 0:
        parser.error("--length must be >= 0")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

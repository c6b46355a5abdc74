"""Command-line front end.

Subcommands: gen (squares and MOLS sets), bounds (consolidated bound
report), solve (exact solvers), simulate (game transcripts), verify (the
claim suite). Exit codes: 0 success, 1 verification failure, 2 usage
error, 3 budget exceeded on a required step.
"""

from __future__ import annotations

import json
import sys

import click

from . import copsolver, verify as verify_mod
from .bounds import BoundEntry
from .cops import (
    FreeLineRobber,
    GreedyCops,
    IndexPinningCops,
    MatePairCops,
    RandomCops,
    RandomRobber,
    StillCops,
    StillRobber,
    simulate_cnr,
)
from .errors import BudgetExceededError, LsqError
from .graphs import LsqGraph, build_graph, graph_from_json_dict, graph_to_json_dict
from .latin import (
    dumps,
    find_orthogonal_mate,
    make_back_circulant,
    make_cayley_table,
    make_cyclic,
    make_mols_prime_power,
    min_cover,
    mols_from_json_dict,
    mols_to_json_dict,
    mols_to_oa,
)
from .localize import (
    AllVerticesProbes,
    BeliefMaxRobber,
    CoverProbeStrategy,
    RandomProbes,
    RandomWalkRobber,
    StationaryRobber,
    exact_localization_number,
    localization_bounds,
    simulate_localization,
)
from .metric import exact_metric_dimension, metric_dimension_bounds
from .cops import cop_number_bounds

EXIT_VERIFY_FAIL = 1
EXIT_BUDGET = 3


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _positive(ctx, param, value):
    if value is not None and value < 1:
        raise click.BadParameter("must be a positive integer")
    return value


@click.group()
def main():
    """Latin square graphs and their pursuit-evasion games."""


# ---------------------------------------------------------------------------
# gen


@main.group()
def gen():
    """Generate squares, MOLS sets, and related objects as JSON."""


@gen.command("back-circulant")
@click.argument("n", type=int, callback=_positive)
@click.option("--out", type=click.Path(), default=None)
def gen_back_circulant(n, out):
    _emit(dumps(mols_to_json_dict(make_back_circulant(n))), out)


@gen.command("cyclic")
@click.argument("n", type=int, callback=_positive)
@click.option("--multiplier", "-a", type=int, default=1, show_default=True)
@click.option("--out", type=click.Path(), default=None)
def gen_cyclic(n, multiplier, out):
    try:
        L = make_cyclic(n, multiplier)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    _emit(dumps(mols_to_json_dict(L)), out)


@gen.command("cayley")
@click.argument("spec")
@click.option("--out", type=click.Path(), default=None)
def gen_cayley(spec, out):
    """Cayley table of a product of cyclic groups, e.g. z6 or z2x2."""
    try:
        orders = [int(part) for part in spec.lower().lstrip("z").split("x")]
        L = make_cayley_table(orders)
    except ValueError as exc:
        raise click.UsageError(f"bad group spec {spec!r}: {exc}")
    _emit(dumps(mols_to_json_dict(L)), out)


@gen.command("mols")
@click.argument("q", type=int, callback=_positive)
@click.argument("k", type=int, callback=_positive)
@click.option("--out", type=click.Path(), default=None)
def gen_mols(q, k, out):
    try:
        M = make_mols_prime_power(q, k)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    _emit(dumps(mols_to_json_dict(M)), out)


@gen.command("graph")
@click.option("--square", type=click.Path(exists=True), required=True)
@click.option("--out", type=click.Path(), default=None)
def gen_graph(square, out):
    """Export the latin square graph of a square file as an edge list."""
    M = _load_mols(square)
    _emit(dumps(graph_to_json_dict(build_graph(M))), out)


@gen.command("oa")
@click.option("--square", type=click.Path(exists=True), required=True)
@click.option("--out", type=click.Path(), default=None)
def gen_oa(square, out):
    """Export the orthogonal array of a square or MOLS file."""
    from .latin import oa_to_json_dict

    _emit(dumps(oa_to_json_dict(mols_to_oa(_load_mols(square)))), out)


def _load_mols(path):
    try:
        with open(path) as fh:
            return mols_from_json_dict(json.load(fh))
    except (LsqError, ValueError, KeyError) as exc:
        raise click.UsageError(f"bad square file {path}: {exc}")


# ---------------------------------------------------------------------------
# bounds


def _bounds_text(groups: dict[str, list[BoundEntry]]) -> str:
    lines = []
    for title, entries in groups.items():
        lines.append(f"{title}:")
        for e in entries:
            flag = "" if e.applies else "  [not applicable here]"
            lines.append(f"  {e.kind:5} {e.value:10.4f}  {e.name}{flag}")
            if e.note:
                lines.append(f"        {e.note}")
    return "\n".join(lines) + "\n"


@main.command("bounds")
@click.argument("n", type=int, callback=_positive)
@click.argument("k", type=int, callback=_positive)
@click.option("--square", type=click.Path(exists=True), default=None,
              help="Square file; enables the exact minimum-cover bound.")
@click.option("--cover-limit", type=int, default=10, show_default=True,
              help="Exact minimum-cover search budget (order).")
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="text")
@click.option("--out", type=click.Path(), default=None)
def bounds_cmd(n, k, square, cover_limit, fmt, out):
    """Every bound for cop number, metric dimension, and localization."""
    mc = None
    if square:
        M = _load_mols(square)
        if M.n != n or M.k != k:
            raise click.UsageError(
                f"square file has (n={M.n}, k={M.k}), expected ({n}, {k})"
            )
        if M.k == 1:
            try:
                mc = len(
                    min_cover(
                        M.squares[0], exact_limit=cover_limit, allow_heuristic=False
                    ).entries
                )
            except BudgetExceededError:
                mc = None
    groups = {
        "cop number": cop_number_bounds(n, k),
        "metric dimension": metric_dimension_bounds(n, k),
        "localization number": localization_bounds(n, k, mc=mc),
    }
    if fmt == "json":
        payload = {
            "n": n,
            "k": k,
            "mc": mc,
            "bounds": {
                title: [e.to_json_dict() for e in entries]
                for title, entries in groups.items()
            },
        }
        _emit(dumps(payload), out)
    else:
        header = f"bounds for n={n}, k={k}" + (f", mc={mc}" if mc is not None else "")
        _emit(header + "\n" + _bounds_text(groups), out)


# ---------------------------------------------------------------------------
# solve


def _load_graph(square, graph) -> LsqGraph:
    if (square is None) == (graph is None):
        raise click.UsageError("pass exactly one of --square or --graph")
    if square:
        return build_graph(_load_mols(square))
    try:
        with open(graph) as fh:
            return graph_from_json_dict(json.load(fh))
    except (ValueError, KeyError) as exc:
        raise click.UsageError(f"bad graph file {graph}: {exc}")


@main.command("solve")
@click.argument("target", type=click.Choice(["copnumber", "metricdim", "locnumber"]))
@click.option("--square", type=click.Path(exists=True), default=None)
@click.option("--graph", type=click.Path(exists=True), default=None)
@click.option("--max-cops", type=int, default=3, show_default=True)
@click.option("--budget-states", type=int, default=copsolver.DEFAULT_BUDGET_STATES,
              show_default=True)
@click.option("--order-limit", type=int, default=None,
              help="Override the exact-search order budget.")
@click.option("--out", type=click.Path(), default=None)
def solve_cmd(target, square, graph, max_cops, budget_states, order_limit, out):
    """Exact solvers; budget overruns exit with status skipped-budget."""
    G = _load_graph(square, graph)
    payload = {"target": target, "n": G.n, "k": G.k, "status": "exact"}
    try:
        if target == "copnumber":
            r = copsolver.exact_cop_number(G, max_cops=max_cops, budget_states=budget_states)
            payload["value"] = r.value
            payload["witness"] = list(r.initial_positions or [])
            payload["backend"] = r.backend
            if r.value is None:
                payload["status"] = f"exceeds-max-cops-{max_cops}"
        elif target == "metricdim":
            kwargs = {"order_limit": order_limit} if order_limit else {}
            beta, witness = exact_metric_dimension(G, **kwargs)
            payload["value"] = beta
            payload["witness"] = list(witness)
        else:
            kwargs = {"order_limit": order_limit} if order_limit else {}
            value = exact_localization_number(
                G, max_cops=max_cops, budget=budget_states, **kwargs
            )
            payload["value"] = value
            if value is None:
                payload["status"] = f"exceeds-max-cops-{max_cops}"
    except BudgetExceededError as exc:
        payload["status"] = "skipped-budget"
        payload["detail"] = str(exc)
        _emit(dumps(payload), out)
        sys.exit(EXIT_BUDGET)
    _emit(dumps(payload), out)


# ---------------------------------------------------------------------------
# simulate


CNR_COPS = {
    "index-pin": lambda count: IndexPinningCops(),
    "mate-pair": None,  # built specially: needs the mate square
    "greedy": GreedyCops,
    "random": RandomCops,
    "still": StillCops,
}
CNR_ROBBERS = {
    "free-line": FreeLineRobber,
    "random": lambda count: RandomRobber(),
    "still": lambda count: StillRobber(),
}
LOC_COPS = {"cover", "all", "random"}
LOC_ROBBERS = {
    "random": RandomWalkRobber,
    "still": StationaryRobber,
    "belief-max": BeliefMaxRobber,
}


@main.command("simulate")
@click.argument("game", type=click.Choice(["cnr", "loc"]))
@click.option("--square", type=click.Path(exists=True), required=True)
@click.option("--cops", "cops_name", required=True,
              help="cnr: index-pin | mate-pair | greedy | random | still; "
                   "loc: cover | all | random")
@click.option("--robber", "robber_name", required=True,
              help="cnr: free-line | random | still; loc: random | still | belief-max")
@click.option("--cop-count", type=int, default=None,
              help="Cop or probe count where the strategy does not fix it.")
@click.option("--horizon", type=int, default=100, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(), default=None)
def simulate_cmd(game, square, cops_name, robber_name, cop_count, horizon, seed, out):
    """Run one seeded game and emit its transcript."""
    M = _load_mols(square)
    G = build_graph(M)
    if game == "cnr":
        if cops_name not in CNR_COPS:
            raise click.UsageError(f"unknown cop strategy {cops_name!r}")
        if robber_name not in CNR_ROBBERS:
            raise click.UsageError(f"unknown robber strategy {robber_name!r}")
        if cops_name == "index-pin":
            cop_strategy = IndexPinningCops()
            count = G.k + 2
        elif cops_name == "mate-pair":
            try:
                mate = find_orthogonal_mate(M)
            except BudgetExceededError as exc:
                click.echo(str(exc), err=True)
                sys.exit(EXIT_BUDGET)
            if mate is None:
                raise click.UsageError("square set has no orthogonal mate")
            cop_strategy = MatePairCops(mate)
            count = 2
        else:
            count = cop_count if cop_count is not None else 2
            cop_strategy = CNR_COPS[cops_name](count)
        robber = CNR_ROBBERS[robber_name](count)
        transcript = simulate_cnr(G, cop_strategy, robber, horizon, seed)
        _emit(dumps(transcript.to_json_dict()), out)
    else:
        if cops_name not in LOC_COPS:
            raise click.UsageError(f"unknown probe policy {cops_name!r}")
        if robber_name not in LOC_ROBBERS:
            raise click.UsageError(f"unknown robber policy {robber_name!r}")
        if cops_name == "cover":
            if M.k != 1:
                raise click.UsageError("cover strategy runs on single squares")
            try:
                policy = CoverProbeStrategy(M.squares[0])
            except ValueError as exc:
                raise click.UsageError(str(exc))
        elif cops_name == "all":
            policy = AllVerticesProbes()
        else:
            policy = RandomProbes(cop_count if cop_count is not None else 3)
        robber = LOC_ROBBERS[robber_name]()
        transcript = simulate_localization(G, policy, robber, horizon, seed)
        _emit(dumps(transcript.to_json_dict()), out)


# ---------------------------------------------------------------------------
# verify


@main.command("verify")
@click.option("--max-n", type=int, default=5, show_default=True,
              help="Largest instance order to run claims on.")
@click.option("--budget-states", type=int, default=copsolver.DEFAULT_BUDGET_STATES,
              show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="text")
@click.option("--out", type=click.Path(), default=None)
def verify_cmd(max_n, budget_states, fmt, out):
    """Run the claim suite; exits 1 if any claim fails."""
    report = verify_mod.run_claims(max_n=max_n, budget_states=budget_states)
    if fmt == "json":
        _emit(dumps(report), out)
    else:
        lines = []
        for claim in report["claims"]:
            lines.append(f"{claim['claimId']}  {claim['status']:15} {claim['paperAnchor']}")
        _emit("\n".join(lines) + "\n", out)
    failures = verify_mod.report_failures(report)
    if failures:
        click.echo(f"FAILED claims: {', '.join(failures)}", err=True)
        sys.exit(EXIT_VERIFY_FAIL)


if __name__ == "__main__":
    main()

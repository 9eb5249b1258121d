"""Command-line interface.

Subcommands::

    validate   <net>                              well-posedness report
    synthesize <net> <contract> [--central] [--out FILE] [--oracle] [--json]
    verify     <net> <contract> <controllers> [--oracle] [--json]
    distribute <net> <contract> --subsystem NAME [--oracle] [--json]
    eps        <topology> [--partition FILE] [--central] [--out FILE]
               [--oracle] [--json]

Exit codes: 0 success/realizable, 1 unrealizable or verification failure,
2 input or usage error.  ``--oracle`` cross-checks the command's result
against an independent reference: brute-force controller enumeration for
synthesize/eps (when the instance fits the budget), symbolic composition
for verify, and the subset biclique oracle for distribute.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import eps as eps_mod
from . import formats
from .boolfunc import Valuation
from .contracts import ContractPair, build_distribution_graph, maximal_distributions
from .network import (
    BooleanNetwork,
    IllPosedNetworkError,
    all_outputs,
    compose,
    external_inputs,
    flatten,
    system_graph,
    validate,
)
from .oracle import (
    BudgetExceededError,
    OracleBudget,
    brute_force_distributed,
    controller_table_bits,
    enumerate_bicliques_subset,
    verify_closed_loop,
)
from .parser import ExprSyntaxError, UnknownIdentifierError
from .synthesis import (
    centralized_synthesis,
    completeness_certificate,
    distributed_synthesis,
)

EXIT_OK = 0
EXIT_UNREALIZABLE = 1
EXIT_INPUT_ERROR = 2


def _emit(report: dict, as_json: bool, lines: list[str]) -> None:
    if as_json:
        print(json.dumps(report, indent=2))
    else:
        for line in lines:
            print(line)


def _oracle_cross_check(net: BooleanNetwork, contract: ContractPair, claimed: bool) -> dict:
    bits = controller_table_bits(net)
    budget = OracleBudget()
    if bits > budget.max_total_controller_bits:
        return {"ran": False, "reason": f"needs {bits} table bits, budget is "
                                        f"{budget.max_total_controller_bits}"}
    found = brute_force_distributed(net, contract, budget)
    return {"ran": True, "oracle_realizable": found is not None, "agrees": (found is not None) == claimed}


def _cmd_validate(args) -> int:
    net = formats.load_network(args.network)
    problems = validate(net)
    report = {"command": "validate", "well_posed": not problems, "violations": problems}
    _emit(report, args.json, ["well-posed" if not problems else "ill-posed:"] + [f"  - {p}" for p in problems])
    return EXIT_OK if not problems else EXIT_INPUT_ERROR


def _cmd_synthesize(args) -> int:
    net = formats.load_network(args.network)
    problems = validate(net)
    if problems:
        print("ill-posed network: " + "; ".join(problems), file=sys.stderr)
        return EXIT_INPUT_ERROR
    contract = formats.load_contract(args.contract, net)
    cert = completeness_certificate(net, contract)
    lines: list[str] = []
    report: dict = {"command": "synthesize", "central": args.central,
                    "completeness_certificate": cert}
    if args.central:
        controller = centralized_synthesis(net, contract)
        success = controller is not None
        report["success"] = success
        lines.append(f"centralized synthesis: {'realizable' if success else 'unrealizable'}")
        if success and args.out:
            formats.dump_document(args.out, formats.central_document(controller))
            report["out"] = args.out
            lines.append(f"controller written to {args.out}")
    else:
        outcome = distributed_synthesis(net, contract)
        success = outcome.success
        report["success"] = success
        report["trace"] = formats.trace_document(outcome)
        lines.append(f"distributed synthesis: {'success' if success else 'failure'}")
        if success:
            ver = verify_closed_loop(net, outcome.controllers, contract)
            report["closed_loop_verified"] = ver.ok
            lines.append(f"closed loop verified: {ver.ok}")
            if args.out:
                formats.dump_document(args.out, formats.controllers_document(net, outcome))
                report["out"] = args.out
                lines.append(f"controllers written to {args.out}")
        else:
            lines.append("trace:")
            for t in outcome.trace:
                lines.append(f"  {t.subsystem} split#{t.distribution}: lra = {t.lra.to_expr()}")
            if cert:
                lines.append("completeness certificate holds: no distributed controller exists")
    lines.append(f"completeness certificate: {cert}")
    if args.oracle:
        check = _oracle_cross_check(net, contract, success)
        report["oracle"] = check
        if check["ran"]:
            lines.append(f"oracle cross-check: {'agrees' if check['agrees'] else 'DISAGREES'}")
        else:
            lines.append(f"oracle cross-check skipped: {check['reason']}")
        if check.get("ran") and not check.get("agrees"):
            _emit(report, args.json, lines)
            return EXIT_INPUT_ERROR
    _emit(report, args.json, lines)
    return EXIT_OK if success else EXIT_UNREALIZABLE


def _cmd_verify(args) -> int:
    net = formats.load_network(args.network)
    contract = formats.load_contract(args.contract, net)
    mode, controllers = formats.load_controllers(args.controllers, net)
    if mode == "central":
        (controller,) = controllers.values()
        plant = flatten(net)
        ext = external_inputs(net)
        ok, counterexample = True, None
        for index in range(1 << len(ext)):
            val = Valuation.from_index(ext, index)
            assign = val.as_dict()
            if not contract.assumption.evaluate(assign):
                continue
            point = assign | controller(assign)
            outputs = {y: f.evaluate(point) for y, f in plant.functions.items()}
            if not contract.guarantee.evaluate(outputs):
                ok, counterexample = False, val
                break
    else:
        result = verify_closed_loop(net, controllers, contract)
        ok, counterexample = result.ok, result.counterexample
    report = {"command": "verify", "ok": ok,
              "counterexample": str(counterexample) if counterexample else None}
    lines = ["closed loop satisfies the contract" if ok
             else f"contract violated at {counterexample}"]
    if args.oracle and mode == "distributed":
        # independent route: symbolic composition instead of simulation
        funcs = compose(net, controllers)
        closed = contract.guarantee.substitute(
            {y: funcs[y] for y in contract.guarantee.scope}
        )
        symbolic_ok = contract.assumption.implies(closed).is_true
        report["oracle"] = {"ran": True, "agrees": symbolic_ok == ok}
        lines.append(
            f"symbolic cross-check: {'agrees' if symbolic_ok == ok else 'DISAGREES'}"
        )
        if symbolic_ok != ok:
            _emit(report, args.json, lines)
            return EXIT_INPUT_ERROR
    _emit(report, args.json, lines)
    return EXIT_OK if ok else EXIT_UNREALIZABLE


def _cmd_distribute(args) -> int:
    net = formats.load_network(args.network)
    contract = formats.load_contract(args.contract, net)
    if args.subsystem not in net.names:
        print(f"unknown subsystem {args.subsystem!r}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    dists = maximal_distributions(contract.guarantee, net, args.subsystem)
    report = {
        "command": "distribute",
        "subsystem": args.subsystem,
        "distributions": [
            {"down": d.down.to_expr(), "up": d.up.to_expr()} for d in dists
        ],
    }
    lines = [f"{len(dists)} maximal distribution(s) for {args.subsystem}:"]
    for k, d in enumerate(dists):
        lines.append(f"  {k}: down = {d.down.to_expr()} | up = {d.up.to_expr()}")
    if args.oracle:
        graph = build_distribution_graph(contract.guarantee, net, args.subsystem)
        got = {
            (
                frozenset(v.index() for v in d.down.satisfying_valuations()),
                frozenset(v.index() for v in d.up.satisfying_valuations()),
            )
            for d in dists
        }
        agrees = got == set(enumerate_bicliques_subset(graph))
        report["oracle"] = {"ran": True, "agrees": agrees}
        lines.append(f"biclique cross-check: {'agrees' if agrees else 'DISAGREES'}")
        if not agrees:
            _emit(report, args.json, lines)
            return EXIT_INPUT_ERROR
    _emit(report, args.json, lines)
    return EXIT_OK


def _cmd_eps(args) -> int:
    topo = eps_mod.load_topology(args.topology)
    partition = eps_mod.load_partition(args.partition) if args.partition else None
    net, contract = eps_mod.compile_to_network(topo, partition)
    graph = system_graph(net)
    cert = completeness_certificate(net, contract)
    lines = [
        f"compiled {len(net.subsystems)} subsystem(s): " + ", ".join(net.names),
        "system graph edges: " + (", ".join(f"{a}->{b}" for a, b in graph.edges) or "(none)"),
        f"external inputs: {len(external_inputs(net))}, controls: "
        f"{sum(len(s.controls) for s in net.subsystems)}, outputs: {len(all_outputs(net))}",
        f"completeness certificate: {cert}",
    ]
    report: dict = {
        "command": "eps",
        "subsystems": list(net.names),
        "edges": [list(e) for e in graph.edges],
        "completeness_certificate": cert,
        "central": args.central,
    }
    if args.central:
        controller = centralized_synthesis(net, contract)
        success = controller is not None
        lines.append(f"centralized synthesis: {'realizable' if success else 'unrealizable'}")
        if success and args.out:
            formats.dump_document(args.out, formats.central_document(controller))
            lines.append(f"controller written to {args.out}")
            report["out"] = args.out
    else:
        outcome = distributed_synthesis(net, contract)
        success = outcome.success
        report["trace"] = formats.trace_document(outcome)
        lines.append(f"distributed synthesis: {'success' if success else 'failure'}")
        if success:
            ver = verify_closed_loop(net, outcome.controllers, contract)
            report["closed_loop_verified"] = ver.ok
            lines.append(f"closed loop verified: {ver.ok}")
            if args.out:
                formats.dump_document(args.out, formats.controllers_document(net, outcome))
                lines.append(f"controllers written to {args.out}")
                report["out"] = args.out
    report["success"] = success
    if args.oracle:
        check = _oracle_cross_check(net, contract, success)
        report["oracle"] = check
        if check["ran"]:
            lines.append(f"oracle cross-check: {'agrees' if check['agrees'] else 'DISAGREES'}")
        else:
            lines.append(f"oracle cross-check skipped: {check['reason']}")
        if check.get("ran") and not check.get("agrees"):
            _emit(report, args.json, lines)
            return EXIT_INPUT_ERROR
    _emit(report, args.json, lines)
    return EXIT_OK if success else EXIT_UNREALIZABLE


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boolsynth",
        description="Distributed controller synthesis for boolean networks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check well-posedness of a network file")
    p.add_argument("network")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("synthesize", help="synthesize controllers for a contract")
    p.add_argument("network")
    p.add_argument("contract")
    p.add_argument("--central", action="store_true", help="single full-information controller")
    p.add_argument("--out", help="write the controller document here")
    p.add_argument("--oracle", action="store_true", help="cross-check with brute force")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_synthesize)

    p = sub.add_parser("verify", help="verify a controller document against a contract")
    p.add_argument("network")
    p.add_argument("contract")
    p.add_argument("controllers")
    p.add_argument("--oracle", action="store_true", help="cross-check by symbolic composition")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("distribute", help="list maximal guarantee distributions")
    p.add_argument("network")
    p.add_argument("contract")
    p.add_argument("--subsystem", required=True)
    p.add_argument("--oracle", action="store_true", help="cross-check against the biclique oracle")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_distribute)

    p = sub.add_parser("eps", help="compile a power topology, then synthesize and verify")
    p.add_argument("topology")
    p.add_argument("--partition", help="explicit grouping file")
    p.add_argument("--central", action="store_true")
    p.add_argument("--out", help="write the controller document here")
    p.add_argument("--oracle", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_eps)
    return parser


def cli_main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT_ERROR if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (
        OSError,
        ValueError,
        KeyError,
        ExprSyntaxError,
        UnknownIdentifierError,
        IllPosedNetworkError,
        BudgetExceededError,
        eps_mod.TopologyError,
        formats.FormatError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


def main() -> None:
    raise SystemExit(cli_main())


if __name__ == "__main__":
    main()

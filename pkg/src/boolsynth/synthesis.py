"""Realizability checking and recursive distributed controller synthesis.

A local contract is realizable when for every admissible environment
valuation some control valuation makes the guarantee hold; the witness of
that forall-exists question is a controller table.  The distributed
procedure peels leaf subsystems off the system graph: it projects the
assumption, tries each maximal guarantee split, constrains the leaf's
internal inputs by the least restrictive assumption, turns that constraint
into a guarantee for the remaining subsystems, and recurses, backtracking
over splits.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .boolfunc import BoolFunc, Valuation, VariableSet, all_valuations
from .contracts import (
    ContractPair,
    check_contract,
    conjunctive_decomposition,
    maximal_distributions,
    project_assumption,
)
from .network import (
    BooleanNetwork,
    BooleanSystem,
    Controller,
    classify_inputs,
    flatten,
    is_forest,
    leaves,
    remove_subsystem,
    system_graph,
)

__all__ = [
    "UnrealizableError",
    "UndrivenInputError",
    "LocalSynthesisResult",
    "TraceEntry",
    "SynthesisOutcome",
    "check_realizable",
    "extract_controller",
    "least_restrictive_assumption",
    "local_synthesis",
    "rewire_to_parent_outputs",
    "update_contract",
    "distributed_synthesis",
    "centralized_synthesis",
    "completeness_certificate",
]


class UnrealizableError(ValueError):
    """Controller extraction was asked for an unrealizable contract."""


@dataclass(frozen=True)
class LocalSynthesisResult:
    """Least restrictive assumption over the internal inputs, plus the local
    controller (present exactly when the assumption is not constant False)."""

    lra: BoolFunc
    controller: Controller | None


@dataclass(frozen=True)
class TraceEntry:
    """One synthesis attempt: which subsystem, which split, which LRA."""

    subsystem: str
    distribution: int
    lra: BoolFunc


@dataclass(frozen=True)
class SynthesisOutcome:
    """Result of the recursive procedure: on success, one controller and one
    realizable local contract per subsystem; the trace logs every attempt."""

    success: bool
    controllers: dict[str, Controller]
    local_contracts: dict[str, ContractPair]
    trace: tuple[TraceEntry, ...]


def _guarantee_over_inputs(sys: BooleanSystem, guarantee: BoolFunc) -> BoolFunc:
    stray = [v for v in guarantee.scope if v not in sys.outputs]
    if stray:
        raise ValueError(f"guarantee mentions variables outside {sys.name}'s outputs: {stray}")
    return guarantee.substitute({y: sys.functions[y] for y in guarantee.scope})


def check_realizable(
    sys: BooleanSystem,
    assumption: BoolFunc,
    guarantee: BoolFunc,
    fixed: Valuation | None = None,
) -> bool:
    """Decide ``forall e exists u: A(e) -> G(f(u, e))``.

    `assumption` is over environment inputs (internal-input constraints may
    be conjoined in); `guarantee` is over outputs.  When `fixed` is given,
    environment variables in its scope are pinned to its values.
    """
    adm = assumption
    if fixed is not None:
        adm = adm & BoolFunc.exactly(fixed)
    g_inputs = _guarantee_over_inputs(sys, guarantee)
    can_win = g_inputs.project(g_inputs.scope.without(sys.controls))
    return adm.implies(can_win).is_true


def extract_controller(sys: BooleanSystem, assumption: BoolFunc, guarantee: BoolFunc) -> Controller:
    """Total controller table; on each admissible row the guarantee holds.

    Ties break to the lexicographically least control valuation that
    satisfies the guarantee; rows where none exists get all-False controls
    and must be inadmissible, otherwise the contract is unrealizable.
    """
    env, ctr = sys.env_inputs, sys.controls
    order = VariableSet(list(env) + list(ctr))
    table = _guarantee_over_inputs(sys, guarantee).extend(order).table
    table = table.reshape(1 << len(env), 1 << len(ctr))
    adm = assumption.extend(env).table.reshape(-1)
    any_u = table.any(axis=1)
    bad = adm & ~any_u
    if bad.any():
        witness = Valuation.from_index(env, int(np.argmax(bad)))
        raise UnrealizableError(
            f"{sys.name}: no control satisfies the guarantee at admissible input ({witness})"
        )
    choice = np.where(any_u, np.argmax(table, axis=1), 0)
    nc = len(ctr)
    rows = tuple(
        tuple(bool((int(c) >> (nc - 1 - k)) & 1) for k in range(nc)) for c in choice
    )
    return Controller(sys.name, env, ctr, rows)


def least_restrictive_assumption(
    sys: BooleanSystem,
    assumption: BoolFunc,
    guarantee: BoolFunc,
    internal: VariableSet,
) -> BoolFunc:
    """The set of internal-input valuations under which the local contract is
    realizable, as a function over `internal`.

    Constant False means no internal valuation helps; internal valuations
    outside the satisfying set make the guarantee unachievable.
    """
    bits = [
        check_realizable(sys, assumption, guarantee, fixed=val)
        for val in all_valuations(internal)
    ]
    return BoolFunc(internal, np.array(bits, dtype=bool))


def local_synthesis(
    sys: BooleanSystem,
    assumption: BoolFunc,
    guarantee: BoolFunc,
    internal: VariableSet,
) -> LocalSynthesisResult:
    """Compute the least restrictive assumption and, when it is satisfiable,
    the controller for the strengthened local contract."""
    lra = least_restrictive_assumption(sys, assumption, guarantee, internal)
    if lra.is_false:
        return LocalSynthesisResult(lra, None)
    return LocalSynthesisResult(lra, extract_controller(sys, assumption & lra, guarantee))


class UndrivenInputError(ValueError):
    def __init__(self, subsystem: str, variable: str):
        super().__init__(
            f"{subsystem}.{variable} has no driving link; cannot rewire onto parent outputs"
        )


def rewire_to_parent_outputs(lra: BoolFunc, net: BooleanNetwork, name: str) -> BoolFunc:
    """Rename each internal input in `lra` to the parent output driving it."""
    mapping: dict[str, str] = {}
    for v in lra.scope:
        link = net.wiring.driver_of(name, v)
        if link is None:
            raise UndrivenInputError(name, v)
        mapping[v] = link.from_output
    return lra.rename(mapping)


def update_contract(contract: ContractPair, up: BoolFunc, lra_rewired: BoolFunc) -> ContractPair:
    """Contract for the remaining subsystems: the assumption is unchanged and
    the guarantee becomes the remainder split strengthened by the rewired
    least restrictive assumption."""
    return ContractPair(contract.assumption, up & lra_rewired)


def distributed_synthesis(net: BooleanNetwork, contract: ContractPair) -> SynthesisOutcome:
    """Recursive leaf-elimination synthesis with backtracking over splits.

    Succeeds with one controller and one realizable local contract per
    subsystem, or fails after exhausting every split at some leaf.  The
    trace logs each attempt in exploration order, so on failure its tail
    shows the subsystem whose candidates ran out.
    """
    check_contract(net, contract)
    trace: list[TraceEntry] = []
    ok, controllers, local_contracts = _synthesize(net, contract, trace)
    return SynthesisOutcome(
        success=ok,
        controllers=controllers if ok else {},
        local_contracts=local_contracts if ok else {},
        trace=tuple(trace),
    )


def _synthesize(
    net: BooleanNetwork, contract: ContractPair, trace: list[TraceEntry]
) -> tuple[bool, dict[str, Controller], dict[str, ContractPair]]:
    if not net.subsystems:
        return True, {}, {}
    graph = system_graph(net)
    name = leaves(graph)[0]
    sys = net.subsystem(name)
    internal, _ = classify_inputs(net, name)
    local_assumption = project_assumption(contract.assumption, net, name)
    for idx, gamma in enumerate(maximal_distributions(contract.guarantee, net, name)):
        result = local_synthesis(sys, local_assumption, gamma.down, internal)
        trace.append(TraceEntry(name, idx, result.lra))
        if result.controller is None:
            continue
        ok, controllers, local_contracts = _synthesize(
            remove_subsystem(net, name),
            update_contract(contract, gamma.up, rewire_to_parent_outputs(result.lra, net, name)),
            trace,
        )
        if ok:
            controllers[name] = result.controller
            local_contracts[name] = ContractPair(local_assumption & result.lra, gamma.down)
            return True, controllers, local_contracts
    return False, {}, {}


def centralized_synthesis(net: BooleanNetwork, contract: ContractPair) -> Controller | None:
    """One controller for the whole network (all controls read all external
    inputs), or None when even full information does not suffice."""
    check_contract(net, contract)
    plant = flatten(net)
    if not check_realizable(plant, contract.assumption, contract.guarantee):
        return None
    return extract_controller(plant, contract.assumption, contract.guarantee)


def completeness_certificate(net: BooleanNetwork, contract: ContractPair) -> bool:
    """True when a failure of `distributed_synthesis` proves that no
    distributed controller exists: the assumption splits conjunctively over
    per-subsystem external inputs, the guarantee splits conjunctively over
    per-subsystem outputs, and the system graph is a forest."""
    check_contract(net, contract)
    if not is_forest(system_graph(net)):
        return False
    ext_blocks = []
    out_blocks = []
    for s in net.subsystems:
        _, ext = classify_inputs(net, s.name)
        block = contract.assumption.scope.restricted_to(ext)
        if block:
            ext_blocks.append(block)
        block = contract.guarantee.scope.restricted_to(s.outputs)
        if block:
            out_blocks.append(block)
    if conjunctive_decomposition(contract.assumption, ext_blocks) is None:
        return False
    return conjunctive_decomposition(contract.guarantee, out_blocks) is not None

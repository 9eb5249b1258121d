"""Memoryless boolean subsystems wired into acyclic networks.

A subsystem maps control and environment inputs to outputs through one
boolean function per output.  Networks connect subsystem outputs to other
subsystems' environment inputs; the induced system graph must be a DAG.
Environment inputs driven by a wire are *internal*, the rest *external*.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

import numpy as np

from .boolfunc import BoolFunc, Valuation, VariableSet, check_name

__all__ = [
    "BooleanSystem",
    "Link",
    "Interconnection",
    "BooleanNetwork",
    "SystemGraph",
    "Controller",
    "IllPosedNetworkError",
    "validate",
    "system_graph",
    "classify_inputs",
    "leaves",
    "is_forest",
    "topological_order",
    "compose",
    "flatten",
    "remove_subsystem",
    "external_inputs",
    "all_outputs",
    "all_controls",
]


class IllPosedNetworkError(ValueError):
    """Operation requires a well-posed network but validation found problems."""

    def __init__(self, violations: Iterable[str]):
        self.violations = tuple(violations)
        super().__init__("ill-posed network: " + "; ".join(self.violations))


@dataclass(frozen=True)
class BooleanSystem:
    """A memoryless subsystem ``(controls, env_inputs, outputs, functions)``.

    `functions` maps each output name to its defining BoolFunc, whose scope
    must lie inside ``controls + env_inputs``.  Controls and environment
    inputs are disjoint.
    """

    name: str
    controls: VariableSet
    env_inputs: VariableSet
    outputs: VariableSet
    functions: dict[str, BoolFunc]

    def __post_init__(self) -> None:
        check_name(self.name)
        overlap = [v for v in self.controls if v in self.env_inputs]
        if overlap:
            raise ValueError(f"{self.name}: controls and env_inputs overlap: {overlap}")
        allowed = set(self.controls) | set(self.env_inputs)
        ordered: dict[str, BoolFunc] = {}
        for y in self.outputs:
            if y in allowed:
                raise ValueError(f"{self.name}: output {y!r} is also an input")
            if y not in self.functions:
                raise ValueError(f"{self.name}: output {y!r} has no defining function")
            f = self.functions[y]
            stray = [v for v in f.scope if v not in allowed]
            if stray:
                raise ValueError(
                    f"{self.name}: function for {y!r} mentions non-input variables {stray}"
                )
            ordered[y] = f
        extra = [y for y in self.functions if y not in self.outputs]
        if extra:
            raise ValueError(f"{self.name}: functions for undeclared outputs {extra}")
        object.__setattr__(self, "functions", ordered)

    @property
    def input_scope(self) -> VariableSet:
        return self.controls.union(self.env_inputs)


@dataclass(frozen=True)
class Link:
    """One wire: an output of `from_sys` drives an env input of `to_sys`."""

    from_sys: str
    from_output: str
    to_sys: str
    to_input: str


@dataclass(frozen=True)
class Interconnection:
    links: tuple[Link, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "links", tuple(self.links))

    def into(self, sys_name: str) -> list[Link]:
        return [l for l in self.links if l.to_sys == sys_name]

    def driver_of(self, sys_name: str, env_input: str) -> Link | None:
        for l in self.links:
            if l.to_sys == sys_name and l.to_input == env_input:
                return l
        return None


@dataclass(frozen=True)
class SystemGraph:
    """Digraph with one node per subsystem and an edge per wired pair."""

    nodes: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]

    def out_degree(self, node: str) -> int:
        return sum(1 for a, _ in self.edges if a == node)

    def in_degree(self, node: str) -> int:
        return sum(1 for _, b in self.edges if b == node)

    def parents(self, node: str) -> list[str]:
        return [a for a, b in self.edges if b == node]


@dataclass(frozen=True)
class BooleanNetwork:
    """Subsystems plus interconnection.  Construction never raises on wiring
    problems; `validate` reports them and well-posedness-requiring operations
    refuse to run until the report is empty."""

    subsystems: tuple[BooleanSystem, ...]
    wiring: Interconnection = field(default_factory=Interconnection)

    def __post_init__(self) -> None:
        object.__setattr__(self, "subsystems", tuple(self.subsystems))

    def subsystem(self, name: str) -> BooleanSystem:
        for s in self.subsystems:
            if s.name == name:
                return s
        raise KeyError(f"no subsystem named {name!r}")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(s.name for s in self.subsystems)


def validate(net: BooleanNetwork) -> list[str]:
    """Well-posedness report; an empty list means the network is well-posed.

    Checks subsystem-name and global variable-name uniqueness, that every
    wire references existing outputs/inputs, that no environment input has
    two drivers, and that the induced system graph is acyclic.
    """
    problems: list[str] = []
    names = [s.name for s in net.subsystems]
    for n in sorted({n for n in names if names.count(n) > 1}):
        problems.append(f"duplicate subsystem name {n!r}")

    seen: dict[str, str] = {}
    for s in net.subsystems:
        for v in list(s.controls) + list(s.env_inputs) + list(s.outputs):
            if v in seen:
                problems.append(f"variable {v!r} declared in both {seen[v]} and {s.name}")
            else:
                seen[v] = s.name

    name_set = set(names)
    good_links: list[Link] = []
    for l in net.wiring.links:
        ok = True
        if l.from_sys not in name_set:
            problems.append(f"link references unknown subsystem {l.from_sys!r}")
            ok = False
        elif l.from_output not in net.subsystem(l.from_sys).outputs:
            problems.append(f"link source {l.from_sys}.{l.from_output} is not an output")
            ok = False
        if l.to_sys not in name_set:
            problems.append(f"link references unknown subsystem {l.to_sys!r}")
            ok = False
        elif l.to_input not in net.subsystem(l.to_sys).env_inputs:
            problems.append(f"link target {l.to_sys}.{l.to_input} is not an environment input")
            ok = False
        if ok and l.from_sys == l.to_sys:
            problems.append(f"link from {l.from_sys} to itself")
            ok = False
        if ok:
            good_links.append(l)

    targets = [(l.to_sys, l.to_input) for l in good_links]
    for t in sorted({t for t in targets if targets.count(t) > 1}):
        problems.append(f"environment input {t[0]}.{t[1]} has more than one driver")

    # Cycle check over the links that at least reference real endpoints.
    edges = sorted(
        {(l.from_sys, l.to_sys) for l in good_links},
        key=lambda e: (names.index(e[0]), names.index(e[1])),
    )
    order = _kahn(names, edges)
    if order is None:
        problems.append("interconnection structure contains a cycle")
    return problems


def _kahn(nodes: list[str], edges: list[tuple[str, str]]) -> list[str] | None:
    indeg = {n: 0 for n in nodes}
    for _, b in edges:
        indeg[b] += 1
    order: list[str] = []
    ready = [n for n in nodes if indeg[n] == 0]
    while ready:
        n = ready.pop(0)
        order.append(n)
        for a, b in edges:
            if a == n:
                indeg[b] -= 1
                if indeg[b] == 0 and b not in ready:
                    ready.append(b)
    return order if len(order) == len(nodes) else None


def _require_well_posed(net: BooleanNetwork) -> None:
    problems = validate(net)
    if problems:
        raise IllPosedNetworkError(problems)


def system_graph(net: BooleanNetwork) -> SystemGraph:
    _require_well_posed(net)
    names = list(net.names)
    edges = sorted(
        {(l.from_sys, l.to_sys) for l in net.wiring.links},
        key=lambda e: (names.index(e[0]), names.index(e[1])),
    )
    return SystemGraph(tuple(names), tuple(edges))


def classify_inputs(net: BooleanNetwork, name: str) -> tuple[VariableSet, VariableSet]:
    """Split a subsystem's environment inputs into (internal, external)."""
    _require_well_posed(net)
    sys = net.subsystem(name)
    driven = {l.to_input for l in net.wiring.into(name)}
    internal = VariableSet(v for v in sys.env_inputs if v in driven)
    external = VariableSet(v for v in sys.env_inputs if v not in driven)
    return internal, external


def leaves(g: SystemGraph) -> list[str]:
    """Nodes without outgoing edges, in declaration order."""
    return [n for n in g.nodes if g.out_degree(n) == 0]


def is_forest(g: SystemGraph) -> bool:
    """True iff every node has at most one parent (the graph being a DAG)."""
    return all(g.in_degree(n) <= 1 for n in g.nodes)


def topological_order(g: SystemGraph) -> list[str]:
    order = _kahn(list(g.nodes), list(g.edges))
    if order is None:
        raise IllPosedNetworkError(["interconnection structure contains a cycle"])
    return order


def external_inputs(net: BooleanNetwork) -> VariableSet:
    """All external environment inputs, in declaration order."""
    _require_well_posed(net)
    out: list[str] = []
    for s in net.subsystems:
        _, ext = classify_inputs(net, s.name)
        out.extend(ext)
    return VariableSet(out)


def all_outputs(net: BooleanNetwork) -> VariableSet:
    return VariableSet(v for s in net.subsystems for v in s.outputs)


def all_controls(net: BooleanNetwork) -> VariableSet:
    return VariableSet(v for s in net.subsystems for v in s.controls)


@dataclass(frozen=True)
class Controller:
    """Total lookup table from environment-input valuations to control values.

    Rows are indexed by the lexicographic rank of the input valuation; each
    row lists control bits in control declaration order.
    """

    subsystem: str
    inputs: VariableSet
    controls: VariableSet
    rows: tuple[tuple[bool, ...], ...]

    def __post_init__(self) -> None:
        if len(self.rows) != 1 << len(self.inputs):
            raise ValueError(
                f"controller for {self.subsystem} has {len(self.rows)} rows, "
                f"expected {1 << len(self.inputs)}"
            )
        rows = tuple(tuple(bool(b) for b in row) for row in self.rows)
        for row in rows:
            if len(row) != len(self.controls):
                raise ValueError(f"controller row {row} does not match control count")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def constant(
        cls, subsystem: str, inputs: VariableSet, controls: VariableSet, value: bool = False
    ) -> "Controller":
        row = (bool(value),) * len(controls)
        return cls(subsystem, inputs, controls, (row,) * (1 << len(inputs)))

    def __call__(self, env: Mapping[str, bool]) -> dict[str, bool]:
        idx = Valuation(self.inputs, tuple(env[v] for v in self.inputs)).index()
        return dict(zip(self.controls, self.rows[idx]))

    def control_function(self, control: str) -> BoolFunc:
        """The chosen value of one control as a BoolFunc of the inputs."""
        k = self.controls.index(control)
        col = np.array([row[k] for row in self.rows], dtype=bool)
        return BoolFunc(self.inputs, col)


def _closed_loop_functions(
    net: BooleanNetwork, controllers: Mapping[str, Controller] | None
) -> dict[str, BoolFunc]:
    """Output functions after substituting controllers (if given) and
    eliminating internal inputs through the wiring, in topological order."""
    graph = system_graph(net)
    closed: dict[str, BoolFunc] = {}
    for name in topological_order(graph):
        sys = net.subsystem(name)
        ctrl_funcs: dict[str, BoolFunc] = {}
        if controllers is not None:
            if name not in controllers:
                raise ValueError(f"missing controller for subsystem {name!r}")
            ctrl = controllers[name]
            if ctrl.inputs != sys.env_inputs or ctrl.controls != sys.controls:
                raise ValueError(f"controller for {name!r} does not match its interface")
            ctrl_funcs = {u: ctrl.control_function(u) for u in sys.controls}
        drivers = {
            l.to_input: closed[l.from_output] for l in net.wiring.into(name)
        }
        for y, f in sys.functions.items():
            if controllers is not None:
                f = f.substitute({u: g for u, g in ctrl_funcs.items() if u in f.scope})
            f = f.substitute({e: g for e, g in drivers.items() if e in f.scope})
            closed[y] = f
    return closed


def compose(
    net: BooleanNetwork, controllers: Mapping[str, Controller]
) -> dict[str, BoolFunc]:
    """Closed-loop output functions over all external inputs.

    Substitutes each subsystem's controller into its output functions and
    eliminates internal inputs along the wiring; every returned function is
    scoped over the full external-input set.
    """
    ext = external_inputs(net)
    closed = _closed_loop_functions(net, controllers)
    return {y: closed[y].extend(ext) for y in all_outputs(net)}


def flatten(net: BooleanNetwork, name: str = "network") -> BooleanSystem:
    """The network itself as a single boolean system (controls stay free)."""
    closed = _closed_loop_functions(net, None)
    return BooleanSystem(
        name=name,
        controls=all_controls(net),
        env_inputs=external_inputs(net),
        outputs=all_outputs(net),
        functions={y: closed[y] for y in all_outputs(net)},
    )


def remove_subsystem(net: BooleanNetwork, name: str) -> BooleanNetwork:
    """Delete a leaf subsystem and every link into it."""
    graph = system_graph(net)
    if name not in graph.nodes:
        raise KeyError(f"no subsystem named {name!r}")
    if graph.out_degree(name) != 0:
        raise ValueError(f"cannot remove {name!r}: it is not a leaf of the system graph")
    remaining = tuple(s for s in net.subsystems if s.name != name)
    links = tuple(l for l in net.wiring.links if l.to_sys != name)
    return BooleanNetwork(remaining, Interconnection(links))

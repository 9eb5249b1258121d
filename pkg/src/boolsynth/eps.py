"""Electric power system topologies compiled to boolean networks.

A topology is an undirected graph of generators, rectifiers, transformers,
buses and dummy junction nodes, with contactor-gated or solid edges.
Generators, rectifiers and transformers carry health bits (environment
inputs); contactors are open/closed (control inputs).  A bus is powered
when a live path connects it to a healthy generator: every component on the
path (endpoints included) is online and every contactor on it is closed.

Compilation groups nodes into subsystems, one per connected component after
removing the designated feeder edges (or per an explicit partition).  Feed
direction across groups is derived from generator placement; each crossing
becomes an interconnection link carrying the parent-side attach node's
power-availability bit.  Outputs are bus-status bits, plus one auxiliary
coupling bit per same-group pair of AC sources so the "no AC coupling"
requirement stays a function of outputs.

The compositional encoding is exact only when power cannot re-enter a group
region it left, so compilation rejects topologies where (a) a generator
sits in a non-root group, or (b) the feeders entering a group's subtree
attach to more than one parent node.  Dummy nodes never fail.
"""

from __future__ import annotations

import json
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .boolfunc import BoolFunc, VariableSet, check_name, conjoin
from .contracts import ContractPair
from .network import (
    BooleanNetwork,
    BooleanSystem,
    Interconnection,
    Link,
    all_outputs,
    external_inputs,
    validate,
)

__all__ = [
    "NODE_KINDS",
    "HEALTH_KINDS",
    "PowerNode",
    "PowerEdge",
    "PowerTopology",
    "TopologyError",
    "load_topology",
    "load_partition",
    "live_path",
    "bus_status",
    "all_healthy",
    "all_closed",
    "compile_to_network",
]

NODE_KINDS = ("generator", "rectifier", "transformer", "bus", "dummy")
HEALTH_KINDS = ("generator", "rectifier", "transformer")


class TopologyError(ValueError):
    """Malformed or uncompilable power topology."""


@dataclass(frozen=True)
class PowerNode:
    name: str
    kind: str
    current: str  # "ac" or "dc"


@dataclass(frozen=True)
class PowerEdge:
    a: str
    b: str
    contactor: str | None = None  # None means a solid link

    @property
    def solid(self) -> bool:
        return self.contactor is None


@dataclass(frozen=True)
class PowerTopology:
    nodes: tuple[PowerNode, ...]
    edges: tuple[PowerEdge, ...]
    feeders: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "feeders", tuple(self.feeders))
        names = [n.name for n in self.nodes]
        for n in self.nodes:
            check_name(n.name)
            if n.kind not in NODE_KINDS:
                raise TopologyError(f"node {n.name!r} has unknown kind {n.kind!r}")
            if n.current not in ("ac", "dc"):
                raise TopologyError(f"node {n.name!r} has unknown current tag {n.current!r}")
        dupes = sorted({n for n in names if names.count(n) > 1})
        if dupes:
            raise TopologyError(f"duplicate node names: {', '.join(dupes)}")
        contactors = [e.contactor for e in self.edges if e.contactor is not None]
        dupes = sorted({c for c in contactors if contactors.count(c) > 1})
        if dupes:
            raise TopologyError(f"duplicate contactor names: {', '.join(dupes)}")
        clash = sorted(set(contactors) & set(names))
        if clash:
            raise TopologyError(f"names used for both nodes and contactors: {', '.join(clash)}")
        name_set = set(names)
        for e in self.edges:
            if e.contactor is not None:
                check_name(e.contactor)
            for end in (e.a, e.b):
                if end not in name_set:
                    raise TopologyError(f"edge endpoint {end!r} is not a declared node")
            if e.a == e.b:
                raise TopologyError(f"edge connects {e.a!r} to itself")
        contactor_set = set(contactors)
        for f in self.feeders:
            if f not in contactor_set:
                raise TopologyError(f"feeder {f!r} is not a contactor edge")

    def node(self, name: str) -> PowerNode:
        for n in self.nodes:
            if n.name == name:
                return n
        raise KeyError(f"no component named {name!r}")

    @property
    def contactor_names(self) -> tuple[str, ...]:
        return tuple(e.contactor for e in self.edges if e.contactor is not None)

    @property
    def health_names(self) -> tuple[str, ...]:
        return tuple(n.name for n in self.nodes if n.kind in HEALTH_KINDS)

    @property
    def bus_names(self) -> tuple[str, ...]:
        return tuple(n.name for n in self.nodes if n.kind == "bus")


def load_topology(path) -> PowerTopology:
    """Read a topology document (JSON: nodes, edges, feeders)."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise TopologyError(f"{path}: not valid JSON ({exc})") from exc
    try:
        nodes = tuple(
            PowerNode(str(n["name"]), str(n["kind"]), str(n["current"])) for n in doc["nodes"]
        )
        edges = []
        for e in doc["edges"]:
            if "contactor" in e:
                edges.append(PowerEdge(str(e["a"]), str(e["b"]), str(e["contactor"])))
            elif e.get("solid"):
                edges.append(PowerEdge(str(e["a"]), str(e["b"]), None))
            else:
                raise TopologyError(f"edge {e!r} is neither a contactor nor marked solid")
        feeders = tuple(str(f) for f in doc.get("feeders", ()))
    except (KeyError, TypeError) as exc:
        raise TopologyError(f"{path}: malformed topology document ({exc!r})") from exc
    return PowerTopology(nodes, tuple(edges), feeders)


def load_partition(path) -> list[tuple[str, list[str]]]:
    """Read an explicit grouping: {"groups": [{"name", "nodes": [...]}]}."""
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    try:
        return [(str(g["name"]), [str(n) for n in g["nodes"]]) for g in doc["groups"]]
    except (KeyError, TypeError) as exc:
        raise TopologyError(f"{path}: malformed partition document ({exc!r})") from exc


def all_healthy(topo: PowerTopology) -> dict[str, bool]:
    return {n: True for n in topo.health_names}


def all_closed(topo: PowerTopology, closed: bool = True) -> dict[str, bool]:
    return {c: closed for c in topo.contactor_names}


def _check_states(
    topo: PowerTopology, health: Mapping[str, bool], contactors: Mapping[str, bool]
) -> None:
    if set(health) != set(topo.health_names):
        raise ValueError("health state must cover exactly the failable components")
    if set(contactors) != set(topo.contactor_names):
        raise ValueError("contactor state must cover exactly the contactors")


def _passable_nodes(topo: PowerTopology, health: Mapping[str, bool]) -> set[str]:
    return {
        n.name
        for n in topo.nodes
        if n.kind not in HEALTH_KINDS or health[n.name]
    }


def _reachable(
    nodes: set[str],
    edges: Sequence[tuple[str, str, bool]],
    start: set[str],
) -> set[str]:
    """Connected closure of `start` over passable nodes and conducting edges."""
    adj: dict[str, list[str]] = {n: [] for n in nodes}
    for a, b, conducting in edges:
        if conducting and a in nodes and b in nodes:
            adj[a].append(b)
            adj[b].append(a)
    seen = set(n for n in start if n in nodes)
    frontier = list(seen)
    while frontier:
        n = frontier.pop()
        for m in adj[n]:
            if m not in seen:
                seen.add(m)
                frontier.append(m)
    return seen


def live_path(
    topo: PowerTopology,
    health: Mapping[str, bool],
    contactors: Mapping[str, bool],
    a: str,
    b: str,
) -> bool:
    """True iff a path connects `a` and `b` with every component on it online
    (endpoints included) and every contactor on it closed.

    Health and closure are per-node/per-edge, so a live walk contains a live
    simple path; connectivity over the passable subgraph is equivalent.
    """
    topo.node(a), topo.node(b)
    _check_states(topo, health, contactors)
    passable = _passable_nodes(topo, health)
    if a not in passable or b not in passable:
        return False
    edges = [
        (e.a, e.b, e.solid or contactors[e.contactor]) for e in topo.edges
    ]
    return b in _reachable(passable, edges, {a})


def bus_status(
    topo: PowerTopology,
    health: Mapping[str, bool],
    contactors: Mapping[str, bool],
    bus: str,
) -> bool:
    """Powered iff some healthy generator has a live path to the bus."""
    if topo.node(bus).kind != "bus":
        raise ValueError(f"{bus!r} is not a bus")
    return any(
        health[n.name] and live_path(topo, health, contactors, bus, n.name)
        for n in topo.nodes
        if n.kind == "generator"
    )


# ---------------------------------------------------------------------------
# Compilation


def _default_partition(topo: PowerTopology) -> list[tuple[str, list[str]]]:
    feeder_set = set(topo.feeders)
    nodes = {n.name for n in topo.nodes}
    edges = [
        (e.a, e.b, e.contactor not in feeder_set) for e in topo.edges
    ]
    groups: list[tuple[str, list[str]]] = []
    assigned: set[str] = set()
    for n in topo.nodes:
        if n.name in assigned:
            continue
        comp = _reachable(nodes, edges, {n.name})
        members = [m.name for m in topo.nodes if m.name in comp]
        assigned |= comp
        groups.append((f"S{len(groups)}", members))
    return groups


def _validate_partition(
    topo: PowerTopology, partition: Sequence[tuple[str, Sequence[str]]]
) -> list[tuple[str, list[str]]]:
    seen: set[str] = set()
    out: list[tuple[str, list[str]]] = []
    for name, members in partition:
        check_name(name)
        members = [str(m) for m in members]
        for m in members:
            topo.node(m)
            if m in seen:
                raise TopologyError(f"partition assigns {m!r} to more than one group")
            seen.add(m)
        out.append((name, members))
    missing = sorted({n.name for n in topo.nodes} - seen)
    if missing:
        raise TopologyError(f"partition does not cover: {', '.join(missing)}")
    return out


@dataclass(frozen=True)
class _Group:
    name: str
    members: tuple[str, ...]
    local_edges: tuple[PowerEdge, ...]
    incoming: tuple[tuple[PowerEdge, str, str], ...]  # (edge, attach node, inner node)


def _orient_groups(
    topo: PowerTopology, partition: list[tuple[str, list[str]]]
) -> tuple[list[_Group], dict[str, str]]:
    """Split edges into local and cross, derive feed direction per cross edge.

    Returns the groups (with their incoming crossings) and a map from node
    name to group name.
    """
    group_of = {m: name for name, members in partition for m in members}
    gen_groups = {
        group_of[n.name] for n in topo.nodes if n.kind == "generator"
    }
    cross = [e for e in topo.edges if group_of[e.a] != group_of[e.b]]
    if cross and not gen_groups:
        raise TopologyError("cross-group edges exist but no group contains a generator")

    # Breadth-first depth from the generator-bearing groups fixes power-flow
    # direction; equal depths would leave a crossing unoriented.
    adj: dict[str, set[str]] = {name: set() for name, _ in partition}
    for e in cross:
        adj[group_of[e.a]].add(group_of[e.b])
        adj[group_of[e.b]].add(group_of[e.a])
    depth = {g: 0 for g in gen_groups}
    frontier = [name for name, _ in partition if name in gen_groups]
    while frontier:
        nxt: list[str] = []
        for g in frontier:
            for h in sorted(adj[g]):
                if h not in depth:
                    depth[h] = depth[g] + 1
                    nxt.append(h)
        frontier = nxt
    unreached = [name for name, _ in partition if name not in depth and adj[name]]
    if unreached:
        raise TopologyError(
            f"groups {unreached} are wired to others but unreachable from any generator group"
        )

    incoming: dict[str, list[tuple[PowerEdge, str, str]]] = {name: [] for name, _ in partition}
    children: dict[str, set[str]] = {name: set() for name, _ in partition}
    for e in cross:
        ga, gb = group_of[e.a], group_of[e.b]
        if depth[ga] == depth[gb]:
            raise TopologyError(
                f"cannot orient feed between {ga} and {gb}: both are at the same "
                "distance from generation"
            )
        if depth[ga] < depth[gb]:
            parent_node, child_node, child = e.a, e.b, gb
            children[ga].add(gb)
        else:
            parent_node, child_node, child = e.b, e.a, ga
            children[gb].add(ga)
        incoming[child].append((e, parent_node, child_node))

    # Generators power subtrees from above only: a generator below a crossing
    # or feeders attaching at two different parent nodes would let power
    # re-enter a region it left, which the one-directional encoding cannot
    # express.
    for name, members in partition:
        if depth.get(name, 0) > 0:
            gens = [m for m in members if topo.node(m).kind == "generator"]
            if gens:
                raise TopologyError(
                    f"group {name} contains generator(s) {gens} but receives feed "
                    "from another group"
                )

    def subtree(root: str) -> set[str]:
        out = {root}
        stack = [root]
        while stack:
            g = stack.pop()
            for h in children[g]:
                if h not in out:
                    out.add(h)
                    stack.append(h)
        return out

    for name, _ in partition:
        if not incoming[name]:
            continue
        region = subtree(name)
        attach = {p for g in region for (_, p, _) in incoming[g] if group_of[p] not in region}
        if len(attach) > 1:
            raise TopologyError(
                f"feeders into the subtree of {name} attach at multiple parent nodes "
                f"{sorted(attach)}; power could re-enter the region"
            )

    groups = [
        _Group(
            name,
            tuple(members),
            tuple(
                e
                for e in topo.edges
                if group_of[e.a] == name and group_of[e.b] == name
            ),
            tuple(incoming[name]),
        )
        for name, members in partition
    ]
    return groups, group_of


def _group_tables(
    topo: PowerTopology, group: _Group, export_nodes: Sequence[str]
) -> tuple[VariableSet, VariableSet, dict[str, np.ndarray], list[tuple[str, str]]]:
    """Truth tables for one group's outputs by local live-path enumeration.

    Returns (controls, env_inputs, table per output, coupling pairs).  The
    environment inputs are the group's health bits followed by one feed bit
    per attach node of its incoming crossings.
    """
    controls = VariableSet(
        [e.contactor for e in group.local_edges if e.contactor is not None]
        + [e.contactor for (e, _, _) in group.incoming if e.contactor is not None]
    )
    health_vars = [m for m in group.members if topo.node(m).kind in HEALTH_KINDS]
    attach_nodes: list[str] = []
    for _, p, _ in group.incoming:
        if p not in attach_nodes:
            attach_nodes.append(p)
    feed_vars = {p: f"{group.name}_from_{p}" for p in attach_nodes}
    env = VariableSet(health_vars + [feed_vars[p] for p in attach_nodes])
    scope = controls.union(env)

    buses = [m for m in group.members if topo.node(m).kind == "bus"]
    ac_sources = [
        m
        for m in group.members
        if topo.node(m).kind == "generator" and topo.node(m).current == "ac"
    ]
    couple_pairs = list(combinations(ac_sources, 2))

    out_names = (
        buses
        + [f"couple_{s}_{t}" for s, t in couple_pairs]
        + [f"feed_{p}" for p in export_nodes]
    )
    tables = {y: np.zeros(1 << len(scope), dtype=bool) for y in out_names}

    n = len(scope)
    for index in range(1 << n):
        point = {v: bool((index >> (n - 1 - i)) & 1) for i, v in enumerate(scope)}
        passable = {
            m
            for m in group.members
            if topo.node(m).kind not in HEALTH_KINDS or point[m]
        }
        edges: list[tuple[str, str, bool]] = [
            (e.a, e.b, e.solid or point[e.contactor]) for e in group.local_edges
        ]
        nodes = set(passable)
        sources = {m for m in group.members if topo.node(m).kind == "generator" and point[m]}
        # Feed entering via an attach node behaves like a generator glued to
        # the child-side endpoints of that node's crossings.
        for e, p, q in group.incoming:
            src = f"__src_{p}"
            if point[feed_vars[p]]:
                nodes.add(src)
                edges.append((src, q, e.solid or point[e.contactor]))
                sources.add(src)
        live = _reachable(nodes, edges, sources & nodes)
        for b in buses:
            tables[b][index] = b in live
        for s, t in couple_pairs:
            tables[f"couple_{s}_{t}"][index] = _connected(nodes, edges, s, t)
        for p in export_nodes:
            tables[f"feed_{p}"][index] = p in live

    return controls, env, tables, couple_pairs


def _connected(nodes: set[str], edges, a: str, b: str) -> bool:
    return b in _reachable(nodes, edges, {a}) if a in nodes and b in nodes else False


def compile_to_network(
    topo: PowerTopology,
    partition: Sequence[tuple[str, Sequence[str]]] | None = None,
) -> tuple[BooleanNetwork, ContractPair]:
    """Compile a topology into a boolean network plus its global contract.

    One subsystem per group: controls are the group's contactors (crossing
    contactors belong to the receiving group), environment inputs are health
    bits plus feed bits wired from parent outputs, outputs are bus-status
    bits, same-group AC-coupling bits and, where an attach node is not
    itself a bus, a dedicated feed bit.

    The contract: assume at least one generator is healthy and, per
    feeder-separated island containing rectifiers, at least one of them is
    healthy; guarantee every bus powered and no AC-source pair coupled.
    """
    if partition is None:
        groups_spec = _default_partition(topo)
    else:
        groups_spec = _validate_partition(topo, partition)
    groups, group_of = _orient_groups(topo, groups_spec)

    # Attach nodes exported by each parent group; reuse the bus output when
    # the attach node is a bus.
    exports: dict[str, list[str]] = {g.name: [] for g in groups}
    for g in groups:
        for _, p, _ in g.incoming:
            parent = group_of[p]
            if topo.node(p).kind != "bus" and p not in exports[parent]:
                exports[parent].append(p)

    systems: list[BooleanSystem] = []
    links: list[Link] = []
    couple_names: list[str] = []
    for g in groups:
        controls, env, tables, couple_pairs = _group_tables(topo, g, exports[g.name])
        scope = controls.union(env)
        outputs = VariableSet(tables.keys())
        functions = {y: BoolFunc(scope, t) for y, t in tables.items()}
        systems.append(BooleanSystem(g.name, controls, env, outputs, functions))
        couple_names.extend(f"couple_{s}_{t}" for s, t in couple_pairs)
        attach_seen: set[str] = set()
        for _, p, _ in g.incoming:
            if p in attach_seen:
                continue
            attach_seen.add(p)
            source = p if topo.node(p).kind == "bus" else f"feed_{p}"
            links.append(Link(group_of[p], source, g.name, f"{g.name}_from_{p}"))

    net = BooleanNetwork(tuple(systems), Interconnection(tuple(links)))
    problems = validate(net)
    if problems:
        raise TopologyError("compiled network is ill-posed: " + "; ".join(problems))

    ext = external_inputs(net)
    generators = [n.name for n in topo.nodes if n.kind == "generator"]
    if not generators:
        raise TopologyError("topology has no generators; nothing can be powered")
    assumption = conjoin(
        [_any_of(generators)]
        + [_any_of(rects) for rects in _rectifier_sides(topo)]
    ).extend(ext)

    outs = all_outputs(net)
    guarantee = conjoin(
        [BoolFunc.var(b) for b in topo.bus_names]
        + [~BoolFunc.var(c) for c in couple_names]
    ).extend(outs)
    return net, ContractPair(assumption, guarantee)


def _any_of(names: Sequence[str]) -> BoolFunc:
    f = BoolFunc.var(names[0])
    for n in names[1:]:
        f = f | BoolFunc.var(n)
    return f


def _rectifier_sides(topo: PowerTopology) -> list[list[str]]:
    """Rectifier clusters per feeder-separated island of the diagram.

    The assumption's per-side redundancy clauses come from the topology, not
    from the synthesis partition, so the global contract is the same however
    the network is grouped."""
    out = []
    for _, members in _default_partition(topo):
        rects = [m for m in members if topo.node(m).kind == "rectifier"]
        if rects:
            out.append(rects)
    return out

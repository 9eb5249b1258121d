"""Assumption/guarantee pairs and guarantee distribution.

Distributing a guarantee between one subsystem and the rest amounts to
enumerating the maximal complete bipartite subgraphs (bicliques) of the
admissibility graph whose left nodes are the subsystem's output valuations
and whose right nodes are the remaining outputs' valuations, with an edge
wherever the combined valuation satisfies the guarantee.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from .boolfunc import BoolFunc, Valuation, VariableSet, conjoin
from .network import BooleanNetwork, all_outputs, classify_inputs, external_inputs

__all__ = [
    "ContractPair",
    "Distribution",
    "DistributionGraph",
    "check_contract",
    "project_assumption",
    "build_distribution_graph",
    "maximal_distributions",
    "distributions_from_graph",
    "conjunctive_decomposition",
]

from dataclasses import dataclass


@dataclass(frozen=True)
class ContractPair:
    """An assumption over (external) environment inputs and a guarantee over
    outputs; the closed loop must satisfy ``assumption -> guarantee``."""

    assumption: BoolFunc
    guarantee: BoolFunc


@dataclass(frozen=True)
class Distribution:
    """A guarantee split: `down` constrains one subsystem's outputs, `up` the
    remaining outputs, such that any pair of allowed valuations jointly
    satisfies the original guarantee."""

    down: BoolFunc
    up: BoolFunc


@dataclass(frozen=True)
class DistributionGraph:
    """Bipartite admissibility graph of a guarantee split.

    ``adjacency[i, j]`` is True iff left valuation ``i`` (over `left_scope`)
    and right valuation ``j`` (over `right_scope`) jointly satisfy the
    guarantee.  Valuation indices are lexicographic ranks.
    """

    left_scope: VariableSet
    right_scope: VariableSet
    adjacency: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.adjacency, dtype=bool)
        want = (1 << len(self.left_scope), 1 << len(self.right_scope))
        if arr.shape != want:
            raise ValueError(f"adjacency shape {arr.shape} does not match scopes {want}")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "adjacency", arr)

    def left_valuations(self) -> list[Valuation]:
        return [Valuation.from_index(self.left_scope, i) for i in range(self.adjacency.shape[0])]

    def right_valuations(self) -> list[Valuation]:
        return [Valuation.from_index(self.right_scope, j) for j in range(self.adjacency.shape[1])]


def check_contract(net: BooleanNetwork, contract: ContractPair) -> None:
    """Raise unless the assumption is over external inputs and the guarantee
    over outputs of `net`."""
    ext = external_inputs(net)
    outs = all_outputs(net)
    bad = [v for v in contract.assumption.scope if v not in ext]
    if bad:
        raise ValueError(f"assumption mentions non-external variables: {bad}")
    bad = [v for v in contract.guarantee.scope if v not in outs]
    if bad:
        raise ValueError(f"guarantee mentions non-output variables: {bad}")


def project_assumption(assumption: BoolFunc, net: BooleanNetwork, name: str) -> BoolFunc:
    """Least-restrictive local assumption: the projection of the global
    assumption onto the subsystem's external inputs.

    Variables outside the assumption's scope (including inputs of deleted
    subsystems) are unconstrained, so the result is the projection onto the
    overlap, cylindrically extended over the subsystem's external inputs.
    """
    _, ext = classify_inputs(net, name)
    overlap = assumption.scope.restricted_to(ext)
    return assumption.project(overlap).extend(ext)


def build_distribution_graph(
    guarantee: BoolFunc, net: BooleanNetwork, name: str
) -> DistributionGraph:
    sys = net.subsystem(name)
    outs = all_outputs(net)
    stray = [v for v in guarantee.scope if v not in outs]
    if stray:
        raise ValueError(f"guarantee mentions non-output variables: {stray}")
    left = sys.outputs
    right = guarantee.scope.without(left)
    # Axes ordered left-major so a reshape yields the bipartite adjacency.
    order = VariableSet(list(left) + list(right))
    table = guarantee.extend(order).table
    adjacency = table.reshape(1 << len(left), 1 << len(right))
    return DistributionGraph(left, right, adjacency)


def _bicliques_bron_kerbosch(adjacency: np.ndarray) -> list[tuple[frozenset[int], frozenset[int]]]:
    """All maximal bicliques with both sides nonempty.

    Runs pivoted Bron-Kerbosch maximal-clique enumeration on the transformed
    graph in which each side is made a clique and cross edges follow the
    adjacency matrix; cliques with an empty side are discarded.
    """
    n_left, n_right = adjacency.shape
    n = n_left + n_right
    nbrs: list[set[int]] = []
    for i in range(n_left):
        cross = {n_left + j for j in np.flatnonzero(adjacency[i])}
        nbrs.append((set(range(n_left)) - {i}) | cross)
    for j in range(n_right):
        cross = {int(i) for i in np.flatnonzero(adjacency[:, j])}
        nbrs.append(cross | {n_left + k for k in range(n_right) if k != j})

    found: list[tuple[frozenset[int], frozenset[int]]] = []

    def expand(r: set[int], p: set[int], x: set[int]) -> None:
        if not p and not x:
            left = frozenset(v for v in r if v < n_left)
            right = frozenset(v - n_left for v in r if v >= n_left)
            if left and right:
                found.append((left, right))
            return
        pivot = max(p | x, key=lambda v: len(p & nbrs[v]))
        for v in sorted(p - nbrs[pivot]):
            expand(r | {v}, p & nbrs[v], x & nbrs[v])
            p.remove(v)
            x.add(v)

    expand(set(), set(range(n)), set())
    return found


def _side_func(scope: VariableSet, indices: frozenset[int]) -> BoolFunc:
    table = np.zeros(1 << len(scope), dtype=bool)
    table[sorted(indices)] = True
    return BoolFunc(scope, table)


def distributions_from_graph(graph: DistributionGraph) -> list[Distribution]:
    """Distributions from a prebuilt graph, in canonical order: most
    permissive first (descending product of side sizes), ties broken by the
    lexicographically least left satisfying set."""
    pairs = _bicliques_bron_kerbosch(graph.adjacency)
    pairs.sort(key=lambda lr: (-(len(lr[0]) * len(lr[1])), tuple(sorted(lr[0])), tuple(sorted(lr[1]))))
    return [
        Distribution(
            down=_side_func(graph.left_scope, l),
            up=_side_func(graph.right_scope, r),
        )
        for l, r in pairs
    ]


def maximal_distributions(
    guarantee: BoolFunc, net: BooleanNetwork, name: str
) -> list[Distribution]:
    """All maximal guarantee splits between subsystem `name` and the rest.

    Empty-sided splits (a False local or remainder guarantee) are excluded;
    an empty result means the guarantee admits no usable split.
    """
    return distributions_from_graph(build_distribution_graph(guarantee, net, name))


def conjunctive_decomposition(
    f: BoolFunc, partition: Sequence[VariableSet]
) -> list[BoolFunc] | None:
    """Per-block projections of `f` if their conjunction equals `f`, else None.

    `partition` must cover the scope of `f` disjointly.
    """
    covered: list[str] = []
    for block in partition:
        covered.extend(block)
    if len(covered) != len(set(covered)):
        raise ValueError("partition blocks overlap")
    if set(covered) != set(f.scope):
        raise ValueError("partition does not cover the scope exactly")
    parts = [f.project(block) for block in partition]
    return parts if conjoin(parts).equivalent(f) else None

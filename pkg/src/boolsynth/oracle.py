"""Brute-force reference procedures for validating the synthesis engine.

Everything here trades efficiency for obviousness: distributed synthesis by
exhaustive enumeration of controller tuples, closed-loop verification by
pointwise simulation of every external valuation, and maximal-biclique
enumeration by subset closure.  All of it is bounded to desk scale.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from .boolfunc import Valuation
from .contracts import ContractPair, DistributionGraph, check_contract
from .network import (
    BooleanNetwork,
    Controller,
    external_inputs,
    system_graph,
    topological_order,
)

__all__ = [
    "OracleBudget",
    "BudgetExceededError",
    "VerificationResult",
    "controller_table_bits",
    "brute_force_distributed",
    "verify_closed_loop",
    "enumerate_bicliques_subset",
]


class BudgetExceededError(ValueError):
    """The requested enumeration is larger than the configured budget."""


@dataclass(frozen=True)
class OracleBudget:
    """Cap on the exhaustive controller search: the summed table size
    ``sum_i |U_i| * 2^|E_i|`` may not exceed `max_total_controller_bits`."""

    max_total_controller_bits: int = 24


@dataclass(frozen=True)
class VerificationResult:
    ok: bool
    counterexample: Valuation | None = None

    def __bool__(self) -> bool:
        return self.ok


def controller_table_bits(net: BooleanNetwork) -> int:
    return sum(len(s.controls) * (1 << len(s.env_inputs)) for s in net.subsystems)


def _simulate(
    net: BooleanNetwork,
    controllers: Mapping[str, Controller],
    ext_assign: Mapping[str, bool],
    order: list[str],
) -> dict[str, bool]:
    """Closed-loop outputs for one external valuation, by forward evaluation."""
    values: dict[str, bool] = dict(ext_assign)
    for name in order:
        sys = net.subsystem(name)
        drivers = {l.to_input: l.from_output for l in net.wiring.into(name)}
        env = {v: values[drivers.get(v, v)] for v in sys.env_inputs}
        controls = controllers[name](env)
        point = env | controls
        for y, f in sys.functions.items():
            values[y] = f.evaluate(point)
    return values


def verify_closed_loop(
    net: BooleanNetwork,
    controllers: Mapping[str, Controller],
    contract: ContractPair,
) -> VerificationResult:
    """Exhaustively check assumption -> guarantee over all external valuations.

    Internal wiring is resolved by direct simulation, independently of the
    symbolic composition path.  Returns the first counterexample in
    canonical order, if any.
    """
    check_contract(net, contract)
    ext = external_inputs(net)
    order = topological_order(system_graph(net))
    for name in net.names:
        if name not in controllers:
            raise ValueError(f"missing controller for subsystem {name!r}")
    for index in range(1 << len(ext)):
        val = Valuation.from_index(ext, index)
        assign = val.as_dict()
        if not contract.assumption.evaluate(assign):
            continue
        outputs = _simulate(net, controllers, assign, order)
        if not contract.guarantee.evaluate(outputs):
            return VerificationResult(False, val)
    return VerificationResult(True)


class _VectorEvaluator:
    """Vectorized closed-loop evaluation over all external valuations at once.

    Built once per network; `outputs_for` takes one controller table per
    subsystem (as a 2^|E| x |U| boolean array) and returns each output's
    value array indexed by external-valuation rank.
    """

    def __init__(self, net: BooleanNetwork):
        self.net = net
        self.ext = external_inputs(net)
        m = len(self.ext)
        ranks = np.arange(1 << m, dtype=np.int64)
        self.ext_bits = {
            v: ((ranks >> (m - 1 - i)) & 1).astype(np.int64)
            for i, v in enumerate(self.ext)
        }
        self.order = topological_order(system_graph(net))
        self.drivers = {
            name: {l.to_input: l.from_output for l in net.wiring.into(name)}
            for name in self.order
        }

    def outputs_for(self, tables: Mapping[str, np.ndarray]) -> dict[str, np.ndarray]:
        values: dict[str, np.ndarray] = dict(self.ext_bits)
        for name in self.order:
            sys = self.net.subsystem(name)
            drivers = self.drivers[name]
            env_arrays = {
                v: values[drivers.get(v, v)] for v in sys.env_inputs
            }
            ne = len(sys.env_inputs)
            env_rank = np.zeros(1 << len(self.ext), dtype=np.int64)
            for i, v in enumerate(sys.env_inputs):
                env_rank = env_rank + (env_arrays[v] << (ne - 1 - i))
            table = tables[name]
            point = dict(env_arrays)
            for k, u in enumerate(sys.controls):
                point[u] = table[env_rank, k].astype(np.int64)
            for y, f in sys.functions.items():
                values[y] = f.evaluate_many(point).astype(np.int64)
        return values

    def satisfies(self, tables: Mapping[str, np.ndarray], contract: ContractPair) -> bool:
        values = self.outputs_for(tables)
        admissible = contract.assumption.evaluate_many(self.ext_bits)
        good = contract.guarantee.evaluate_many(values)
        return bool(np.all(good | ~admissible))


@lru_cache(maxsize=65536)
def _decode_table(code: int, env_count: int, control_count: int) -> np.ndarray:
    """Controller table number `code` in lexicographic order: the flattened
    row-major bit string (first bit most significant) counts up with `code`,
    so 0 is the all-False table."""
    rows = 1 << env_count
    bits = rows * control_count
    shifts = np.arange(bits - 1, -1, -1, dtype=np.int64)
    flat = ((np.int64(code) >> shifts) & 1).astype(bool)
    table = flat.reshape(rows, control_count)
    table.setflags(write=False)
    return table


def brute_force_distributed(
    net: BooleanNetwork,
    contract: ContractPair,
    budget: OracleBudget = OracleBudget(),
) -> dict[str, Controller] | None:
    """Search every tuple of local controller tables for one whose closed
    loop satisfies the contract; None when the search space is exhausted.

    Returns the first hit in lexicographic table order (subsystems in
    declaration order, rows in valuation order, all-False first).
    """
    check_contract(net, contract)
    bits = controller_table_bits(net)
    if bits > budget.max_total_controller_bits:
        raise BudgetExceededError(
            f"controller search needs {bits} table bits, budget allows "
            f"{budget.max_total_controller_bits}"
        )
    evaluator = _VectorEvaluator(net)
    names = list(net.names)
    sizes = [(len(s.env_inputs), len(s.controls)) for s in net.subsystems]
    code_ranges = [range(1 << ((1 << ne) * nc)) for ne, nc in sizes]
    for combo in product(*code_ranges):
        tables = {
            name: _decode_table(combo[i], sizes[i][0], sizes[i][1])
            for i, name in enumerate(names)
        }
        if evaluator.satisfies(tables, contract):
            return {
                name: Controller(
                    name,
                    net.subsystem(name).env_inputs,
                    net.subsystem(name).controls,
                    tuple(tuple(bool(b) for b in row) for row in tables[name]),
                )
                for name in names
            }
    return None


def enumerate_bicliques_subset(
    graph: DistributionGraph, max_pairs: int = 1024
) -> frozenset[tuple[frozenset[int], frozenset[int]]]:
    """Maximal bicliques (both sides nonempty) by subset closure.

    For every nonempty subset of the smaller side, intersect the other
    side's neighborhoods, close back, and keep the resulting pair.  Exact
    but exponential in the smaller side; refuses graphs with more than
    `max_pairs` node pairs.
    """
    adjacency = graph.adjacency
    n_left, n_right = adjacency.shape
    if n_left * n_right > max_pairs:
        raise BudgetExceededError(
            f"biclique oracle limited to {max_pairs} node pairs, got {n_left * n_right}"
        )
    transposed = n_right < n_left
    if transposed:
        adjacency = adjacency.T
        n_left, n_right = n_right, n_left

    left_nbr = [int(sum(1 << j for j in np.flatnonzero(adjacency[i]))) for i in range(n_left)]
    right_nbr = [int(sum(1 << i for i in np.flatnonzero(adjacency[:, j]))) for j in range(n_right)]

    def members(mask: int) -> frozenset[int]:
        return frozenset(i for i in range(max(n_left, n_right)) if (mask >> i) & 1)

    found: set[tuple[frozenset[int], frozenset[int]]] = set()
    full_right = (1 << n_right) - 1
    for subset in range(1, 1 << n_left):
        common = full_right
        for i in range(n_left):
            if (subset >> i) & 1:
                common &= left_nbr[i]
        if common == 0:
            continue
        closure = (1 << n_left) - 1
        for j in range(n_right):
            if (common >> j) & 1:
                closure &= right_nbr[j]
        pair = (members(closure), members(common))
        found.add(pair if not transposed else (pair[1], pair[0]))
    return frozenset(found)

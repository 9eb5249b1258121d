from __future__ import annotations

import itertools
import json

import pytest

from boolsynth.eps import (
    PowerEdge,
    PowerNode,
    PowerTopology,
    TopologyError,
    all_closed,
    all_healthy,
    bus_status,
    compile_to_network,
    live_path,
    load_topology,
)
from boolsynth.network import all_outputs, external_inputs, flatten, is_forest, system_graph, validate
from boolsynth.oracle import verify_closed_loop
from boolsynth.synthesis import (
    centralized_synthesis,
    completeness_certificate,
    distributed_synthesis,
)

from .conftest import FIXTURES


def mini_topology():
    """gen --k1-- bus --solid-- rect --k2-- dc bus, plus a transformer stub."""
    nodes = (
        PowerNode("GEN", "generator", "ac"),
        PowerNode("BUS", "bus", "ac"),
        PowerNode("TR", "transformer", "ac"),
        PowerNode("RU", "rectifier", "dc"),
        PowerNode("DC", "bus", "dc"),
    )
    edges = (
        PowerEdge("GEN", "BUS", "k1"),
        PowerEdge("BUS", "TR", None),
        PowerEdge("TR", "RU", None),
        PowerEdge("RU", "DC", "k2"),
    )
    return PowerTopology(nodes, edges)


class TestLoadTopology:
    def test_bundled_fixture_loads(self):
        topo = load_topology(FIXTURES / "eps_tree.topology.json")
        gens = [n for n in topo.nodes if n.kind == "generator"]
        buses = [n for n in topo.nodes if n.kind == "bus"]
        rects = [n for n in topo.nodes if n.kind == "rectifier"]
        assert len(gens) >= 2 and len(buses) >= 2 and len(rects) >= 2

    def test_empty_file_is_a_parse_error(self, tmp_path):
        path = tmp_path / "empty.json"
        path.write_text("")
        with pytest.raises(TopologyError):
            load_topology(path)

    def test_duplicate_contactor_names_rejected(self, tmp_path):
        doc = {
            "nodes": [
                {"name": "G", "kind": "generator", "current": "ac"},
                {"name": "B", "kind": "bus", "current": "ac"},
                {"name": "C", "kind": "bus", "current": "ac"},
            ],
            "edges": [
                {"a": "G", "b": "B", "contactor": "C1"},
                {"a": "B", "b": "C", "contactor": "C1"},
            ],
        }
        path = tmp_path / "dup.json"
        path.write_text(json.dumps(doc))
        with pytest.raises(TopologyError, match="duplicate contactor"):
            load_topology(path)

    def test_unknown_kind_rejected(self):
        with pytest.raises(TopologyError):
            PowerTopology((PowerNode("X", "capacitor", "ac"),), ())


class TestLivePath:
    def test_closed_contactor_connects(self):
        topo = mini_topology()
        h, c = all_healthy(topo), all_closed(topo)
        assert live_path(topo, h, c, "GEN", "BUS")

    def test_open_contactor_disconnects(self):
        topo = mini_topology()
        h, c = all_healthy(topo), all_closed(topo)
        c["k1"] = False
        assert not live_path(topo, h, c, "GEN", "BUS")

    def test_failed_end_node_breaks_the_path(self):
        topo = mini_topology()
        h, c = all_healthy(topo), all_closed(topo)
        h["GEN"] = False
        assert not live_path(topo, h, c, "GEN", "BUS")

    def test_failed_transformer_blocks_midpath(self):
        topo = mini_topology()
        h, c = all_healthy(topo), all_closed(topo)
        assert live_path(topo, h, c, "GEN", "DC")
        h["TR"] = False
        assert not live_path(topo, h, c, "GEN", "DC")

    def test_unknown_component_rejected(self):
        topo = mini_topology()
        with pytest.raises(KeyError):
            live_path(topo, all_healthy(topo), all_closed(topo), "GEN", "NOPE")


class TestDummyNodes:
    def junction_topology(self):
        # two generators meet a bus through a dummy wire junction
        nodes = (
            PowerNode("GA", "generator", "ac"),
            PowerNode("GB", "generator", "ac"),
            PowerNode("J", "dummy", "ac"),
            PowerNode("B", "bus", "ac"),
        )
        edges = (
            PowerEdge("GA", "J", "ka"),
            PowerEdge("GB", "J", "kb"),
            PowerEdge("J", "B", None),
        )
        return PowerTopology(nodes, edges)

    def test_dummy_nodes_carry_no_health_bit_and_never_fail(self):
        topo = self.junction_topology()
        assert "J" not in topo.health_names
        h, c = all_healthy(topo), all_closed(topo)
        assert live_path(topo, h, c, "GA", "B")
        h["GA"] = False
        assert bus_status(topo, h, c, "B")  # still fed by GB through J
        h["GB"] = False
        assert not bus_status(topo, h, c, "B")

    def test_junction_compiles_with_coupling_output(self):
        topo = self.junction_topology()
        net, contract = compile_to_network(topo)
        (sys,) = net.subsystems
        assert "couple_GA_GB" in sys.outputs
        # closing both generator contactors couples the AC sources
        point = {"GA": True, "GB": True, "ka": True, "kb": True}
        assert sys.functions["couple_GA_GB"].evaluate(point)
        assert not contract.guarantee.evaluate(
            {"B": True, "couple_GA_GB": True}
        )
        # realizable: keep at most one generator contactor closed, so the
        # junction never bridges the two sources
        out = distributed_synthesis(net, contract)
        assert out.success
        assert verify_closed_loop(net, out.controllers, contract).ok
        ctrl = out.controllers[net.names[0]]
        for row in ctrl.rows:
            assert sum(row[ctrl.controls.index(k)] for k in ("ka", "kb")) <= 1


class TestBusStatus:
    def test_adjacent_healthy_generator(self):
        topo = mini_topology()
        assert bus_status(topo, all_healthy(topo), all_closed(topo), "BUS")

    def test_all_contactors_open(self):
        topo = mini_topology()
        assert not bus_status(topo, all_healthy(topo), all_closed(topo, False), "BUS")

    def test_bus_behind_failed_rectifier_is_unpowered(self):
        topo = mini_topology()
        h, c = all_healthy(topo), all_closed(topo)
        h["RU"] = False
        assert not bus_status(topo, h, c, "DC")

    def test_non_bus_rejected(self):
        topo = mini_topology()
        with pytest.raises(ValueError):
            bus_status(topo, all_healthy(topo), all_closed(topo), "GEN")


class TestCompile:
    def test_bundled_fixture_compiles_to_tree(self):
        topo = load_topology(FIXTURES / "eps_tree.topology.json")
        net, contract = compile_to_network(topo)
        assert validate(net) == []
        assert len(net.subsystems) == 3
        assert is_forest(system_graph(net))
        assert completeness_certificate(net, contract)

    def test_single_group_partition_is_centralized(self):
        topo = load_topology(FIXTURES / "eps_tree.topology.json")
        members = [n.name for n in topo.nodes]
        net, contract = compile_to_network(topo, [("ALL", members)])
        assert len(net.subsystems) == 1
        assert net.wiring.links == ()
        out = distributed_synthesis(net, contract)
        assert out.success
        assert centralized_synthesis(net, contract) is not None
        # the contract does not depend on the grouping
        default_net, default_contract = compile_to_network(topo)
        assert contract.assumption.equivalent(default_contract.assumption)
        assert contract.guarantee.equivalent(default_contract.guarantee)

    def test_split_solid_link_becomes_interconnection(self):
        topo = mini_topology()
        net, _ = compile_to_network(
            topo, [("P", ["GEN", "BUS"]), ("Q", ["TR", "RU", "DC"])]
        )
        (link,) = net.wiring.links
        assert link.from_sys == "P" and link.to_sys == "Q"
        assert link.from_output == "BUS"  # attach node is a bus: reuse its output
        assert link.to_input == "Q_from_BUS"

    def test_generator_below_a_feed_rejected(self):
        # a generator in the receiving group could back-feed the parent,
        # which the one-directional encoding cannot express
        nodes = (
            PowerNode("G1", "generator", "ac"),
            PowerNode("B1", "bus", "ac"),
            PowerNode("G2", "generator", "ac"),
            PowerNode("B2", "bus", "ac"),
        )
        edges = (
            PowerEdge("G1", "B1", "k1"),
            PowerEdge("B1", "B2", "k2"),
            PowerEdge("G2", "B2", "k3"),
        )
        topo = PowerTopology(nodes, edges, feeders=("k2",))
        with pytest.raises(TopologyError):
            compile_to_network(topo)

    def test_multiple_attach_points_rejected(self):
        nodes = (
            PowerNode("G1", "generator", "ac"),
            PowerNode("B1", "bus", "ac"),
            PowerNode("B2", "bus", "ac"),
            PowerNode("D", "bus", "dc"),
        )
        edges = (
            PowerEdge("G1", "B1", "k1"),
            PowerEdge("B1", "B2", None),
            PowerEdge("B1", "D", "k2"),
            PowerEdge("B2", "D", "k3"),
        )
        topo = PowerTopology(nodes, edges, feeders=("k2", "k3"))
        with pytest.raises(TopologyError, match="attach"):
            compile_to_network(topo)

    def test_compiled_outputs_match_live_path_oracle_exhaustively(self):
        # small topology: full exhaustive cross-validation of the plant
        topo = mini_topology()
        net, contract = compile_to_network(
            topo, [("P", ["GEN", "BUS"]), ("Q", ["TR", "RU", "DC"])]
        )
        plant = flatten(net)
        hs = topo.health_names
        cs = topo.contactor_names
        for bits in itertools.product([False, True], repeat=len(hs) + len(cs)):
            h = dict(zip(hs, bits[: len(hs)]))
            c = dict(zip(cs, bits[len(hs):]))
            point = {**h, **c}
            for b in topo.bus_names:
                assert plant.functions[b].evaluate(point) == bus_status(topo, h, c, b)


class TestEndToEnd:
    def test_distributed_synthesis_succeeds_and_verifies(self):
        topo = load_topology(FIXTURES / "eps_tree.topology.json")
        net, contract = compile_to_network(topo)
        out = distributed_synthesis(net, contract)
        assert out.success
        assert verify_closed_loop(net, out.controllers, contract).ok
        assert centralized_synthesis(net, contract) is not None

    def test_assumption_and_guarantee_shape(self):
        topo = load_topology(FIXTURES / "eps_tree.topology.json")
        net, contract = compile_to_network(topo)
        ext = external_inputs(net)
        # at least one generator and one rectifier per side must be healthy
        a = contract.assumption
        assert not a.evaluate({v: False for v in ext})
        healthy = {v: True for v in ext}
        assert a.evaluate(healthy)
        assert not a.evaluate({**healthy, "G1": False, "G2": False})
        assert not a.evaluate({**healthy, "R1A": False, "R1B": False})
        assert not a.evaluate({**healthy, "R2A": False, "R2B": False})
        assert a.evaluate({**healthy, "G2": False, "R1B": False, "R2B": False})
        # the guarantee demands all buses and forbids AC coupling
        outs = all_outputs(net)
        good = {v: False for v in outs}
        good.update({"B1": True, "B2": True, "D1": True, "D2": True})
        assert contract.guarantee.evaluate(good)
        assert not contract.guarantee.evaluate({**good, "D1": False})
        assert not contract.guarantee.evaluate({**good, "couple_G1_G2": True})

from __future__ import annotations

from pathlib import Path

import pytest

from boolsynth.boolfunc import VariableSet
from boolsynth.contracts import ContractPair
from boolsynth.network import BooleanNetwork, BooleanSystem, Interconnection, Link
from boolsynth.network import all_outputs, external_inputs
from boolsynth.parser import parse_expr

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def make_system(name, controls, env_inputs, outputs):
    """Build a subsystem from {output: expression} over controls + env."""
    cs, es = VariableSet(controls), VariableSet(env_inputs)
    scope = cs.union(es)
    return BooleanSystem(
        name,
        cs,
        es,
        VariableSet(list(outputs)),
        {y: parse_expr(expr, scope) for y, expr in outputs.items()},
    )


def make_contract(net, assumption, guarantee):
    return ContractPair(
        parse_expr(assumption, external_inputs(net)),
        parse_expr(guarantee, all_outputs(net)),
    )


def serial_chain_net() -> BooleanNetwork:
    """Two-subsystem chain: y1 = u1 feeds S2, y2 = (e2 | y1) & u2."""
    s1 = make_system("S1", ["u1"], ["e1"], {"y1": "u1"})
    s2 = make_system("S2", ["u2"], ["e2", "e2_from_y1"], {"y2": "(e2 | e2_from_y1) & u2"})
    return BooleanNetwork((s1, s2), Interconnection((Link("S1", "y1", "S2", "e2_from_y1"),)))


def xor_assumption_net() -> BooleanNetwork:
    """Same chain but y1 = e1 & u1; paired with the non-conjunctive e1 ^ e2
    assumption it defeats completeness."""
    s1 = make_system("S1", ["u1"], ["e1"], {"y1": "e1 & u1"})
    s2 = make_system("S2", ["u2"], ["e2", "e2_from_y1"], {"y2": "(e2 | e2_from_y1) & u2"})
    return BooleanNetwork((s1, s2), Interconnection((Link("S1", "y1", "S2", "e2_from_y1"),)))


def shared_or_guarantee_net() -> BooleanNetwork:
    """Chain where the guarantee y1 | y2 couples both subsystems' outputs."""
    s1 = make_system("S1", ["u1"], ["e1"], {"y1": "e1 & u1"})
    s2 = make_system("S2", ["u2"], ["e2", "e2_from_y1"], {"y2": "(e2 | u2) & !e2_from_y1"})
    return BooleanNetwork((s1, s2), Interconnection((Link("S1", "y1", "S2", "e2_from_y1"),)))


def two_parents_net() -> BooleanNetwork:
    """Adds S3 fed by both S1 and S2, so the system graph is not a forest."""
    s1 = make_system("S1", ["u1"], ["e1"], {"y1": "e1 & u1"})
    s2 = make_system("S2", ["u2"], ["e2", "e2_from_y1"], {"y2": "(e2 | u2) & !e2_from_y1"})
    s3 = make_system("S3", ["u3"], ["e3_from_y1", "e3_from_y2"], {"y3": "e3_from_y1 | e3_from_y2"})
    wiring = Interconnection(
        (
            Link("S1", "y1", "S2", "e2_from_y1"),
            Link("S1", "y1", "S3", "e3_from_y1"),
            Link("S2", "y2", "S3", "e3_from_y2"),
        )
    )
    return BooleanNetwork((s1, s2, s3), wiring)


@pytest.fixture
def serial_chain():
    net = serial_chain_net()
    return net, make_contract(net, "e1", "y2")


@pytest.fixture
def xor_assumption():
    net = xor_assumption_net()
    return net, make_contract(net, "e1 ^ e2", "y2")


@pytest.fixture
def shared_or_guarantee():
    net = shared_or_guarantee_net()
    return net, make_contract(net, "true", "y1 | y2")


@pytest.fixture
def two_parents():
    net = two_parents_net()
    return net, make_contract(net, "true", "y3")

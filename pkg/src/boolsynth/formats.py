"""JSON document formats for networks, contracts, controllers and reports.

Network file::

    {"subsystems": [{"name": str, "controls": [str], "env_inputs": [str],
                     "outputs": [{"name": str, "expr": str}]}],
     "wiring": [{"from_sys": str, "from_output": str,
                 "to_sys": str, "to_input": str}]}

Output expressions are parsed over the subsystem's controls followed by its
environment inputs.

Contract file::

    {"assumptions": [expr, ...], "guarantees": [expr, ...]}

Assumptions are parsed over all external inputs, guarantees over all
outputs (declaration order); multiple entries are conjoined into a single
assumption-guarantee pair.

Controller file (written by synthesis, read back for verification)::

    {"mode": "distributed" | "central",
     "controllers": [{"subsystem": str, "inputs": [str], "controls": [str],
                      "rows": [{"env": bits, "controls": bits}]}],
     "local_contracts": [{"subsystem": str, "assumption": expr,
                          "guarantee": expr}],
     "trace": [{"subsystem": str, "distribution": int, "lra": expr}]}

Bit strings use "0"/"1" in variable order; rows are listed in valuation
order, so row k belongs to the environment valuation of rank k.
"""

from __future__ import annotations

import json
from collections.abc import Mapping

from .boolfunc import BoolFunc, VariableSet
from .contracts import ContractPair
from .network import (
    BooleanNetwork,
    BooleanSystem,
    Controller,
    Interconnection,
    Link,
    all_outputs,
    external_inputs,
)
from .parser import parse_expr
from .synthesis import SynthesisOutcome

__all__ = [
    "load_network",
    "load_contract",
    "controllers_document",
    "central_document",
    "parse_controllers_document",
    "load_controllers",
    "dump_document",
]


class FormatError(ValueError):
    """A document does not match its schema."""


def _field(doc, key, context):
    try:
        return doc[key]
    except (KeyError, TypeError, IndexError):
        raise FormatError(f"{context}: missing field {key!r}") from None


def load_network(path) -> BooleanNetwork:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: not valid JSON ({exc})") from exc
    systems = []
    for entry in _field(doc, "subsystems", path):
        name = str(_field(entry, "name", path))
        controls = VariableSet(str(v) for v in _field(entry, "controls", name))
        env = VariableSet(str(v) for v in _field(entry, "env_inputs", name))
        scope = controls.union(env)
        outputs = []
        functions = {}
        for out in _field(entry, "outputs", name):
            y = str(_field(out, "name", name))
            outputs.append(y)
            functions[y] = parse_expr(str(_field(out, "expr", y)), scope)
        systems.append(BooleanSystem(name, controls, env, VariableSet(outputs), functions))
    links = tuple(
        Link(
            str(_field(w, "from_sys", "wiring")),
            str(_field(w, "from_output", "wiring")),
            str(_field(w, "to_sys", "wiring")),
            str(_field(w, "to_input", "wiring")),
        )
        for w in doc.get("wiring", ())
    )
    return BooleanNetwork(tuple(systems), Interconnection(links))


def load_contract(path, net: BooleanNetwork) -> ContractPair:
    """Parse a contract against `net`; entries conjoin into a single pair."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: not valid JSON ({exc})") from exc
    ext = external_inputs(net)
    outs = all_outputs(net)
    assumption = BoolFunc.const(ext, True)
    for text in _field(doc, "assumptions", path):
        assumption = assumption & parse_expr(str(text), ext)
    guarantee = BoolFunc.const(outs, True)
    for text in _field(doc, "guarantees", path):
        guarantee = guarantee & parse_expr(str(text), outs)
    return ContractPair(assumption, guarantee)


def _bits(values) -> str:
    return "".join("1" if b else "0" for b in values)


def _controller_entry(ctrl: Controller) -> dict:
    n = len(ctrl.inputs)
    return {
        "subsystem": ctrl.subsystem,
        "inputs": list(ctrl.inputs),
        "controls": list(ctrl.controls),
        "rows": [
            {"env": format(k, f"0{n}b") if n else "", "controls": _bits(row)}
            for k, row in enumerate(ctrl.rows)
        ],
    }


def controllers_document(net: BooleanNetwork, outcome: SynthesisOutcome) -> dict:
    """Serialize a successful distributed synthesis outcome."""
    order = [s.name for s in net.subsystems if s.name in outcome.controllers]
    return {
        "mode": "distributed",
        "controllers": [_controller_entry(outcome.controllers[n]) for n in order],
        "local_contracts": [
            {
                "subsystem": n,
                "assumption": outcome.local_contracts[n].assumption.to_expr(),
                "guarantee": outcome.local_contracts[n].guarantee.to_expr(),
            }
            for n in order
        ],
        "trace": trace_document(outcome),
    }


def trace_document(outcome: SynthesisOutcome) -> list[dict]:
    return [
        {"subsystem": t.subsystem, "distribution": t.distribution, "lra": t.lra.to_expr()}
        for t in outcome.trace
    ]


def central_document(controller: Controller) -> dict:
    return {
        "mode": "central",
        "controllers": [_controller_entry(controller)],
        "local_contracts": [],
        "trace": [],
    }


def parse_controllers_document(doc: Mapping, net: BooleanNetwork) -> tuple[str, dict[str, Controller]]:
    """Rebuild controllers from a document; returns (mode, by-subsystem map).

    Distributed entries must match the named subsystem's interface; a
    central document holds a single controller over all external inputs and
    all controls.
    """
    mode = str(doc.get("mode", "distributed"))
    controllers: dict[str, Controller] = {}
    for entry in _field(doc, "controllers", "controllers"):
        name = str(_field(entry, "subsystem", "controller"))
        inputs = VariableSet(str(v) for v in _field(entry, "inputs", name))
        controls = VariableSet(str(v) for v in _field(entry, "controls", name))
        if mode == "distributed":
            try:
                sys = net.subsystem(name)
            except KeyError:
                raise FormatError(f"controller for unknown subsystem {name!r}") from None
            if inputs != sys.env_inputs or controls != sys.controls:
                raise FormatError(f"{name}: controller interface does not match the network")
        rows_doc = _field(entry, "rows", name)
        if len(rows_doc) != 1 << len(inputs):
            raise FormatError(f"{name}: expected {1 << len(inputs)} rows, found {len(rows_doc)}")
        rows = []
        for k, row in enumerate(rows_doc):
            bits = str(_field(row, "controls", name))
            if len(bits) != len(controls) or any(ch not in "01" for ch in bits):
                raise FormatError(f"{name}: row {k} control bits {bits!r} are malformed")
            rows.append(tuple(ch == "1" for ch in bits))
        controllers[name] = Controller(name, inputs, controls, tuple(rows))
    return mode, controllers


def load_controllers(path, net: BooleanNetwork) -> tuple[str, dict[str, Controller]]:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: not valid JSON ({exc})") from exc
    return parse_controllers_document(doc, net)


def dump_document(path, doc: Mapping) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")

"""Recursive distributed synthesis: success, provable failure, and the gap.

Three contracts on the same two-subsystem chain show the full range of
outcomes: a clean success with per-subsystem contracts, a failure that the
completeness certificate proves definitive, and a failure where a
distributed controller exists but leaf-first decomposition cannot find it.

Run:  python demos/04_distributed_synthesis.py
"""

from pathlib import Path

from boolsynth import (
    brute_force_distributed,
    completeness_certificate,
    distributed_synthesis,
    verify_closed_loop,
)
from boolsynth.formats import load_contract, load_network

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"


def run(name: str) -> None:
    net = load_network(FIXTURES / f"{name}.net.json")
    contract = load_contract(FIXTURES / f"{name}.contract.json", net)
    print(f"--- {name}")
    print(
        "contract: assume",
        contract.assumption.to_expr(),
        "guarantee",
        contract.guarantee.to_expr(),
    )
    outcome = distributed_synthesis(net, contract)
    print("engine:", "success" if outcome.success else "failure")
    for t in outcome.trace:
        print(f"  tried {t.subsystem} split#{t.distribution}: lra = {t.lra.to_expr()}")
    if outcome.success:
        for name_, lc in sorted(outcome.local_contracts.items()):
            print(f"  {name_}: [{lc.assumption.to_expr()}, {lc.guarantee.to_expr()}]")
        print("  closed loop verified:", verify_closed_loop(net, outcome.controllers, contract).ok)
    certified = completeness_certificate(net, contract)
    print("completeness certificate:", certified)
    found = brute_force_distributed(net, contract)
    print("brute force finds a controller:", found is not None)
    if not outcome.success and found is not None:
        print("  -> sound but incomplete on this instance (certificate is False)")
    if not outcome.success and certified:
        print("  -> certified: no distributed controller exists at all")
    print()


# Succeeds: the guarantee lives on the leaf, the induced obligation (y1)
# passes up to the root, both local contracts are realizable.
run("serial_chain")

# Fails although controllers exist: the xor assumption cannot be written as
# a conjunction of per-subsystem assumptions, so projection loses the
# correlation between e1 and e2.
run("xor_assumption")

# Succeeds after backtracking: the first maximal split forces the root to
# hold y1 high, which e1 & u1 cannot do; the second split works.
run("shared_or_guarantee")

# The sink has two parents, so the obligation y1 | y2 lands on both at
# once; the graph is not a forest and the certificate refuses to certify.
run("two_parents")

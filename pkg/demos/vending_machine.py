"""Two vending machines with the same traces, told apart by simulation.

The spec takes a coin and then offers tea or coffee.  The implementation
decides on the drink when the coin drops.  Every run of one machine is a
run of the other, yet the spec is not simulated by the implementation, and
the search hands back a formula that says why.

Run with ``python demos/vending_machine.py``.
"""

from pathlib import Path

from relconn import (
    LEFT, RIGHT, SIMILAR, LT, Comp, Conv, distinguishing_formula, eval_formula,
    greatest_bisimulation, greatest_simulation,
)
from relconn.ioformats import parse_chc, parse_connector

DATA = Path(__file__).parent / "data"

spec = parse_chc((DATA / "vending_spec.chc").read_text())
impl = parse_chc((DATA / "vending_impl.chc").read_text())
forward = parse_connector((DATA / "forward.conn").read_text())

print("connector:", (DATA / "forward.conn").read_text().strip())
down = greatest_simulation(spec, impl, forward)
up = greatest_simulation(impl, spec, forward)
print("spec s0 simulated by impl t0:", ("s0", "t0") in down.relation)
print("impl t0 simulated by spec s0:", ("t0", "s0") in up.relation)

# the removal log records the round and the test set that failed
entry = next(e for e in down.removal_log if e.pair == ("s0", "t0"))
print(f"(s0, t0) dropped in round {entry.round} by the {entry.clause} clause")

phi = distinguishing_formula(spec, impl, forward.lam, "s0", "t0")
assert phi != SIMILAR
print("distinguishing formula:", phi)
print("  holds at s0:", eval_formula(phi, spec, LEFT, "s0"))
print("  holds at t0:", eval_formula(phi, impl, RIGHT, "t0"))

# composing the trace connector with its converse asks only for one shared
# infinite run from each related pair, so the machines are bisimilar for it
shared = Comp(LT(), Conv(LT()))
both = greatest_bisimulation(spec, impl, shared)
print("shared-trace bisimilar:", ("s0", "t0") in both.relation)

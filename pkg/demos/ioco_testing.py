"""Input/output conformance as a simulation.

The spec is a suspension automaton that need not accept every input; the
implementation is input-enabled.  Conformance is the greatest simulation
for the ioco connector, and two specs are compatible when some
implementation conforms to both, which is the composite of the connector
with its converse.

Run with ``python demos/ioco_testing.py``.
"""

from pathlib import Path

from relconn import IOCO, Comp, Conv, bind, greatest_simulation
from relconn.ioformats import parse_chc

DATA = Path(__file__).parent / "data"
spec = parse_chc((DATA / "quiet_spec.chc").read_text())
impl = parse_chc((DATA / "quiet_impl.chc").read_text())

res = greatest_simulation(spec, impl, IOCO())
print("impl conforms to spec:", ("s0", "t0") in res.relation)

# the implementation may stay quiet after a press, which a spec that
# insists on a beep rejects
strict = parse_chc("""\
functor SUSP in=press out=beep,delta
states s0 s1
s0: press->s1 delta->s0
s1: beep->s0
""")
res = greatest_simulation(strict, impl, IOCO())
print("impl conforms to the strict spec:", ("s0", "t0") in res.relation)
entry = next(e for e in res.removal_log if e.pair == ("s0", "t0"))
print(f"  refuted in round {entry.round}")

compat = bind(Comp(Conv(IOCO()), IOCO()), spec.kind, strict.kind)
both = greatest_simulation(spec, strict, compat)
print("spec and strict spec compatible:", ("s0", "s0") in both.relation)

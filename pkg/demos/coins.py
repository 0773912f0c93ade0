"""Comparing coins within one functor and across two.

With the probabilistic identity connector, bisimilar coins are those whose
outcomes can be coupled.  A Kantorovich connector built from probability
thresholds then asks whether a probabilistic coin implements a
nondeterministic one, which needs two different functors.

Run with ``python demos/coins.py``.
"""

from pathlib import Path

from relconn import Id, greatest_bisimulation, greatest_simulation
from relconn.ioformats import parse_chc, parse_connector

DATA = Path(__file__).parent / "data"
fair = parse_chc((DATA / "fair_coin.chc").read_text())
biased = parse_chc((DATA / "biased_coin.chc").read_text())
anyside = parse_chc((DATA / "any_coin.chc").read_text())

# a fair coin that alternates between two states is still a fair coin
alternating = parse_chc("""\
functor DLTS labels=heads,tails
states e0 e1
e0: heads->e1:1/2 tails->e0:1/2
e1: heads->e0:1/2 tails->e1:1/2
""")
res = greatest_bisimulation(fair, alternating, Id())
print("fair ~ alternating:", sorted(res.relation))
res = greatest_bisimulation(fair, biased, Id())
print("fair ~ biased:", sorted(res.relation))

# each side the nondeterministic coin can show must come up at least half
# of the time
half = parse_connector((DATA / "half.conn").read_text())
for coin in (fair, biased):
    res = greatest_simulation(anyside, coin, half)
    x = coin.states.elements[0]
    print(f"any-side coin simulated by {x}:", ("n0", x) in res.relation)

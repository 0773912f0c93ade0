"""Relational connectors: relation liftings between different functors,
the simulations they induce, and a matching positive modal logic."""

from .caps import DEFAULT_CAPS, Caps
from .connectors import (
    EPS, IOCO, KR, LF, LR, LT, Comp, Connector, Conv, Id, Incl, Kant, Meet, Prod, Proj1,
    Proj2, PullLeft, PullRight, Relabel, RelabelConv, Weak, bind, connector_lift,
    coupling_lift, egli_milner_lift, ioco_compat_lift, ioco_lift, kr_lift, lqlr_comp_lift,
    lr_lift, named_connector, weak_saturate,
)
from .errors import (
    CapExceeded, CarrierMismatch, Intractable, KindMismatch, ParseError, RelconnError,
    TermViolation, VerificationError,
)
from .functors import (
    DET, DLTS, PLTS, SUSP, SUSPIE, Coalgebra, FrozenMap, Pair, PMap, coalgebra, dist,
    enumerate_terms, fmap, lts, pmap, support,
)
from .liftings import (
    BigBox, BigDia, Box, Dia, Down, LambdaRel, PGe, PosBool, Up, dual_lifting, eval_lifting,
    parse_lifting,
)
from .logic import (
    LEFT, RIGHT, SIMILAR, distinguishing_formula, eval_formula, parse_formula,
)
from .relcore import FinSet, Rel, couniv_factorize, diagonal, finset, rel, rel_compose, rel_converse
from .simulation import (
    SimResult, connector_leq_on, greatest_bisimulation, greatest_simulation, is_simulation,
)

__version__ = "0.1.0"

"""Size limits for the exponential parts of the library."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Caps:
    # Kantorovich evaluation: arity * |support| bits of argument subsets
    support_bits: int = 20
    # generic composite: largest support of either outer argument
    support: int = 4
    # generic composite: number of candidate middle terms
    middle_terms: int = 1 << 16
    # enumerate_terms
    terms: int = 1 << 20
    # |labels|-ary lifting families
    arity: int = 8
    # couniversal factorization size warning threshold
    factorization_warn: int = 1 << 16


DEFAULT_CAPS = Caps()

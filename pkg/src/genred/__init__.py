"""genred: exact representation and reduction of finite hidden Markov
generators.

A generator is a Markov transition kernel from internal states to (next
state, output symbol) pairs.  This package computes the exact word
distributions a generator induces, decides process equivalence, and reduces
generators to minimal observationally equivalent form, all in exact
rational arithmetic.
"""

from .core import (
    DeterministicGenerator,
    Distribution,
    Generator,
    NondetMachine,
    Partition,
    as_fraction,
    delta,
    fraction_str,
    from_deterministic,
    from_nondeterministic,
    pushforward,
    validate,
)
from .catalog import (
    CircleModel,
    arc_length_distribution,
    catalog,
    complete_randomness,
    markov_shift,
    rational_rotation,
)
from .errors import (
    AlphabetMismatchError,
    ChainMismatchError,
    DistributionMismatchError,
    EmptyRelationError,
    FileFormatError,
    GenredError,
    NotTransitionPreservingError,
    RowNotNormalizedError,
    SizeLimitError,
    UnknownFixtureError,
    UnknownStateError,
    UnknownSymbolError,
)
from .morphism import Morphism, check_transport, compose, relabel_outputs, verify
from .process import (
    WordTable,
    causal_state_partition,
    equivalent,
    sample,
    shortest_distinguishing_word,
    word_distribution,
    word_probability,
)
from .reduce import (
    EventReducedGenerator,
    ReductionResult,
    coarsest_partition_oracle,
    event_reduction,
    minimal_reduction,
    sigma_observation_partition,
    state_reduction,
    state_reduction_reduced,
)

__version__ = "0.1.0"

__all__ = [
    "AlphabetMismatchError",
    "ChainMismatchError",
    "CircleModel",
    "DeterministicGenerator",
    "Distribution",
    "DistributionMismatchError",
    "EmptyRelationError",
    "EventReducedGenerator",
    "FileFormatError",
    "Generator",
    "GenredError",
    "Morphism",
    "NondetMachine",
    "NotTransitionPreservingError",
    "Partition",
    "ReductionResult",
    "RowNotNormalizedError",
    "SizeLimitError",
    "UnknownFixtureError",
    "UnknownStateError",
    "UnknownSymbolError",
    "WordTable",
    "arc_length_distribution",
    "as_fraction",
    "catalog",
    "causal_state_partition",
    "check_transport",
    "coarsest_partition_oracle",
    "complete_randomness",
    "compose",
    "delta",
    "equivalent",
    "event_reduction",
    "fraction_str",
    "from_deterministic",
    "from_nondeterministic",
    "markov_shift",
    "minimal_reduction",
    "pushforward",
    "rational_rotation",
    "relabel_outputs",
    "sample",
    "shortest_distinguishing_word",
    "sigma_observation_partition",
    "state_reduction",
    "state_reduction_reduced",
    "validate",
    "verify",
    "word_distribution",
    "word_probability",
]

"""Core domain types and constructors.

A generator is a finite Markov transition kernel from an internal state set
Q into pairs (next state, output symbol) over an output alphabet.  All
probabilities are exact rationals (``fractions.Fraction``): partition
refinement and row-equality tests in the reduction algorithms require exact
equality, so no floating point enters the core at any point.

Internal events are represented by partitions of Q: over a finite state set
every sigma-algebra is determined by its atoms, a smaller algebra corresponds
to a coarser partition, and the intersection of algebras corresponds to the
finest common coarsening of their atom partitions.  (The measurability of
``x -> T(x, C)`` is automatic over a finite Q with the full power set of
events, so it is documented here rather than checked anywhere.)

All types are immutable values after construction and all operations are
pure functions; instances can be shared freely across threads.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    DistributionMismatchError,
    EmptyRelationError,
    UnknownStateError,
    UnknownSymbolError,
)

RatLike = Fraction | int | str

ZERO = Fraction(0)
ONE = Fraction(1)


def as_fraction(value: RatLike) -> Fraction:
    """Coerce an exact value (Fraction, int, or string like "1/2" or "0.25")
    to a Fraction.  Floats are rejected: they carry binary rounding error and
    must be converted to decimal strings by the caller first."""
    if isinstance(value, float):
        raise TypeError(
            f"refusing inexact float {value!r}; pass a string such as {str(value)!r}"
        )
    return Fraction(value)


def fraction_str(value: Fraction) -> str:
    """Render a Fraction as "n/d" with the denominator always present."""
    return f"{value.numerator}/{value.denominator}"


def _nonempty_names(names: Sequence[str], kind: str) -> tuple[str, ...]:
    out = tuple(str(n) for n in names)
    if not out:
        raise ValueError(f"{kind} list must not be empty")
    return out


class Generator:
    """A Markov transition kernel ``T(x, (y, s))`` over states and symbols.

    The kernel is stored sparsely: only nonzero entries are kept, so a
    deterministic machine has exactly one entry per row.  Construction checks
    structure only (declared names, exact values); numeric validity (rows
    summing to one, entries in range, name uniqueness) is checked by
    :func:`validate` so that invalid kernels can be loaded and reported.

    Attributes:
        states: ordered state names (canonical order = input order).
        alphabet: ordered output symbol names.
        kernel: per-state mapping ``(next_state, symbol) -> Fraction``.
    """

    __slots__ = ("states", "alphabet", "kernel", "state_index", "symbol_index")

    def __init__(
        self,
        states: Sequence[str],
        alphabet: Sequence[str],
        kernel: Mapping[str, Mapping[tuple[str, str], RatLike]],
    ):
        self.states = _nonempty_names(states, "state")
        self.alphabet = _nonempty_names(alphabet, "alphabet")
        self.state_index = {x: i for i, x in enumerate(self.states)}
        self.symbol_index = {s: i for i, s in enumerate(self.alphabet)}
        rows: dict[str, dict[tuple[str, str], Fraction]] = {x: {} for x in self.states}
        for x, row in kernel.items():
            if x not in self.state_index:
                raise UnknownStateError(f"kernel row for undeclared state {x!r}")
            for (y, s), p in row.items():
                if y not in self.state_index:
                    raise UnknownStateError(f"kernel target state {y!r} undeclared")
                if s not in self.symbol_index:
                    raise UnknownSymbolError(f"kernel symbol {s!r} undeclared")
                value = as_fraction(p)
                if value != 0:
                    rows[x][(y, s)] = value
        self.kernel = rows

    def row(self, x: str) -> Mapping[tuple[str, str], Fraction]:
        """Sparse kernel row of state ``x`` (treat as read-only)."""
        try:
            return self.kernel[x]
        except KeyError:
            raise UnknownStateError(f"unknown state {x!r}") from None

    def entry(self, x: str, y: str, s: str) -> Fraction:
        """T(x, ({y}, {s})), zero when the transition is absent."""
        return self.row(x).get((y, s), ZERO)

    def row_sum(self, x: str) -> Fraction:
        return sum(self.row(x).values(), ZERO)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Generator):
            return NotImplemented
        return (
            self.states == other.states
            and self.alphabet == other.alphabet
            and self.kernel == other.kernel
        )

    __hash__ = None  # type: ignore[assignment]  # mutable mappings inside

    def __repr__(self) -> str:
        return f"Generator(states={list(self.states)}, alphabet={list(self.alphabet)})"


class Distribution:
    """An exact probability distribution over state names.

    Weights must sum to one exactly and lie in [0, 1]; zero weights are
    dropped so that the key set equals the support.
    """

    __slots__ = ("weights",)

    def __init__(self, weights: Mapping[str, RatLike]):
        cleaned: dict[str, Fraction] = {}
        for x, w in weights.items():
            value = as_fraction(w)
            if value < 0 or value > 1:
                raise ValueError(f"weight of {x!r} is {value}, outside [0, 1]")
            if value != 0:
                cleaned[str(x)] = value
        total = sum(cleaned.values(), ZERO)
        if total != 1:
            raise ValueError(f"weights sum to {total}, expected exactly 1")
        self.weights = cleaned

    @classmethod
    def point(cls, x: str) -> "Distribution":
        return cls({x: ONE})

    @classmethod
    def uniform(cls, states: Sequence[str]) -> "Distribution":
        n = len(states)
        if n == 0:
            raise ValueError("cannot build a uniform distribution over no states")
        return cls({x: Fraction(1, n) for x in states})

    def __call__(self, x: str) -> Fraction:
        return self.weights.get(x, ZERO)

    @property
    def support(self) -> tuple[str, ...]:
        return tuple(self.weights)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Distribution):
            return NotImplemented
        return self.weights == other.weights

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        inner = ", ".join(f"{x}: {fraction_str(w)}" for x, w in self.weights.items())
        return f"Distribution({{{inner}}})"


class Partition:
    """A partition of a state set in canonical form.

    Blocks are disjoint, nonempty, and cover the state set exactly; each
    block is sorted by state index and blocks are ordered by their smallest
    member's index.  A partition stands for the finite sigma-algebra whose
    atoms are its blocks.
    """

    __slots__ = ("blocks", "_block_of")

    def __init__(self, blocks: Sequence[Sequence[str]], states: Sequence[str]):
        index = {x: i for i, x in enumerate(states)}
        seen: dict[str, int] = {}
        canonical: list[tuple[str, ...]] = []
        for block in blocks:
            if not block:
                raise ValueError("empty block")
            for x in block:
                if x not in index:
                    raise UnknownStateError(f"block member {x!r} not a state")
                if x in seen:
                    raise ValueError(f"state {x!r} appears in more than one block")
                seen[x] = len(canonical)
            canonical.append(tuple(sorted(block, key=lambda x: index[x])))
        if len(seen) != len(index):
            missing = [x for x in states if x not in seen]
            raise ValueError(f"blocks do not cover states; missing {missing}")
        canonical.sort(key=lambda b: index[b[0]])
        self.blocks = tuple(canonical)
        self._block_of = {x: i for i, b in enumerate(self.blocks) for x in b}

    @classmethod
    def trivial(cls, states: Sequence[str]) -> "Partition":
        return cls([tuple(states)], states)

    @classmethod
    def singletons(cls, states: Sequence[str]) -> "Partition":
        return cls([(x,) for x in states], states)

    def block_index(self, x: str) -> int:
        try:
            return self._block_of[x]
        except KeyError:
            raise UnknownStateError(f"unknown state {x!r}") from None

    def block_of(self, x: str) -> tuple[str, ...]:
        return self.blocks[self.block_index(x)]

    def refines(self, other: "Partition") -> bool:
        """True when every block of this partition sits inside a block of
        ``other`` (this partition makes at least as many distinctions)."""
        return all(
            len({other.block_index(x) for x in block}) == 1 for block in self.blocks
        )

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self.blocks == other.blocks

    def __hash__(self) -> int:
        return hash(self.blocks)

    def __repr__(self) -> str:
        inner = ", ".join("{" + ",".join(b) + "}" for b in self.blocks)
        return f"Partition[{inner}]"


class DeterministicGenerator:
    """A deterministic machine: a total successor map ``f`` on states and a
    total observation map ``g`` from states to symbols.  Its kernel form
    moves from ``x`` to ``f(x)`` while emitting ``g(f(x))``."""

    __slots__ = ("states", "alphabet", "f", "g")

    def __init__(
        self,
        states: Sequence[str],
        alphabet: Sequence[str],
        f: Mapping[str, str],
        g: Mapping[str, str],
    ):
        self.states = _nonempty_names(states, "state")
        self.alphabet = _nonempty_names(alphabet, "alphabet")
        state_set = set(self.states)
        symbol_set = set(self.alphabet)
        for x in self.states:
            if x not in f:
                raise ValueError(f"f is not total: missing {x!r}")
            if x not in g:
                raise ValueError(f"g is not total: missing {x!r}")
            if f[x] not in state_set:
                raise UnknownStateError(f"f({x!r}) = {f[x]!r} is not a state")
            if g[x] not in symbol_set:
                raise UnknownSymbolError(f"g({x!r}) = {g[x]!r} is not a symbol")
        self.f = {x: f[x] for x in self.states}
        self.g = {x: g[x] for x in self.states}

    def __repr__(self) -> str:
        return (
            f"DeterministicGenerator(states={list(self.states)}, "
            f"alphabet={list(self.alphabet)})"
        )


class NondetMachine:
    """A nondeterministic machine: each state maps to a set of possible
    (next state, symbol) pairs.  An empty set makes the uniform
    probabilistic lift undefined; that is reported when lifting, not here,
    so partially built machines can still be inspected."""

    __slots__ = ("states", "alphabet", "relation")

    def __init__(
        self,
        states: Sequence[str],
        alphabet: Sequence[str],
        relation: Mapping[str, Iterable[tuple[str, str]]],
    ):
        self.states = _nonempty_names(states, "state")
        self.alphabet = _nonempty_names(alphabet, "alphabet")
        state_set = set(self.states)
        symbol_set = set(self.alphabet)
        rel: dict[str, frozenset[tuple[str, str]]] = {}
        for x in self.states:
            pairs = frozenset(relation.get(x, ()))
            for y, s in pairs:
                if y not in state_set:
                    raise UnknownStateError(f"relation target state {y!r} undeclared")
                if s not in symbol_set:
                    raise UnknownSymbolError(f"relation symbol {s!r} undeclared")
            rel[x] = pairs
        self.relation = rel


def validate(gen: Generator) -> list[str]:
    """Check the kernel conditions and report every violation.

    Returns a list of human-readable violations (duplicate names, entries
    outside [0, 1], rows not summing to one exactly); the generator is valid
    iff the list is empty.
    """
    report: list[str] = []
    seen: set[str] = set()
    for x in gen.states:
        if x in seen:
            report.append(f"duplicate state name {x}")
        seen.add(x)
    seen.clear()
    for s in gen.alphabet:
        if s in seen:
            report.append(f"duplicate symbol name {s}")
        seen.add(s)
    for x in gen.states:
        for (y, s), p in gen.kernel[x].items():
            if p < 0 or p > 1:
                report.append(f"entry {x} -> ({y}, {s}) = {fraction_str(p)} outside [0, 1]")
        total = gen.row_sum(x)
        if total != 1:
            report.append(f"row {x} sums to {fraction_str(total)}")
    return report


def from_deterministic(dg: DeterministicGenerator) -> Generator:
    """Kernel form of a deterministic machine: each row carries a single
    unit entry at (f(x), g(f(x)))."""
    kernel = {x: {(dg.f[x], dg.g[dg.f[x]]): ONE} for x in dg.states}
    return Generator(dg.states, dg.alphabet, kernel)


def from_nondeterministic(nm: NondetMachine) -> Generator:
    """Uniform probabilistic lift: each pair in a state's relation receives
    mass 1/|relation|.  Raises :class:`EmptyRelationError` when a state has
    no successor pairs."""
    kernel: dict[str, dict[tuple[str, str], Fraction]] = {}
    for x in nm.states:
        pairs = nm.relation[x]
        if not pairs:
            raise EmptyRelationError(x)
        share = Fraction(1, len(pairs))
        kernel[x] = {pair: share for pair in pairs}
    return Generator(nm.states, nm.alphabet, kernel)


def delta(gen: Generator, x: str) -> Distribution:
    """Point mass at state ``x``."""
    if x not in gen.state_index:
        raise UnknownStateError(f"unknown state {x!r}")
    return Distribution.point(x)


def pushforward(d: Distribution, f: Mapping[str, str]) -> Distribution:
    """Image of a distribution under a state map: mass of ``y`` is the total
    mass of its preimage.  ``f`` must be defined on the support of ``d``."""
    weights: dict[str, Fraction] = {}
    for x, w in d.weights.items():
        if x not in f:
            raise UnknownStateError(f"state map undefined on support state {x!r}")
        y = f[x]
        weights[y] = weights.get(y, ZERO) + w
    return Distribution(weights)

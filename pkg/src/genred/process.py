"""Observed-process semantics.

A generator together with an initial distribution induces a probability
distribution over output words.  The probability of a word w1..wn is

    sum over state paths x0..xn of  mu(x0) * prod_k T(x_{k-1}, (x_k, wk)),

evaluated here as iterated vector-matrix products with one matrix per output
symbol, M_s[x][y] = T(x, (y, s)).  Word enumeration is always
length-lexicographic by symbol index so that emitted tables are canonical.

Only depth-limited truncations of a process are materialized (word tables up
to a fixed length); equality of two processes on ALL finite words is decided
exactly by :func:`equivalent` without enumerating words.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterator, Mapping

from .core import ONE, ZERO, Distribution, Generator, Partition
from .errors import (
    AlphabetMismatchError,
    DistributionMismatchError,
    SizeLimitError,
    UnknownSymbolError,
)
from .rng import SplitMix64

Word = tuple[str, ...]

DEFAULT_SIZE_LIMIT = 10**6


@dataclass(frozen=True)
class WordTable:
    """Exact probabilities of every word up to ``max_len``.

    Invariants (guaranteed by construction from a valid generator): the
    empty word has probability one, and for every strictly shorter word w
    the one-symbol extensions of w carry exactly w's probability in total.
    """

    max_len: int
    alphabet: tuple[str, ...]
    probs: Mapping[Word, Fraction]

    def __getitem__(self, word: Word) -> Fraction:
        return self.probs[tuple(word)]

    def words(self) -> Iterator[Word]:
        """Words in length-lexicographic order by symbol index."""
        index = {s: i for i, s in enumerate(self.alphabet)}
        return iter(sorted(self.probs, key=lambda w: (len(w), [index[s] for s in w])))


def _check_distribution(gen: Generator, mu: Distribution) -> None:
    extra = [x for x in mu.support if x not in gen.state_index]
    if extra:
        raise DistributionMismatchError(
            f"distribution supported on non-states {extra}"
        )


def _scaled_matrices(gen: Generator) -> tuple[int, dict[str, list[list[int]]]]:
    """Per-symbol integer matrices over a common denominator.

    Returns (D, mats) with mats[s][i][j] = D * T(states[i], (states[j], s)).
    Keeping the inner loops in machine integers makes deep word tables cheap
    while staying exact; results are renormalized to Fractions on output.
    """
    denoms = [p.denominator for row in gen.kernel.values() for p in row.values()]
    common = lcm(*denoms) if denoms else 1
    n = len(gen.states)
    mats = {s: [[0] * n for _ in range(n)] for s in gen.alphabet}
    for x, row in gen.kernel.items():
        i = gen.state_index[x]
        for (y, s), p in row.items():
            mats[s][i][gen.state_index[y]] = int(p * common)
    return common, mats


def _scaled_initial(gen: Generator, mu: Distribution) -> tuple[int, list[int]]:
    denom = lcm(*(w.denominator for w in mu.weights.values()))
    vec = [0] * len(gen.states)
    for x, w in mu.weights.items():
        vec[gen.state_index[x]] = int(w * denom)
    return denom, vec


def _advance(vec: list[int], mat: list[list[int]]) -> list[int]:
    n = len(vec)
    out = [0] * n
    for i, v in enumerate(vec):
        if v:
            row = mat[i]
            for j in range(n):
                m = row[j]
                if m:
                    out[j] += v * m
    return out


def word_probability(gen: Generator, mu: Distribution, w: Word) -> Fraction:
    """Probability that the process emits exactly the prefix ``w``.

    Cost O(|w| * |Q|^2).  The empty word has probability one.
    """
    _check_distribution(gen, mu)
    for s in w:
        if s not in gen.symbol_index:
            raise UnknownSymbolError(f"unknown symbol {s!r}")
    kernel_denom, mats = _scaled_matrices(gen)
    mu_denom, vec = _scaled_initial(gen, mu)
    for s in w:
        vec = _advance(vec, mats[s])
    return Fraction(sum(vec), mu_denom * kernel_denom ** len(w))


def _table_entries(alphabet: tuple[str, ...], max_len: int) -> int:
    total = 1
    power = 1
    for _ in range(max_len):
        power *= len(alphabet)
        total += power
    return total


def word_distribution(
    gen: Generator,
    mu: Distribution,
    max_len: int,
    size_limit: int = DEFAULT_SIZE_LIMIT,
) -> WordTable:
    """Exact table of all word probabilities up to length ``max_len``.

    Raises :class:`SizeLimitError` when the table would exceed
    ``size_limit`` entries (default one million).
    """
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    _check_distribution(gen, mu)
    entries = _table_entries(gen.alphabet, max_len)
    if entries > size_limit:
        raise SizeLimitError(
            f"table would hold {entries} entries, over the cap of {size_limit}"
        )
    kernel_denom, mats = _scaled_matrices(gen)
    mu_denom, vec0 = _scaled_initial(gen, mu)
    probs: dict[Word, Fraction] = {}
    level: list[tuple[Word, list[int]]] = [((), vec0)]
    denom = mu_denom
    probs[()] = Fraction(sum(vec0), denom)
    for _ in range(max_len):
        denom *= kernel_denom
        next_level: list[tuple[Word, list[int]]] = []
        for word, vec in level:
            for s in gen.alphabet:
                extended = word + (s,)
                advanced = _advance(vec, mats[s])
                probs[extended] = Fraction(sum(advanced), denom)
                next_level.append((extended, advanced))
        level = next_level
    return WordTable(max_len=max_len, alphabet=gen.alphabet, probs=probs)


def sample(
    gen: Generator, mu: Distribution, n: int, seed: int
) -> tuple[Word, str]:
    """Draw an initial state from ``mu`` and iterate the kernel ``n`` times,
    returning the emitted word and the final state.  Deterministic given the
    seed (see :mod:`genred.rng` for the exact stream definition)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    _check_distribution(gen, mu)
    rng = SplitMix64(seed)
    support = [x for x in gen.states if mu(x) != 0]
    state = rng.choose(support, [mu(x) for x in support])
    emitted: list[str] = []
    for _ in range(n):
        row = gen.kernel[state]
        pairs = sorted(
            row,
            key=lambda ys: (gen.state_index[ys[0]], gen.symbol_index[ys[1]]),
        )
        state, symbol = rng.choose(pairs, [row[p] for p in pairs])
        emitted.append(symbol)
    return tuple(emitted), state


def _shared_alphabet(gen1: Generator, gen2: Generator) -> tuple[str, ...]:
    if set(gen1.alphabet) != set(gen2.alphabet):
        raise AlphabetMismatchError(
            f"alphabets differ: {sorted(gen1.alphabet)} vs {sorted(gen2.alphabet)}"
        )
    return gen1.alphabet


def _fraction_matrices(gen: Generator) -> dict[str, list[list[Fraction]]]:
    n = len(gen.states)
    mats = {s: [[ZERO] * n for _ in range(n)] for s in gen.alphabet}
    for x, row in gen.kernel.items():
        i = gen.state_index[x]
        for (y, s), p in row.items():
            mats[s][i][gen.state_index[y]] = p
    return mats


def _reduce_against(
    vec: list[Fraction], basis: list[tuple[int, list[Fraction]]]
) -> list[Fraction]:
    vec = list(vec)
    for pivot, base in basis:
        coeff = vec[pivot]
        if coeff:
            factor = coeff / base[pivot]
            for j in range(len(vec)):
                if base[j]:
                    vec[j] -= factor * base[j]
    return vec


def equivalent(
    gen1: Generator, mu1: Distribution, gen2: Generator, mu2: Distribution
) -> bool:
    """Decide exactly whether the two processes agree on all finite words.

    Spanning-basis procedure on the joint state space: starting from the
    concatenated initial vector, close the set of reachable signed state
    vectors under the per-symbol matrices, keeping only a linearly
    independent basis.  Each new basis vector is checked against the
    evaluation functional (total mass on the first machine minus total mass
    on the second); the processes agree iff it vanishes on every basis
    vector.  At most |Q1| + |Q2| vectors ever enter the basis, and any
    pruned vector inherits the vanishing property from the basis by
    linearity, so pruning never loses a discrepancy.
    """
    alphabet = _shared_alphabet(gen1, gen2)
    _check_distribution(gen1, mu1)
    _check_distribution(gen2, mu2)
    n1, n2 = len(gen1.states), len(gen2.states)
    mats1 = _fraction_matrices(gen1)
    mats2 = _fraction_matrices(gen2)

    def joint(v1: list[Fraction], v2: list[Fraction]) -> list[Fraction]:
        return v1 + v2

    def value(vec: list[Fraction]) -> Fraction:
        return sum(vec[:n1], ZERO) - sum(vec[n1:], ZERO)

    start1 = [mu1(x) for x in gen1.states]
    start2 = [mu2(x) for x in gen2.states]
    queue: list[list[Fraction]] = [joint(start1, start2)]
    basis: list[tuple[int, list[Fraction]]] = []
    while queue:
        vec = queue.pop(0)
        residual = _reduce_against(vec, basis)
        pivot = next((j for j, v in enumerate(residual) if v), None)
        if pivot is None:
            continue
        if value(vec) != 0:
            return False
        basis.append((pivot, residual))
        for s in alphabet:
            child1 = [
                sum((vec[i] * mats1[s][i][j] for i in range(n1)), ZERO)
                for j in range(n1)
            ]
            child2 = [
                sum((vec[n1 + i] * mats2[s][i][j] for i in range(n2)), ZERO)
                for j in range(n2)
            ]
            queue.append(joint(child1, child2))
    return True


def shortest_distinguishing_word(
    gen1: Generator, mu1: Distribution, gen2: Generator, mu2: Distribution
) -> Word | None:
    """Breadth-first exhaustive search for the shortest word on which the
    two processes disagree, up to length |Q1| + |Q2| (inequivalent processes
    always disagree within that horizon).  Returns None when no word up to
    the horizon distinguishes them.

    Exponential in the horizon; kept as the witness finder and as an
    independent check of :func:`equivalent`.
    """
    alphabet = _shared_alphabet(gen1, gen2)
    _check_distribution(gen1, mu1)
    _check_distribution(gen2, mu2)
    horizon = len(gen1.states) + len(gen2.states)
    d1, mats1 = _scaled_matrices(gen1)
    d2, mats2 = _scaled_matrices(gen2)
    md1, v1 = _scaled_initial(gen1, mu1)
    md2, v2 = _scaled_initial(gen2, mu2)
    index = {s: i for i, s in enumerate(alphabet)}
    symbols = sorted(alphabet, key=lambda s: index[s])
    level: list[tuple[Word, list[int], list[int]]] = [((), v1, v2)]
    den1, den2 = md1, md2
    if sum(v1) * den2 != sum(v2) * den1:
        return ()
    for _ in range(horizon):
        den1 *= d1
        den2 *= d2
        next_level: list[tuple[Word, list[int], list[int]]] = []
        for word, a, b in level:
            for s in symbols:
                a2 = _advance(a, mats1[s])
                b2 = _advance(b, mats2[s])
                if sum(a2) * den2 != sum(b2) * den1:
                    return word + (s,)
                next_level.append((word + (s,), a2, b2))
        level = next_level
    return None


def causal_state_partition(gen: Generator) -> Partition:
    """Group states whose point-mass initial distributions generate the same
    observed process.

    Whether two states generate the same process depends only on how the
    states evaluate against the closure of the all-ones vector under the
    transposed per-symbol matrices (the vectors of word probabilities seen
    from each state), so one basis computation classifies all states at
    once.  The result equals pairwise process-equivalence testing of point
    masses.
    """
    n = len(gen.states)
    mats = _fraction_matrices(gen)
    basis: list[tuple[int, list[Fraction]]] = []
    collected: list[list[Fraction]] = []
    queue: list[list[Fraction]] = [[ONE] * n]
    while queue:
        vec = queue.pop(0)
        residual = _reduce_against(vec, basis)
        pivot = next((j for j, v in enumerate(residual) if v), None)
        if pivot is None:
            continue
        basis.append((pivot, residual))
        collected.append(vec)
        for s in gen.alphabet:
            mat = mats[s]
            queue.append(
                [sum((mat[i][j] * vec[j] for j in range(n)), ZERO) for i in range(n)]
            )
    signatures: dict[tuple[Fraction, ...], list[str]] = {}
    for i, x in enumerate(gen.states):
        sig = tuple(vec[i] for vec in collected)
        signatures.setdefault(sig, []).append(x)
    return Partition(list(signatures.values()), gen.states)

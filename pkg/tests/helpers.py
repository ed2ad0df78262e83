"""Shared random-instance builders and independent oracles.

The oracles here deliberately avoid the library's production code paths:
word probabilities are summed over explicit state paths, partitions are
found by exhaustive grouping, and the rotation geometry is re-derived from
raw breakpoints, so they can referee the fast implementations.
"""

from __future__ import annotations

import random
from fractions import Fraction

from genred import (
    DeterministicGenerator,
    Distribution,
    Generator,
    Morphism,
    Partition,
)

ZERO = Fraction(0)


def composition(rnd: random.Random, total: int, parts: int) -> list[int]:
    """Nonnegative integers summing to ``total`` split over ``parts`` cells."""
    cuts = sorted(rnd.randint(0, total) for _ in range(parts - 1))
    values = []
    prev = 0
    for c in cuts:
        values.append(c - prev)
        prev = c
    values.append(total - prev)
    return values


def state_names(n: int) -> list[str]:
    return [f"q{i}" for i in range(n)]


def symbol_names(k: int) -> list[str]:
    return [chr(ord("a") + i) for i in range(k)]


def random_generator(
    rnd: random.Random,
    max_states: int = 6,
    max_symbols: int = 3,
    denom: int = 12,
    n_states: int | None = None,
    n_symbols: int | None = None,
) -> Generator:
    n = n_states if n_states is not None else rnd.randint(1, max_states)
    k = n_symbols if n_symbols is not None else rnd.randint(1, max_symbols)
    states = state_names(n)
    symbols = symbol_names(k)
    cells = [(y, s) for y in states for s in symbols]
    kernel = {}
    for x in states:
        weights = composition(rnd, denom, len(cells))
        kernel[x] = {
            cell: Fraction(w, denom) for cell, w in zip(cells, weights) if w
        }
    return Generator(states, symbols, kernel)


def random_distribution(rnd: random.Random, states, denom: int = 12) -> Distribution:
    weights = composition(rnd, denom, len(states))
    return Distribution(
        {x: Fraction(w, denom) for x, w in zip(states, weights) if w}
    )


def random_deterministic(
    rnd: random.Random, max_states: int = 12, max_symbols: int = 4
) -> DeterministicGenerator:
    n = rnd.randint(1, max_states)
    k = rnd.randint(1, max_symbols)
    states = state_names(n)
    symbols = symbol_names(k)
    f = {x: rnd.choice(states) for x in states}
    g = {x: rnd.choice(symbols) for x in states}
    return DeterministicGenerator(states, symbols, f, g)


def brute_word_probability(gen: Generator, mu: Distribution, word) -> Fraction:
    """Oracle: sum mu(x0) * prod T(x_{k-1}, (x_k, w_k)) over all state paths."""
    total = ZERO

    def walk(x: str, i: int, acc: Fraction) -> None:
        nonlocal total
        if i == len(word):
            total += acc
            return
        for (y, s), p in gen.kernel[x].items():
            if s == word[i]:
                walk(y, i + 1, acc * p)

    for x in gen.states:
        w = mu(x)
        if w:
            walk(x, 0, w)
    return total


def all_words(alphabet, max_len: int):
    """Words up to max_len in length-lexicographic order by symbol index."""
    level = [()]
    yield ()
    for _ in range(max_len):
        level = [w + (s,) for w in level for s in alphabet]
        yield from level


def label_sequence_partition(dg: DeterministicGenerator, depth: int) -> Partition:
    """Oracle: group states by their emitted label sequence to ``depth``."""
    groups: dict[tuple, list[str]] = {}
    for x in dg.states:
        labels = []
        y = x
        for _ in range(depth):
            y = dg.f[y]
            labels.append(dg.g[y])
        groups.setdefault(tuple(labels), []).append(x)
    return Partition(list(groups.values()), dg.states)


def rotation_breakpoints(q: int, p: int) -> set[Fraction]:
    """Oracle: the raw breakpoint set of the rotation by q/p of a turn."""
    step = Fraction(q, p)
    points = set()
    for j in range(p):
        points.add((j * step) % 1)
        points.add((Fraction(1, 2) + j * step) % 1)
    return points


def subsets(items):
    out = [[]]
    for item in items:
        out += [s + [item] for s in out]
    return out


def morphism_holds_on_rectangles(m: Morphism) -> bool:
    """Oracle: check the commutation identity on EVERY product event A x B,
    not just singleton rectangles."""
    tgt = m.target
    for x in m.source.states:
        for a in subsets(list(tgt.states)):
            a_set = set(a)
            for b in subsets(list(tgt.alphabet)):
                b_set = set(b)
                lhs = sum(
                    (
                        p
                        for (y, s), p in tgt.kernel[m.f[x]].items()
                        if y in a_set and s in b_set
                    ),
                    ZERO,
                )
                rhs = sum(
                    (
                        p
                        for (y1, s1), p in m.source.kernel[x].items()
                        if m.f[y1] in a_set and m.g[s1] in b_set
                    ),
                    ZERO,
                )
                if lhs != rhs:
                    return False
    return True


def first_violating_triple(m: Morphism):
    """Oracle: scan (x, y2, s2) in index order for the first singleton
    rectangle where the commutation identity fails."""
    tgt = m.target
    for x in m.source.states:
        for y2 in tgt.states:
            for s2 in tgt.alphabet:
                lhs = tgt.kernel[m.f[x]].get((y2, s2), ZERO)
                rhs = sum(
                    (
                        p
                        for (y1, s1), p in m.source.kernel[x].items()
                        if m.f[y1] == y2 and m.g[s1] == s2
                    ),
                    ZERO,
                )
                if lhs != rhs:
                    return (x, y2, s2)
    return None

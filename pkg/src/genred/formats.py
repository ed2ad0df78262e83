"""On-disk formats: generator JSON, morphism JSON, word-table text, DOT.

JSON is the single input format (strict schema, versioned); DOT and the
word-table text are output only.  Probabilities in files are strings,
either "n/d" rationals or decimals; decimals are converted to exact
rationals at parse time ("0.25" becomes 1/4) and emission always uses
"n/d".  With the optional tolerance enabled, a row or initial distribution
whose exact sum lies within the tolerance of one is rescaled exactly to sum
to one; rows further off still fail validation.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Mapping

from .core import Distribution, Generator, fraction_str
from .errors import FileFormatError
from .process import Word, WordTable

FORMAT_VERSION = 1


def parse_prob(text: Any) -> Fraction:
    """Exact probability from its file representation (a string)."""
    if not isinstance(text, str):
        raise FileFormatError(f"probability must be a string, got {text!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise FileFormatError(f"bad probability {text!r}: {exc}") from None


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise FileFormatError(message)


def _name_list(raw: Any, field: str) -> list[str]:
    _require(isinstance(raw, list) and raw, f"{field} must be a nonempty list")
    _require(all(isinstance(x, str) for x in raw), f"{field} entries must be strings")
    return list(raw)


_TOP_LEVEL_KEYS = {"format_version", "states", "alphabet", "transitions", "initial", "quotient"}


def parse_generator_document(
    doc: Any, tolerance: Fraction | None = None
) -> tuple[Generator, dict[str, Fraction] | None]:
    """Decode a parsed JSON document into a generator and the optional raw
    initial weights.  Structural problems raise :class:`FileFormatError`;
    numeric validity is left to :func:`genred.core.validate` so that broken
    kernels can be loaded and reported."""
    _require(isinstance(doc, dict), "top level must be an object")
    unknown = set(doc) - _TOP_LEVEL_KEYS
    _require(not unknown, f"unknown keys {sorted(unknown)}")
    _require(doc.get("format_version") == FORMAT_VERSION,
             f"format_version must be {FORMAT_VERSION}")
    states = _name_list(doc.get("states"), "states")
    alphabet = _name_list(doc.get("alphabet"), "alphabet")
    raw_transitions = doc.get("transitions")
    _require(isinstance(raw_transitions, list), "transitions must be a list")
    kernel: dict[str, dict[tuple[str, str], Fraction]] = {x: {} for x in states}
    for t in raw_transitions:
        _require(isinstance(t, dict), "each transition must be an object")
        _require(set(t) == {"from", "to", "symbol", "prob"},
                 f"transition keys must be from/to/symbol/prob, got {sorted(t)}")
        src, dst, sym = t["from"], t["to"], t["symbol"]
        _require(src in kernel, f"transition from unknown state {src!r}")
        _require(dst in kernel, f"transition to unknown state {dst!r}")
        _require(sym in set(alphabet), f"transition on unknown symbol {sym!r}")
        key = (dst, sym)
        _require(key not in kernel[src],
                 f"duplicate transition {src!r} -> ({dst!r}, {sym!r})")
        kernel[src][key] = parse_prob(t["prob"])
    if tolerance is not None:
        for x, row in kernel.items():
            total = sum(row.values(), Fraction(0))
            if total != 1 and abs(total - 1) <= tolerance and total > 0:
                kernel[x] = {k: p / total for k, p in row.items()}
    gen = Generator(states, alphabet, kernel)

    initial: dict[str, Fraction] | None = None
    if "initial" in doc:
        raw_initial = doc["initial"]
        _require(isinstance(raw_initial, dict), "initial must be an object")
        initial = {}
        for x, p in raw_initial.items():
            _require(x in set(states), f"initial weight for unknown state {x!r}")
            initial[x] = parse_prob(p)
        if tolerance is not None:
            total = sum(initial.values(), Fraction(0))
            if total != 1 and abs(total - 1) <= tolerance and total > 0:
                initial = {x: p / total for x, p in initial.items()}
    return gen, initial


def parse_generator_text(
    text: str, tolerance: Fraction | None = None
) -> tuple[Generator, dict[str, Fraction] | None]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"invalid JSON: {exc}") from None
    return parse_generator_document(doc, tolerance)


def generator_document(
    gen: Generator,
    initial: Distribution | None = None,
    quotient: Mapping[str, str] | None = None,
) -> dict:
    """Canonical JSON document: transitions ordered by source state index,
    target state index, then symbol index, probabilities as "n/d"."""
    transitions = []
    for x in gen.states:
        row = gen.kernel[x]
        ordered = sorted(
            row,
            key=lambda ys: (gen.state_index[ys[0]], gen.symbol_index[ys[1]]),
        )
        for (y, s) in ordered:
            transitions.append(
                {"from": x, "to": y, "symbol": s, "prob": fraction_str(row[(y, s)])}
            )
    doc: dict = {
        "format_version": FORMAT_VERSION,
        "states": list(gen.states),
        "alphabet": list(gen.alphabet),
        "transitions": transitions,
    }
    if initial is not None:
        doc["initial"] = {
            x: fraction_str(initial(x)) for x in gen.states if initial(x) != 0
        }
    if quotient is not None:
        doc["quotient"] = dict(quotient)  # insertion order = original state order
    return doc


def dump_generator(
    gen: Generator,
    initial: Distribution | None = None,
    quotient: Mapping[str, str] | None = None,
) -> str:
    return json.dumps(generator_document(gen, initial, quotient), indent=2) + "\n"


def word_name(word: Word, alphabet: tuple[str, ...]) -> str:
    """Display form of a word: symbols joined with no separator when every
    alphabet symbol is a single character, with "," otherwise; the empty
    word renders as an epsilon."""
    if not word:
        return "ε"
    if all(len(s) == 1 for s in alphabet):
        return "".join(word)
    return ",".join(word)


def dump_word_table(table: WordTable) -> str:
    """One line per word in length-lexicographic order: `<word> <p>/<q>`."""
    lines = [
        f"{word_name(w, table.alphabet)} {fraction_str(table.probs[w])}"
        for w in table.words()
    ]
    return "\n".join(lines) + "\n"


def dump_dot(gen: Generator) -> str:
    """Graphviz digraph of the transition structure, one edge per kernel
    entry, labeled `s : p/q`."""

    def quote(name: str) -> str:
        return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'

    lines = ["digraph generator {", "  rankdir=LR;"]
    for x in gen.states:
        lines.append(f"  {quote(x)} [shape=circle];")
    for x in gen.states:
        row = gen.kernel[x]
        ordered = sorted(
            row,
            key=lambda ys: (gen.state_index[ys[0]], gen.symbol_index[ys[1]]),
        )
        for (y, s) in ordered:
            label = f"{s} : {fraction_str(row[(y, s)])}"
            lines.append(f"  {quote(x)} -> {quote(y)} [label={quote(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def morphism_document(f: Mapping[str, str], g: Mapping[str, str]) -> dict:
    return {"f": dict(f), "g": dict(g)}


def dump_morphism(f: Mapping[str, str], g: Mapping[str, str]) -> str:
    return json.dumps(morphism_document(f, g), indent=2) + "\n"


def parse_morphism_text(text: str) -> tuple[dict[str, str], dict[str, str]]:
    """Decode the morphism JSON `{"f": {..}, "g": {..}}`; the maps are
    returned raw and validated against concrete generators when a
    :class:`genred.morphism.Morphism` is built from them."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"invalid JSON: {exc}") from None
    _require(isinstance(doc, dict) and set(doc) == {"f", "g"},
             'morphism document must have exactly the keys "f" and "g"')
    for key in ("f", "g"):
        _require(
            isinstance(doc[key], dict)
            and all(isinstance(a, str) and isinstance(b, str) for a, b in doc[key].items()),
            f'"{key}" must map strings to strings',
        )
    return dict(doc["f"]), dict(doc["g"])

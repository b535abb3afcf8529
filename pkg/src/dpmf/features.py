"""Sparse binary features describing a parser state.

Each template reads the form (``w``) or POS (``t``) of the top two stack
items (``s0``, ``s1``) and the next two queue tokens (``q0``, ``q1``)
and renders to a string ``name=value`` with composite values joined by
``|``, e.g. ``s0w|s0t=Economia|NNP``.  A position that does not exist
renders as ``<NONE>`` so every template fires exactly once and the
feature count is constant.  The strings are part of the model-dump
format and must stay byte-stable.
"""

from __future__ import annotations

from typing import Sequence

from .corpus import Token
from .transitions import ParserState

NONE_VALUE = "<NONE>"

TEMPLATES: tuple[tuple[str, ...], ...] = (
    # unigram
    ("s0w",), ("s0t",), ("s0w", "s0t"),
    ("s1w",), ("s1t",), ("s1w", "s1t"),
    ("q0w",), ("q0t",), ("q0w", "q0t"),
    ("q1t",),
    # pairs of positions
    ("s0w", "s1w"), ("s0t", "s1t"), ("s0t", "q0t"),
    ("s0w", "s0t", "s1t"), ("s0t", "s1w", "s1t"), ("s0w", "s1w", "s1t"),
    ("s0w", "s0t", "s1w"), ("s0w", "s0t", "s1w", "s1t"),
    # POS triples and beyond
    ("s0t", "s1t", "q0t"), ("s0t", "q0t", "q1t"), ("s1t", "s0t", "q0t", "q1t"),
)

TEMPLATE_NAMES: tuple[str, ...] = tuple("|".join(t) for t in TEMPLATES)

POS_ONLY_TEMPLATE_NAMES: tuple[str, ...] = tuple(
    "|".join(t) for t in TEMPLATES if all(atom.endswith("t") for atom in t)
)


def extract(state: ParserState, sentence: Sequence[Token]) -> tuple[str, ...]:
    """Features of ``state`` over ``sentence``, one per template.

    Returned in fixed template order; entries are unique by construction,
    so the tuple behaves as a set of fired binary features.
    """
    n = len(sentence)
    s0 = state.stack[-1] if state.stack else None
    s1 = state.stack[-2] if len(state.stack) >= 2 else None
    q0 = state.queue_pos if state.queue_pos <= n else None
    q1 = state.queue_pos + 1 if state.queue_pos + 1 <= n else None

    atoms = {}
    for name, pos in (("s0", s0), ("s1", s1), ("q0", q0), ("q1", q1)):
        token = sentence[pos - 1] if pos is not None else None
        atoms[name + "w"] = token.form if token is not None else NONE_VALUE
        atoms[name + "t"] = token.pos if token is not None else NONE_VALUE

    return tuple(
        f"{name}={'|'.join(atoms[atom] for atom in template)}"
        for name, template in zip(TEMPLATE_NAMES, TEMPLATES)
    )

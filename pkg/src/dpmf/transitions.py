"""Arc-standard shift-reduce transition system.

A parse is a sequence of actions over a state ``<stack, queue, arcs>``:
SHIFT pushes the next queue token, REDUCE_L attaches the second-from-top
stack item as dependent of the top (which survives), and REDUCE_R
attaches the top as dependent of the second-from-top.  Every complete
parse of an ``n``-token sentence takes exactly ``n`` shifts and ``n - 1``
reduces, i.e. ``2n - 1`` actions.

States are immutable values; ``apply`` returns a new state, so states
can be fanned out freely across beam items and worker processes.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, replace
from enum import IntEnum
from typing import Iterable, Sequence

from .corpus import RefTree
from .errors import IllegalActionError, OracleStuckError


class Action(IntEnum):
    # Enum order doubles as the decoder's tie-break order.
    SHIFT = 0
    REDUCE_L = 1
    REDUCE_R = 2


@dataclass(frozen=True, slots=True)
class ParserState:
    """Parser configuration: stack of token positions (top = last),
    position of the next unprocessed token, arcs built so far as
    ``(head, dependent)`` pairs, accumulated log-probability, and the
    action history that produced this state."""

    stack: tuple[int, ...] = ()
    queue_pos: int = 1
    arcs: frozenset[tuple[int, int]] = frozenset()
    log_prob: float = 0.0
    history: tuple[Action, ...] = ()


def initial_state() -> ParserState:
    return ParserState()


def legal_actions(state: ParserState, n: int) -> set[Action]:
    """Actions applicable in ``state`` for a sentence of length ``n``."""
    legal = set()
    if state.queue_pos <= n:
        legal.add(Action.SHIFT)
    if len(state.stack) >= 2:
        legal.add(Action.REDUCE_L)
        legal.add(Action.REDUCE_R)
    return legal


def apply(state: ParserState, action: Action, n: int) -> ParserState:
    """Apply one action, returning the successor state.

    The log-probability is carried over unchanged; the decoder accounts
    for action probabilities itself.
    """
    if action not in legal_actions(state, n):
        raise IllegalActionError(f"{action.name} is not legal in {state}")
    history = state.history + (action,)
    if action is Action.SHIFT:
        return replace(
            state,
            stack=state.stack + (state.queue_pos,),
            queue_pos=state.queue_pos + 1,
            history=history,
        )
    second, top = state.stack[-2], state.stack[-1]
    if action is Action.REDUCE_L:
        # top survives as head; arc (top, second)
        return replace(
            state,
            stack=state.stack[:-2] + (top,),
            arcs=state.arcs | {(top, second)},
            history=history,
        )
    # REDUCE_R: second survives as head; arc (second, top)
    return replace(
        state,
        stack=state.stack[:-1],
        arcs=state.arcs | {(second, top)},
        history=history,
    )


def is_terminal(state: ParserState, n: int) -> bool:
    """True once the queue is consumed and a single item remains stacked."""
    return state.queue_pos > n and len(state.stack) == 1


def oracle_actions(tree: RefTree) -> list[Action]:
    """The canonical action sequence that builds ``tree``.

    Reduces fire as early as possible: the candidate dependent must have
    its gold head adjacent on the stack and must already have collected
    all of its own gold dependents.  Any projective tree is reachable
    this way; a stuck oracle indicates non-projective input and raises.
    """
    heads = tree.heads
    n = len(heads)
    dep_count = Counter(heads)
    collected = [0] * (n + 1)
    state = initial_state()
    actions: list[Action] = []
    while not is_terminal(state, n):
        action = None
        if len(state.stack) >= 2:
            second, top = state.stack[-2], state.stack[-1]
            if heads[second - 1] == top and collected[second] == dep_count[second]:
                action = Action.REDUCE_L
                collected[top] += 1
            elif heads[top - 1] == second and collected[top] == dep_count[top]:
                action = Action.REDUCE_R
                collected[second] += 1
        if action is None:
            if state.queue_pos > n:
                raise OracleStuckError(
                    f"segment {tree.segment_id}: oracle stuck at {state}"
                )
            action = Action.SHIFT
        state = apply(state, action, n)
        actions.append(action)
    return actions


def replay(actions: Iterable[Action], n: int) -> ParserState:
    """Run a full action sequence from the initial state."""
    state = initial_state()
    for action in actions:
        state = apply(state, action, n)
    return state


def arcs_to_tree(arcs: Iterable[tuple[int, int]], n: int) -> list[int]:
    """Convert an arc set into a head array; the unattached token is the root."""
    arcs = list(arcs)
    if len(arcs) != n - 1:
        raise ValueError(f"expected {n - 1} arcs for {n} tokens, got {len(arcs)}")
    heads = [0] * n
    for head, dep in arcs:
        if not (1 <= dep <= n and 1 <= head <= n):
            raise ValueError(f"arc ({head}, {dep}) out of range for n={n}")
        if heads[dep - 1] != 0:
            raise ValueError(f"token {dep} attached to two heads")
        heads[dep - 1] = head
    return heads

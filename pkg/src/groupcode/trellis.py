"""State diagrams, trellis paths, splices, and codeword membership."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .encoder import Encoder, Window
from .groups import Element, format_element


@dataclass(frozen=True)
class Branch:
    """One transition: reading ``input`` at ``source`` emits ``label`` and moves to ``target``."""

    source: Element
    label: Element
    target: Element
    input: Element


def branches(enc: Encoder) -> list[Branch]:
    """All transitions of the state diagram, state-major then input-minor."""
    out = []
    for s in enc.state_group.elements():
        for u in enc.input_group.elements():
            nxt, y = enc.step(u, s)
            out.append(Branch(source=s, label=y, target=nxt, input=u))
    return out


def connected(enc: Encoder, s: Element, r: Element, max_len: int) -> list[Element] | None:
    """Shortest input word driving ``s`` to ``r``, or None within ``max_len``.

    A state is connected to itself by the empty word.  Breadth-first search
    with inputs in canonical order resolves ties lexicographically.
    """
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    enc.state_group.check(s)
    enc.state_group.check(r)
    if s == r:
        return []
    inputs = list(enc.input_group.elements())
    queue: deque[tuple[Element, tuple[Element, ...]]] = deque([(s, ())])
    visited = {s}
    while queue:
        state, word = queue.popleft()
        if len(word) >= max_len:
            continue
        for u in inputs:
            nxt = enc.next_state_pair(u, state)
            if nxt in visited:
                continue
            extended = word + (u,)
            if nxt == r:
                return list(extended)
            visited.add(nxt)
            queue.append((nxt, extended))
    return None


def concatenate(y1: Window, y2: Window, j: int) -> Window:
    """Symbolwise splice: ``y1`` strictly before time ``j``, ``y2`` from ``j`` on.

    The result is a plain sequence; whether it is again a codeword is exactly
    what membership testing decides.
    """
    if y1.group != y2.group:
        raise ValueError("cannot splice windows over different symbol groups")
    start = min(y1.start, y2.start, j)
    end = max(y1.end, y2.end, j)
    symbols = tuple(
        y1.symbol_at(i) if i < j else y2.symbol_at(i) for i in range(start, end)
    )
    return Window(y1.group, start, symbols).trimmed()


def _identity_core(enc: Encoder, backwards: bool) -> set[Element]:
    """States admitting arbitrarily long identity-labeled histories or futures."""
    e_y = enc.output_group.identity()
    edges: dict[Element, set[Element]] = {s: set() for s in enc.state_group.elements()}
    for b in branches(enc):
        if b.label == e_y:
            if backwards:
                edges[b.target].add(b.source)  # predecessors
            else:
                edges[b.source].add(b.target)  # successors
    current = set(edges)
    while True:
        kept = {s for s in current if edges[s] & current}
        if kept == current:
            return current
        current = kept


def codeword_witness(enc: Encoder, window: Window) -> list[Element] | None:
    """State-sequence witness that ``window`` is generated by ``enc``, or None.

    The witness lists the states at times ``start-1 .. end`` of the window;
    identity tails force the boundary states into the sets that can absorb an
    infinite identity-labeled past or future.  Among all witnesses the
    lexicographically smallest state sequence is returned.
    """
    if window.group != enc.output_group:
        raise ValueError("window symbols are not in the encoder output group")
    past_core = _identity_core(enc, backwards=True)
    future_core = _identity_core(enc, backwards=False)

    by_label: dict[tuple[Element, Element], set[Element]] = {}
    for b in branches(enc):
        by_label.setdefault((b.source, b.label), set()).add(b.target)

    feasible: list[set[Element]] = [set(past_core)]
    for symbol in window.symbols:
        nxt: set[Element] = set()
        for s in feasible[-1]:
            nxt |= by_label.get((s, symbol), set())
        if not nxt:
            return None
        feasible.append(nxt)
    feasible[-1] &= future_core
    if not feasible[-1]:
        return None
    for i in range(len(window.symbols) - 1, -1, -1):
        symbol = window.symbols[i]
        feasible[i] = {
            s for s in feasible[i] if by_label.get((s, symbol), set()) & feasible[i + 1]
        }
        if not feasible[i]:
            return None

    witness = [min(feasible[0])]
    for i, symbol in enumerate(window.symbols):
        options = by_label.get((witness[-1], symbol), set()) & feasible[i + 1]
        witness.append(min(options))
    return witness


def is_codeword(enc: Encoder, window: Window) -> bool:
    return codeword_witness(enc, window) is not None


def export_dot(enc: Encoder, unrolled_sections: int) -> str:
    """Render the state diagram (0 sections) or a k-section trellis as DOT.

    Nodes are named ``t{time}_s{state index}``; edge labels read
    ``input/output``.  Output is byte-deterministic.
    """
    if unrolled_sections < 0:
        raise ValueError("unrolled_sections must be >= 0")
    s_group = enc.state_group
    states = list(s_group.elements())
    lines = ["digraph trellis {", "  rankdir=LR;", "  node [shape=circle];"]
    times = max(unrolled_sections + 1, 1)
    for t in range(times):
        for s in states:
            lines.append(f'  "t{t}_s{s_group.index_of(s)}" [label="{format_element(s_group, s)}"];')
    sections = unrolled_sections if unrolled_sections > 0 else 1
    for t in range(sections):
        src_t = t
        dst_t = t + 1 if unrolled_sections > 0 else t
        for b in branches(enc):
            label = (
                f"{format_element(enc.input_group, b.input)}/"
                f"{format_element(enc.output_group, b.label)}"
            )
            lines.append(
                f'  "t{src_t}_s{s_group.index_of(b.source)}" -> '
                f'"t{dst_t}_s{s_group.index_of(b.target)}" [label="{label}"];'
            )
    lines.append("}")
    return "\n".join(lines) + "\n"

"""Complete-DFA representation, language algebra, canonical minimization,
and text serialization.

Every other module builds on this one.  All values are immutable after
construction; every operation is a pure function returning fresh values.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

Word = tuple[str, ...]

EPSILON: Word = ()


class DfaError(ValueError):
    """Base class for all errors raised by this package."""


class ParseError(DfaError):
    """Malformed DFA / digraph document."""


class AlphabetMismatchError(DfaError):
    """Binary operation over DFAs whose alphabets differ (symbols or order)."""


class ResourceLimitError(DfaError):
    """A configured enumeration or size cap was exceeded."""


@dataclass(frozen=True)
class Dfa:
    """A complete deterministic finite automaton.

    States are the integers ``0 .. state_count-1``.  ``delta[q][i]`` is the
    successor of state ``q`` on the ``i``-th alphabet letter; the table is
    total by construction.  Alphabet order is significant and preserved by
    every operation (canonical tie-breaking depends on it).
    """

    alphabet: tuple[str, ...]
    delta: tuple[tuple[int, ...], ...]
    initial: int = 0
    accepting: frozenset[int] = frozenset()
    name: str = field(default="dfa", compare=False)

    def __post_init__(self) -> None:
        if not self.alphabet:
            raise DfaError("alphabet must be nonempty")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise DfaError("alphabet has duplicate symbols")
        k = len(self.delta)
        if k == 0:
            raise DfaError("DFA needs at least one state")
        if not (0 <= self.initial < k):
            raise DfaError(f"initial state {self.initial} out of range")
        for q, row in enumerate(self.delta):
            if len(row) != len(self.alphabet):
                raise DfaError(f"transition row of state {q} is not total")
            for t in row:
                if not (0 <= t < k):
                    raise DfaError(f"transition target {t} out of range")
        for q in self.accepting:
            if not (0 <= q < k):
                raise DfaError(f"accepting state {q} out of range")

    @property
    def state_count(self) -> int:
        return len(self.delta)

    def letter_index(self, letter: str) -> int:
        try:
            return self.alphabet.index(letter)
        except ValueError:
            raise DfaError(f"unknown letter {letter!r}") from None

    def step(self, state: int, letter: str) -> int:
        return self.delta[state][self.letter_index(letter)]


def run(a: Dfa, w: Word) -> int:
    """State reached from the initial state after reading ``w``."""
    state = a.initial
    for letter in w:
        state = a.delta[state][a.letter_index(letter)]
    return state


def accepts(a: Dfa, w: Word) -> bool:
    return run(a, w) in a.accepting


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------
#
# dfa <name>
# alphabet <sym1> <sym2> ...
# states <k>
# initial <id>
# accepting <id> ...          (list may be empty)
# trans <from> <sym> <to>     (exactly k * |alphabet| lines)
# end


def parse_dfa(text: str) -> Dfa:
    name = None
    alphabet: tuple[str, ...] | None = None
    state_count = None
    initial = None
    accepting: frozenset[int] | None = None
    table: dict[tuple[int, str], int] = {}
    saw_end = False

    def fail(lineno: int, msg: str) -> None:
        raise ParseError(f"line {lineno}: {msg}")

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if saw_end:
            fail(lineno, "content after 'end'")
        parts = line.split()
        kw = parts[0]
        if kw == "dfa":
            if len(parts) != 2:
                fail(lineno, "expected 'dfa <name>'")
            name = parts[1]
        elif kw == "alphabet":
            if len(parts) < 2:
                fail(lineno, "alphabet must list at least one symbol")
            alphabet = tuple(parts[1:])
            if len(set(alphabet)) != len(alphabet):
                fail(lineno, "duplicate alphabet symbol")
        elif kw == "states":
            if len(parts) != 2 or not parts[1].isdigit():
                fail(lineno, "expected 'states <k>'")
            state_count = int(parts[1])
            if state_count < 1:
                fail(lineno, "state count must be positive")
        elif kw == "initial":
            if len(parts) != 2 or not parts[1].isdigit():
                fail(lineno, "expected 'initial <id>'")
            initial = int(parts[1])
        elif kw == "accepting":
            if not all(p.isdigit() for p in parts[1:]):
                fail(lineno, "accepting ids must be integers")
            accepting = frozenset(int(p) for p in parts[1:])
        elif kw == "trans":
            if len(parts) != 4 or not (parts[1].isdigit() and parts[3].isdigit()):
                fail(lineno, "expected 'trans <from> <sym> <to>'")
            src, sym, dst = int(parts[1]), parts[2], int(parts[3])
            if alphabet is None:
                fail(lineno, "alphabet must precede transitions")
            if sym not in alphabet:
                fail(lineno, f"unknown letter {sym!r}")
            if state_count is None:
                fail(lineno, "state count must precede transitions")
            if src >= state_count or dst >= state_count:
                fail(lineno, f"state id out of range in 'trans {src} {sym} {dst}'")
            if (src, sym) in table:
                fail(lineno, f"duplicate transition for state {src}, letter {sym}")
            table[(src, sym)] = dst
        elif kw == "end":
            saw_end = True
        else:
            fail(lineno, f"unknown keyword {kw!r}")

    if not saw_end:
        raise ParseError("missing 'end'")
    if name is None or alphabet is None or state_count is None:
        raise ParseError("document must define dfa, alphabet and states")
    if initial is None:
        raise ParseError("document must define an initial state")
    if accepting is None:
        accepting = frozenset()
    if initial >= state_count:
        raise ParseError(f"initial state {initial} out of range")
    for q in accepting:
        if q >= state_count:
            raise ParseError(f"accepting state {q} out of range")

    rows = []
    for q in range(state_count):
        row = []
        for sym in alphabet:
            if (q, sym) not in table:
                raise ParseError(
                    f"incomplete transition function at state {q}, letter {sym}"
                )
            row.append(table[(q, sym)])
        rows.append(tuple(row))

    return Dfa(
        alphabet=alphabet,
        delta=tuple(rows),
        initial=initial,
        accepting=accepting,
        name=name,
    )


def serialize_dfa(a: Dfa) -> str:
    lines = [
        f"dfa {a.name}",
        "alphabet " + " ".join(a.alphabet),
        f"states {a.state_count}",
        f"initial {a.initial}",
        "accepting" + "".join(f" {q}" for q in sorted(a.accepting)),
    ]
    for q in range(a.state_count):
        for i, sym in enumerate(a.alphabet):
            lines.append(f"trans {q} {sym} {a.delta[q][i]}")
    lines.append("end")
    return "\n".join(lines) + "\n"


def to_dot(a: Dfa) -> str:
    """GraphViz rendering: accepting states double-circled, initial marked
    with an entry arrow, parallel edges merged into comma-separated labels."""
    lines = [f'digraph "{a.name}" {{', "  rankdir=LR;", '  __start [shape=point, label=""];']
    for q in range(a.state_count):
        shape = "doublecircle" if q in a.accepting else "circle"
        lines.append(f"  {q} [shape={shape}];")
    lines.append(f"  __start -> {a.initial};")
    for q in range(a.state_count):
        merged: dict[int, list[str]] = {}
        for i, sym in enumerate(a.alphabet):
            merged.setdefault(a.delta[q][i], []).append(sym)
        for dst in sorted(merged):
            label = ",".join(merged[dst])
            lines.append(f'  {q} -> {dst} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Language algebra
# ---------------------------------------------------------------------------


def _check_same_alphabet(a: Dfa, b: Dfa) -> None:
    if a.alphabet != b.alphabet:
        raise AlphabetMismatchError(
            f"alphabet mismatch: {a.alphabet} vs {b.alphabet}"
        )


def product(a: Dfa, b: Dfa, mode: str) -> Dfa:
    """Pair construction for ``intersect``, ``union`` or ``difference``.

    Only the reachable part of the pair space is materialized; pair states
    are numbered in BFS discovery order with letters taken in alphabet order.
    """
    _check_same_alphabet(a, b)
    if mode not in ("intersect", "union", "difference"):
        raise DfaError(f"unknown product mode {mode!r}")

    start = (a.initial, b.initial)
    number = {start: 0}
    order = [start]
    queue = deque([start])
    rows: list[tuple[int, ...]] = []
    while queue:
        pa, pb = queue.popleft()
        row = []
        for i in range(len(a.alphabet)):
            nxt = (a.delta[pa][i], b.delta[pb][i])
            if nxt not in number:
                number[nxt] = len(order)
                order.append(nxt)
                queue.append(nxt)
            row.append(number[nxt])
        rows.append(tuple(row))

    accepting = set()
    for idx, (pa, pb) in enumerate(order):
        ina, inb = pa in a.accepting, pb in b.accepting
        if mode == "intersect":
            ok = ina and inb
        elif mode == "union":
            ok = ina or inb
        else:
            ok = ina and not inb
        if ok:
            accepting.add(idx)

    op = {"intersect": "&", "union": "|", "difference": "-"}[mode]
    return Dfa(
        alphabet=a.alphabet,
        delta=tuple(rows),
        initial=0,
        accepting=frozenset(accepting),
        name=f"({a.name}{op}{b.name})",
    )


def complement(a: Dfa) -> Dfa:
    return Dfa(
        alphabet=a.alphabet,
        delta=a.delta,
        initial=a.initial,
        accepting=frozenset(range(a.state_count)) - a.accepting,
        name=f"not({a.name})",
    )


def reachable_states(a: Dfa) -> set[int]:
    seen = {a.initial}
    queue = deque([a.initial])
    while queue:
        q = queue.popleft()
        for t in a.delta[q]:
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return seen


def minimize(a: Dfa) -> Dfa:
    """Canonical minimal DFA: unreachable states dropped, equivalent states
    merged by partition refinement, result renumbered in BFS discovery order
    (letters in alphabet order).  Two language-equal DFAs minimize to
    structurally identical results."""
    reach = sorted(reachable_states(a))
    pos = {q: i for i, q in enumerate(reach)}
    delta = [[pos[a.delta[q][i]] for i in range(len(a.alphabet))] for q in reach]
    accepting = [q in a.accepting for q in reach]
    n = len(reach)

    # Moore partition refinement.
    block = [1 if acc else 0 for acc in accepting]
    while True:
        sigs: dict[tuple, int] = {}
        new_block = [0] * n
        for q in range(n):
            sig = (block[q], tuple(block[t] for t in delta[q]))
            if sig not in sigs:
                sigs[sig] = len(sigs)
            new_block[q] = sigs[sig]
        if new_block == block:
            break
        block = new_block

    # BFS renumbering of blocks from the initial block.
    rep_delta: dict[int, list[int]] = {}
    rep_accepting: dict[int, bool] = {}
    for q in range(n):
        rep_delta.setdefault(block[q], [block[t] for t in delta[q]])
        rep_accepting.setdefault(block[q], accepting[q])

    start = block[pos[a.initial]]
    number = {start: 0}
    order = [start]
    queue = deque([start])
    while queue:
        b = queue.popleft()
        for t in rep_delta[b]:
            if t not in number:
                number[t] = len(order)
                order.append(t)
                queue.append(t)

    rows = tuple(
        tuple(number[t] for t in rep_delta[b]) for b in order
    )
    acc = frozenset(i for i, b in enumerate(order) if rep_accepting[b])
    return Dfa(alphabet=a.alphabet, delta=rows, initial=0, accepting=acc, name=a.name)


def index_of(a: Dfa) -> int:
    """Number of states of the canonical minimal DFA for L(a)."""
    return minimize(a).state_count


def equivalent(a: Dfa, b: Dfa) -> tuple[bool, Word | None]:
    """Language equality; on inequality also the lexicographically least
    among the shortest distinguishing words (BFS over the pair graph)."""
    _check_same_alphabet(a, b)
    start = (a.initial, b.initial)
    seen = {start}
    queue: deque[tuple[tuple[int, int], Word]] = deque([(start, EPSILON)])
    while queue:
        (pa, pb), word = queue.popleft()
        if (pa in a.accepting) != (pb in b.accepting):
            return False, word
        for i, sym in enumerate(a.alphabet):
            nxt = (a.delta[pa][i], b.delta[pb][i])
            if nxt not in seen:
                seen.add(nxt)
                queue.append((nxt, word + (sym,)))
    return True, None


def is_empty(a: Dfa) -> tuple[bool, Word | None]:
    """Emptiness plus the shortest accepted word when nonempty."""
    start = a.initial
    seen = {start}
    queue: deque[tuple[int, Word]] = deque([(start, EPSILON)])
    while queue:
        q, word = queue.popleft()
        if q in a.accepting:
            return False, word
        for i, sym in enumerate(a.alphabet):
            t = a.delta[q][i]
            if t not in seen:
                seen.add(t)
                queue.append((t, word + (sym,)))
    return True, None


def _useful_states(m: Dfa) -> set[int]:
    """States of a trimmed DFA from which an accepting state is reachable."""
    inverse: list[set[int]] = [set() for _ in range(m.state_count)]
    for q in range(m.state_count):
        for t in m.delta[q]:
            inverse[t].add(q)
    useful = set(m.accepting)
    queue = deque(m.accepting)
    while queue:
        q = queue.popleft()
        for p in inverse[q]:
            if p not in useful:
                useful.add(p)
                queue.append(p)
    return useful


def longest_word_length(a: Dfa) -> int | float | None:
    """Length of the longest accepted word: ``None`` for the empty language,
    ``math.inf`` for an infinite one, an integer otherwise."""
    m = minimize(a)
    if not m.accepting:
        return None
    useful = _useful_states(m)

    # Topological sort (Kahn) of the useful subgraph; leftovers mean a cycle
    # on an initial-to-accepting path, i.e. an infinite language.
    edges = {q: {t for t in m.delta[q] if t in useful} for q in useful}
    indeg = {q: 0 for q in useful}
    for q in useful:
        for t in edges[q]:
            indeg[t] += 1
    queue = deque(q for q in useful if indeg[q] == 0)
    topo: list[int] = []
    while queue:
        q = queue.popleft()
        topo.append(q)
        for t in edges[q]:
            indeg[t] -= 1
            if indeg[t] == 0:
                queue.append(t)
    if len(topo) != len(useful):
        return math.inf

    # Acyclic: longest path from the initial state to an accepting state.
    best: dict[int, int] = {}
    for q in reversed(topo):
        candidates = [0] if q in m.accepting else []
        candidates.extend(1 + best[t] for t in edges[q])
        best[q] = max(candidates)
    return best[m.initial]


def is_finite_language(a: Dfa) -> bool:
    return longest_word_length(a) != math.inf


def enumerate_language(a: Dfa, max_len: int) -> list[Word]:
    """All accepted words of length at most ``max_len``, in length-then-
    alphabet order."""
    # Shortest distance from each state to an accepting state, for pruning.
    inverse: list[set[int]] = [set() for _ in range(a.state_count)]
    for q in range(a.state_count):
        for t in a.delta[q]:
            inverse[t].add(q)
    dist = {q: 0 for q in a.accepting}
    queue = deque(a.accepting)
    while queue:
        q = queue.popleft()
        for p in inverse[q]:
            if p not in dist:
                dist[p] = dist[q] + 1
                queue.append(p)

    out: list[Word] = []
    frontier: list[tuple[Word, int]] = [(EPSILON, a.initial)]
    for length in range(max_len + 1):
        next_frontier: list[tuple[Word, int]] = []
        for word, q in frontier:
            if q in a.accepting:
                out.append(word)
            if length < max_len:
                for i, sym in enumerate(a.alphabet):
                    t = a.delta[q][i]
                    if dist.get(t, max_len + 1) <= max_len - length - 1:
                        next_frontier.append((word + (sym,), t))
        frontier = next_frontier
    return out


def all_accepting_dfa(alphabet: tuple[str, ...]) -> Dfa:
    """One-state DFA recognizing every word over ``alphabet``."""
    return Dfa(
        alphabet=alphabet,
        delta=(tuple(0 for _ in alphabet),),
        initial=0,
        accepting=frozenset({0}),
        name="sigma-star",
    )


def empty_language_dfa(alphabet: tuple[str, ...]) -> Dfa:
    """Minimal DFA recognizing the empty language."""
    return Dfa(
        alphabet=alphabet,
        delta=(tuple(0 for _ in alphabet),),
        initial=0,
        accepting=frozenset(),
        name="empty",
    )

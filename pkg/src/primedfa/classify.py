"""Structural predicates for minimal acyclic DFAs over finite languages:
linearity (with the letter-partition profile), safety / co-safety shape,
uniform max-length words, and the compression-extension property (CEP).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import (
    Dfa,
    DfaError,
    Word,
    complement,
    longest_word_length,
    minimize,
)


@dataclass(frozen=True)
class LinearProfile:
    """Canonical form of a minimal linear acyclic DFA.

    States are relabeled q0..q_{n+1} so that q_j is reachable from q_i for
    all i < j; q0 is initial, q_n is the deepest accepting state and q_{n+1}
    the rejecting sink.  ``sigma_sets[(i, j)]`` is the set of letters moving
    q_i to q_j (kept in alphabet order); entries exist only for i < j.
    ``base`` is the relabeled minimal DFA itself (state ids == profile ids).
    """

    n: int
    alphabet: tuple[str, ...]
    sigma_sets: dict[tuple[int, int], tuple[str, ...]]
    accepting: frozenset[int]
    base: Dfa

    def sigma(self, i: int, j: int) -> tuple[str, ...]:
        return self.sigma_sets.get((i, j), ())

    def delta(self, i: int, letter: str) -> int:
        return self.base.delta[i][self.base.letter_index(letter)]


def linear_profile(a: Dfa) -> LinearProfile | None:
    """Profile of the minimal DFA when it is linear, else ``None``.

    Raises on DFAs recognizing the empty or an infinite language.
    """
    n = longest_word_length(a)
    if n is None:
        raise DfaError("linear_profile: input recognizes the empty language")
    if n == math.inf:
        raise DfaError("linear_profile: input recognizes an infinite language")
    m = minimize(a)
    if m.state_count != n + 2:
        return None

    # Reachability totally orders the states of a linear minimal ADFA;
    # recover the order by topologically sorting the non-self-loop edges.
    k = m.state_count
    succ = [set() for _ in range(k)]
    for q in range(k):
        for t in m.delta[q]:
            if t != q:
                succ[q].add(t)
    indeg = [0] * k
    for q in range(k):
        for t in succ[q]:
            indeg[t] += 1
    order: list[int] = []
    frontier = [q for q in range(k) if indeg[q] == 0]
    while len(frontier) == 1:
        q = frontier.pop()
        order.append(q)
        for t in succ[q]:
            indeg[t] -= 1
            if indeg[t] == 0:
                frontier.append(t)
    if len(order) != k:
        return None

    relabel = {old: new for new, old in enumerate(order)}
    base = Dfa(
        alphabet=m.alphabet,
        delta=tuple(
            tuple(relabel[m.delta[old][i]] for i in range(len(m.alphabet)))
            for old in order
        ),
        initial=relabel[m.initial],
        accepting=frozenset(relabel[q] for q in m.accepting),
        name=m.name,
    )

    # Structural sanity: these hold for every linear minimal ADFA.
    assert base.initial == 0
    assert n in base.accepting and (n + 1) not in base.accepting
    assert all(t == n + 1 for t in base.delta[n + 1]), "last state must be a sink"

    sigma_sets: dict[tuple[int, int], tuple[str, ...]] = {}
    for i in range(n + 2):
        for idx, sym in enumerate(base.alphabet):
            j = base.delta[i][idx]
            if i == n + 1:
                continue
            assert j > i, "linear profile transitions must be strictly forward"
            sigma_sets.setdefault((i, j), ())
            sigma_sets[(i, j)] += (sym,)
    for i in range(n):
        assert sigma_sets.get((i, i + 1)), "spine letters must exist below q_n"
    assert sigma_sets.get((n, n + 1)) == base.alphabet

    return LinearProfile(
        n=n,
        alphabet=base.alphabet,
        sigma_sets=sigma_sets,
        accepting=frozenset(q for q in base.accepting),
        base=base,
    )


def is_safety(a: Dfa) -> bool:
    """True iff every rejecting state of the minimal DFA is a rejecting sink
    (rejection is closed under extension)."""
    m = minimize(a)
    return all(
        q in m.accepting or all(t == q for t in m.delta[q])
        for q in range(m.state_count)
    )


def is_cosafety(a: Dfa) -> bool:
    """Dual of is_safety: every accepting state of the minimal DFA is an
    accepting sink."""
    return is_safety(complement(a))


def is_simple_cosafety(a: Dfa) -> bool:
    """Co-safety DFA shape with exactly one accepting sink whose remaining
    states are all reachable from one another."""
    m = minimize(a)
    if not is_cosafety(m):
        return False
    if len(m.accepting) != 1:
        return False
    (sink,) = m.accepting
    rest = [q for q in range(m.state_count) if q != sink]
    for q in rest:
        seen = {q}
        stack = [q]
        while stack:
            p = stack.pop()
            for t in m.delta[p]:
                if t != sink and t not in seen:
                    seen.add(t)
                    stack.append(t)
        if len(seen) != len(rest):
            return False
    return True


def uniform_max_word_letter(p: LinearProfile) -> str | None:
    """A letter sigma with sigma^n accepted, ties broken by alphabet order;
    for n = 0 the empty word qualifies and the first letter is returned."""
    if p.n == 0:
        return p.alphabet[0]
    for sym in p.alphabet:
        state = 0
        idx = p.base.letter_index(sym)
        for _ in range(p.n):
            state = p.base.delta[state][idx]
        if state in p.accepting:
            return sym
    return None


def has_cep(p: LinearProfile) -> tuple[bool, Word | None]:
    """Compression-extension property, decided by the deterministic
    per-position rule; when absent, also a breaching word.

    For each position x in 2..n the candidate set is
    C(x) = { sigma in Sigma_{x-1,x} : for every i in 0..x-2 the transition
    delta(q_i, sigma) lands strictly between i and x }.
    No CEP iff every C(x) is nonempty; the breaching word takes the least
    letter of Sigma_{0,1} followed by the least letter of each C(x).

    For n = 1 no word admits a compression, so the property cannot hold;
    the breaching word is the least accepted one-letter word.
    """
    if p.n == 0:
        raise DfaError("has_cep: undefined for n = 0")
    if p.n == 1:
        return False, (p.sigma(0, 1)[0],)

    word = [p.sigma(0, 1)[0]]
    for x in range(2, p.n + 1):
        candidates = []
        for sym in p.sigma(x - 1, x):
            if all(i < p.delta(i, sym) < x for i in range(x - 1)):
                candidates.append(sym)
        if not candidates:
            return True, None
        word.append(candidates[0])
    return False, tuple(word)


def interior_rejecting_state(p: LinearProfile) -> int | None:
    """Least d < n with q_d rejecting, or None in the safety case."""
    for d in range(p.n):
        if d not in p.accepting:
            return d
    return None

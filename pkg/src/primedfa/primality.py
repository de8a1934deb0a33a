"""Primality decisions with constructive certificates.

Intersection verdicts follow the structural characterization for finite
languages (empty / non-linear / uniform max word / safety / CEP branches);
composite inputs get explicit decompositions, prime inputs get witness
words.  Union, DNF and size-based (S-) primality are layered on top.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .classify import (
    LinearProfile,
    has_cep,
    interior_rejecting_state,
    is_safety,
    is_simple_cosafety,
    linear_profile,
    uniform_max_word_letter,
)
from .core import (
    Dfa,
    DfaError,
    ResourceLimitError,
    Word,
    complement,
    enumerate_language,
    index_of,
    is_finite_language,
    longest_word_length,
    minimize,
    is_empty,
    product,
    serialize_dfa,
)
from .factories import (
    all_index_chains,
    factor_chain,
    factor_extension,
    factor_letter_position,
    factor_loop_d,
    factor_loop_zero,
    factor_skip,
    length_cap_dfa,
    letter_count_dfa,
    singleton_dfa,
    star_word_dfa,
    subsequence_excluder,
)

PRIME = "Prime"
COMPOSITE = "Composite"


@dataclass(frozen=True)
class PrimalityVerdict:
    status: str
    branch: str
    witness: Word | None = None
    notes: str = ""

    @property
    def is_prime(self) -> bool:
        return self.status == PRIME


@dataclass(frozen=True)
class Decomposition:
    """mode 'intersection'/'union': ``factors`` is a flat list of DFAs with
    size <= bound.  mode 'dnf': ``factors`` is a list of terms, each term a
    list of DFAs intersected before the outer union, with size < bound."""

    mode: str
    bound: int
    factors: list


@dataclass(frozen=True)
class Caps:
    """Resource caps for decomposition emission."""

    max_words: int = 10**6
    max_factors: int = 10**6


def _require_finite(a: Dfa, op: str) -> None:
    if not is_finite_language(a):
        raise DfaError(f"{op}: input recognizes an infinite language")


def decide_intersection_primality(a: Dfa) -> PrimalityVerdict:
    _require_finite(a, "decide_intersection_primality")
    empty, _ = is_empty(a)
    if empty:
        return PrimalityVerdict(PRIME, "empty-language")
    p = linear_profile(a)
    if p is None:
        return PrimalityVerdict(COMPOSITE, "non-linear")
    sigma = uniform_max_word_letter(p)
    if sigma is not None:
        return PrimalityVerdict(
            PRIME,
            "linear+sigma-n",
            witness=_uniform_witness(p, sigma),
            notes=f"uniform letter {sigma}",
        )
    if not is_safety(a):
        return PrimalityVerdict(COMPOSITE, "non-safety")
    cep, breach = has_cep(p)
    if cep:
        return PrimalityVerdict(COMPOSITE, "CEP")
    return PrimalityVerdict(
        PRIME, "safety+noCEP", witness=_breach_witness(p, breach)
    )


def _uniform_witness(p: LinearProfile, sigma: str) -> Word:
    # Pumping exponent: any common multiple of the possible loop lengths
    # (<= n+1) works; lcm keeps the word short.
    exponent = p.n + math.lcm(*range(1, p.n + 2))
    return (sigma,) * exponent


def _breach_witness(p: LinearProfile, breach: Word) -> Word:
    blocked = set()
    for j in range(p.n):
        blocked.update(p.sigma(j, p.n + 1))
    extra = [s for s in p.sigma(p.n - 1, p.n) if s not in blocked]
    assert extra, "no-CEP profiles always admit an extension letter"
    return breach + (extra[0],)


def intersection_witness(a: Dfa) -> Word:
    v = decide_intersection_primality(a)
    if not v.is_prime or v.branch == "empty-language":
        raise DfaError(
            "intersection_witness: defined only for non-empty prime inputs"
        )
    assert v.witness is not None
    return v.witness


def _dedup(factors: list[Dfa]) -> list[Dfa]:
    seen: set[str] = set()
    out = []
    for f in factors:
        key = serialize_dfa(
            Dfa(f.alphabet, f.delta, f.initial, f.accepting, name="_")
        )
        if key not in seen:
            seen.add(key)
            out.append(f)
    return out


def _all_words(alphabet: tuple[str, ...], lengths, cap: int):
    count = 0
    for length in lengths:
        for tup in itertools.product(alphabet, repeat=length):
            count += 1
            if count > cap:
                raise ResourceLimitError(
                    f"word enumeration exceeded cap of {cap}"
                )
            yield tup


def intersection_decomposition(a: Dfa, caps: Caps = Caps()) -> Decomposition:
    v = decide_intersection_primality(a)
    if v.is_prime:
        raise DfaError("intersection_decomposition: input is prime")
    bound = index_of(a) - 1
    alphabet = a.alphabet
    n = longest_word_length(a)
    assert isinstance(n, int)

    if v.branch == "non-linear":
        accepted = set(enumerate_language(a, n))
        factors: list[Dfa] = [length_cap_dfa(n, alphabet)]
        for w in _all_words(alphabet, range(n + 1), caps.max_words):
            if w not in accepted:
                factors.append(complement(singleton_dfa(w, alphabet)))
        return Decomposition("intersection", bound, _dedup(factors))

    p = linear_profile(a)
    assert p is not None
    factors = [factor_loop_zero(p)]
    chains = [factor_chain(p, c) for c in all_index_chains(n)]

    if v.branch == "CEP":
        factors.extend(chains)
        for i in range(n - 1):
            for l in range(2, n - i + 1):
                factors.append(factor_skip(p, i, l))
        return Decomposition("intersection", bound, _dedup(factors))

    # non-safety branch
    d = interior_rejecting_state(p)
    assert d is not None
    factors.append(factor_loop_d(p, d))
    factors.extend(chains)
    for sym in alphabet:
        positions = [i for i in range(1, n + 1) if sym not in p.sigma(i - 1, i)]
        assert positions, "no uniform max word implies a gap for every letter"
        factors.append(factor_letter_position(p, sym, max(positions)))
    accepted_n = set(w for w in enumerate_language(a, n) if len(w) == n)
    for w in _all_words(alphabet, [n], caps.max_words):
        if w not in accepted_n:
            factors.append(subsequence_excluder(w, alphabet))
    factors = _dedup(factors)
    if len(factors) > caps.max_factors:
        raise ResourceLimitError(
            f"factor emission exceeded cap after {len(factors)} factors"
        )

    # Extension factors: words longer than n accepted by everything so far.
    combined = minimize(factors[0])
    for f in factors[1:]:
        combined = minimize(product(combined, f, "intersect"))
        if combined.state_count > 10**4:
            raise ResourceLimitError("factor intersection accumulator too large")
    survivors = [
        w for w in enumerate_language(combined, max(n, 2 * n - 2)) if len(w) > n
    ]
    if len(survivors) > caps.max_words:
        raise ResourceLimitError(
            f"extension-word enumeration exceeded cap of {caps.max_words}"
        )
    for w in survivors:
        factors.append(factor_extension(p, d, w))
    return Decomposition("intersection", bound, _dedup(factors))


def decide_union_primality(a: Dfa) -> PrimalityVerdict:
    _require_finite(a, "decide_union_primality")
    if is_empty(a)[0]:
        raise DfaError("decide_union_primality: input recognizes the empty language")
    if linear_profile(a) is None:
        return PrimalityVerdict(COMPOSITE, "non-linear")
    return PrimalityVerdict(PRIME, "linear")


def union_decomposition(a: Dfa, caps: Caps = Caps()) -> Decomposition:
    v = decide_union_primality(a)
    if v.is_prime:
        raise DfaError("union_decomposition: input is union-prime")
    n = longest_word_length(a)
    assert isinstance(n, int)
    words = enumerate_language(a, n)
    if len(words) > caps.max_factors:
        raise ResourceLimitError("union factor count exceeds cap")
    factors = [singleton_dfa(w, a.alphabet) for w in words]
    return Decomposition("union", index_of(a) - 1, _dedup(factors))


def decide_dnf_primality(a: Dfa) -> PrimalityVerdict:
    _require_finite(a, "decide_dnf_primality")
    if is_empty(a)[0]:
        raise DfaError("decide_dnf_primality: input recognizes the empty language")
    p = linear_profile(a)
    if p is None:
        return PrimalityVerdict(COMPOSITE, "non-linear")
    sigma = uniform_max_word_letter(p)
    if sigma is None:
        return PrimalityVerdict(COMPOSITE, "no-sigma-n")
    return PrimalityVerdict(PRIME, "linear+sigma-n", notes=f"uniform letter {sigma}")


def dnf_decomposition(a: Dfa, caps: Caps = Caps()) -> Decomposition:
    v = decide_dnf_primality(a)
    if v.is_prime:
        raise DfaError("dnf_decomposition: input is DNF-prime")
    n = longest_word_length(a)
    assert isinstance(n, int)
    words = enumerate_language(a, n)
    if len(words) > caps.max_factors:
        raise ResourceLimitError("dnf term count exceeds cap")

    if v.branch == "non-linear":
        terms = [[singleton_dfa(w, a.alphabet)] for w in words]
        return Decomposition("dnf", index_of(a), terms)

    # linear without a uniform max word: short words stay singletons, each
    # longest word becomes {w}* intersected with an exact letter count.
    terms = []
    for w in words:
        if len(w) < n:
            terms.append([singleton_dfa(w, a.alphabet)])
        else:
            sigma = w[0]
            count = sum(1 for s in w if s == sigma)
            terms.append(
                [
                    star_word_dfa(w, a.alphabet),
                    letter_count_dfa(sigma, count, a.alphabet),
                ]
            )
    return Decomposition("dnf", index_of(a), terms)


def decide_s_primality(a: Dfa) -> PrimalityVerdict:
    """Size-based primality: supported for finite languages and for simple
    co-safety DFAs (where it reduces to minimality)."""
    if is_finite_language(a):
        if a.state_count > index_of(a):
            return PrimalityVerdict(
                COMPOSITE, "non-minimal", notes="minimal DFA is a smaller 1-factor"
            )
        inner = decide_intersection_primality(a)
        return PrimalityVerdict(
            inner.status,
            inner.branch,
            witness=inner.witness,
            notes="size equals index; size-based and index-based notions coincide",
        )
    if is_simple_cosafety(a):
        if a.state_count > index_of(a):
            return PrimalityVerdict(
                COMPOSITE, "non-minimal", notes="minimal DFA is a smaller 1-factor"
            )
        return PrimalityVerdict(PRIME, "simple-cosafety")
    raise DfaError(
        "decide_s_primality: supported only for finite languages or "
        "simple co-safety DFAs"
    )

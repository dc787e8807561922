"""Finite-horizon approximation of the language of a substitution shift.

The factors of length at most ``horizon`` of every ``m^d(a)`` are built
round by round without materialising ``m^d(a)``: round ``d`` keeps the
length-``W`` windows of ``m^d(a)`` (plus the whole word while it is
shorter than ``W``). For a non-erasing morphism every length-``W`` factor
of ``m^{d+1}(a)`` is covered by at most ``W`` letters of ``m^d(a)``, so
applying ``m`` to the windows is exact.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .core import (
    MorphismError,
    SequenceGen,
    apply,
    erasable_letters,
    expand,
    seed_generators,
)


class HorizonError(ValueError):
    """A query needs words longer than the language was built for."""


class EmptyShift(ValueError):
    """Every letter erases: the generated language has no nonempty word."""


def _factors(word, n):
    return {word[i:i + n] for i in range(len(word) - n + 1)}


def _window_round(m, words, width):
    out = set()
    for w in words:
        img = apply(m, w)
        if len(img) <= width:
            out.add(img)
        else:
            out.update(_factors(img, width))
    return out


@dataclass
class FactorLanguage:
    morphism: object
    horizon: int
    factors: list
    generation_depth: int
    saturated_up_to: int
    periodic_closure: tuple = ()

    def __post_init__(self):
        self._sets = [frozenset(s) for s in self.factors]

    def words(self, n):
        self._check(n)
        return self._sets[n]

    def sorted_words(self, n):
        return sorted(self.words(n))

    def _check(self, n):
        if n > self.horizon:
            raise HorizonError(f"length {n} exceeds language horizon {self.horizon}")

    def contains(self, w):
        if not w:
            return True
        self._check(len(w))
        return w in self._sets[len(w)]

    __contains__ = contains

    def contains_long(self, w):
        """Membership of an arbitrarily long word via its horizon-length windows."""
        if len(w) <= self.horizon:
            return self.contains(w)
        H = self._sets[self.horizon]
        return all(w[i:i + self.horizon] in H for i in range(len(w) - self.horizon + 1))

    def first_illegal(self, w):
        """Smallest ``n`` such that ``w[:n]`` is not certified legal, or ``None``."""
        H = self.horizon
        for end in range(1, len(w) + 1):
            start = max(0, end - H)
            if w[start:end] not in self._sets[end - start]:
                return end
        return None

    @property
    def alphabet(self):
        return sorted(self._sets[1])

    def to_json(self, n_max=None):
        n_max = min(n_max or self.horizon - 1, self.horizon - 1)
        prof = complexity_profile(self, n_max)
        return {
            "p": prof.p,
            "s": prof.s,
            "left_special": {str(n): c for n, c in enumerate(prof.left_special_counts)},
            "saturated_up_to": self.saturated_up_to,
            "generation_depth": self.generation_depth,
            "horizon": self.horizon,
        }


def build_language(m, n_max, depth=None, max_depth=80):
    """Factors of length ``<= n_max`` of the words ``m^d(a)``, ``d <= depth``.

    With ``depth=None`` generation runs at least the default number of
    rounds and then continues until every length is saturated (unchanged
    between two successive rounds) or ``max_depth`` is reached. Bounded
    fixed words (``m^k(a) = a``) contribute their periodic closure.
    """
    if not m.is_endomorphism:
        raise MorphismError("language needs an endomorphism")
    if n_max < 1:
        raise ValueError("n_max must be positive")
    A = len(m.domain)
    default_depth = max(2 * A, math.ceil(math.log2(max(n_max, 2))) + A)
    min_depth = depth if depth is not None else default_depth
    limit = depth if depth is not None else max(max_depth, default_depth)

    erasable = erasable_letters(m)
    if erasable == set(m.domain):
        # the language is finite and the shift has no points
        raise EmptyShift("every letter is erasable")
    width = n_max if not erasable else 2 * n_max + 2
    periodic = tuple(g.period for g in seed_generators(m) if g.kind == "periodic")

    acc = [set() for _ in range(n_max + 1)]
    acc[0].add("")
    for p in periodic:
        block = p * (n_max // len(p) + 2)
        for n in range(1, n_max + 1):
            acc[n] |= _factors(block, n)

    def absorb(words):
        for w in words:
            for n in range(1, min(len(w), n_max) + 1):
                acc[n] |= _factors(w, n)

    # erasing morphisms: exact words while they stay small, windows afterwards
    exact = list(m.domain) if erasable else []
    rnd = set(m.domain)
    absorb(rnd)
    prev = [len(s) for s in acc]
    stable_rounds = [0] * (n_max + 1)
    d = 0
    while d < limit:
        d += 1
        rnd = _window_round(m, rnd, width)
        absorb(rnd)
        if exact:
            exact = [apply(m, w) for w in exact]
            if sum(map(len, exact)) <= 200_000:
                absorb(exact)
            else:
                exact = []
        sizes = [len(s) for s in acc]
        for n in range(n_max + 1):
            stable_rounds[n] = stable_rounds[n] + 1 if sizes[n] == prev[n] else 0
        prev = sizes
        if d >= min_depth and depth is None and all(stable_rounds[n] >= 1 for n in range(n_max + 1)):
            break

    saturated = 0
    for n in range(1, n_max + 1):
        if stable_rounds[n] >= 1:
            saturated = n
        else:
            break
    return FactorLanguage(m, n_max, acc, d, saturated, periodic)


def extension_counts(L, w):
    L._check(len(w) + 1)
    letters = L.alphabet
    left = sum(1 for a in letters if (a + w) in L._sets[len(w) + 1])
    right = sum(1 for a in letters if (w + a) in L._sets[len(w) + 1])
    return left, right


def special_factors(L, n, side="left"):
    L._check(n + 1)
    pick = 0 if side == "left" else 1
    return sorted(w for w in L.words(n) if extension_counts(L, w)[pick] >= 2)


@dataclass
class ComplexityProfile:
    p: list
    s: list
    left_special_counts: list
    right_special_counts: list
    left_sums: list
    right_sums: list

    def extension_sums_agree(self):
        return self.s == self.left_sums == self.right_sums


def complexity_profile(L, n_max):
    """``p_n`` for ``n <= n_max+1`` and ``s_n`` for ``n <= n_max`` with both extension sums."""
    L._check(n_max + 1)
    p = [len(L.words(n)) for n in range(n_max + 2)]
    s = [p[n + 1] - p[n] for n in range(n_max + 1)]
    ls, rs, lsum, rsum = [], [], [], []
    for n in range(n_max + 1):
        Ln1 = L.words(n + 1)
        left = Counter(w[1:] for w in Ln1)
        right = Counter(w[:-1] for w in Ln1)
        words = L.words(n)
        lsum.append(sum(left[w] - 1 for w in words))
        rsum.append(sum(right[w] - 1 for w in words))
        ls.append(sum(1 for w in words if left[w] >= 2))
        rs.append(sum(1 for w in words if right[w] >= 2))
    return ComplexityProfile(p, s, ls, rs, lsum, rsum)


# -- sequences attached to the language -------------------------------

def reference_sequence(m, L=None):
    """A generator whose orbit is used for occurrence scans."""
    gens = seed_generators(m)
    infinite = [g for g in gens if g.kind != "periodic"]
    if infinite:
        return infinite[0]
    if gens:
        return gens[0]
    raise MorphismError("no fixed point of a power of the morphism")


def occurrences(text, u):
    out, i = [], text.find(u)
    while i >= 0:
        out.append(i)
        i = text.find(u, i + 1)
    return out


def return_words(L, u, side="right", horizon=None, prefix_len=None, sequence=None):
    """Return words to ``u`` read from occurrence gaps in a long generated prefix.

    Right return words ``w`` satisfy ``uw`` legal with ``u`` only as prefix
    and suffix; left return words are the symmetric ``wu``.
    """
    if not L.contains(u):
        raise ValueError(f"{u!r} is not in the language")
    horizon = horizon if horizon is not None else L.horizon - len(u)
    if horizon > L.horizon - len(u):
        raise HorizonError("return-word horizon exceeds language horizon")
    g = sequence or reference_sequence(L.morphism)
    n = prefix_len or max(50 * L.horizon, 4096)
    text = expand(g, n)
    occ = occurrences(text, u)
    out = set()
    for i, j in zip(occ, occ[1:]):
        w = text[i + len(u):j + len(u)] if side == "right" else text[i:j]
        if len(w) <= horizon:
            out.add(w)
    return sorted(out)


@dataclass
class RecurrenceEstimate:
    ratio: Fraction | None
    worst_factor: str | None
    non_recurrent: list
    prefix_len: int

    def to_json(self):
        return {
            "K": None if self.ratio is None else str(self.ratio),
            "worst_factor": self.worst_factor,
            "non_recurrent": self.non_recurrent,
            "prefix_len": self.prefix_len,
        }


def linear_recurrence_estimate(L, len_max, prefix_len=None, sequence=None):
    """Largest observed (return time)/|u| over factors with ``|u| <= len_max``.

    A factor is reported non-recurrent when it never occurs in the prefix
    or when some legal word of full horizon length avoids it (so its
    return time exceeds the horizon).
    """
    if len_max < 1 or len_max >= L.horizon:
        raise HorizonError("len_max must lie in [1, horizon)")
    g = sequence or reference_sequence(L.morphism)
    n = prefix_len or max(50 * L.horizon, 4096)
    text = expand(g, n)
    top = L.words(L.horizon)
    best, worst, bad = None, None, []
    for k in range(1, len_max + 1):
        for u in L.sorted_words(k):
            occ = occurrences(text, u)
            if len(occ) < 2 or any(u not in w for w in top):
                bad.append(u)
                continue
            gap = max(j - i for i, j in zip(occ, occ[1:]))
            r = Fraction(gap, len(u))
            if best is None or r > best:
                best, worst = r, u
    return RecurrenceEstimate(best, worst, bad, n)


# -- periodic points ------------------------------------------------------

def least_rotation(w):
    return min(w[i:] + w[:i] for i in range(len(w)))


def is_primitive_word(w):
    return (w + w).find(w, 1) == len(w)


def find_periodic_points(m, p_max, horizon=None, L=None, confirm_len=None):
    """Canonical primitive words ``w`` (least rotation) with ``w^∞`` in the shift.

    Candidates must have every horizon-length window legal; survivors are
    then confirmed by exact membership of a power of ``w`` of length at
    least ``confirm_len`` (default ``max(4·horizon, 128)``), which rules out
    long near-periodic stretches such as ``(aabab)^n`` in the Fibonacci shift.
    """
    # recognizability builds on this module, hence the local import
    from .recognizability import is_legal

    if p_max < 1:
        raise ValueError("p_max must be positive")
    horizon = horizon or (L.horizon if L is not None else 4 * p_max)
    if horizon < 2 * p_max:
        raise HorizonError("horizon must be at least twice the maximal period")
    if L is None or L.horizon < horizon:
        L = build_language(m, horizon)
    confirm_len = confirm_len or max(4 * horizon, 128)
    top = L.words(horizon)
    found = set()
    for p in range(1, p_max + 1):
        for w in L.words(p):
            if not is_primitive_word(w) or least_rotation(w) != w:
                continue
            block = w * (horizon // p + 2)
            if not all(block[i:i + horizon] in top for i in range(p)):
                continue
            if all(is_legal(m, L, (w[i:] + w * (confirm_len // p + 1))[:confirm_len]) for i in range(p)):
                found.add(w)
    return sorted(found)

"""Words, morphisms of free monoids and their structural predicates.

Words are plain ``str`` objects whose characters are letters; a
:class:`Morphism` keeps its alphabets as ordered tuples of characters, so
the letter index of ``c`` is ``alphabet.index(c)``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import islice

import numpy as np


class MorphismError(ValueError):
    """Malformed morphism text or incompatible morphisms."""


class DegenerateSequence(ValueError):
    """A sequence generator does not describe an infinite sequence."""


_RULE = re.compile(r"^([^:,>-])(?::|->)(.*)$")


@dataclass(frozen=True)
class Morphism:
    domain: tuple
    codomain: tuple
    images: tuple

    def __post_init__(self):
        if not self.domain:
            raise MorphismError("empty domain alphabet")
        if len(set(self.domain)) != len(self.domain):
            raise MorphismError("duplicate letters in domain")
        if len(self.images) != len(self.domain):
            raise MorphismError("one image per domain letter required")
        extra = set("".join(self.images)) - set(self.codomain)
        if extra:
            raise MorphismError(f"image letters outside codomain: {sorted(extra)}")
        object.__setattr__(self, "_table", dict(zip(self.domain, self.images)))

    @classmethod
    def from_dict(cls, rules, codomain=None):
        domain = tuple(rules)
        images = tuple(rules[a] for a in domain)
        if codomain is None:
            codomain = _union_alphabet(domain, images)
        return cls(domain, tuple(codomain), images)

    def __call__(self, word):
        return apply(self, word)

    def __getitem__(self, letter):
        return self._table[letter]

    def __str__(self):
        return ",".join(f"{a}:{img}" for a, img in zip(self.domain, self.images))

    def as_dict(self):
        return dict(self._table)

    @property
    def is_endomorphism(self):
        return set(self.domain) == set(self.codomain)

    @property
    def max_length(self):
        return max(len(img) for img in self.images)

    @property
    def min_length(self):
        return min(len(img) for img in self.images)


def _union_alphabet(heads, images):
    seen = list(heads)
    for img in images:
        for c in img:
            if c not in seen:
                seen.append(c)
    return tuple(seen)


def parse_morphism(text):
    """Parse ``"a:ab,b:a"`` (or ``a -> ab`` rules, comma or newline separated).

    The domain is the ordered set of rule heads; the codomain adds every
    image letter not already a head. Letters missing a rule make the
    result a non-endomorphism.
    """
    if text is None or not text.strip():
        raise MorphismError("empty morphism spec")
    rules = {}
    for raw in re.split(r"[,\n]", text):
        chunk = raw.strip()
        if not chunk:
            continue
        m = _RULE.match(re.sub(r"\s+", "", chunk))
        if m is None:
            raise MorphismError(f"cannot parse rule {raw.strip()!r}")
        head, image = m.group(1), m.group(2)
        for c in head + image:
            if not c.isprintable() or c in ":,->":
                raise MorphismError(f"unsupported character {c!r} in rule {raw.strip()!r}")
        if head in rules:
            raise MorphismError(f"duplicate rule for {head!r}")
        rules[head] = image
    if not rules:
        raise MorphismError("empty morphism spec")
    return Morphism.from_dict(rules)


def apply(m, word):
    try:
        return "".join([m._table[c] for c in word])
    except KeyError as exc:
        raise MorphismError(f"letter {exc.args[0]!r} not in domain") from None


def iterate_letters(m, word, k):
    """Lazily yield the letters of ``m^k(word)``."""
    if k == 0:
        yield from word
        return
    table = m._table
    for c in iterate_letters(m, word, k - 1):
        yield from table[c]


def iterate_prefix(m, word, k, n):
    """Length-``n`` prefix of ``m^k(word)`` without building the whole word."""
    return "".join(islice(iterate_letters(m, word, k), n))


def compose(outer, inner):
    if set(inner.codomain) - set(outer.domain):
        raise MorphismError("codomain of inner morphism must match domain of outer")
    images = tuple(apply(outer, img) for img in inner.images)
    return Morphism(inner.domain, outer.codomain, images)


def power(m, n):
    if n < 1:
        raise MorphismError("power must be positive")
    if n > 1 and not m.is_endomorphism:
        raise MorphismError("only endomorphisms can be iterated")
    result = m
    for _ in range(n - 1):
        result = compose(m, result)
    return result


def incidence_matrix(m):
    """``M[a, b] = |m(a)|_b`` with rows and columns in domain order."""
    if not m.is_endomorphism:
        raise MorphismError("incidence matrix needs an endomorphism")
    index = {c: i for i, c in enumerate(m.domain)}
    M = np.zeros((len(m.domain), len(m.domain)), dtype=np.int64)
    for i, img in enumerate(m.images):
        for c in img:
            M[i, index[c]] += 1
    return M


def erasable_letters(m):
    """Letters ``a`` with ``m^n(a)`` empty for some ``n``; needs an endomorphism."""
    erasable = set()
    for _ in range(len(m.domain)):
        grown = {a for a, img in zip(m.domain, m.images) if set(img) <= erasable}
        if grown == erasable:
            break
        erasable = grown
    return frozenset(erasable)


def is_primitive(m):
    if not m.is_endomorphism:
        return None
    M = incidence_matrix(m) > 0
    n = len(m.domain)
    P = M.copy()
    # Wielandt bound on the exponent of a primitive matrix
    for _ in range((n - 1) ** 2 + 1):
        if P.all():
            return True
        P = (P.astype(np.int64) @ M.astype(np.int64)) > 0
    return bool(P.all())


def is_suffix_code(words):
    words = list(words)
    if any(not w for w in words) or len(set(words)) != len(words):
        return False
    return not any(u != w and w.endswith(u) for u in words for w in words)


@dataclass(frozen=True)
class StructuralProfile:
    erasable_letters: frozenset
    non_erasing: bool
    primitive: bool | None
    injective_on_letters: bool
    right_marked: bool
    suffix_code: bool
    constant_length: int | None

    def to_json(self):
        return {
            "erasable_letters": sorted(self.erasable_letters),
            "non_erasing": self.non_erasing,
            "primitive": self.primitive,
            "injective_on_letters": self.injective_on_letters,
            "right_marked": self.right_marked,
            "suffix_code": self.suffix_code,
            "constant_length": self.constant_length,
        }


def morphism_profile(m):
    if m.is_endomorphism:
        erasable = erasable_letters(m)
    else:
        erasable = frozenset(a for a, img in zip(m.domain, m.images) if not img)
    non_erasing = not erasable
    lengths = {len(img) for img in m.images}
    last_letters = [img[-1] for img in m.images if img]
    return StructuralProfile(
        erasable_letters=erasable,
        non_erasing=non_erasing,
        primitive=is_primitive(m),
        injective_on_letters=len(set(m.images)) == len(m.images),
        right_marked=non_erasing and len(set(last_letters)) == len(m.images),
        suffix_code=is_suffix_code(m.images),
        constant_length=lengths.pop() if len(lengths) == 1 else None,
    )


# -- one-sided sequences -------------------------------------------------

@dataclass(frozen=True)
class SequenceGen:
    """Finite description of a right-infinite sequence.

    ``kind`` is one of

    * ``"fixed_point"``: the fixed point of ``m^power`` starting with ``letter``;
    * ``"self_similar"``: the solution of ``x = head . m^power(x)``;
    * ``"periodic"``: ``period`` repeated forever.

    ``prefix`` is prepended to the described sequence.
    """

    morphism: Morphism
    kind: str
    letter: str = ""
    power: int = 1
    head: str = ""
    period: str = ""
    prefix: str = ""

    @classmethod
    def fixed_point(cls, m, letter, power=1, prefix=""):
        return cls(m, "fixed_point", letter=letter, power=power, prefix=prefix)

    @classmethod
    def self_similar(cls, m, head, power=1, prefix=""):
        return cls(m, "self_similar", head=head, power=power, prefix=prefix)

    @classmethod
    def periodic(cls, m, period, prefix=""):
        return cls(m, "periodic", period=period, prefix=prefix)

    def with_prefix(self, prefix):
        return SequenceGen(self.morphism, self.kind, self.letter, self.power,
                           self.head, self.period, prefix + self.prefix)

    def expand(self, n):
        return expand(self, n)

    def describe(self):
        if self.kind == "fixed_point":
            body = f"fix(σ^{self.power}, {self.letter})"
        elif self.kind == "self_similar":
            body = f"x={self.head}·σ^{self.power}(x)"
        else:
            body = f"({self.period})^ω"
        return f"{self.prefix}·{body}" if self.prefix else body

    def to_json(self):
        out = {"prefix": self.prefix}
        if self.kind == "fixed_point":
            out["fixed_point"] = {"letter": self.letter, "power": self.power}
        elif self.kind == "self_similar":
            out["self_similar"] = {"head": self.head, "power": self.power}
        else:
            out["periodic"] = {"word": self.period}
        return out


def _grow(step, start, n):
    word = start
    while len(word) < n:
        nxt = step(word)
        if len(nxt) <= len(word):
            raise DegenerateSequence("generator does not grow")
        word = nxt
    return word


def expand(g, n):
    """Length-``n`` prefix of the sequence described by ``g``."""
    if n < 0:
        raise ValueError("length must be nonnegative")
    need = n - len(g.prefix)
    if need <= 0:
        return g.prefix[:n]
    if g.kind == "periodic":
        if not g.period:
            raise DegenerateSequence("empty period")
        reps = -(-need // len(g.period))
        return g.prefix + (g.period * reps)[:need]
    mk = power(g.morphism, g.power)
    if g.kind == "fixed_point":
        img = mk[g.letter]
        if not img.startswith(g.letter):
            raise DegenerateSequence(f"σ^{g.power}({g.letter}) does not start with {g.letter}")
        body = _grow(lambda w: apply(mk, w), g.letter, need)
    elif g.kind == "self_similar":
        if not g.head:
            raise DegenerateSequence("empty head")
        body = _grow(lambda w: g.head + apply(mk, w), g.head, need)
    else:
        raise ValueError(f"unknown generator kind {g.kind!r}")
    return g.prefix + body[:need]


def seed_is_infinite(m, letter, k):
    """Whether the fixed point of ``m^k`` at ``letter`` is an infinite sequence."""
    img = power(m, k)[letter]
    if not img.startswith(letter):
        return False
    return bool(set(img[1:]) - erasable_letters(m))


def one_sided_seeds(m, k_max=None):
    """Pairs ``(a, k)`` with ``m^k(a)`` starting with ``a``, ``k`` minimal per letter.

    Returns a dict ``{(a, k): infinite}``; a finite fixed word (e.g. the
    identity) is reported with ``infinite=False`` and stands for the
    periodic sequence built on that word.
    """
    if not m.is_endomorphism:
        raise MorphismError("seeds need an endomorphism")
    k_max = k_max or len(m.domain)
    seeds = {}
    for a in m.domain:
        for k in range(1, k_max + 1):
            first = iterate_prefix(m, a, k, 1)
            if first == a:
                seeds[(a, k)] = seed_is_infinite(m, a, k)
                break
    return dict(sorted(seeds.items()))


def finite_fixed_word(m, letter, k):
    """The stable word ``m^{kn}(letter)`` for a non-growing seed."""
    mk = power(m, k)
    word = letter
    for _ in range(len(m.domain) + 2):
        nxt = apply(mk, word)
        if nxt == word:
            return word
        word = nxt
    return word


def seed_generators(m, k_max=None):
    """One :class:`SequenceGen` per seed: fixed points, or periodic when finite."""
    gens = []
    for (a, k), infinite in one_sided_seeds(m, k_max).items():
        if infinite:
            gens.append(SequenceGen.fixed_point(m, a, k))
        else:
            word = finite_fixed_word(m, a, k)
            if word:
                gens.append(SequenceGen.periodic(m, word))
    return gens


def two_sided_seeds(m, language, k_max=None):
    """Triples ``(b, a, k)``: ``m^k(b)`` ends with ``b``, ``m^k(a)`` starts with ``a``, ``ba`` legal."""
    k_max = k_max or len(m.domain)
    out = set()
    for k in range(1, k_max + 1):
        mk = power(m, k)
        for a in m.domain:
            if not seed_is_infinite(m, a, k):
                continue
            for b in m.domain:
                img = mk[b]
                if img.endswith(b) and set(img[:-1]) - erasable_letters(m) and language.contains(b + a):
                    out.add((b, a, k))
    return sorted(out)

"""Desubstitution, scope search and witnesses for (one-sided) recognizability.

A *reading* of a position of ``y = S^k m(x)`` is the tower letter
``(x_i, j)``: the preimage letter whose image covers the position and the
offset ``j`` inside that image. Two-sided recognizability with scope ``N``
holds when the reading of the centre of every legal window of length
``2N+1`` is unique; the one-sided variant reads the left edge of windows
of length ``N``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

from .core import (
    MorphismError,
    SequenceGen,
    apply,
    erasable_letters,
    expand,
    morphism_profile,
    power,
    seed_generators,
)
from .language import (
    FactorLanguage,
    HorizonError,
    build_language,
    extension_counts,
    find_periodic_points,
)

DEFAULT_DEPTH = 1024
DEFAULT_MAX_SCOPE = 16


class NotApplicable(ValueError):
    """The requested analysis needs hypotheses the morphism does not meet."""


class WitnessError(ValueError):
    """A witness is structurally malformed."""


@lru_cache(maxsize=64)
def cached_language(m, n_max):
    return build_language(m, n_max)


def _language(m, L, n):
    if L is None:
        return cached_language(m, max(n, 32))
    if L.horizon < n:
        raise HorizonError(f"language horizon {L.horizon} < required {n}")
    return L


def max_erasable_run(m, L):
    er = erasable_letters(m)
    if not er:
        return 0
    best = 0
    for w in L.words(L.horizon):
        run = 0
        for c in w:
            run = run + 1 if c in er else 0
            best = max(best, run)
    if best >= L.horizon:
        raise HorizonError("runs of erasable letters reach the horizon")
    return best


def _sized_language(m, L, n):
    """A language whose horizon covers preimages of image windows of length ``n``."""
    if L is not None:
        return _language(m, L, cover_bound(m, L, n))
    base = cached_language(m, 32)
    return _language(m, None, cover_bound(m, base, n))


def cover_bound(m, L, n):
    """Number of preimage letters that can cover a factor of length ``n`` of the image."""
    r = max_erasable_run(m, L) if erasable_letters(m) else 0
    return n + (n + 1) * r


# -- parse objects --------------------------------------------------------

@dataclass(frozen=True, order=True)
class Parse:
    """``w`` is ``m(v)[k:k+len(w)]`` with ``k < |m(v_0)|`` and no superfluous last letter."""
    v: str
    k: int


@dataclass(frozen=True)
class Interpretation:
    preimage: str
    offset: int
    covered: str
    center_letter: str | None
    center_phase: int | None


def _legal_tail(L, v):
    n = min(len(v), L.horizon)
    return v[-n:] in L.words(n)


def desubstitute(m, L, w):
    """All parses ``(v, k)`` of the nonempty word ``w`` with ``v`` legal.

    Left-to-right parse: a start letter and offset, then whole images
    (optionally preceded by erasable letters) until ``w`` is consumed.
    Legality of ``v`` is checked on its windows of length up to the
    language horizon.
    """
    if not w:
        return []
    er = sorted(erasable_letters(m))
    solid = [a for a in m.domain if m[a]]
    out = set()
    stack = []
    for a in solid:
        if not L.contains(a):
            continue
        img = m[a]
        for k0 in range(len(img)):
            tail = img[k0:]
            if tail.startswith(w):
                out.add(Parse(a, k0))
            elif w.startswith(tail):
                stack.append((a, len(tail), k0))
    while stack:
        v, pos, k0 = stack.pop()
        rest = w[pos:]
        for b in solid:
            img = m[b]
            if img.startswith(rest):
                if _legal_tail(L, v + b):
                    out.add(Parse(v + b, k0))
            elif rest.startswith(img) and _legal_tail(L, v + b):
                stack.append((v + b, pos + len(img), k0))
        for e in er:
            if _legal_tail(L, v + e):
                stack.append((v + e, pos, k0))
    return sorted(out)


def is_legal(m, L, w):
    """Exact membership of ``w`` in the generated language, for any length.

    Words within the horizon are looked up. A longer legal word is a factor
    of the image of a legal preimage, so preimages are searched until one
    falls within the horizon; the search fails when none is reachable.
    """
    if len(w) <= L.horizon:
        return L.contains(w)
    if any(w in (p * (len(w) // len(p) + 2)) for p in L.periodic_closure):
        return True
    seen, stack = {w}, [w]
    while stack:
        u = stack.pop()
        if len(u) <= L.horizon:
            if L.contains(u):
                return True
            continue
        if L.first_illegal(u) is not None:
            continue
        for p in desubstitute(m, L, u):
            if p.v not in seen:
                seen.add(p.v)
                stack.append(p.v)
    return False


def legal_prefix_length(m, L, w):
    """Length of the longest legal prefix of ``w`` (binary search on prefixes)."""
    lo, hi = 0, len(w)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if is_legal(m, L, w[:mid]):
            lo = mid
        else:
            hi = mid - 1
    return lo


def _locate(m, v, pos):
    """Letter of ``v`` whose image covers position ``pos`` of ``m(v)``, and the offset."""
    acc = 0
    for c in v:
        n = len(m[c])
        if pos < acc + n:
            return c, pos - acc
        acc += n
    raise IndexError(pos)


def interpretations(m, L, w):
    """Parses of ``w`` decorated with the reading of its centre (odd lengths)."""
    out = []
    for p in desubstitute(m, L, w):
        if len(w) % 2:
            letter, phase = _locate(m, p.v, p.k + len(w) // 2)
        else:
            letter, phase = None, None
        out.append(Interpretation(p.v, p.k, w, letter, phase))
    return out


# -- readings and scope checks ------------------------------------------

def _owners(m, v):
    owner = []
    for c in v:
        owner.extend((c, j) for j in range(len(m[c])))
    return owner


def window_readings(m, L, n, anchor):
    """Map each legal image window of length ``n`` to the readings at ``anchor``.

    ``anchor`` is the index inside the window that is read (``n // 2`` for
    centred two-sided windows, ``0`` for one-sided windows).
    """
    cover = cover_bound(m, L, n)
    L = _language(m, L, cover)
    readings = {}
    for v in L.words(cover):
        img = apply(m, v)
        owner = _owners(m, v)
        for p in range(len(img) - n + 1):
            readings.setdefault(img[p:p + n], set()).add(owner[p + anchor])
    return readings


def _ambiguous(readings):
    return sorted(w for w, r in readings.items() if len(r) > 1)


@dataclass
class PeriodicWitness:
    point: str
    representations: list

    def to_json(self):
        return {"periodic_point": self.point,
                "representations": [{"x": f"({z})^∞", "k": k} for z, k in self.representations]}


@dataclass
class RecognizabilityVerdict:
    mode: str
    status: str
    scope: int | None = None
    searched_to: int | None = None
    witnesses: list = field(default_factory=list)
    aperiodic_only: str | None = None
    aperiodic_scope: int | None = None
    method: str = "scope"
    horizon: int | None = None

    @property
    def recognizable(self):
        return self.status == "recognizable"

    def to_json(self):
        return {
            "mode": self.mode,
            "status": self.status,
            "scope": self.scope,
            "searched_to": self.searched_to,
            "method": self.method,
            "aperiodic_only": self.aperiodic_only,
            "aperiodic_scope": self.aperiodic_scope,
            "horizon": self.horizon,
            "witnesses": [w.to_json() for w in self.witnesses],
        }


def _primitive_period(word):
    i = (word + word).find(word, 1)
    return word[:i]


def periodic_witnesses(m, L, p_max=8):
    """Periodic points ``w^∞`` whose image has two or more representations."""
    points = find_periodic_points(m, p_max, L=L) if L.horizon >= 2 * p_max else \
        find_periodic_points(m, max(1, L.horizon // 2), L=L)
    rotations = []
    for w in points:
        for j in range(len(w)):
            rotations.append(w[j:] + w[:j])
    out = []
    for w in points:
        y_word = apply(m, w)
        if not y_word:
            continue
        probe = 2 * (len(y_word) + max(len(apply(m, z)) for z in rotations)) + 2
        target = (y_word * (probe // len(y_word) + 2))[:probe]
        reps = []
        for z in rotations:
            img = apply(m, z)
            if not img:
                continue
            block = img * (probe // len(img) + 3)
            for k in range(len(m[z[0]])):
                if block[k:k + probe] == target:
                    reps.append((z, k))
        if len(reps) > 1:
            out.append(PeriodicWitness(w, sorted(reps)))
    return out


def _periodic_image_factors(m, L, n, p_max=8):
    facs = set()
    for w in find_periodic_points(m, min(p_max, L.horizon // 2), L=L):
        img = apply(m, w)
        if img:
            block = img * (n // len(img) + 2)
            facs.update(block[i:i + n] for i in range(len(img)))
    return facs


def scope_ok(m, L, N, mode="two-sided", exclude_periodic=False):
    if mode == "two-sided":
        readings = window_readings(m, L, 2 * N + 1, N)
    else:
        readings = window_readings(m, L, N, 0)
    bad = _ambiguous(readings)
    if exclude_periodic and bad:
        n = 2 * N + 1 if mode == "two-sided" else N
        skip = _periodic_image_factors(m, L, n)
        bad = [w for w in bad if w not in skip]
    return not bad


def two_sided_verdict(m, L=None, N_max=DEFAULT_MAX_SCOPE):
    if not m.is_endomorphism:
        raise MorphismError("two-sided verdict needs an endomorphism")
    L = _sized_language(m, L, 2 * N_max + 1)
    for N in range(N_max + 1):
        if scope_ok(m, L, N):
            return RecognizabilityVerdict("two-sided", "recognizable", scope=N,
                                          searched_to=N, aperiodic_only="recognizable",
                                          aperiodic_scope=N, horizon=L.horizon)
    witnesses = periodic_witnesses(m, L)
    ap_status, ap_scope = "unknown", None
    for N in range(N_max + 1):
        if scope_ok(m, L, N, exclude_periodic=True):
            ap_status, ap_scope = "recognizable", N
            break
    if witnesses:
        return RecognizabilityVerdict("two-sided", "not_recognizable", searched_to=N_max,
                                      witnesses=witnesses, aperiodic_only=ap_status,
                                      aperiodic_scope=ap_scope, method="periodic-witness",
                                      horizon=L.horizon)
    return RecognizabilityVerdict("two-sided", "unknown", searched_to=N_max,
                                  aperiodic_only=ap_status, aperiodic_scope=ap_scope,
                                  horizon=L.horizon)


def one_sided_scope(m, L, N_max):
    for N in range(1, N_max + 1):
        if scope_ok(m, L, N, mode="one-sided"):
            return N
    return None


def one_sided_verdict(m, L=None, N_max=DEFAULT_MAX_SCOPE, u_len_max=3, depth=DEFAULT_DEPTH,
                      k_max=4, two_sided=None):
    if not m.is_endomorphism:
        raise MorphismError("one-sided verdict needs an endomorphism")
    L = _sized_language(m, L, max(N_max, 2 * min(N_max, 8) + 1))
    two = two_sided if two_sided is not None else two_sided_verdict(m, L, min(N_max, 8))
    fast = morphism_profile(m).right_marked and two.recognizable
    N = one_sided_scope(m, L, N_max)
    if N is not None:
        return RecognizabilityVerdict("one-sided", "recognizable", scope=N, searched_to=N,
                                      method="scope+right-marked" if fast else "scope",
                                      horizon=L.horizon)
    if fast:
        return RecognizabilityVerdict("one-sided", "recognizable", searched_to=N_max,
                                      method="right-marked", horizon=L.horizon)
    wits = witness_search(m, L, u_len_max=u_len_max, depth=depth, k_max=k_max)
    if wits:
        return RecognizabilityVerdict("one-sided", "not_recognizable", searched_to=N_max,
                                      witnesses=wits, method="witness", horizon=L.horizon)
    return RecognizabilityVerdict("one-sided", "unknown", searched_to=N_max, horizon=L.horizon)


# -- towers -----------------------------------------------------------------

@dataclass
class TowerPartitionTable:
    scope: int
    windows: dict

    def tower_letters(self):
        return sorted(self.windows)

    def to_json(self):
        return {"scope": self.scope,
                "windows": {f"{a},{k}": ws for (a, k), ws in sorted(self.windows.items())}}


def tower_partition(m, L, N):
    readings = window_readings(m, L, 2 * N + 1, N)
    bad = _ambiguous(readings)
    if bad:
        raise NotApplicable(f"scope {N} does not determine the tower letter (e.g. {bad[0]!r})")
    table = {}
    for w, r in readings.items():
        (letter,) = r
        table.setdefault(letter, []).append(w)
    return TowerPartitionTable(N, {k: sorted(v) for k, v in sorted(table.items())})


def tower_walk(m, x_prefix, k, steps):
    """Iterate the tower map from ``(x, k)`` and emit the tower letters ``(x_0, k)``."""
    if not x_prefix or not (0 <= k < len(m[x_prefix[0]])):
        raise ValueError("need 0 <= k < |m(x_0)|")
    out, i = [], 0
    while len(out) < steps:
        if i >= len(x_prefix):
            raise ValueError("prefix exhausted")
        n = len(m[x_prefix[i]])
        while k < n and len(out) < steps:
            out.append((x_prefix[i], k))
            k += 1
        i, k = i + 1, 0
    return out


# -- cutting points and the local (Mossé) formulation ------------------------

@dataclass(frozen=True)
class CuttingPointSet:
    positions: tuple
    prefix_len: int

    def __contains__(self, i):
        return i in set(self.positions)


def _preimage_for(m, x, prefix_len):
    n = max(1, prefix_len // max(1, m.min_length or 1))
    while True:
        pre = expand(x, n)
        if len(apply(m, pre)) >= prefix_len or n > 64 * prefix_len + 64:
            return pre
        n *= 2


def cutting_points(m, x, prefix_len):
    if prefix_len < 1:
        raise ValueError("prefix_len must be positive")
    pre = _preimage_for(m, x, prefix_len)
    cuts, acc = [0], 0
    for c in pre:
        acc += len(m[c])
        if acc > prefix_len:
            break
        if acc != cuts[-1]:
            cuts.append(acc)
    return CuttingPointSet(tuple(cuts), prefix_len)


def mosse_check(m, x, N, prefix_len, mode="two-sided"):
    """Equal windows force equal cut status over the generated prefix of ``m(x)``."""
    y = apply(m, _preimage_for(m, x, prefix_len))[:prefix_len]
    cuts = set(cutting_points(m, x, prefix_len).positions)
    status = {}
    if mode == "two-sided":
        positions = range(N, len(y) - N)
        key = lambda i: y[i - N:i + N + 1]
    else:
        positions = range(0, len(y) - N + 1)
        key = lambda i: y[i:i + N]
    for i in positions:
        w = key(i)
        c = i in cuts
        if status.setdefault(w, c) != c:
            return False
    return True


# -- one-sided representations of a long prefix ----------------------------

def prefix_representations(m, L, y, settle=None, cap=20000):
    """Distinct representations ``(z, k)`` of a right-infinite ``y`` known by a prefix.

    Every ``z`` returned is legal on its windows and ``S^k m(z)`` agrees
    with ``y`` on the whole prefix; ``z`` is cut back to the letters whose
    images end within the first ``settle`` symbols (default half the
    prefix) so that representations differing only at the far end merge.
    """
    if not y:
        raise ValueError("empty prefix")
    settle = len(y) // 2 if settle is None else settle
    er = sorted(erasable_letters(m))
    solid = [a for a in m.domain if m[a]]
    frontier = []
    for a in solid:
        if not L.contains(a):
            continue
        img = m[a]
        for k in range(len(img)):
            tail = img[k:]
            if tail.startswith(y) or y.startswith(tail):
                frontier.append((a, k, len(tail)))
    done = []
    while frontier:
        nxt = []
        for z, k, pos in frontier:
            if pos >= len(y):
                done.append((z, k))
                continue
            rest = y[pos:]
            stack = [z]
            seen = set()
            while stack:
                zz = stack.pop()
                for b in solid:
                    img = m[b]
                    if (rest.startswith(img) or img.startswith(rest)) and _legal_tail(L, zz + b):
                        nxt.append((zz + b, k, pos + len(img)))
                for e in er:
                    ze = zz + e
                    if ze not in seen and _legal_tail(L, ze):
                        seen.add(ze)
                        stack.append(ze)
        if len(nxt) > cap:
            raise HorizonError("too many partial parses")
        frontier = nxt
    out = set()
    for z, k in done:
        if not is_legal(m, L, z):
            continue
        acc, keep = -k, 0
        for i, c in enumerate(z):
            acc += len(m[c])
            if acc <= settle:
                keep = i + 1
        out.add((z[:max(keep, 1)], k))
    return sorted(out)


# -- witnesses of one-sided non-recognizability ----------------------------

@dataclass
class OneSidedWitness:
    u: str
    u_prime: str
    v: str
    x: SequenceGen
    k: int
    k_prime: int
    certified_depth: int = 0

    def representations(self):
        return (self.u, self.k), (self.u_prime, self.k_prime)

    def y_prefix(self, n):
        m = self.x.morphism
        return (self.v + apply(m, _preimage_for(m, self.x, n)))[:n]

    def to_json(self):
        return {"u": self.u, "u_prime": self.u_prime, "v": self.v, "x": self.x.to_json(),
                "x_desc": self.x.describe(), "k": self.k, "k_prime": self.k_prime,
                "certified_depth": self.certified_depth}


@dataclass
class Certificate:
    certified: bool
    certified_depth: int
    failed: list


def verify_witness(m, L, wit, depth=DEFAULT_DEPTH):
    failed = []
    if not wit.u or not wit.u_prime or not wit.v:
        raise WitnessError("u, u' and v must be nonempty")
    if wit.u[-1] == wit.u_prime[-1]:
        failed.append("iii: last letters of u and u' coincide")
    su, su2 = apply(m, wit.u), apply(m, wit.u_prime)
    if not (su.endswith(wit.v) and su2.endswith(wit.v)):
        failed.append("ii: v is not a common suffix of m(u) and m(u')")
    k, k2 = len(su) - len(wit.v), len(su2) - len(wit.v)
    if (k, k2) != (wit.k, wit.k_prime):
        failed.append("ii: phases disagree with m(u) = p v")
    if not (0 <= k < len(m[wit.u[0]]) and 0 <= k2 < len(m[wit.u_prime[0]])):
        failed.append("ii: p is not a proper prefix of the first image")
    x = expand(wit.x, depth)
    reached = depth
    for label, head in (("u", wit.u), ("u'", wit.u_prime)):
        if not is_legal(m, L, head + x):
            good = legal_prefix_length(m, L, head + x)
            failed.append(f"i: {label}·x leaves the language at length {good + 1}")
            reached = min(reached, max(0, good - len(head)))
    pre = _preimage_for(m, wit.x, depth)
    y = (wit.v + apply(m, pre))[:depth]
    y1 = apply(m, wit.u + pre)[k:k + depth]
    y2 = apply(m, wit.u_prime + pre)[k2:k2 + depth]
    if not (y == y1 == y2) or len(y) < depth:
        failed.append("ii: the two representations disagree")
    ok = not failed
    return Certificate(ok, depth if ok else reached, failed)


def _dedupe(gens, L, depth):
    out, seen = [], {}
    for g in gens:
        try:
            pre = expand(g, depth)
        except (ValueError, MorphismError):
            continue
        if len(pre) < depth or pre in seen:
            continue
        if L.first_illegal(pre) is not None or not is_legal(g.morphism, L, pre):
            continue
        seen[pre] = g
        out.append(g)
    return out


def candidate_sequences(m, L, k_max=4, head_len_max=None, prefix_runs=4, depth=None):
    """Right-infinite sequences of the shift with a finite self-similar description.

    Fixed points of ``m^k``, solutions of ``x = h m^k(x)`` for short legal
    heads ``h``, and the periodic points; when periodic points exist the
    sequences prefixed by up to ``prefix_runs`` copies of a period are added.
    """
    depth = depth or min(L.horizon * 4, 256)
    head_len_max = head_len_max or max(1, min(2 * m.max_length, 8))
    gens = []
    for k in range(1, k_max + 1):
        mk = power(m, k)
        for g in seed_generators(mk):
            if g.kind == "fixed_point":
                gens.append(SequenceGen.fixed_point(m, g.letter, k))
    for w in find_periodic_points(m, min(6, L.horizon // 2), L=L):
        gens.append(SequenceGen.periodic(m, w))
    for k in range(1, k_max + 1):
        for n in range(1, head_len_max + 1):
            for h in L.sorted_words(n):
                gens.append(SequenceGen.self_similar(m, h, k))
    base = _dedupe(gens, L, depth)
    periods = [g.period for g in base if g.kind == "periodic"]
    extra = []
    for w in periods:
        for g in base:
            if g.kind == "periodic":
                continue
            for r in range(1, prefix_runs + 1):
                extra.append(g.with_prefix(w * r))
    return _dedupe(base + extra, L, depth)


def sequence_left_extensions(m, L, prefix):
    """Letters ``a`` with ``a·prefix`` legal, decided exactly on the given prefix."""
    return [a for a in L.alphabet if is_legal(m, L, a + prefix)]


@dataclass
class LeftSpecial:
    sequence: SequenceGen
    extensions: list
    family: str = "minimal"

    @property
    def ell(self):
        return len(self.extensions)

    def to_json(self):
        return {"x": self.sequence.to_json(), "desc": self.sequence.describe(),
                "ell": self.ell, "extensions": self.extensions, "family": self.family}


def left_special_sequences(m, L=None, k_max=4, depth=None):
    """Candidate sequences with at least two legal left extensions.

    Extensions are tested exactly on the length-``depth`` prefix.
    """
    L = _language(m, L, 8)
    depth = depth or min(L.horizon * 4, 256)
    prof = morphism_profile(m)
    out = []
    for g in candidate_sequences(m, L, k_max=k_max, depth=depth):
        ext = sequence_left_extensions(m, L, expand(g, depth))
        if len(ext) >= 2:
            family = "minimal" if prof.primitive else "non-minimal"
            out.append(LeftSpecial(g, ext, family))
    return out


def witness_search(m, L=None, u_len_max=3, depth=DEFAULT_DEPTH, k_max=4):
    L = _language(m, L, 8)
    found = {}
    for g in candidate_sequences(m, L, k_max=k_max):
        x = expand(g, depth)
        probe = x[:L.horizon]
        heads = {}
        for n in range(1, u_len_max + 1):
            for u in L.sorted_words(n):
                if not m[u[0]] or L.first_illegal(u + probe) is not None:
                    continue
                heads.setdefault(u[-1], []).append(u)
        letters = sorted(heads)
        for i, a in enumerate(letters):
            for b in letters[i + 1:]:
                for u in heads[a]:
                    for u2 in heads[b]:
                        for wit in _pair_witnesses(m, u, u2, g):
                            key = (wit.u, wit.u_prime, wit.v, x[:64])
                            if key in found:
                                continue
                            cert = verify_witness(m, L, wit, depth)
                            if cert.certified:
                                wit.certified_depth = cert.certified_depth
                                found[key] = wit
    return [found[k] for k in sorted(found, key=lambda t: (len(t[0]) + len(t[1]), t))]


@dataclass
class WeakCheck:
    passed: bool
    depth: int
    checked: list
    failures: list

    def to_json(self):
        return {"passed": self.passed, "depth": self.depth,
                "checked": [g.describe() for g in self.checked],
                "failures": [{"x": g.describe(), "representations": reps}
                             for g, reps in self.failures]}


def weak_one_sided_check(m, L=None, depth=512, k_max=4):
    """Check that ``m(x)`` has the single representation ``(x, 0)`` for candidate ``x``.

    Candidates are the sequences from :func:`candidate_sequences`; a failure
    is any other representation of the length-``depth`` prefix of ``m(x)``.
    """
    L = _language(m, L, 8)
    checked, failures = [], []
    for g in candidate_sequences(m, L, k_max=k_max):
        x = expand(g, depth)
        y = apply(m, x)[:depth]
        if len(y) < depth:
            continue
        checked.append(g)
        reps = prefix_representations(m, L, y)
        others = [(z, k) for z, k in reps if not (k == 0 and x.startswith(z))]
        if others:
            failures.append((g, reps))
    return WeakCheck(not failures, depth, checked, failures)


def _pair_witnesses(m, u, u2, x):
    su, su2 = apply(m, u), apply(m, u2)
    lo = max(len(apply(m, u[1:])), len(apply(m, u2[1:]))) + 1
    hi = min(len(su), len(su2))
    for n in range(lo, hi + 1):
        v = su[-n:]
        if su2.endswith(v):
            # representations listed with the smaller phase first
            a, b = sorted([(len(su) - n, u), (len(su2) - n, u2)])
            yield OneSidedWitness(a[1], b[1], v, x, a[0], b[0])


# -- almost one-sided recognizability ----------------------------------------

@dataclass
class ExceptionalPoint:
    sequence: SequenceGen
    shift: int
    representations: list

    def to_json(self):
        return {"t": self.sequence.describe(), "shift": self.shift,
                "representations": [{"z_prefix": z, "k": k} for z, k in self.representations]}


@dataclass
class ExceptionalReport:
    scope: int
    depth: int
    points: list

    def shifts(self):
        return sorted({(p.sequence.describe(), p.shift) for p in self.points})

    def to_json(self):
        return {"scope": self.scope, "depth": self.depth,
                "points": [p.to_json() for p in self.points]}


def exceptional_points(m, L=None, depth=DEFAULT_DEPTH, two_sided=None):
    """Shifts ``S^i t`` (``t`` left-special, ``i`` up to the scope) with two representations."""
    L = _language(m, L, 8)
    if not morphism_profile(m).primitive:
        raise NotApplicable("exceptional points need a minimal shift")
    if find_periodic_points(m, min(8, L.horizon // 2), L=L):
        raise NotApplicable("the shift has periodic points")
    two = two_sided or two_sided_verdict(m)
    if not two.recognizable:
        raise NotApplicable("no two-sided scope found")
    points = []
    for ls in left_special_sequences(m, L):
        t = expand(ls.sequence, depth + two.scope + 1)
        for i in range(two.scope + 1):
            reps = prefix_representations(m, L, t[i:i + depth])
            if len(reps) > 1:
                points.append(ExceptionalPoint(ls.sequence, i, reps))
    return ExceptionalReport(two.scope, depth, points)


# -- asymptotic classes --------------------------------------------------------

@dataclass
class AsymptoticReport:
    generators: list
    groups: list
    omega: list
    depth: int

    def to_json(self):
        return {"depth": self.depth,
                "groups": [[g.sequence.describe() for g in grp] for grp in self.groups],
                "omega": self.omega}


def asymptotic_report(m, L=None, depth=256, shift_max=None):
    """Group left-special generators whose tails agree after bounded shifts."""
    L = _language(m, L, 8)
    gens = left_special_sequences(m, L)
    shift_max = shift_max or 4 * m.max_length + 8
    tails = [expand(g.sequence, depth + shift_max) for g in gens]
    parent = list(range(len(gens)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            a, b = tails[i], tails[j]
            if any(a[s:s + depth - shift_max] == b[r:r + depth - shift_max]
                   for s in range(shift_max) for r in range(shift_max)):
                parent[find(i)] = find(j)
    groups = {}
    for i, g in enumerate(gens):
        groups.setdefault(find(i), []).append(g)
    grouped = sorted(groups.values(), key=lambda grp: grp[0].sequence.describe())
    omega = [sum(g.ell - 1 for g in grp) for grp in grouped]
    return AsymptoticReport(gens, grouped, omega, depth)

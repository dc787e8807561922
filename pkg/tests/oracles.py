"""Slow, direct reference implementations used to cross-check the library.

Nothing here imports the library's parsing or language code; only the
letter table of a morphism is read.
"""
from itertools import product


def image(m, word):
    return "".join(m[c] for c in word)


def brute_factors(m, n_max, total=200_000):
    """Factors of length <= n_max of the words m^d(a), grown until ``total`` letters."""
    out = [set() for _ in range(n_max + 1)]
    out[0].add("")
    for a in m.domain:
        w = a
        for _ in range(200):
            for n in range(1, n_max + 1):
                out[n].update(w[i:i + n] for i in range(len(w) - n + 1))
            nxt = image(m, w)
            if len(nxt) > total or nxt == w:
                break
            w = nxt
    return out


def naive_parses(m, words_by_len, w, v_len_max):
    """All (v, k): v legal, first and last letters non-erasable, w = m(v)[k:k+|w|] minimally."""
    found = set()
    for n in range(1, v_len_max + 1):
        for v in words_by_len[n]:
            if not m[v[0]] or not m[v[-1]]:
                continue
            img = image(m, v)
            before_last = len(img) - len(m[v[-1]])
            for k in range(len(m[v[0]])):
                if img[k:k + len(w)] == w and len(w) == len(img[k:k + len(w)]) and k + len(w) > before_last:
                    found.add((v, k))
    return found


def annotated_fixed_point(m, letter, length):
    """Prefix of the fixed point at ``letter`` with (preimage letter, phase) per position."""
    x = letter
    while len(image(m, x)) < length + 1:
        x = image(m, x)
    y, reading = [], []
    for c in x:
        for k, d in enumerate(m[c]):
            y.append(d)
            reading.append((c, k))
    return "".join(y[:length]), reading[:length]


def brute_two_sided_scope(m, letter, length, N_max):
    """Least N such that radius-N windows of the fixed point determine the reading."""
    y, reading = annotated_fixed_point(m, letter, length)
    for N in range(N_max + 1):
        seen = {}
        ok = True
        for p in range(N, len(y) - N):
            key = y[p - N:p + N + 1]
            if seen.setdefault(key, reading[p]) != reading[p]:
                ok = False
                break
        if ok:
            return N
    return None


def words_over(alphabet, n):
    return ["".join(t) for t in product(alphabet, repeat=n)]

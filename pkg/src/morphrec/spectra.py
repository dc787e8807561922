"""Root-of-unity eigenfunctions of constant-length substitution shifts.

For a constant-length morphism of length ``h`` that is two-sided
recognizable, every position of a point has a well-defined phase in
``Z/h`` (its offset inside the image block covering it). The function
``f = ζ^{j·phase}`` with ``ζ = e^{2πi/h}`` then satisfies
``f(Sx) = ζ^j f(x)``. Values are kept as exponents modulo ``h``, so the
comparison is exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .core import MorphismError, expand, morphism_profile
from .recognizability import (
    NotApplicable,
    _sized_language,
    two_sided_verdict,
    window_readings,
)


@dataclass
class EigenCheckReport:
    j: int
    h: int
    sample_len: int
    max_defect: int
    passed: bool
    scope: int
    phases: list = field(default_factory=list, repr=False)

    @property
    def max_defect_abs(self):
        # |ζ^a - ζ^b| for an exponent gap d is 2|sin(πd/h)|
        return 2 * abs(math.sin(math.pi * self.max_defect / self.h))

    def to_json(self):
        return {"lambda": {"j": self.j, "h": self.h}, "sample_len": self.sample_len,
                "passed": self.passed, "max_defect_gap": self.max_defect,
                "scope": self.scope}


def phase_sequence(m, x, length, L=None, two_sided=None):
    """Tower phases of positions ``N .. length-N-1`` of ``x`` read through scope-``N`` windows.

    Returns ``(N, phases)`` where ``phases[i]`` belongs to position ``N + i``.
    """
    two = two_sided or two_sided_verdict(m, L)
    if not two.recognizable:
        raise NotApplicable("phase needs a two-sided recognizable morphism")
    N = two.scope
    L = _sized_language(m, L, 2 * N + 1)
    readings = window_readings(m, L, 2 * N + 1, N)
    y = expand(x, length)
    phases = []
    for p in range(N, length - N):
        win = y[p - N:p + N + 1]
        reads = readings.get(win)
        if not reads:
            raise NotApplicable(f"window {win!r} at position {p} has no reading")
        if len(reads) > 1:
            raise NotApplicable(f"window {win!r} at position {p} is ambiguous")
        (_letter, phase), = reads
        phases.append(phase)
    return N, phases


def eigen_check(m, j, x, sample_len, L=None, two_sided=None):
    """Check ``f(S·) = ζ^j f(·)`` on ``sample_len`` positions of ``x``."""
    prof = morphism_profile(m)
    if prof.constant_length is None:
        raise MorphismError("eigen_check needs a constant-length morphism")
    h = prof.constant_length
    if not 0 <= j < h:
        raise ValueError(f"j must lie in [0, {h})")
    if j == 0:
        # the constant function needs no phase
        return EigenCheckReport(0, h, sample_len, 0, True, None)
    two = two_sided or two_sided_verdict(m, L)
    if not two.recognizable:
        raise NotApplicable("phase needs a two-sided recognizable morphism")
    N, phases = phase_sequence(m, x, sample_len + 2 * two.scope + 1, L, two)
    worst = 0
    for a, b in zip(phases, phases[1:]):
        gap = (j * b - j * a - j) % h
        worst = max(worst, min(gap, h - gap))
    return EigenCheckReport(j, h, sample_len, worst, worst == 0, N, phases)

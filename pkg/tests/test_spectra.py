import pytest

from morphrec.core import MorphismError, SequenceGen, expand, parse_morphism
from morphrec.recognizability import NotApplicable, tower_walk, two_sided_verdict
from morphrec.spectra import eigen_check, phase_sequence

TM = "a:ab,b:ba"
PDC = "a:ba,b:aa"
CONSTANT_RECOGNIZABLE = [TM, "a:ab,b:aa", PDC, "a:aab,b:bba", "a:a"]


def fixed(m):
    if m["a"].startswith("a"):
        return SequenceGen.fixed_point(m, "a") if len(m["a"]) > 1 else SequenceGen.periodic(m, "a")
    return SequenceGen.self_similar(m, "a")


@pytest.mark.parametrize("text,j", [(TM, 1), (PDC, 1), ("a:ab,b:aa", 1), ("a:aab,b:bba", 1), ("a:aab,b:bba", 2)])
def test_eigenvalue_passes(text, j):
    m = parse_morphism(text)
    r = eigen_check(m, j, fixed(m), 4096)
    assert r.passed and r.max_defect == 0 and r.max_defect_abs == 0


@pytest.mark.parametrize("text", CONSTANT_RECOGNIZABLE)
def test_trivial_eigenvalue(text):
    m = parse_morphism(text)
    assert eigen_check(m, 0, fixed(m), 1024).passed


def test_report_json():
    m = parse_morphism(TM)
    r = eigen_check(m, 1, fixed(m), 64)
    assert r.to_json() == {"lambda": {"j": 1, "h": 2}, "sample_len": 64, "passed": True,
                           "max_defect_gap": 0, "scope": 2}


def test_rejects_non_constant_length():
    m = parse_morphism("a:ab,b:a")
    with pytest.raises(MorphismError):
        eigen_check(m, 1, SequenceGen.fixed_point(m, "a"), 100)


def test_rejects_bad_j():
    m = parse_morphism(TM)
    with pytest.raises(ValueError):
        eigen_check(m, 2, fixed(m), 100)


def test_rejects_non_recognizable():
    m = parse_morphism("a:aa")
    with pytest.raises(NotApplicable):
        eigen_check(m, 1, SequenceGen.periodic(m, "a"), 100)
    # the constant eigenfunction needs no phase
    assert eigen_check(m, 0, SequenceGen.periodic(m, "a"), 100).passed


@pytest.mark.parametrize("text", [TM, "a:ab,b:aa", "a:aab,b:bba"])
def test_phase_agrees_with_tower_walk(text):
    m = parse_morphism(text)
    x = fixed(m)
    N, phases = phase_sequence(m, x, 600)
    # the fixed point is its own image, so the walk from (x, 0) reads the phase
    walk = tower_walk(m, expand(x, 600), 0, 600)
    assert phases == [k for _, k in walk[N:600 - N]]
    assert two_sided_verdict(m).scope == N

import random
from fractions import Fraction

import pytest

from cubetri.acsa import (
    ModuleActionTriple,
    ModuleType,
    ab_type,
    b_type,
    build_canonical,
    check_relations,
    classify,
    is_irreducible,
    scale_to_normalized,
)
from cubetri.exactnum import gr
from cubetri.linalg import ExactMatrix, invert, rank

ALL_TYPES_SMALL = [b_type(d) for d in range(0, 11, 2)] + [
    ab_type(d, n) for d in range(0, 11) for n in "0xyz"
]


def test_module_type_text_round_trip():
    for t in ALL_TYPES_SMALL:
        assert ModuleType.parse(str(t)) == t
    with pytest.raises(ValueError):
        ModuleType.parse("B(3)")  # odd diameter has no B module
    with pytest.raises(ValueError):
        ModuleType.parse("AB(2,w)")


def test_b2_canonical_matrices():
    t = build_canonical(b_type(2))
    assert t.x_mat == ExactMatrix.diagonal([2, 0, -2])
    assert t.y_mat == ExactMatrix.from_rows([[0, 2, 0], [1, 0, 1], [0, 2, 0]])


def test_b0_is_zero():
    t = build_canonical(b_type(0))
    assert all(m.is_zero() for m in t.matrices())
    assert is_irreducible(t)


def test_ab_trace_of_x():
    for d in range(0, 8):
        t = build_canonical(ab_type(d, "0"))
        assert t.x_mat.trace() == (-1) ** d * (d + 1)


def test_ab2x_traces():
    t = build_canonical(ab_type(2, "x"))
    assert t.traces() == (gr(3), gr(-3), gr(-3))


def test_relations_hold_for_b4():
    ok, detail = check_relations(build_canonical(b_type(4)))
    assert ok and detail is None


def test_relations_trivial_cases():
    zero = ExactMatrix.zeros(3, 3)
    ok, _ = check_relations(ModuleActionTriple(zero, zero, zero))
    assert ok
    eye = ExactMatrix.identity(3)
    ok, detail = check_relations(ModuleActionTriple(eye, eye, zero))
    assert not ok
    assert "xy+yx=2z" in detail


def _direct_sum(t1, t2):
    n1, n2 = t1.dimension, t2.dimension
    mats = []
    for m1, m2 in zip(t1.matrices(), t2.matrices()):
        entries = dict(m1.entries)
        entries.update({(r + n1, c + n1): v for (r, c), v in m2.entries.items()})
        mats.append(ExactMatrix(n1 + n2, n1 + n2, entries))
    return ModuleActionTriple(*mats)


def test_irreducibility():
    assert is_irreducible(build_canonical(ab_type(3, "y")))
    b2 = build_canonical(b_type(2))
    assert not is_irreducible(_direct_sum(b2, b2))
    assert not is_irreducible(_direct_sum(b2, build_canonical(ab_type(1, "x"))))


def test_canonical_round_trip_all_families():
    for t in ALL_TYPES_SMALL:
        triple = build_canonical(t)
        ok, detail = check_relations(triple)
        assert ok, (t, detail)
        assert is_irreducible(triple), t
        assert classify(triple) == t


def _random_invertible(rng, n):
    while True:
        m = ExactMatrix(
            n,
            n,
            {
                (r, c): gr(rng.randint(-3, 3), rng.randint(-1, 1))
                for r in range(n)
                for c in range(n)
                if rng.random() < 0.7
            },
        )
        if rank(m) == n:
            return m


def test_classify_is_conjugation_invariant():
    rng = random.Random(1234)
    for t in [b_type(4), ab_type(2, "x"), ab_type(3, "z"), ab_type(1, "y")]:
        triple = build_canonical(t)
        g = _random_invertible(rng, t.dimension)
        ginv = invert(g)
        conj = ModuleActionTriple(*(g @ m @ ginv for m in triple.matrices()))
        assert classify(conj) == t


def test_classify_rejects_unknown_trace_pattern():
    eye = ExactMatrix.identity(3)
    zero = ExactMatrix.zeros(3, 3)
    with pytest.raises(ValueError):
        classify(ModuleActionTriple(eye, zero, zero))


def test_scale_to_normalized_all_plus_two():
    sols = scale_to_normalized(build_canonical(b_type(4)), gr(2), gr(2), gr(2))
    assert set(sols) == {
        (gr(1), gr(1), gr(1)),
        (gr(1), gr(-1), gr(-1)),
        (gr(-1), gr(1), gr(-1)),
        (gr(-1), gr(-1), gr(1)),
    }


def test_scale_to_normalized_all_minus_two():
    # oracle: substitute back into the anticommutator relations; for
    # nu = nu* = nu^eps = -2 that forces real sign triples with product -1
    sols = scale_to_normalized(None, gr(-2), gr(-2), gr(-2))
    assert set(sols) == {
        (gr(-1), gr(1), gr(1)),
        (gr(1), gr(-1), gr(1)),
        (gr(1), gr(1), gr(-1)),
        (gr(-1), gr(-1), gr(-1)),
    }
    for xi, xi_star, xi_eps in sols:
        assert xi * xi * (gr(-2) * gr(-2)) == gr(4)
        assert xi * xi_star * xi_eps == gr(8) / gr(-8)


def test_scale_to_normalized_mixed_signs():
    sols = scale_to_normalized(None, gr(2), gr(-2), gr(-2))
    assert (gr(-1), gr(0, 1), gr(0, 1)) in sols
    for xi, xi_star, xi_eps in sols:
        # substituting back: each scaled anticommutator scalar must be 2
        assert gr(2) * xi_star * xi_eps / xi == gr(2)
        assert gr(-2) * xi_eps * xi / xi_star == gr(2)
        assert gr(-2) * xi * xi_star / xi_eps == gr(2)


def test_scale_to_normalized_rejects_zero():
    with pytest.raises(ValueError):
        scale_to_normalized(None, gr(0), gr(2), gr(2))


def test_scaled_canonical_triple_recovers_normalization():
    # scaling a canonical triple by (2, 2, 2) multiplies each nu by 2
    triple = build_canonical(b_type(4))
    scaled = ModuleActionTriple(*(m * 2 for m in triple.matrices()))
    sols = scale_to_normalized(scaled, gr(4), gr(4), gr(4))
    assert (gr(Fraction(1, 2)), gr(Fraction(1, 2)), gr(Fraction(1, 2))) in sols

from math import comb

from cubetri.acsa import ab_type, b_type
from cubetri.hypercube import adjacency, cube, go_sl2_structure
from cubetri.linalg import ExactMatrix, VectorBasis, restrict
from cubetri.quotient import quotient
from cubetri.tmodules import (
    decompose,
    dual_profile,
    module_summary,
    quotient_modules,
    split_and_type,
)


def test_decompose_d4_census():
    ctx = cube(4)
    mods = decompose(ctx)
    by_endpoint = {}
    for m in mods:
        by_endpoint.setdefault(m.endpoint, []).append(m)
    assert {r: len(v) for r, v in by_endpoint.items()} == {0: 1, 1: 3, 2: 2}
    assert {r: v[0].dimension for r, v in by_endpoint.items()} == {0: 5, 1: 3, 2: 1}
    assert sum(m.dimension for m in mods) == 16


def test_decompose_d2_census():
    mods = decompose(cube(2))
    assert [(m.endpoint, m.dimension) for m in mods] == [(0, 3), (1, 1)]


def test_multiplicity_formula():
    for D in range(1, 9):
        mods = decompose(cube(D))
        counts = {}
        for m in mods:
            counts[m.endpoint] = counts.get(m.endpoint, 0) + 1
        for r, c in counts.items():
            assert c == comb(D, r) - (comb(D, r - 1) if r else 0)
        assert sum(m.dimension for m in mods) == 2**D


def test_thinness_by_construction():
    ctx = cube(5)
    for m in decompose(ctx):
        for j, label in enumerate(m.slice_labels()):
            col = m.vectors.column(j)
            weights = {ctx.weight(r) for (r, _c) in col.entries}
            assert weights == {label}
        assert m.diameter == ctx.D - 2 * m.endpoint


def test_direct_sum_per_slice():
    # vectors meeting one weight slice, collected across modules, stay independent
    for D in (4, 5, 6):
        ctx = cube(D)
        slices: dict[int, list] = {}
        for m in decompose(ctx):
            for j, label in enumerate(m.slice_labels()):
                slices.setdefault(label, []).append(m.vectors.column(j))
        for w, cols in slices.items():
            assert len(cols) == comb(D, w)
            entries = {}
            for j, col in enumerate(cols):
                for (r, _c), v in col.entries.items():
                    entries[(r, j)] = v
            stacked = ExactMatrix(ctx.nvertices, len(cols), entries)
            assert VectorBasis(stacked).verify_independent()


def test_endpoint_zero_restriction_matches_weight_pattern():
    # frozen: the leading-1 raising chain reproduces the classical
    # subdiagonal (1,2,3,4) / superdiagonal (4,3,2,1) pattern at D=4
    ctx = cube(4)
    top = next(m for m in decompose(ctx) if m.endpoint == 0)
    inside = restrict(adjacency(ctx), top.vectors)
    expected = ExactMatrix.from_rows(
        [
            [0, 4, 0, 0, 0],
            [1, 0, 3, 0, 0],
            [0, 2, 0, 2, 0],
            [0, 0, 3, 0, 1],
            [0, 0, 0, 4, 0],
        ]
    )
    assert inside == expected


def test_modules_are_sl2_irreducible():
    # restricting the sl2 structure gives the weight-basis pattern shape
    ctx = cube(4)
    action = go_sl2_structure(ctx)
    for m in decompose(ctx):
        x = restrict(action.x_mat, m.vectors)
        y = restrict(action.y_mat, m.vectors)
        d = m.diameter
        assert y == ExactMatrix.diagonal([ctx.D - 2 * (m.endpoint + j) for j in range(d + 1)])
        for (r, c) in x.entries:
            assert abs(r - c) == 1


def test_dual_profile_windows():
    ctx = cube(4)
    for m in decompose(ctx):
        profile = dual_profile(ctx, m)
        r = m.endpoint
        d = m.diameter
        expected = [1 if r <= i <= r + d else 0 for i in range(ctx.D + 1)]
        assert profile == expected
        assert sum(profile) == m.dimension


def test_dual_profile_specific():
    ctx = cube(4)
    mods = decompose(ctx)
    assert dual_profile(ctx, mods[0]) == [1, 1, 1, 1, 1]
    r2 = next(m for m in mods if m.endpoint == 2)
    assert dual_profile(ctx, r2) == [0, 0, 1, 0, 0]


def test_split_and_type_even():
    ctx = cube(6)
    for m in decompose(ctx):
        typed = split_and_type(ctx, m)
        assert len(typed) == 1
        assert typed[0][1] == b_type(6 - 2 * m.endpoint)


def test_split_and_type_odd():
    # computed tables: variant depends only on the parity of floor(D/2);
    # hand-verified at D=3, r=1 (traces (-1,-1,1) force variant z)
    for D, plus_n, minus_n in ((3, "z", "x"), (5, "0", "y"), (7, "z", "x")):
        ctx = cube(D)
        cal_d = D // 2
        for m in decompose(ctx):
            typed = split_and_type(ctx, m)
            assert len(typed) == 2
            delta = cal_d - m.endpoint
            assert typed[0][1] == ab_type(delta, plus_n)
            assert typed[1][1] == ab_type(delta, minus_n)
            assert typed[0][0].size + typed[1][0].size == m.dimension


def test_quotient_modules_types_and_dimensions():
    for D, variant in ((3, "z"), (5, "0"), (7, "z")):
        q = quotient(D)
        cal_d = q.cal_d
        mods = quotient_modules(q)
        assert sum(sb.dimension for sb, _t in mods) == q.nclasses
        for sb, t in mods:
            assert t == ab_type(cal_d - sb.endpoint, variant)
            for j in range(sb.vectors.size):
                col = sb.vectors.column(j)
                weights = {q.class_weight(u) for (u, _c) in col.entries}
                assert weights == {sb.endpoint + j}


def test_module_summary_shape():
    ctx = cube(3)
    m = decompose(ctx)[0]
    typed = split_and_type(ctx, m)
    record = module_summary(ctx, m, typed)
    assert record["id"] == "r0#0"
    assert record["type"] is None
    assert record["parity_split"] == {"plus": "AB(1,z)", "minus": "AB(1,x)"}

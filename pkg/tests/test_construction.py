from collections import Counter

import numpy as np
import pytest

from lkts.base_designs import builtin_denniston15, builtin_lkts9
from lkts.construction import STAR, ClassId, Construction, ConstructionError
from lkts.verifier import verify_kts, verify_large_set
from tests.conftest import DATA
from tests.oracles import brute


def _as_coord_sets(S, triples):
    return [frozenset(S.vec(int(x)) for x in t) for t in triples]


def _partitions(points, triples):
    flat = np.sort(np.asarray(triples).ravel())
    return np.array_equal(flat, np.sort(np.asarray(points)))


# -- the triple map T -------------------------------------------------------


def test_T_examples(ctx13):
    P = ctx13.space.point
    t = ctx13.triple_T(P((1, 0)), P((0, 1)))
    assert t == tuple(sorted(P(c) for c in [(1, 1), (3, 9), (9, 3)]))
    neg = tuple(sorted(int(ctx13.space.neg(x)) for x in t))
    assert neg == tuple(sorted(P(c) for c in [(12, 12), (10, 4), (4, 10)]))
    assert ctx13.triple_T(P((1, 0)), P((0, 2))) == tuple(sorted(P(c) for c in [(1, 2), (3, 5), (9, 6)]))


def test_T_matches_brute_oracle(ctx13):
    S = ctx13.space
    rng = np.random.default_rng(1)
    for _ in range(200):
        u, v = (int(x) for x in rng.integers(1, S.size, 2))
        if not S.independent(u, v):
            continue
        want = brute.T(S.vec(u), S.vec(v), 13, ctx13.field.omega)
        assert frozenset(S.vec(x) for x in ctx13.triple_T(u, v)) == want


def test_T_symmetry(ctx7):
    S, F = ctx7.space, ctx7.field
    w = F.omega
    w2 = F.mul(w, w)
    for u in range(1, S.size):
        for v in range(1, S.size, 5):
            if not S.independent(u, v):
                continue
            t = ctx7.triple_T(u, v)
            assert t == ctx7.triple_T(int(S.scale(w, u)), int(S.scale(w2, v)))
            assert t == ctx7.triple_T(int(S.scale(w2, u)), int(S.scale(w, v)))
            assert t == ctx7.triple_T(v, u)


def test_T_rejects_dependent(ctx13):
    P = ctx13.space.point
    with pytest.raises(ConstructionError):
        ctx13.triple_T(P((1, 2)), P((2, 4)))
    with pytest.raises(ConstructionError):
        ctx13.triple_T(0, P((1, 0)))


# -- partial classes ------------------------------------------------------


def _check_plane_partition(ctx, u, L, c):
    S = ctx.space
    tri = ctx.partial_class_plane(u, L, c)
    assert len(tri) == ctx.q * (ctx.q - 1) // 3
    K = set(S.scale(np.arange(ctx.q), np.full(ctx.q, u)).tolist())
    target = sorted(set(L.points.tolist()) - K)
    assert _partitions(target, tri)


def test_plane_partition_exhaustive_q7_n2(ctx7):
    S = ctx7.space
    L = S.planes_through(1)[0]
    for u in range(1, S.size):
        for c in range(1, 7):
            _check_plane_partition(ctx7, u, L, c)


@pytest.mark.parametrize("name", ["ctx13", "ctx73"])
def test_plane_partition_sampled(name, request):
    ctx = request.getfixturevalue(name)
    S = ctx.space
    rng = np.random.default_rng(7)
    for _ in range(60):
        u = int(rng.integers(1, S.size))
        i = int(S.lines.line_of[u])
        planes = S.planes_through(i)
        L = planes[int(rng.integers(len(planes)))]
        c = int(rng.integers(1, ctx.q))
        _check_plane_partition(ctx, u, L, c)


def test_plane_partition_membership_q13(ctx13):
    S = ctx13.space
    P = S.point
    L = S.planes_through(1)[0]
    tri = {tuple(t) for t in ctx13.partial_class_plane(P((1, 0)), L, 1).tolist()}
    assert len(tri) == 52
    # f((1,0),(c',d)) = d, accepted for d in {1, 2}
    for cp in range(13):
        for d in range(1, 13):
            t = ctx13.triple_T(P((1, 0)), P((cp, d)))
            assert (t in tri) == (d in (1, 2))


def test_partial_class_rejects_outside_u(ctx73):
    S = ctx73.space
    L = S.plane(S.point((1, 0, 0)), S.point((0, 1, 0)))
    with pytest.raises(Exception):
        ctx73.partial_class_plane(S.point((0, 0, 1)), L, 1)


@pytest.mark.parametrize("name", ["ctx7", "ctx13", "ctx73"])
def test_partial_classes_partition_complement_of_line(name, request):
    ctx = request.getfixturevalue(name)
    S = ctx.space
    ids = ctx.class_ids[1:]
    assert len(ids) == (S.size - 1) // 2
    step = 1 if S.size < 200 else 7
    for cid in ids[::step]:
        tri = ctx.partial_class(cid.line, cid.a, cid.b)
        assert len(tri) == (S.size - ctx.q) // 3
        K = set(S.line_points(cid.line).tolist())
        assert _partitions(sorted(set(range(S.size)) - K), tri)


@pytest.mark.parametrize("name,total", [("ctx7", 336), ("ctx13", 4368)])
def test_frame_equals_brute_force_zero_sum(name, total, request):
    ctx = request.getfixturevalue(name)
    S = ctx.space
    frame = ctx.frame()
    got = Counter(s for tri in frame.values() for s in _as_coord_sets(S, tri))
    want = brute.zero_sum_noncollinear(ctx.q, ctx.n)
    assert len(want) == total == sum(got.values())
    assert set(got) == want
    assert max(got.values()) == 1


# -- full classes and designs --------------------------------------------


def test_star_class_golden(ctx13):
    S = ctx13.space
    got = ctx13.build_star_class(0)
    want = brute.read_blocks(DATA / "golden_star_class.txt", S)
    assert len(want) == 57
    assert got.as_set() == want
    P = S.point
    assert (P((0, 0)), S.inf1, S.inf2) in want
    assert tuple(sorted((P((2, 1)), P((8, 4)), P((10, 5))))) in want


def test_frame_class_golden(ctx13):
    S = ctx13.space
    got = ctx13.build_class(0, 1, 0, 0)
    want = brute.read_blocks(DATA / "golden_u1_class1.txt", S)
    assert len(want) == 57
    assert got.as_set() == want
    P = S.point
    holes = {
        tuple(sorted(x)) for x in [(S.inf1, P((1, 0)), P((6, 0))), (S.inf2, P((2, 0)), P((8, 0))),
                                   (P((0, 0)), P((10, 0)), P((12, 0))), (P((3, 0)), P((5, 0)), P((9, 0))),
                                   (P((4, 0)), P((7, 0)), P((11, 0)))]
    }
    assert holes <= want
    frame = {tuple(t) for t in ctx13.partial_class(1, 0, 0).tolist()}
    assert frame == want - holes


@pytest.mark.parametrize("w", [0, 5, 100, 168])
def test_every_class_partitions_X(ctx13, w):
    X = np.arange(ctx13.order)
    d = ctx13.build_design(w)
    assert len(d.classes) == 85
    assert d.classes[0].id == STAR
    for c in d.classes:
        assert _partitions(X, c.triples)


def test_design_B0_is_kts(ctx13):
    cert = verify_kts(ctx13.design0, ctx13.order)
    assert cert.passed, cert.render()
    assert cert.counts["blocks"] == 4845


def test_designs_q7_n2_are_kts(ctx7):
    for w in range(ctx7.space.size):
        d = ctx7.build_design(w)
        assert len(d.classes) == 25 and {len(c) for c in d.classes} == {17}
        assert verify_kts(d, 51).passed


def test_fast_path_matches_direct(ctx13):
    rng = np.random.default_rng(3)
    ws = [ctx13.space.point((1, 1))] + [int(w) for w in rng.choice(169, 12, replace=False)]
    for w in ws:
        assert ctx13.build_design(w, fast=True).same_as(ctx13.build_design(w))


def test_fast_path_refused_for_non_invariant_base(ctx7):
    with pytest.raises(ConstructionError):
        ctx7.build_design(3, fast=True)


def test_n1_degenerates_to_base():
    ctx = Construction(builtin_denniston15(), 1)
    assert ctx.class_ids == (STAR,) + tuple(ClassId.from_base_index(1, j, 2) for j in range(1, 7))
    base = ctx.base
    for w in range(13):
        d = ctx.build_design(w)
        assert len(d.classes) == 7
        assert {tuple(b) for b in d.blocks().tolist()} == {b for c in base.design(w) for b in c}
        assert d.classes[0].as_set() == set(base.cls(w, 0))


def test_class_id_tokens():
    assert str(STAR) == "*" and ClassId.parse("*") == STAR
    cid = ClassId(3, 1, 2)
    assert ClassId.parse(cid.token) == cid
    assert cid.base_index(2) == 1 + 2 * 2 + 1
    assert ClassId.from_base_index(3, 6, 2) == cid


# -- transversal choice -----------------------------------------------------


def _random_shift(seed):
    rng = np.random.default_rng(seed)
    table = {}

    def shift(i, r):
        return table.setdefault((i, r), int(rng.integers(0, 1 << 30)))

    return shift


def test_other_transversal_same_designs_for_invariant_base():
    base = builtin_denniston15()
    plain = Construction(base, 2)
    moved = Construction(base, 2, coset_shift=_random_shift(11))
    for w in (0, 14, 77, 168):
        assert moved.build_design(w).same_as(plain.build_design(w))


def test_other_transversal_still_large_set_q7():
    moved = Construction(builtin_lkts9(), 2, coset_shift=_random_shift(5))
    cert = verify_large_set(moved.build_large_set(), 51)
    assert cert.passed, cert.render()


# -- locate ---------------------------------------------------------------


def test_locate_examples(ctx13):
    S = ctx13.space
    P = S.point
    assert ctx13.locate_triple((S.inf1, S.inf2, P((5, 7)))) == (P((5, 7)), STAR)
    assert ctx13.locate_triple((P((1, 1)), P((3, 9)), P((9, 3)))) == (0, ClassId(1, 0, 0))
    for bad in [(1, 1, 2), (1, 2), (1, 2, ctx13.order)]:
        with pytest.raises(ConstructionError):
            ctx13.locate_triple(bad)


def test_locate_every_block_of_two_designs(ctx13):
    for w in (0, 97):
        d = ctx13.build_design(w)
        for c in d.classes:
            for t in c.triples.tolist():
                assert ctx13.locate_triple(t) == (w, c.id)


def test_locate_q7_n3_sampled(ctx73):
    rng = np.random.default_rng(2)
    for w in rng.choice(ctx73.space.size, 2, replace=False):
        d = ctx73.build_design(int(w))
        for c in d.classes[::9]:
            for t in c.triples.tolist()[::5]:
                assert ctx73.locate_triple(t) == (int(w), c.id)

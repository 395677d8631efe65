import pytest

from gjs_cup import DELTA, GradedElement, Q, bullet, inner
from gjs_cup.cups import (
    CupLabel,
    MidLabel,
    ThetaBasis,
    check_cup_action,
    compute_Vn,
    cup_block,
    cup_power,
    dimension_identity,
    kills_both_caps,
    load_vn_cache,
    membership,
    qj_apply,
    qj_projector,
    reconstruct,
    save_vn_cache,
    theta_coords,
    theta_coords_by_inner,
    vn_dimension_by_rank,
    vspace,
    _vspaces,
)
from gjs_cup.diagrams import enumerate_diagrams
from gjs_cup.scalar import ONE, ZERO

CUP = GradedElement.cup()


def test_cup_power():
    assert cup_power(-1).is_zero()
    assert cup_power(0) == GradedElement.one()
    assert cup_power(2) == GradedElement.diagram("()()")


def test_vn_examples():
    assert compute_Vn(1) == []
    (v,) = compute_Vn(2)
    target = GradedElement.diagram("()()") - GradedElement.diagram("(())", DELTA)
    # same line: the 2x2 determinant of coefficient vectors vanishes
    a, b = v.coefficient("()()"), v.coefficient("(())")
    assert a * target.coefficient("(())") - b * target.coefficient("()()") == 0
    assert len(compute_Vn(3)) == 2 and len(compute_Vn(4)) == 6


@pytest.mark.parametrize("n", range(1, 6))
def test_vn_dim_matches_rank_oracle(n):
    assert vspace(n).dim == vn_dimension_by_rank(n)


@pytest.mark.parametrize("n", range(1, 6))
def test_vn_vectors_killed_and_orthogonal(n):
    vecs = compute_Vn(n)
    assert all(kills_both_caps(v) for v in vecs)
    for i, v in enumerate(vecs):
        for j, w in enumerate(vecs):
            if i != j:
                assert inner(v, w) == 0
        assert inner(v, v) == vspace(n).norms[i]


def test_dimension_identity():
    assert dimension_identity(2).data["rhs"] == 2
    assert dimension_identity(3).data["rhs"] == 5
    assert dimension_identity(4).data["rhs"] == 14
    assert all(dimension_identity(n) for n in range(7))


def test_theta_basis_orthogonality():
    basis = ThetaBasis(4)
    labels = basis.labels()
    vecs = {lab: basis.vector(lab) for lab in labels}
    for a in labels:
        for b in labels:
            if a.grade != b.grade:
                continue
            val = inner(vecs[a], vecs[b])
            assert val == (basis.weight(a) if a == b else ZERO)


def test_theta_coords_examples():
    basis = ThetaBasis(4)
    x = GradedElement.diagram("()()").scale(ONE / DELTA)
    assert theta_coords(x, basis) == {CupLabel(2): ONE}
    v = vspace(2).vectors[0]
    assert theta_coords(v, basis) == {MidLabel(0, 2, 0, 0): ONE}
    y = CUP * CUP  # cup^2 + cup + delta
    assert theta_coords(y, basis) == {CupLabel(0): DELTA, CupLabel(1): Q, CupLabel(2): DELTA}


def test_theta_coords_match_inner_oracle():
    basis = ThetaBasis(4)
    for n in range(5):
        for d in enumerate_diagrams(n):
            x = GradedElement.diagram(d)
            c = theta_coords(x, basis)
            assert c == theta_coords_by_inner(x, basis)
            assert reconstruct(c, basis) == x


def test_theta_coords_level_error():
    with pytest.raises(ValueError):
        theta_coords(cup_power(3), ThetaBasis(2))


def test_cup_action_level5():
    rep = check_cup_action(5)
    assert rep.passed, rep.data["witnesses"]
    assert rep.data["cup_block_00"] == {"left": ZERO, "right": ZERO}
    assert rep.data["qe0_coefficient"]["left"] == ONE / Q
    with pytest.raises(ValueError):
        check_cup_action(2)


def test_cup_block_tridiagonal():
    B = cup_block(5)
    for k in range(1, 5):
        assert (B[k - 1][k], B[k][k], B[k + 1][k]) == (Q, ONE, Q)
    assert B[0][0] == ZERO and B[1][0] == Q


def test_qj_projector():
    basis = ThetaBasis(6)
    P = qj_projector(2, basis)
    assert (P @ P).entries == P.entries
    n = P.size
    # diagonal in an orthogonal basis, hence self-adjoint for the weighted product
    assert all(not P.entries[i][j] for i in range(n) for j in range(n) if i != j)


def test_membership_and_q1():
    v = vspace(2).vectors[0]
    x = bullet(v, cup_power(2))
    assert qj_apply(x, 1) == x
    assert membership(x, "Z", 0)
    y = bullet(bullet(CUP, v), CUP)
    assert not membership(y, "Z", 0)
    assert membership(y, "Y", 1)
    assert not membership(cup_power(2), "Y", 5)
    assert qj_apply(y, 1).is_zero()


def test_vn_cache_roundtrip(tmp_path):
    path = str(tmp_path / "vn-cache.json")
    before = {m: vspace(m) for m in (2, 3)}
    save_vn_cache(path, [2, 3])
    saved = dict(_vspaces)
    try:
        for m in (2, 3):
            del _vspaces[m]
        assert sorted(load_vn_cache(path)) == [2, 3]
        for m in (2, 3):
            assert vspace(m).vectors == before[m].vectors
            assert vspace(m).norms == before[m].norms
    finally:
        _vspaces.clear()
        _vspaces.update(saved)


def test_vn_cache_version_mismatch(tmp_path):
    import json

    path = tmp_path / "vn-cache.json"
    path.write_text(json.dumps({"engine_version": "other", "entries": {}}))
    assert load_vn_cache(str(path)) == []

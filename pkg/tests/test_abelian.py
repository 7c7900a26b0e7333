import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braidcomm.abelian import (
    IntegerMatrix,
    LatticeReduction,
    abelian_invariants,
    determinant,
    perfectness_window_check,
    relation_matrix,
    smith_normal_form,
    subgroup_rank,
)
from braidcomm.catalog import catalog
from braidcomm.derived import simplified_derived
from braidcomm.tietze import TruncatedPresentation
from oracles import invariant_factors_by_minors


def _random_matrix(rng, max_dim=6, span=9):
    rows = rng.randint(1, max_dim)
    cols = rng.randint(1, max_dim)
    return IntegerMatrix([[rng.randint(-span, span) for _ in range(cols)]
                          for _ in range(rows)])


def test_snf_identity_and_zero():
    res = smith_normal_form(IntegerMatrix.identity(2))
    assert res.invariant_factors == [1, 1] and res.free_rank == 0
    res = smith_normal_form(IntegerMatrix.zero(3, 4))
    assert res.invariant_factors == [] and res.free_rank == 4


def test_snf_diagonal_example():
    m = IntegerMatrix([[2, 0], [0, 3]])
    # minor-gcd oracle: 1x1 gcd = 1, 2x2 det = 6 -> factors (1, 6)
    assert invariant_factors_by_minors(m.entries) == [1, 6]
    res = smith_normal_form(m)
    assert res.invariant_factors == [1, 6]
    assert res.u.matmul(m).matmul(res.v) == res.d


def test_snf_transform_certificates_on_random_matrices():
    rng = random.Random(20240901)
    for _ in range(150):
        m = _random_matrix(rng)
        res = smith_normal_form(m)
        assert res.u.matmul(m).matmul(res.v) == res.d
        assert abs(determinant(res.u)) == 1
        assert abs(determinant(res.v)) == 1
        f = res.invariant_factors
        assert all(x > 0 for x in f)
        assert all(f[i + 1] % f[i] == 0 for i in range(len(f) - 1))


def test_snf_agrees_with_minor_gcd_oracle():
    rng = random.Random(7)
    for _ in range(60):
        m = _random_matrix(rng, max_dim=4, span=6)
        assert smith_normal_form(m).invariant_factors == \
            invariant_factors_by_minors(m.entries)


def test_sparse_reduction_agrees_with_dense():
    rng = random.Random(99)
    for _ in range(80):
        m = _random_matrix(rng)
        rows = [{j: v for j, v in enumerate(row) if v} for row in m.entries]
        red = LatticeReduction(rows, m.cols).run()
        assert red.invariant_factors() == smith_normal_form(m).invariant_factors


def test_sparse_membership():
    rows = [{0: 2}, {1: 1, 2: 1}]
    red = LatticeReduction(rows, 3).run()
    assert red.contains({0: 2})
    assert red.contains({0: 4, 1: 3, 2: 3})
    assert not red.contains({0: 1})
    assert not red.contains({1: 1})


def test_subgroup_rank():
    # Z^3 / <e0 - e1> : images of e0, e1 coincide
    rows = [{0: 1, 1: -1}]
    assert subgroup_rank(rows, 3, [0, 1]) == 1
    assert subgroup_rank(rows, 3, [0, 2]) == 2
    assert subgroup_rank([], 3, [0, 1, 2]) == 3


@given(st.integers(0, 10_000))
@settings(max_examples=30, deadline=None)
def test_snf_certificates_hold_on_seeded_matrices(seed):
    rng = random.Random(seed)
    m = _random_matrix(rng, max_dim=5)
    res = smith_normal_form(m)
    assert res.u.matmul(m).matmul(res.v) == res.d
    f = res.invariant_factors
    assert all(f[i + 1] % f[i] == 0 for i in range(len(f) - 1))


def test_relation_matrix_rows():
    p = TruncatedPresentation.from_schema(simplified_derived("GVB", 5), 2)
    mat = relation_matrix(p)
    rows_by_origin = {p.origins[rid]: mat.rows[pos]
                      for pos, rid in enumerate(sorted(p.relators))}
    # a one-letter relator contributes a single +1
    triv = rows_by_origin[("triv_a", (("m", 0),))]
    assert list(triv.values()) == [1]
    assert mat.gens[next(iter(triv))] == ("a", (0, 0, 1))
    # the six-letter crossing relation pairs +1/-1 across six columns
    braid = rows_by_origin[("braid_ss_1", (("k", 0), ("m", 0)))]
    named = {mat.gens[j]: v for j, v in braid.items()}
    assert named == {("a", (0, 0, 1)): 1, ("a", (1, 0, 2)): 1, ("a", (2, 0, 1)): 1,
                     ("a", (2, 0, 2)): -1, ("a", (1, 0, 1)): -1, ("a", (0, 0, 2)): -1}
    # commutation relators abelianize to zero rows
    comm = rows_by_origin[("comm_ss_jj", (("i", 3), ("j", 5)))] if \
        ("comm_ss_jj", (("i", 3), ("j", 5))) in rows_by_origin else None
    if comm is not None:
        assert comm == {}


def test_commutator_row_is_zero():
    p = TruncatedPresentation.from_schema(simplified_derived("GVB", 6), 0)
    mat = relation_matrix(p)
    for pos, rid in enumerate(sorted(p.relators)):
        if p.origins[rid][0] == "comm_ss_jj":
            assert mat.rows[pos] == {}


def test_ambient_abelianization_is_rank_two():
    for fam in ("GVB", "SG"):
        for n in (3, 4, 5, 6):
            p = TruncatedPresentation.from_schema(catalog(fam, n), 0)
            assert abelian_invariants(p) == (2, [])


def test_perfectness_window_verdicts():
    assert perfectness_window_check("GVB", 5, 4).perfect_on_interior
    assert not perfectness_window_check("SG", 3, 4).perfect_on_interior
    with pytest.raises(ValueError):
        perfectness_window_check("GVB", 5, 3)


def test_forced_trivial_is_monotone_in_the_window():
    reports = {M: perfectness_window_check("SG", 4, M) for M in (4, 5)}
    # once a generator is forced trivial it stays forced in larger windows
    assert reports[4].forced_trivial <= reports[5].forced_trivial


def test_truncated_sg3_abelianization_grows_torsion_free():
    ranks = []
    for M in (2, 3, 4):
        p = TruncatedPresentation.from_schema(simplified_derived("SG", 3), M)
        free_rank, torsion = abelian_invariants(p)
        assert torsion == []
        ranks.append(free_rank)
    assert ranks == sorted(set(ranks))


def test_matrix_text_export():
    from braidcomm.abelian import format_matrix

    p = TruncatedPresentation.from_schema(simplified_derived("SG", 3), 0)
    mat = relation_matrix(p)
    text = format_matrix(mat)
    lines = text.splitlines()
    assert lines[0].startswith("# columns: ")
    assert len(lines) == 1 + len(mat.rows)
    assert all(len(line.split()) == len(mat.gens) for line in lines[1:])

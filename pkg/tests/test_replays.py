import pytest

from braidcomm.replays import (
    SCRIPTS,
    expected_fingen_survivors,
    gvb3_quotient_chain,
    gvb4_fingen,
    gvbn_fingen,
    sgn_fingen,
    simplify,
)
from braidcomm.tietze import ReplayError


def test_collapse_survivors_at_window_four():
    p = gvb4_fingen(4)
    assert p.surviving_interior(2) == expected_fingen_survivors("GVB", 4)
    p = gvbn_fingen(5, 4)
    assert p.surviving_interior(2) == expected_fingen_survivors("GVB", 5)
    p = sgn_fingen(5, 4)
    assert p.surviving_interior(2) == expected_fingen_survivors("SG", 5)


def test_fingen_needs_five_strands():
    with pytest.raises(ValueError):
        gvbn_fingen(4, 4)
    with pytest.raises(ValueError):
        sgn_fingen(3, 4)


def test_collapse_transcripts_record_every_move():
    p = gvb4_fingen(4)
    text = p.transcript_text()
    assert text.startswith("start fingen-gvb4")
    assert "eliminate b[0,0,2] via" in text
    assert ":=" in text


def test_gvb3_chain_leaves_only_the_free_letters():
    p = gvb3_quotient_chain(4)
    survivors = p.surviving_interior(2)
    assert survivors == {("a", (0, k, 1)) for k in (-2, -1, 1, 2)}
    assert p.interior_relator_set(2) == set()
    assert "adjoin a[0,0,1] a[1,0,2]" in p.transcript_text()


def test_simplify_runs_in_registry_names():
    for name in ("simplify-gvb-n3", "simplify-sg-n6", "fingen-sg-n6",
                 "gvb3-free-quotient", "sg3-abelianization"):
        assert name in SCRIPTS


def test_simplify_is_deterministic_across_groups():
    for group, n in (("GVB", 4), ("SG", 5)):
        t1 = simplify(group, n, 3).transcript_text()
        t2 = simplify(group, n, 3).transcript_text()
        assert t1 == t2


def test_scripts_fail_loudly_on_too_small_windows():
    # window 1 leaves no room for the recurrences to reach their bases
    with pytest.raises(ReplayError):
        gvb4_fingen(1)

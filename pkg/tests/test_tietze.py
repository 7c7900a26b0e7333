import pytest

from braidcomm.derived import simplified_derived
from braidcomm.replays import simplify
from braidcomm.tietze import ReplayError, TruncatedPresentation, origin_of
from braidcomm.words import EMPTY, gen, word


def _gvb3(M=3):
    return TruncatedPresentation.from_schema(simplified_derived("GVB", 3), M)


def test_from_schema_populates_window_generators():
    p = _gvb3(2)
    assert ("a", (0, 0, 1)) in p.gens and ("b", (2, 2, 2)) in p.gens
    # letters spill past the window where relators reach
    assert ("a", (4, 0, 1)) in p.gens
    assert all(w for w in p.relators.values())


def test_eliminate_by_single_letter_relator():
    p = _gvb3()
    expr = p.eliminate(("a", (2, 0, 1)), origin_of("triv_a", {"m": 2}))
    assert expr == EMPTY
    assert ("a", (2, 0, 1)) not in p.gens
    assert p.transcript[-1].startswith("eliminate a[2,0,1] via a[2,0,1] := 1")


def test_eliminate_solves_the_left_mixed_relation():
    p = _gvb3()
    expr = p.eliminate(("b", (2, 0, 2)), origin_of("mixed_l_1", {"m": 0, "k": 0}))
    assert str(expr) == "a[1,0,1]^-1 a[0,0,2]^-1 a[0,1,2] a[1,1,1]"


def test_eliminate_rejects_non_isolating_occurrences():
    p = _gvb3()
    x, y = gen("x", 0), gen("y", 0)
    p.add_relators([(word(x, y, (x, -1)), ("bad",))])
    with pytest.raises(ReplayError, match="not isolating"):
        p.eliminate(x, ("bad",))
    p.add_relators([(word((x, 2)), ("sq",))])
    with pytest.raises(ReplayError, match="not isolating"):
        p.eliminate(x, ("sq",))


def test_eliminate_rejects_missing_relator_and_generator():
    p = _gvb3()
    with pytest.raises(ReplayError, match="no longer present"):
        p.eliminate(("a", (0, 0, 1)), origin_of("triv_a", {"m": 99}))
    with pytest.raises(ReplayError, match="not present"):
        p.eliminate(("a", (99, 0, 1)), origin_of("triv_a", {"m": 0}))


def test_substitution_rewrites_other_relators():
    p = _gvb3()
    target = ("b", (0, 0, 2))
    before = {rid for rid in p.relators if target in p.relators[rid].generators()}
    p.eliminate(target, origin_of("mixed_r_1", {"m": 0, "k": 0}))
    for rid in before:
        if rid in p.relators:
            assert target not in p.relators[rid].generators()


def test_rename_moves_occurrences():
    p = _gvb3()
    old, new = ("a", (0, 0, 1)), ("a", (77,))
    p.rename(old, new)
    assert new in p.gens and old not in p.gens
    with pytest.raises(ReplayError):
        p.rename(("a", (0, 1, 1)), new)


def test_derive_collapsed_requires_one_letter_relators():
    p = _gvb3()
    doomed = {("a", (m, 0, 1)) for m in range(-5, 6)}
    w = p.derive_collapsed(origin_of("braid_ss_1", {"m": 0, "k": 0}), doomed,
                           ("edge", 0))
    assert str(w) == "a[1,0,2] a[2,0,2]^-1 a[0,0,2]^-1"
    bad = {("b", (0, 0, 2))}
    with pytest.raises(ReplayError, match="no one-letter relator"):
        p.derive_collapsed(origin_of("mixed_r_1", {"m": 0, "k": 0}), bad, ("edge", 1))


def test_interior_bookkeeping():
    p = _gvb3(3)
    interior = p.interior(2)
    assert ("a", (1, -1, 2)) in interior
    assert ("a", (2, 0, 2)) not in interior  # |2| > 3 - 2
    assert p.interior(4) == set()
    empty = TruncatedPresentation.from_schema(
        simplified_derived("GVB", 3), 3)
    empty.gens.clear()
    assert empty.interior(2) == set()


def test_surviving_interior_margin_larger_than_window():
    p = _gvb3(3)
    assert p.surviving_interior(5) == set()


def test_replays_are_deterministic():
    a = simplify("SG", 3, 3).transcript_text()
    b = simplify("SG", 3, 3).transcript_text()
    assert a == b

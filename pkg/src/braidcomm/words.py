"""Exact free-group word arithmetic over indexed generator alphabets.

A generator is a pair ``(family, indices)`` where ``family`` is a short
string (``"s"``, ``"r"``, ``"a"``, ``"b"``, ...) and ``indices`` is a tuple
of integers.  The same family letter may occur at several arities; a family
is identified by the pair (letter, arity).

A :class:`Word` is a freely reduced run-length sequence of
``(generator, exponent)`` pairs with nonzero integer exponents.  Words are
immutable and all operations are pure, so they are safe to share between
workers.

The map :func:`bidegree` sends a word over the ``s``/``r`` families to the
pair (total s-exponent, total r-exponent).  It is a homomorphism onto
Z x Z, and its kernel is the commutator subgroup of every ambient group in
the catalog; almost everything downstream keys cosets by this pair.

Display syntax, used in logs, transcripts and presentation files:
``s1^2 r3^-1 a[0,1,2]`` -- family letter, bare index for arity one,
bracketed index tuple otherwise, caret exponent (omitted when 1),
space-separated.  The empty word prints as ``1``.
"""

from __future__ import annotations

from dataclasses import dataclass


Gen = tuple[str, tuple[int, ...]]


class WordError(ValueError):
    """Raised for malformed letters or out-of-domain generators."""


def gen(family: str, *indices: int) -> Gen:
    return (family, tuple(indices))


def fmt_gen(g: Gen) -> str:
    family, idx = g
    if len(idx) == 1:
        return f"{family}{idx[0]}"
    return f"{family}[{','.join(str(i) for i in idx)}]"


def fmt_letter(g: Gen, exp: int) -> str:
    if exp == 1:
        return fmt_gen(g)
    return f"{fmt_gen(g)}^{exp}"


def normalize(letters) -> "Word":
    """Freely reduce a raw sequence of (generator, exponent) pairs.

    Adjacent runs with the same generator are merged and zero exponents
    are dropped; merging cascades, so the result is the unique reduced
    form.  Idempotent.
    """
    stack: list[list] = []
    for g, e in letters:
        if not isinstance(e, int):
            raise WordError(f"exponent of {fmt_gen(g)} must be an integer, got {e!r}")
        if e == 0:
            continue
        if stack and stack[-1][0] == g:
            stack[-1][1] += e
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([g, e])
    return Word._make(tuple((g, e) for g, e in stack))


@dataclass(frozen=True)
class Word:
    """A freely reduced word; the empty tuple is the identity."""

    letters: tuple[tuple[Gen, int], ...]

    @staticmethod
    def _make(letters: tuple[tuple[Gen, int], ...]) -> "Word":
        w = object.__new__(Word)
        object.__setattr__(w, "letters", letters)
        return w

    def __init__(self, letters=()):
        object.__setattr__(self, "letters", normalize(letters).letters)

    def __len__(self) -> int:
        # letter length, counting multiplicity
        return sum(abs(e) for _, e in self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return concat(self, other)

    def __pow__(self, e: int) -> "Word":
        return power(self, e)

    def __invert__(self) -> "Word":
        return invert(self)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(fmt_letter(g, e) for g, e in self.letters)

    def __repr__(self) -> str:
        return f"Word({self})"

    def units(self) -> list[tuple[Gen, int]]:
        """Expand to single letters with exponents +-1."""
        out = []
        for g, e in self.letters:
            step = 1 if e > 0 else -1
            out.extend([(g, step)] * abs(e))
        return out

    def generators(self) -> set[Gen]:
        return {g for g, _ in self.letters}

    def exponent_sum(self, g: Gen) -> int:
        return sum(e for h, e in self.letters if h == g)

    def exponent_vector(self) -> dict[Gen, int]:
        """Image in the free abelianization: generator -> net exponent."""
        out: dict[Gen, int] = {}
        for g, e in self.letters:
            out[g] = out.get(g, 0) + e
            if out[g] == 0:
                del out[g]
        return out

    def occurrences(self, g: Gen) -> list[int]:
        """Run positions at which g occurs."""
        return [i for i, (h, _) in enumerate(self.letters) if h == g]


EMPTY = Word._make(())


def word(*letters) -> Word:
    """Convenience builder: word((gen, exp), ...) or word(gen, ...) for exponent 1."""
    raw = []
    for item in letters:
        if isinstance(item, tuple) and len(item) == 2 and isinstance(item[1], int) and not isinstance(item[0], str):
            raw.append(item)
        else:
            raw.append((item, 1))
    return normalize(raw)


def concat(a: Word, b: Word) -> Word:
    return normalize(list(a.letters) + list(b.letters))


def invert(w: Word) -> Word:
    return Word._make(tuple((g, -e) for g, e in reversed(w.letters)))


def power(w: Word, e: int) -> Word:
    if e == 0:
        return EMPTY
    base = w if e > 0 else invert(w)
    return normalize(list(base.letters) * abs(e))


def conjugate(w: Word, by: Word) -> Word:
    """by * w * by^-1, freely reduced."""
    return concat(concat(by, w), invert(by))


def freely_equal(a: Word, b: Word) -> bool:
    return a.letters == b.letters


def substitute(w: Word, target: Gen, replacement: Word) -> Word:
    """Replace every occurrence of target^e by replacement^e and reduce."""
    raw: list[tuple[Gen, int]] = []
    for g, e in w.letters:
        if g == target:
            raw.extend(power(replacement, e).letters)
        else:
            raw.append((g, e))
    return normalize(raw)


def delete_generators(w: Word, doomed) -> Word:
    """Drop every letter whose generator lies in ``doomed`` and reduce."""
    return normalize([(g, e) for g, e in w.letters if g not in doomed])


SIGMA = "s"
RHO = "r"


def bidegree(w: Word, sigma: str = SIGMA, rho: str = RHO) -> tuple[int, int]:
    """Total (s, r) exponent sums; a homomorphism onto Z x Z.

    Only defined on words over the two ambient families; a foreign letter
    is an error because the map does not extend to rewritten alphabets.
    """
    m = k = 0
    for (family, _), e in w.letters:
        if family == sigma:
            m += e
        elif family == rho:
            k += e
        else:
            raise WordError(
                f"bidegree undefined on family {family!r} (letter {fmt_gen((family, _))})"
            )
    return (m, k)


def cyclically_reduce(w: Word) -> Word:
    units = w.units()
    lo, hi = 0, len(units)
    while hi - lo >= 2 and units[lo][0] == units[hi - 1][0] and units[lo][1] == -units[hi - 1][1]:
        lo += 1
        hi -= 1
    return normalize(units[lo:hi])


def canonical_cyclic(w: Word) -> Word:
    """Least representative among all rotations of w and of w^-1.

    Two relators present the same normal closure when they agree up to
    conjugation and inversion; this picks a well-defined normal form for
    set comparisons.
    """
    core = cyclically_reduce(w)
    units = core.units()
    if not units:
        return EMPTY
    best = None
    for seq in (units, invert(core).units()):
        n = len(seq)
        for shift in range(n):
            cand = tuple(seq[shift:] + seq[:shift])
            if best is None or cand < best:
                best = cand
    return normalize(best)


class Alphabet:
    """Declared generator families with index domains.

    Families are keyed by (letter, arity).  Each index position carries a
    domain: ``None`` for an unbounded integer coordinate (the window
    coordinates of the infinite presentations) or an inclusive ``(lo, hi)``
    range.  Declaring domains up front catches index typos at construction
    time instead of mid-rewrite.
    """

    def __init__(self):
        self._families: dict[tuple[str, int], tuple] = {}

    def declare(self, family: str, domains) -> None:
        key = (family, len(domains))
        self._families[key] = tuple(domains)

    def families(self):
        return dict(self._families)

    def domains(self, family: str, arity: int):
        try:
            return self._families[(family, arity)]
        except KeyError:
            raise WordError(f"undeclared family {family!r} of arity {arity}") from None

    def is_declared(self, family: str, arity: int) -> bool:
        return (family, arity) in self._families

    def window_positions(self, family: str, arity: int) -> tuple[int, ...]:
        return tuple(i for i, d in enumerate(self.domains(family, arity)) if d is None)

    def validate_gen(self, g: Gen) -> None:
        family, idx = g
        domains = self.domains(family, len(idx))
        for pos, (value, dom) in enumerate(zip(idx, domains)):
            if dom is not None:
                lo, hi = dom
                if not (lo <= value <= hi):
                    raise WordError(
                        f"index {value} at position {pos} of {fmt_gen(g)} "
                        f"outside declared range {lo}..{hi}"
                    )

    def make_word(self, letters) -> Word:
        """Validating word constructor; names the offending letter on error."""
        for g, e in letters:
            self.validate_gen(g)
        return normalize(letters)

    def gens_in_window(self, bound: int) -> list[Gen]:
        """All declared generators with window coordinates in [-bound, bound]."""
        out: list[Gen] = []
        for (family, arity), domains in sorted(self._families.items()):
            ranges = []
            for dom in domains:
                if dom is None:
                    ranges.append(range(-bound, bound + 1))
                else:
                    lo, hi = dom
                    ranges.append(range(lo, hi + 1))
            idxs = [()]
            for rng in ranges:
                idxs = [prefix + (v,) for prefix in idxs for v in rng]
            out.extend((family, idx) for idx in idxs)
        return out

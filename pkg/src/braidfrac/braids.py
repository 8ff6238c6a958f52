"""Braid words, digital braids, handle reduction and cabling.

Braid words are sequences of signed Artin generator indices: ``+i`` is a
positive crossing of the strands at positions i and i+1 (the strand at
position i passes over), ``-i`` the inverse.  Diagrams read top to bottom.

A *digital braid* decorates the strand endpoints with letters of a digit
rewriting system; strands must join equal letters.  Digital braids form a
groupoid under stacking, and expansion forests act on them by cabling: a
strand ending at a bottom position whose tree has k leaves is replaced by k
parallel strands, each crossing becoming the block crossing of the two
cables.

Two independent decision procedures for the braid word problem live here.
Handle reduction repeatedly removes the leftmost handle (a subword
sigma_i^e u sigma_i^{-e} where u avoids generators i and i-1) and terminates
in a word where the least occurring index shows a single sign; the empty
output characterizes the trivial braid, and the surviving sign is the
Dehornoy sign.  The lamination action tracks integral coordinates of a
curve system punctured by the strands; a braid is trivial iff it fixes the
initial coordinates.  The two routes are kept separate so that tests can
play them against each other.
"""

from __future__ import annotations

from dataclasses import dataclass

from .drs import ExpansionForest, SourceMismatchError, Word
from .ordering import Sign

DEFAULT_STEP_BUDGET = 10**6


class BraidError(ValueError):
    """Base class for braid-level errors."""


class LabelMismatchError(BraidError):
    """Digital braid endpoints carry non-matching letters."""


class StepBudgetExceeded(RuntimeError):
    """Handle reduction exceeded its rewrite budget."""


def free_reduce(letters: tuple[int, ...]) -> tuple[int, ...]:
    out: list[int] = []
    for d in letters:
        if out and out[-1] == -d:
            out.pop()
        else:
            out.append(d)
    return tuple(out)


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.strands < 1:
            raise BraidError(f"strand count must be >= 1, got {self.strands}")
        for d in self.letters:
            if d == 0 or not 1 <= abs(d) <= self.strands - 1:
                raise BraidError(
                    f"generator index {d} out of range for {self.strands} strands"
                )

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-d for d in reversed(self.letters)))

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.strands != other.strands:
            raise BraidError("strand count mismatch")
        return BraidWord(self.strands, free_reduce(self.letters + other.letters))

    def free_reduced(self) -> "BraidWord":
        return BraidWord(self.strands, free_reduce(self.letters))

    def permutation(self) -> tuple[int, ...]:
        """images[i-1] = bottom position reached by the strand starting at
        top position i."""
        # arr[p-1] = strand (top position) currently at position p
        arr = list(range(1, self.strands + 1))
        for d in self.letters:
            k = abs(d)
            arr[k - 1], arr[k] = arr[k], arr[k - 1]
        images = [0] * self.strands
        for p, i in enumerate(arr, start=1):
            images[i - 1] = p
        return tuple(images)

    @classmethod
    def parse(cls, strands: int, text: str) -> "BraidWord":
        tokens = text.replace(",", " ").split()
        try:
            letters = tuple(int(t) for t in tokens)
        except ValueError as exc:
            raise BraidError(f"bad braid word {text!r}") from exc
        return cls(strands, letters)

    def format(self) -> str:
        return " ".join(str(d) for d in self.letters)


def _find_handle(ls: list[int]) -> tuple[int, int] | None:
    """Leftmost-closing handle (k, j): ls[k] = -ls[j], |ls| = i between them
    absent, and index i-1 absent as well."""
    for j, d in enumerate(ls):
        i = abs(d)
        for k in range(j - 1, -1, -1):
            a = abs(ls[k])
            if a == i:
                if ls[k] == -d:
                    return k, j
                break
            if a == i - 1:
                break
    return None


def handle_reduce(w: BraidWord, budget: int = DEFAULT_STEP_BUDGET) -> BraidWord:
    """Reduce to a word in which the least occurring generator index carries
    a single sign; empty iff the braid is trivial."""
    ls = list(free_reduce(w.letters))
    steps = 0
    while True:
        h = _find_handle(ls)
        if h is None:
            return BraidWord(w.strands, tuple(ls))
        steps += 1
        if steps > budget:
            raise StepBudgetExceeded(
                f"handle reduction exceeded {budget} rewrites"
            )
        k, j = h
        e = 1 if ls[k] > 0 else -1
        i = abs(ls[k])
        mid: list[int] = []
        for d in ls[k + 1 : j]:
            if abs(d) == i + 1:
                s = 1 if d > 0 else -1
                mid.extend((-e * (i + 1), s * i, e * (i + 1)))
            else:
                mid.append(d)
        ls = list(free_reduce(tuple(ls[:k]) + tuple(mid) + tuple(ls[j + 1 :])))


def dehornoy_sign(w: BraidWord, budget: int = DEFAULT_STEP_BUDGET) -> Sign:
    reduced = handle_reduce(w, budget)
    if not reduced.letters:
        return Sign.ZERO
    i = min(abs(d) for d in reduced.letters)
    signs = {d > 0 for d in reduced.letters if abs(d) == i}
    if len(signs) != 1:
        raise BraidError("handle reduction left a mixed-sign least generator")
    return Sign.POSITIVE if signs.pop() else Sign.NEGATIVE


def is_trivial_word(w: BraidWord, budget: int = DEFAULT_STEP_BUDGET) -> bool:
    return not handle_reduce(w, budget).letters


# --- lamination coordinates -------------------------------------------------

def _pos(x: int) -> int:
    return x if x > 0 else 0


def _neg(x: int) -> int:
    return x if x < 0 else 0


def lamination_initial(n: int) -> tuple[int, ...]:
    return (0, 1) * n


def _lamination_step(c: list[int], d: int) -> None:
    i = abs(d)
    a1, b1, a2, b2 = c[2 * i - 2 : 2 * i + 2]
    if d < 0:
        a1, a2 = -a1, -a2
    t = a1 - a2 - _neg(b1) + _pos(b2)
    na1 = a1 + _pos(b1) + _pos(_pos(b2) - t)
    nb1 = b2 - _pos(t)
    na2 = a2 + _neg(b2) + _neg(_neg(b1) + t)
    nb2 = b1 + _pos(t)
    if d < 0:
        na1, na2 = -na1, -na2
    c[2 * i - 2 : 2 * i + 2] = (na1, nb1, na2, nb2)


def lamination_apply(w: BraidWord) -> tuple[int, ...]:
    """Coordinates of the standard test lamination after acting by w; equal
    to lamination_initial(w.strands) iff w is trivial."""
    coords = list(lamination_initial(w.strands))
    for d in w.letters:
        _lamination_step(coords, d)
    return tuple(coords)


def lamination_trivial(w: BraidWord) -> bool:
    return lamination_apply(w) == lamination_initial(w.strands)


# --- digital braids ---------------------------------------------------------

@dataclass(frozen=True)
class DigitalBraid:
    top: Word
    bottom: Word
    word: BraidWord

    def __post_init__(self) -> None:
        n = len(self.top)
        if len(self.bottom) != n:
            raise LabelMismatchError("top and bottom have different lengths")
        if self.word.strands != max(n, 1):
            raise BraidError(
                f"braid has {self.word.strands} strands, expected {max(n, 1)}"
            )
        if n == 0:
            return
        perm = self.word.permutation()
        for i in range(n):
            if self.top[i] != self.bottom[perm[i] - 1]:
                raise LabelMismatchError(
                    f"strand from top {i + 1} ({self.top[i]!r}) ends at bottom "
                    f"{perm[i]} ({self.bottom[perm[i] - 1]!r})"
                )

    @classmethod
    def identity(cls, word: Word) -> "DigitalBraid":
        return cls(word, word, BraidWord(max(len(word), 1)))

    def compose(self, other: "DigitalBraid") -> "DigitalBraid":
        if self.bottom != other.top:
            raise LabelMismatchError(
                f"bottom {self.bottom} does not match top {other.top}"
            )
        return DigitalBraid(self.top, other.bottom, self.word * other.word)

    def invert(self) -> "DigitalBraid":
        return DigitalBraid(self.bottom, self.top, self.word.inverse())

    def is_pure(self) -> bool:
        n = self.word.strands
        return self.word.permutation() == tuple(range(1, n + 1))

    def is_trivial_labels(self) -> bool:
        return not self.word.letters


def forget_digits(g: DigitalBraid) -> BraidWord:
    return g.word


def _block_letters(offset: int, p: int, q: int, sign: int) -> list[int]:
    """Crossing of a width-p cable over a width-q cable occupying positions
    offset+1 .. offset+p+q."""
    if sign > 0:
        return [offset + p - i + j for i in range(1, p + 1) for j in range(1, q + 1)]
    positive = [offset + q - i + j for i in range(1, q + 1) for j in range(1, p + 1)]
    return [-x for x in reversed(positive)]


def act_bottom(
    g: DigitalBraid, b: ExpansionForest
) -> tuple[ExpansionForest, DigitalBraid]:
    """Cable g along the forest b attached to its bottom word.

    Returns (bup, gb) where bup is b transported to the top of g (the tree
    over top position i is the tree under the bottom position its strand
    reaches) and gb is the cabled braid from leaves(bup) to leaves(b).
    """
    if b.source != g.bottom:
        raise SourceMismatchError(
            f"forest source {b.source} does not match braid bottom {g.bottom}"
        )
    n = len(g.top)
    if n == 0:
        return b, g
    perm = g.word.permutation()
    # widths[i] = cable width of the strand with top position i+1
    widths = [b.trees[perm[i] - 1].leaf_count for i in range(n)]
    bup = ExpansionForest(b.drs, tuple(b.trees[perm[i] - 1] for i in range(n)))
    arr = list(range(n))  # strand ids (0-based top positions) by position
    letters: list[int] = []
    for d in g.word.letters:
        k = abs(d)
        u, v = arr[k - 1], arr[k]
        offset = sum(widths[s] for s in arr[: k - 1])
        letters.extend(_block_letters(offset, widths[u], widths[v], d))
        arr[k - 1], arr[k] = v, u
    total = sum(widths)
    gb = DigitalBraid(
        bup.leaves(), b.leaves(), BraidWord(max(total, 1), free_reduce(tuple(letters)))
    )
    return bup, gb

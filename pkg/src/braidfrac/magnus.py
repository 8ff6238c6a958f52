"""Bi-order on pure braids: strand combing plus Magnus expansion.

A pure braid on n strands decomposes by iteratively stripping its last
strand.  Deleting strand n from a pure braid g gives a pure braid gbar on
n-1 strands; reading the same word back on n strands and cancelling leaves a
braid c = lift(gbar)^{-1} g in which strand n does all the moving.  Such a c
lives in the free group on the generators A_{1n}, ..., A_{n-1,n} (strand n
looping once around strand j), and the free word it spells is the level-n
component of g.  Recursing on gbar produces one free word per level, level n
first.

The free word is extracted through the braid action on the free group:
positive crossing k sends x_k to x_k x_{k+1} x_k^{-1} and x_{k+1} to x_k,
other generators fixed, letters of the braid word applied left to right.
For c as above the image of x_n is a conjugate W x_n W^{-1}; killing the
letter x_n inside W gives the component, up to a change of basis.  The basis
in which the component arrives is the image of the A_{jn} themselves, so we
solve for the standard generators once per strand count and substitute.

Free words are then signed by the Magnus expansion x_i -> 1 + X_i into
integer power series in noncommuting variables: order monomials by total
degree then lexicographically, and take the sign of the lowest nonzero
non-constant coefficient.  The expansion of a nontrivial reduced word is
never 1, so escalating the truncation degree terminates; a configurable cap
turns a runaway escalation into an error instead of a silent answer.  The
resulting order on each level, taken lexicographically quotient-first (the
level-2 component is the most significant, level n the least), is invariant
under conjugation, which is what the fraction groups need from their braid
factor.  The opposite, kernel-first comparison is only left-invariant: the
conjugating-type automorphisms by which the smaller group acts on each free
level preserve the Magnus order of the level, but nothing protects a
high-level component against sign flips caused by lower-level conjugation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .braids import BraidWord, DigitalBraid
from .ordering import Sign

FreeWord = tuple[int, ...]

DEFAULT_DEGREE_CAP = 16


class MagnusError(ValueError):
    """Structural failure in combing or expansion."""


class DegreeCapExceeded(RuntimeError):
    """Magnus escalation hit the truncation cap without deciding a sign."""


def reduce_free(word: FreeWord) -> FreeWord:
    out: list[int] = []
    for t in word:
        if out and out[-1] == -t:
            out.pop()
        else:
            out.append(t)
    return tuple(out)


def invert_free(word: FreeWord) -> FreeWord:
    return tuple(-t for t in reversed(word))


# --- Magnus expansion -------------------------------------------------------

Monomial = tuple[int, ...]


class NcPolynomial:
    """Integer polynomial in noncommuting variables, truncated at a fixed
    total degree."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs: dict[Monomial, int] | None = None):
        if degree < 0:
            raise MagnusError("degree must be >= 0")
        self.degree = degree
        self.coeffs: dict[Monomial, int] = {
            m: c for m, c in (coeffs or {}).items() if c != 0 and len(m) <= degree
        }

    @classmethod
    def one(cls, degree: int) -> "NcPolynomial":
        return cls(degree, {(): 1})

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, NcPolynomial)
            and self.degree == other.degree
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.degree, frozenset(self.coeffs.items())))

    def __mul__(self, other: "NcPolynomial") -> "NcPolynomial":
        d = min(self.degree, other.degree)
        out: dict[Monomial, int] = {}
        for m1, c1 in self.coeffs.items():
            if len(m1) > d:
                continue
            for m2, c2 in other.coeffs.items():
                if len(m1) + len(m2) > d:
                    continue
                m = m1 + m2
                out[m] = out.get(m, 0) + c1 * c2
        return NcPolynomial(d, out)

    def __sub__(self, other: "NcPolynomial") -> "NcPolynomial":
        d = min(self.degree, other.degree)
        out = {m: c for m, c in self.coeffs.items() if len(m) <= d}
        for m, c in other.coeffs.items():
            if len(m) <= d:
                out[m] = out.get(m, 0) - c
        return NcPolynomial(d, out)

    def lowest_term(self) -> tuple[Monomial, int] | None:
        """Least non-constant monomial (by total degree, then index
        sequence) with nonzero coefficient."""
        best: Monomial | None = None
        for m in self.coeffs:
            if not m:
                continue
            if best is None or (len(m), m) < (len(best), best):
                best = m
        if best is None:
            return None
        return best, self.coeffs[best]

    def __repr__(self) -> str:
        return f"NcPolynomial(degree={self.degree}, coeffs={self.coeffs!r})"


def _letter_series(letter: int, degree: int) -> NcPolynomial:
    i = abs(letter)
    if letter > 0:
        return NcPolynomial(degree, {(): 1, (i,): 1})
    coeffs: dict[Monomial, int] = {(): 1}
    for t in range(1, degree + 1):
        coeffs[(i,) * t] = (-1) ** t
    return NcPolynomial(degree, coeffs)


def magnus_expand(word: FreeWord, degree: int) -> NcPolynomial:
    if degree < 1:
        raise MagnusError("degree must be >= 1")
    acc = NcPolynomial.one(degree)
    for t in word:
        acc = acc * _letter_series(t, degree)
    return acc


def free_word_sign(word: FreeWord, degree_cap: int = DEFAULT_DEGREE_CAP) -> Sign:
    w = reduce_free(word)
    if not w:
        return Sign.ZERO
    for d in range(1, degree_cap + 1):
        lt = magnus_expand(w, d).lowest_term()
        if lt is not None:
            return Sign.POSITIVE if lt[1] > 0 else Sign.NEGATIVE
    raise DegreeCapExceeded(
        f"no nonzero low-degree term up to degree {degree_cap}"
    )


# --- braid action on the free group ----------------------------------------

def artin_image(braid_letters: tuple[int, ...], word: FreeWord) -> FreeWord:
    """Image of a free word under a braid word, letters applied left to
    right; kept freely reduced throughout."""
    w = list(word)
    for d in braid_letters:
        k = abs(d)
        out: list[int] = []
        for t in w:
            j = abs(t)
            if j != k and j != k + 1:
                rep: tuple[int, ...] = (t,)
            elif d > 0:
                if j == k:
                    rep = (k, k + 1, -k) if t > 0 else (k, -(k + 1), -k)
                else:
                    rep = (k,) if t > 0 else (-k,)
            else:
                if j == k:
                    rep = (k + 1,) if t > 0 else (-(k + 1),)
                else:
                    rep = (-(k + 1), k, k + 1) if t > 0 else (-(k + 1), -k, k + 1)
            for x in rep:
                if out and out[-1] == -x:
                    out.pop()
                else:
                    out.append(x)
        w = out
    return tuple(w)


def delete_strand(letters: tuple[int, ...], n: int, strand: int = 0) -> tuple[int, ...]:
    """Remove the strand starting at top position `strand` (default: the
    last), dropping its crossings and reindexing the rest."""
    if strand == 0:
        strand = n
    p = strand  # current position of the tracked strand
    out: list[int] = []
    for d in letters:
        k = abs(d)
        if k == p:
            p = k + 1
        elif k == p - 1:
            p = k
        else:
            idx = k - 1 if k > p else k
            out.append(idx if d > 0 else -idx)
    return reduce_free(tuple(out))


def _peel_conjugator(word: FreeWord, center: int) -> FreeWord:
    """For a reduced word of shape u (center) u^{-1}, return u."""
    w = reduce_free(word)
    lo, hi = 0, len(w) - 1
    while hi - lo > 0:
        if w[lo] != -w[hi]:
            raise MagnusError(f"word is not a conjugate of generator {center}")
        lo += 1
        hi -= 1
    if lo != hi or w[lo] != center:
        raise MagnusError(f"word is not a conjugate of generator {center}")
    return w[: lo]


def _loop_generator_word(j: int, k: int) -> tuple[int, ...]:
    """Braid word on k strands looping strand k once (positively) around
    strand j."""
    return (
        tuple(range(k - 1, j, -1)) + (j, j) + tuple(-s for s in range(j + 1, k))
    )


def _substitute(word: FreeWord, table: dict[int, FreeWord]) -> FreeWord:
    out: list[int] = []
    for t in word:
        rep = table[abs(t)] if t > 0 else invert_free(table[abs(t)])
        for x in rep:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
    return tuple(out)


def _raw_component(braid_letters: tuple[int, ...], k: int) -> FreeWord:
    """Free word (in the twisted basis) traced by strand k of a braid that
    trivializes when strand k is deleted."""
    image = artin_image(braid_letters, (k,))
    conjugator = _peel_conjugator(image, k)
    return reduce_free(tuple(t for t in conjugator if abs(t) != k))


@lru_cache(maxsize=None)
def _standard_basis(k: int) -> dict[int, FreeWord]:
    """Expressions of the standard free generators x_j (strand k looping
    around strand j) in terms of the raw components, for j = 1..k-1."""
    exprs: dict[int, FreeWord] = {}
    for j in range(k - 1, 0, -1):
        raw = _raw_component(_loop_generator_word(j, k), k)
        u = _peel_conjugator(raw, j)
        if any(abs(t) <= j for t in u):
            raise MagnusError(
                f"basis triangularity failed at strand {k}, generator {j}"
            )
        sub_u = _substitute(u, exprs)
        exprs[j] = reduce_free(invert_free(sub_u) + (j,) + sub_u)
    return exprs


def _level_component(braid_letters: tuple[int, ...], k: int) -> FreeWord:
    raw = _raw_component(braid_letters, k)
    return _substitute(raw, _standard_basis(k))


@dataclass(frozen=True)
class CombedForm:
    strands: int
    components: tuple[FreeWord, ...]  # level n first, down to level 2

    def is_trivial(self) -> bool:
        return all(not c for c in self.components)


def _check_pure_word(letters: tuple[int, ...], n: int) -> None:
    perm = BraidWord(n, letters).permutation()
    if perm != tuple(range(1, n + 1)):
        raise MagnusError("braid is not pure")


def _level_words(letters: tuple[int, ...], n: int):
    """Yield (k, c_letters) per level, c_letters a pure word on k strands
    trivialized by deleting strand k."""
    w = reduce_free(letters)
    for k in range(n, 1, -1):
        wbar = delete_strand(w, k)
        lift_inv = tuple(-d for d in reversed(wbar))
        yield k, reduce_free(lift_inv + w)
        w = wbar


def comb_word(letters: tuple[int, ...], n: int) -> CombedForm:
    _check_pure_word(letters, n)
    components = tuple(
        _level_component(c, k) for k, c in _level_words(letters, n)
    )
    return CombedForm(n, components)


def comb(g: DigitalBraid) -> CombedForm:
    if not g.is_pure():
        raise MagnusError("digital braid is not pure")
    return comb_word(g.word.letters, g.word.strands)


def recombine(form: CombedForm, n: int | None = None) -> BraidWord:
    """Braid word reassembled from a combed form; equal to the original
    braid."""
    if n is None:
        n = form.strands
    word: tuple[int, ...] = ()
    k = n - len(form.components) + 1
    for component in reversed(form.components):
        tail: list[int] = []
        for t in component:
            gen = _loop_generator_word(abs(t), k)
            tail.extend(gen if t > 0 else tuple(-d for d in reversed(gen)))
        word = reduce_free(word + tuple(tail))
        k += 1
    return BraidWord(n, word)


def pure_word_sign(
    letters: tuple[int, ...], n: int, degree_cap: int = DEFAULT_DEGREE_CAP
) -> Sign:
    """Sign of a pure braid word, quotient-first: the image in the smaller
    pure braid group under strand deletion is compared before the combing
    component of the deleted strand, so the level-2 component is the most
    significant.  Kernel-first comparison would only be left-invariant;
    quotient-first gives the two-sided order the fraction groups rely on."""
    _check_pure_word(letters, n)
    from .braids import BraidWord, handle_reduce

    if not handle_reduce(BraidWord(n, letters)).letters:
        return Sign.ZERO
    levels = list(_level_words(letters, n))
    for k, c in reversed(levels):
        component = _level_component(c, k)
        if component:
            return free_word_sign(component, degree_cap)
    return Sign.ZERO


def pure_braid_sign(
    g: DigitalBraid, degree_cap: int = DEFAULT_DEGREE_CAP
) -> Sign:
    if not g.is_pure():
        raise MagnusError("digital braid is not pure")
    return pure_word_sign(g.word.letters, g.word.strands, degree_cap)

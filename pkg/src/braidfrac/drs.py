"""Digit rewriting systems and their category of expansions.

A digit rewriting system over a finite alphabet has at most one rule per
letter, and every rule replaces a letter by a word of length at least two.
Rewriting only ever touches a single position, so two rewritings at disjoint
positions commute; consequently a morphism of the expansion category is
faithfully recorded by an *expansion forest*: one rooted labeled tree per
letter of the source word, where an internal node labeled ``a`` has children
labeled by the right side of the rule for ``a``.  The leaves of the forest,
read left to right, spell the target word.  Structural equality of forests is
exactly equality of morphisms.

The category is cancellative and admits common right multiples: the join of
two forests with the same source is their pointwise tree union (a node is
expanded in the join iff it is expanded in either argument; this is well
defined because each letter carries at most one rule), and the complements are
obtained by structural tree subtraction.  These are the ingredients needed to
form groups of fractions further up the stack.

Positions in step sequences are 1-based: ``[2, 1]`` means "expand the letter
at position 2 of the source word, then the letter at position 1 of the
resulting word".
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator

Word = tuple[str, ...]

_LETTER_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class DrsError(ValueError):
    """Base class for digit-rewriting-system errors."""


class DrsParseError(DrsError):
    """Malformed DRS file text."""


class SourceMismatchError(DrsError):
    """Two morphisms were combined along non-matching words."""


class NotAnUpperBoundError(DrsError):
    """Complement requested into a forest that is not an upper bound."""


@dataclass(frozen=True)
class RewriteRule:
    lhs: str
    rhs: Word

    def __post_init__(self) -> None:
        if len(self.rhs) < 2:
            raise DrsError(
                f"rule {self.lhs} -> {' '.join(self.rhs)}: right side must "
                f"have length >= 2, got {len(self.rhs)}"
            )

    @property
    def arity(self) -> int:
        return len(self.rhs)


@dataclass(frozen=True)
class DigitRewritingSystem:
    alphabet: tuple[str, ...]
    rules: tuple[RewriteRule, ...]
    base: Word = ()  # optional default base word

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for a in self.alphabet:
            if not _LETTER_RE.match(a):
                raise DrsError(f"invalid letter name {a!r}")
            if a in seen:
                raise DrsError(f"duplicate letter {a!r} in alphabet")
            seen.add(a)
        ruled: set[str] = set()
        for r in self.rules:
            if r.lhs not in seen:
                raise DrsError(f"rule for unknown letter {r.lhs!r}")
            if r.lhs in ruled:
                raise DrsError(f"duplicate rule for letter {r.lhs!r}")
            ruled.add(r.lhs)
            for u in r.rhs:
                if u not in seen:
                    raise DrsError(f"unknown letter {u!r} in rule for {r.lhs!r}")
        for a in self.base:
            if a not in seen:
                raise DrsError(f"unknown letter {a!r} in base word")

    @cached_property
    def rule_map(self) -> dict[str, RewriteRule]:
        return {r.lhs: r for r in self.rules}

    def rule_for(self, letter: str) -> RewriteRule | None:
        return self.rule_map.get(letter)

    def check_word(self, word: Word) -> Word:
        for a in word:
            if a not in self.rule_map and a not in self.alphabet:
                raise DrsError(f"unknown letter {a!r}")
        return word


@dataclass(frozen=True)
class ExpansionTree:
    label: str
    children: tuple["ExpansionTree", ...] = ()

    @cached_property
    def leaf_count(self) -> int:
        if not self.children:
            return 1
        return sum(c.leaf_count for c in self.children)

    def leaf_labels(self) -> Iterator[str]:
        if not self.children:
            yield self.label
        else:
            for c in self.children:
                yield from c.leaf_labels()

    def is_leaf(self) -> bool:
        return not self.children


def _check_tree(drs: DigitRewritingSystem, tree: ExpansionTree) -> None:
    if not tree.children:
        return
    rule = drs.rule_for(tree.label)
    if rule is None:
        raise DrsError(f"letter {tree.label!r} has no rule but is expanded")
    labels = tuple(c.label for c in tree.children)
    if labels != rule.rhs:
        raise DrsError(
            f"children of {tree.label!r} are {labels}, rule says {rule.rhs}"
        )
    for c in tree.children:
        _check_tree(drs, c)


@dataclass(frozen=True)
class ExpansionForest:
    drs: DigitRewritingSystem
    trees: tuple[ExpansionTree, ...]

    def __post_init__(self) -> None:
        for t in self.trees:
            _check_tree(self.drs, t)

    @property
    def source(self) -> Word:
        return tuple(t.label for t in self.trees)

    def leaves(self) -> Word:
        out: list[str] = []
        for t in self.trees:
            out.extend(t.leaf_labels())
        return tuple(out)

    def leaf_count(self) -> int:
        return sum(t.leaf_count for t in self.trees)

    def is_identity(self) -> bool:
        return all(t.is_leaf() for t in self.trees)

    @classmethod
    def identity(cls, drs: DigitRewritingSystem, word: Word) -> "ExpansionForest":
        drs.check_word(word)
        return cls(drs, tuple(ExpansionTree(a) for a in word))


def _graft_tree(tree: ExpansionTree, it: Iterator[ExpansionTree]) -> ExpansionTree:
    if not tree.children:
        return next(it)
    return ExpansionTree(tree.label, tuple(_graft_tree(c, it) for c in tree.children))


def graft(first: ExpansionForest, second: ExpansionForest) -> ExpansionForest:
    """Compose expansions: replace the i-th leaf of `first` by the i-th tree
    of `second`."""
    if first.leaves() != second.source:
        raise SourceMismatchError(
            f"leaves {first.leaves()} do not match source {second.source}"
        )
    it = iter(second.trees)
    return ExpansionForest(first.drs, tuple(_graft_tree(t, it) for t in first.trees))


def _union_tree(a: ExpansionTree, b: ExpansionTree) -> ExpansionTree:
    if not a.children:
        return b
    if not b.children:
        return a
    return ExpansionTree(
        a.label, tuple(_union_tree(x, y) for x, y in zip(a.children, b.children))
    )


def _complement_tree(
    sub: ExpansionTree, full: ExpansionTree, out: list[ExpansionTree]
) -> None:
    if not sub.children:
        out.append(full)
        return
    if not full.children:
        raise NotAnUpperBoundError(
            f"node {sub.label!r} is expanded in the smaller forest only"
        )
    for sc, fc in zip(sub.children, full.children):
        _complement_tree(sc, fc, out)


def complement(sub: ExpansionForest, full: ExpansionForest) -> ExpansionForest:
    """The forest C with graft(sub, C) = full; errors if sub is not below
    full."""
    if sub.source != full.source:
        raise SourceMismatchError(
            f"sources differ: {sub.source} vs {full.source}"
        )
    out: list[ExpansionTree] = []
    for s, f in zip(sub.trees, full.trees):
        _complement_tree(s, f, out)
    return ExpansionForest(sub.drs, tuple(out))


def forest_join(
    s: ExpansionForest, t: ExpansionForest
) -> tuple[ExpansionForest, ExpansionForest, ExpansionForest]:
    """Least common upper bound J of two forests with the same source,
    together with the complements B, A satisfying graft(s, B) = graft(t, A)
    = J."""
    if s.source != t.source:
        raise SourceMismatchError(f"sources differ: {s.source} vs {t.source}")
    j = ExpansionForest(
        s.drs, tuple(_union_tree(x, y) for x, y in zip(s.trees, t.trees))
    )
    return j, complement(s, j), complement(t, j)


def expand_at(forest: ExpansionForest, position: int) -> ExpansionForest:
    """Apply the rule at the 1-based leaf `position` of the current target
    word."""
    total = forest.leaf_count()
    if not 1 <= position <= total:
        raise DrsError(f"position {position} out of range 1..{total}")
    drs = forest.drs
    counter = position  # counts down while scanning leaves left to right

    def rebuild(tree: ExpansionTree) -> ExpansionTree:
        nonlocal counter
        if not tree.children:
            counter -= 1
            if counter == 0:
                rule = drs.rule_for(tree.label)
                if rule is None:
                    raise DrsError(
                        f"letter {tree.label!r} at position {position} has no rule"
                    )
                return ExpansionTree(
                    tree.label, tuple(ExpansionTree(u) for u in rule.rhs)
                )
            return tree
        return ExpansionTree(tree.label, tuple(rebuild(c) for c in tree.children))

    return ExpansionForest(drs, tuple(rebuild(t) for t in forest.trees))


def forest_from_steps(
    drs: DigitRewritingSystem, word: Word, steps: list[int] | tuple[int, ...]
) -> ExpansionForest:
    f = ExpansionForest.identity(drs, word)
    for p in steps:
        f = expand_at(f, p)
    return f


def steps_of(forest: ExpansionForest) -> list[int]:
    """A step sequence replaying to `forest` (outermost-first, left to
    right)."""
    steps: list[int] = []

    def emit(tree: ExpansionTree, pos: int) -> int:
        if not tree.children:
            return 1
        steps.append(pos)
        width = 0
        for child in tree.children:
            width += emit(child, pos + width)
        return width

    pos = 1
    for t in forest.trees:
        pos += emit(t, pos)
    return steps


def enumerate_expansions(
    drs: DigitRewritingSystem, word: Word, depth: int
) -> set[ExpansionForest]:
    """All forests with the given source and at most `depth` rule
    applications."""
    if depth < 0:
        raise DrsError("depth must be >= 0")
    frontier: set[ExpansionForest] = {ExpansionForest.identity(drs, word)}
    seen = set(frontier)
    for _ in range(depth):
        nxt: set[ExpansionForest] = set()
        for f in frontier:
            for p, letter in enumerate(f.leaves(), start=1):
                if drs.rule_for(letter) is not None:
                    g = expand_at(f, p)
                    if g not in seen:
                        nxt.add(g)
        seen |= nxt
        frontier = nxt
        if not frontier:
            break
    return seen


def forest_with_leaves(
    drs: DigitRewritingSystem, base: Word, target: Word
) -> ExpansionForest | None:
    """Breadth-first search for a forest with the given source and leaf
    word; None if the target is not reachable."""
    from collections import deque

    start = ExpansionForest.identity(drs, base)
    seen = {start}
    queue = deque([start])
    while queue:
        f = queue.popleft()
        leaves = f.leaves()
        if leaves == target:
            return f
        if len(leaves) >= len(target):
            continue
        for p, letter in enumerate(leaves, start=1):
            if drs.rule_for(letter) is not None:
                g = expand_at(f, p)
                if g not in seen:
                    seen.add(g)
                    queue.append(g)
    return None


def parse_drs(text: str) -> DigitRewritingSystem:
    """Parse the line-based DRS file format.

    ``alphabet: x y1 y2``, ``rule: y1 -> y1 x`` (one per line), optional
    ``base: y1 y2``; ``#`` starts a comment.
    """
    alphabet: tuple[str, ...] | None = None
    rules: list[RewriteRule] = []
    base: Word = ()
    saw_base = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("alphabet:"):
            if alphabet is not None:
                raise DrsParseError(f"line {lineno}: duplicate alphabet line")
            alphabet = tuple(line[len("alphabet:"):].split())
            if not alphabet:
                raise DrsParseError(f"line {lineno}: empty alphabet")
        elif line.startswith("rule:"):
            body = line[len("rule:"):]
            if "->" not in body:
                raise DrsParseError(f"line {lineno}: rule must contain '->'")
            lhs_part, rhs_part = body.split("->", 1)
            lhs_tokens = lhs_part.split()
            rhs = tuple(rhs_part.split())
            if len(lhs_tokens) != 1:
                raise DrsParseError(
                    f"line {lineno}: rule left side must be a single letter"
                )
            try:
                rules.append(RewriteRule(lhs_tokens[0], rhs))
            except DrsError as exc:
                raise DrsParseError(f"line {lineno}: {exc}") from exc
        elif line.startswith("base:"):
            if saw_base:
                raise DrsParseError(f"line {lineno}: duplicate base line")
            base = tuple(line[len("base:"):].split())
            saw_base = True
        else:
            raise DrsParseError(
                f"line {lineno}: expected 'alphabet:', 'rule:' or 'base:'"
            )
    if alphabet is None:
        raise DrsParseError("missing alphabet line")
    try:
        return DigitRewritingSystem(alphabet, tuple(rules), base)
    except DrsError as exc:
        raise DrsParseError(str(exc)) from exc


def parse_steps(text: str) -> list[int]:
    """Parse a forest literal body: positions separated by whitespace or
    commas."""
    tokens = text.replace(",", " ").split()
    try:
        return [int(t) for t in tokens]
    except ValueError as exc:
        raise DrsParseError(f"bad step list {text!r}") from exc


def format_steps(steps: list[int]) -> str:
    return "[" + " ".join(str(p) for p in steps) + "]"

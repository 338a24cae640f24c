"""Finite label sets, bijections, decompositions and partitions.

Labels come in three flavours: plain atoms, synthesized fresh elements
(one per finite set, written ``*{...}``), and references to partition
blocks (written ``#{...}``).  All values are interned, so equality and
hashing are identity-based and cheap.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

_ATOM_CHARS = set("abcdefghijklmnopqrstuvwxyz0123456789_")

# ---------------------------------------------------------------------------
# labels


class Label:
    """Base class for set elements.  Ordered: atoms < fresh stars < block refs."""

    __slots__ = ("key",)

    def __lt__(self, other: "Label") -> bool:
        return self.key < other.key

    def __le__(self, other: "Label") -> bool:
        return self.key <= other.key

    def render(self) -> str:
        raise NotImplementedError

    def __repr__(self) -> str:
        return self.render()


class Atom(Label):
    __slots__ = ("name",)

    def render(self) -> str:
        return self.name


class Star(Label):
    """The fresh element attached to a base set; never a member of its base."""

    __slots__ = ("base",)

    def render(self) -> str:
        return "*" + self.base.render()


class BlockRef(Label):
    """A partition block used as a single element of a partition-as-set."""

    __slots__ = ("block",)

    def render(self) -> str:
        return "#" + self.block.render()


_atoms: dict[str, Atom] = {}
_stars: dict["FiniteSet", Star] = {}
_blocks: dict["FiniteSet", BlockRef] = {}


def atom(name: str) -> Atom:
    got = _atoms.get(name)
    if got is not None:
        return got
    if not name or not set(name) <= _ATOM_CHARS:
        raise ValueError(f"bad atom name: {name!r}")
    a = Atom()
    a.name = name
    a.key = (0, name)
    _atoms[name] = a
    return a


def star_of(x: "FiniteSet") -> Star:
    """The fresh element for ``x``.  Deterministic, and never an element of ``x``."""
    got = _stars.get(x)
    if got is not None:
        return got
    s = Star()
    s.base = x
    s.key = (1, x.key)
    _stars[x] = s
    return s


def block_ref(block: "FiniteSet") -> BlockRef:
    got = _blocks.get(block)
    if got is not None:
        return got
    if not block.elements:
        raise ValueError("block references require a nonempty block")
    b = BlockRef()
    b.block = block
    b.key = (2, block.key)
    _blocks[block] = b
    return b


# ---------------------------------------------------------------------------
# finite sets


class FiniteSet:
    """Canonically sorted, duplicate-free sequence of labels."""

    __slots__ = ("elements", "key", "_members", "_hash")

    def __iter__(self) -> Iterator[Label]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, label: Label) -> bool:
        return label in self._members

    def union(self, other: "FiniteSet") -> "FiniteSet":
        return fset(self.elements + other.elements)

    def without(self, label: Label) -> "FiniteSet":
        return fset(e for e in self.elements if e is not label)

    def add(self, label: Label) -> "FiniteSet":
        return fset(self.elements + (label,))

    def difference(self, other: "FiniteSet") -> "FiniteSet":
        return fset(e for e in self.elements if e not in other)

    def intersection(self, other: "FiniteSet") -> "FiniteSet":
        return fset(e for e in self.elements if e in other)

    def isdisjoint(self, other: "FiniteSet") -> bool:
        return self._members.isdisjoint(other._members)

    def issubset(self, other: "FiniteSet") -> bool:
        return self._members <= other._members

    def min_label(self) -> Label:
        if not self.elements:
            raise ValueError("empty set has no minimum")
        return self.elements[0]

    def with_star(self) -> "FiniteSet":
        return self.add(star_of(self))

    def render(self) -> str:
        return "{" + ",".join(e.render() for e in self.elements) + "}"

    def __repr__(self) -> str:
        return self.render()


_fsets: dict[tuple, FiniteSet] = {}


def fset(labels: Iterable[Label] = ()) -> FiniteSet:
    elems = tuple(sorted(set(labels), key=lambda e: e.key))
    got = _fsets.get(elems)
    if got is not None:
        return got
    s = FiniteSet()
    s.elements = elems
    s.key = tuple(e.key for e in elems)
    s._members = frozenset(elems)
    _fsets[elems] = s
    return s


EMPTY = fset()


def atoms(*names: str) -> FiniteSet:
    return fset(atom(n) for n in names)


_POOL_NAMES = "abcdefghij"


def atom_pool(n: int) -> list[Atom]:
    """First ``n`` atoms in canonical order, for exhaustive checks."""
    if n > len(_POOL_NAMES):
        raise ValueError(f"pools larger than {len(_POOL_NAMES)} are not supported")
    return [atom(c) for c in _POOL_NAMES[:n]]


# ---------------------------------------------------------------------------
# bijections


class Bijection:
    """Invertible map between finite sets, stored as an explicit table."""

    __slots__ = ("domain", "codomain", "forward", "backward", "pairs")

    def apply(self, label: Label) -> Label:
        return self.forward[label]

    def preimage(self, label: Label) -> Label:
        return self.backward[label]

    def inverse(self) -> "Bijection":
        return bijection(self.codomain, self.domain, {v: k for k, v in self.pairs})

    def is_identity(self) -> bool:
        return all(k is v for k, v in self.pairs)

    def render(self) -> str:
        body = ",".join(f"{k.render()}->{v.render()}" for k, v in self.pairs)
        return "[" + body + "]"

    def __repr__(self) -> str:
        return self.render()


_bijections: dict[tuple, Bijection] = {}


def bijection(domain: FiniteSet, codomain: FiniteSet, forward: dict[Label, Label]) -> Bijection:
    pairs = tuple((e, forward[e]) for e in domain.elements)
    key = (domain, codomain, pairs)
    got = _bijections.get(key)
    if got is not None:
        return got
    if len(forward) != len(domain) or len(domain) != len(codomain):
        raise ValueError("map is not a bijection between the given sets")
    image = set(v for _, v in pairs)
    if len(image) != len(pairs) or image != set(codomain.elements):
        raise ValueError("map is not a bijection onto the codomain")
    b = Bijection()
    b.domain = domain
    b.codomain = codomain
    b.forward = dict(pairs)
    b.backward = {v: k for k, v in pairs}
    b.pairs = pairs
    _bijections[key] = b
    return b


def identity_bijection(x: FiniteSet) -> Bijection:
    return bijection(x, x, {e: e for e in x})


def compose_bijections(sigma: Bijection, tau: Bijection) -> Bijection:
    """sigma after tau (tau's codomain must be sigma's domain)."""
    if tau.codomain is not sigma.domain:
        raise ValueError("bijections do not compose")
    return bijection(tau.domain, sigma.codomain, {e: sigma.forward[tau.forward[e]] for e in tau.domain})


def union_bijection(sigma: Bijection, tau: Bijection) -> Bijection:
    """Disjoint union of two bijections into one table."""
    if not sigma.domain.isdisjoint(tau.domain) or not sigma.codomain.isdisjoint(tau.codomain):
        raise ValueError("bijection union requires disjoint domains and codomains")
    forward = dict(sigma.pairs)
    forward.update(dict(tau.pairs))
    return bijection(sigma.domain.union(tau.domain), sigma.codomain.union(tau.codomain), forward)


def restrict_corestrict(sigma: Bijection, y: FiniteSet) -> Bijection:
    """Corestriction of ``sigma`` onto ``y``: a bijection preimage(y) -> y."""
    if not y.issubset(sigma.codomain):
        raise ValueError(f"{y.render()} is not a subset of the codomain {sigma.codomain.render()}")
    dom = fset(sigma.backward[v] for v in y)
    return bijection(dom, y, {d: sigma.forward[d] for d in dom})


def partial_extension(sigma: Bijection) -> Bijection:
    """Extend sigma: Y -> X to Y+{*_Y} -> X+{*_X}, sending star to star."""
    sy = star_of(sigma.domain)
    sx = star_of(sigma.codomain)
    forward = dict(sigma.pairs)
    forward[sy] = sx
    return bijection(sigma.domain.add(sy), sigma.codomain.add(sx), forward)


def renaming(x: FiniteSet, old: Label, new: Label) -> Bijection:
    """The bijection X\\{old}+{new} -> X that renames ``old`` to ``new``."""
    if old not in x:
        raise ValueError(f"{old.render()} not in {x.render()}")
    if new in x.without(old):
        raise ValueError(f"{new.render()} already occurs in {x.render()}")
    dom = x.without(old).add(new)
    forward = {e: e for e in x.without(old)}
    forward[new] = old
    return bijection(dom, x, forward)


def transposition(x: FiniteSet, a: Label, b: Label) -> Bijection:
    """The self-bijection of ``x`` exchanging ``a`` and ``b``."""
    if a not in x or b not in x:
        raise ValueError("both labels must belong to the set")
    forward = {e: e for e in x}
    forward[a] = b
    forward[b] = a
    return bijection(x, x, forward)


def all_bijections(y: FiniteSet, x: FiniteSet) -> list[Bijection]:
    """All bijections Y -> X in a deterministic order."""
    if len(y) != len(x):
        raise ValueError("sets of different sizes admit no bijections")
    out = []
    for perm in itertools.permutations(x.elements):
        out.append(bijection(y, x, dict(zip(y.elements, perm))))
    return out


# ---------------------------------------------------------------------------
# decompositions and partitions


@dataclass(frozen=True)
class Decomposition:
    """Ordered pairwise-disjoint parts (possibly empty) covering ``whole``."""

    parts: tuple[FiniteSet, ...]
    whole: FiniteSet

    def __post_init__(self):
        seen = set()
        for p in self.parts:
            for e in p:
                if e in seen:
                    raise ValueError("parts overlap")
                seen.add(e)
        if seen != set(self.whole.elements):
            raise ValueError("parts do not cover the whole set")

    def render(self) -> str:
        return ";".join(p.render() for p in self.parts)


def enumerate_binary_decompositions(x: FiniteSet) -> list[Decomposition]:
    """All 2^|X| ordered pairs (X1, X2) with X1+X2 = X, parts may be empty."""
    out = []
    n = len(x)
    for mask in range(1 << n):
        left = fset(e for i, e in enumerate(x.elements) if mask >> i & 1)
        right = fset(e for i, e in enumerate(x.elements) if not mask >> i & 1)
        out.append(Decomposition((left, right), x))
    return out


def enumerate_partitions(x: FiniteSet) -> list[tuple[FiniteSet, ...]]:
    """All partitions of ``x`` into nonempty blocks, blocks in canonical order."""
    elems = x.elements
    if not elems:
        return [()]
    out: list[tuple[FiniteSet, ...]] = []

    def extend(i: int, blocks: list[list[Label]]):
        if i == len(elems):
            out.append(tuple(sorted((fset(b) for b in blocks), key=lambda s: s.key)))
            return
        e = elems[i]
        for b in blocks:
            b.append(e)
            extend(i + 1, blocks)
            b.pop()
        blocks.append([e])
        extend(i + 1, blocks)
        blocks.pop()

    extend(1, [[elems[0]]])
    return out


def partition_as_set(blocks: Iterable[FiniteSet]) -> FiniteSet:
    return fset(block_ref(b) for b in blocks)


def subsets(pool: Iterable[Label], lo: int, hi: int) -> list[FiniteSet]:
    """All subsets of ``pool`` with lo <= size <= hi, in a deterministic order."""
    items = sorted(set(pool), key=lambda e: e.key)
    out = []
    for n in range(lo, min(hi, len(items)) + 1):
        for combo in itertools.combinations(items, n):
            out.append(fset(combo))
    return out


# ---------------------------------------------------------------------------
# text round-trip


def render_label(label: Label) -> str:
    return label.render()


def render_set(x: FiniteSet) -> str:
    return x.render()


def _split_top(body: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in body:
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
            if depth < 0:
                raise ValueError("unbalanced braces")
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def parse_label(text: str) -> Label:
    text = text.strip()
    if not text:
        raise ValueError("empty label")
    if text[0] == "*":
        return star_of(parse_set(text[1:]))
    if text[0] == "#":
        return block_ref(parse_set(text[1:]))
    return atom(text)


def parse_set(text: str) -> FiniteSet:
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise ValueError(f"not a set literal: {text!r}")
    body = text[1:-1].strip()
    if not body:
        return EMPTY
    labels = [parse_label(p) for p in _split_top(body)]
    if len(set(labels)) != len(labels):
        raise ValueError(f"duplicate elements in {text!r}")
    return fset(labels)

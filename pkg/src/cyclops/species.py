"""Species of structures: evaluable functors from finite sets and bijections.

A species here is a pair of callables: ``eval`` listing the structures on a
given label set, and ``transport`` relabelling a structure along a bijection
(contravariantly: a bijection Y -> X carries structures on X to structures
on Y).  Structure values are interned trees, so equality is identity.
"""
from __future__ import annotations

import itertools
from typing import Callable, Iterable

from cyclops.labels import (
    Bijection,
    Decomposition,
    FiniteSet,
    Label,
    compose_bijections,
    enumerate_binary_decompositions,
    enumerate_partitions,
    fset,
    partial_extension,
    partition_as_set,
    restrict_corestrict,
    star_of,
    subsets,
    all_bijections,
    identity_bijection,
)
from cyclops.reporting import Report, Violation

# ---------------------------------------------------------------------------
# structure values


class StructureValue:
    __slots__ = ("key",)

    def render(self) -> str:
        raise NotImplementedError

    def __repr__(self) -> str:
        return self.render()


class WholeSet(StructureValue):
    """The unique structure of a cardinality species: the set itself."""

    __slots__ = ("carrier",)

    def render(self) -> str:
        return "whole" + self.carrier.render()


class PairVal(StructureValue):
    """Product structure: two components on the parts of a binary split."""

    __slots__ = ("left", "right", "x1", "x2")

    @property
    def split(self) -> Decomposition:
        return Decomposition((self.x1, self.x2), self.x1.union(self.x2))

    def render(self) -> str:
        return f"pair({self.left.render()},{self.right.render()};{self.x1.render()},{self.x2.render()})"


class SubstVal(StructureValue):
    """Substitution structure: outer structure on a partition, inner per block."""

    __slots__ = ("partition", "outer", "inner")

    def render(self) -> str:
        inner = ",".join(f"{b.render()}->{v.render()}" for b, v in self.inner)
        return f"subst({self.partition.render()},{self.outer.render()},[{inner}])"


class PointedVal(StructureValue):
    __slots__ = ("base", "point")

    def render(self) -> str:
        return f"point({self.base.render()},{self.point.render()})"


class TaggedVal(StructureValue):
    """Structure of a sum species, tagged with its summand index."""

    __slots__ = ("index", "value")

    def render(self) -> str:
        return f"in{self.index}({self.value.render()})"


class ClassVal(StructureValue):
    """Canonical representative (point, structure-without-point) of a quotient class."""

    __slots__ = ("point", "value")

    def render(self) -> str:
        return f"cls({self.point.render()},{self.value.render()})"


class ModelVal(StructureValue):
    """Model-specific payload (tuples of labels, strings, ints)."""

    __slots__ = ("tag", "payload")

    def render(self) -> str:
        return f"{self.tag}{_render_payload(self.payload)}"


def _render_payload(p) -> str:
    if isinstance(p, tuple):
        return "(" + ",".join(_render_payload(q) for q in p) + ")"
    if isinstance(p, Label):
        return p.render()
    return str(p)


def _payload_key(p):
    if isinstance(p, tuple):
        return ("t",) + tuple(_payload_key(q) for q in p)
    if isinstance(p, Label):
        return ("l", p.key)
    return ("s", p)


_values: dict[tuple, StructureValue] = {}


def _intern(key, build) -> StructureValue:
    got = _values.get(key)
    if got is not None:
        return got
    v = build()
    v.key = key
    _values[key] = v
    return v


def whole(x: FiniteSet) -> WholeSet:
    def build():
        v = WholeSet()
        v.carrier = x
        return v

    return _intern(("W", x.key), build)


def pair(left: StructureValue, right: StructureValue, x1: FiniteSet, x2: FiniteSet) -> PairVal:
    def build():
        v = PairVal()
        v.left, v.right, v.x1, v.x2 = left, right, x1, x2
        return v

    return _intern(("P", x1.key, x2.key, left.key, right.key), build)


def subst(partition: FiniteSet, outer: StructureValue, inner: Iterable[tuple]) -> SubstVal:
    items = tuple(sorted(inner, key=lambda bv: bv[0].key))

    def build():
        v = SubstVal()
        v.partition, v.outer, v.inner = partition, outer, items
        return v

    return _intern(("S", partition.key, outer.key, tuple((b.key, g.key) for b, g in items)), build)


def pointed(base: StructureValue, point: Label) -> PointedVal:
    def build():
        v = PointedVal()
        v.base, v.point = base, point
        return v

    return _intern(("D", point.key, base.key), build)


def tagged(index: int, value: StructureValue) -> TaggedVal:
    def build():
        v = TaggedVal()
        v.index, v.value = index, value
        return v

    return _intern(("T", index, value.key), build)


def class_rep(point: Label, value: StructureValue) -> ClassVal:
    def build():
        v = ClassVal()
        v.point, v.value = point, value
        return v

    return _intern(("C", point.key, value.key), build)


def model_val(tag: str, payload) -> ModelVal:
    def build():
        v = ModelVal()
        v.tag, v.payload = tag, payload
        return v

    return _intern(("M", tag, _payload_key(payload)), build)


# ---------------------------------------------------------------------------
# species


class Species:
    __slots__ = ("name", "_eval_fn", "_transport_fn", "_eval_memo", "_members_memo", "_transport_memo")

    def __repr__(self) -> str:
        return f"Species({self.name})"

    def eval(self, x: FiniteSet) -> tuple[StructureValue, ...]:
        got = self._eval_memo.get(x)
        if got is None:
            got = tuple(sorted(self._eval_fn(x), key=lambda v: v.key))
            self._eval_memo[x] = got
        return got

    def members(self, x: FiniteSet) -> frozenset:
        got = self._members_memo.get(x)
        if got is None:
            got = frozenset(self.eval(x))
            self._members_memo[x] = got
        return got

    def transport(self, sigma: Bijection, value: StructureValue) -> StructureValue:
        if sigma.is_identity():
            return value
        key = (sigma, value)
        got = self._transport_memo.get(key)
        if got is None:
            got = self._transport_fn(sigma, value)
            self._transport_memo[key] = got
        return got


_registry: dict[str, Species] = {}


def _new_species(name: str, eval_fn, transport_fn) -> Species:
    s = Species()
    s.name = name
    s._eval_fn = eval_fn
    s._transport_fn = transport_fn
    s._eval_memo = {}
    s._members_memo = {}
    s._transport_memo = {}
    return s


def _registered(name: str, make: Callable[[], tuple]) -> Species:
    got = _registry.get(name)
    if got is not None:
        return got
    eval_fn, transport_fn = make()
    s = _new_species(name, eval_fn, transport_fn)
    _registry[name] = s
    return s


def base_species(name: str, eval_fn, transport_fn) -> Species:
    """A species given directly by callables.  Names are uniquified."""
    if name in _registry:
        suffix = 2
        while f"{name}#{suffix}" in _registry:
            suffix += 1
        name = f"{name}#{suffix}"
    s = _new_species(name, eval_fn, transport_fn)
    _registry[name] = s
    return s


def species_E(n: int) -> Species:
    """Cardinality species: one structure (the set itself) on n-element sets."""
    if n < 0:
        raise ValueError("cardinality must be nonnegative")

    def make():
        def ev(x: FiniteSet):
            return (whole(x),) if len(x) == n else ()

        def tr(sigma: Bijection, v: StructureValue):
            return whole(sigma.domain)

        return ev, tr

    return _registered(f"E{n}", make)


def species_E_at_least(n: int) -> Species:
    """One structure on every set of size >= n (terminal-style carrier)."""

    def make():
        def ev(x: FiniteSet):
            return (whole(x),) if len(x) >= n else ()

        def tr(sigma, v):
            return whole(sigma.domain)

        return ev, tr

    return _registered(f"E>={n}", make)


def sum_species(*parts: Species) -> Species:
    """Tagged disjoint union; values carry their summand index."""
    if len(parts) < 2:
        raise ValueError("a sum needs at least two summands")
    name = "sum(" + ",".join(p.name for p in parts) + ")"

    def make():
        def ev(x: FiniteSet):
            out = []
            for i, p in enumerate(parts):
                out.extend(tagged(i, v) for v in p.eval(x))
            return out

        def tr(sigma, v: TaggedVal):
            return tagged(v.index, parts[v.index].transport(sigma, v.value))

        return ev, tr

    return _registered(name, make)


def product(s: Species, t: Species) -> Species:
    name = f"prod({s.name},{t.name})"

    def make():
        def ev(x: FiniteSet):
            out = []
            for dec in enumerate_binary_decompositions(x):
                x1, x2 = dec.parts
                left = s.eval(x1)
                if not left:
                    continue
                right = t.eval(x2)
                for f in left:
                    for g in right:
                        out.append(pair(f, g, x1, x2))
            return out

        def tr(sigma: Bijection, v: PairVal):
            s1 = restrict_corestrict(sigma, v.x1)
            s2 = restrict_corestrict(sigma, v.x2)
            return pair(s.transport(s1, v.left), t.transport(s2, v.right), s1.domain, s2.domain)

        return ev, tr

    return _registered(name, make)


def substitution(s: Species, t: Species) -> Species:
    """Outer structure on a partition into nonempty blocks, inner per block."""
    name = f"subst({s.name},{t.name})"

    def make():
        def ev(x: FiniteSet):
            out = []
            for blocks in enumerate_partitions(x):
                pi = partition_as_set(blocks)
                outers = s.eval(pi)
                if not outers:
                    continue
                per_block = [t.eval(b) for b in blocks]
                if any(not opts for opts in per_block):
                    continue
                for f in outers:
                    for combo in itertools.product(*per_block):
                        out.append(subst(pi, f, zip(blocks, combo)))
            return out

        def tr(sigma: Bijection, v: SubstVal):
            moved = []
            block_map = {}
            for b, g in v.inner:
                sb = restrict_corestrict(sigma, b)
                nb = sb.domain
                moved.append((nb, t.transport(sb, g)))
                block_map[nb] = b
            new_pi = partition_as_set(nb for nb, _ in moved)
            sigma_bar = {}
            from cyclops.labels import block_ref

            for nb, b in block_map.items():
                sigma_bar[block_ref(nb)] = block_ref(b)
            from cyclops.labels import bijection as _bij

            outer = s.transport(_bij(new_pi, v.partition, sigma_bar), v.outer)
            return subst(new_pi, outer, moved)

        return ev, tr

    return _registered(name, make)


def derivative(s: Species) -> Species:
    """Evaluate on the set enlarged by its fresh element; values are untouched."""
    name = f"der({s.name})"

    def make():
        def ev(x: FiniteSet):
            return s.eval(x.with_star())

        def tr(sigma, v):
            return s.transport(partial_extension(sigma), v)

        return ev, tr

    return _registered(name, make)


def pointing(s: Species) -> Species:
    name = f"pt({s.name})"

    def make():
        def ev(x: FiniteSet):
            return [pointed(f, e) for f in s.eval(x) for e in x]

        def tr(sigma: Bijection, v: PointedVal):
            return pointed(s.transport(sigma, v.base), sigma.backward[v.point])

        return ev, tr

    return _registered(name, make)


# ---------------------------------------------------------------------------
# natural maps


class NaturalMap:
    """Per-set function between two species, composable and invertible."""

    __slots__ = ("name", "source", "target", "_component_fn", "_explicit_inverse", "_inv_memo")

    def __repr__(self) -> str:
        return f"NaturalMap({self.name}: {self.source.name} -> {self.target.name})"

    def apply(self, x: FiniteSet, value: StructureValue) -> StructureValue:
        return self._component_fn(x, value)

    def component(self, x: FiniteSet):
        return lambda v: self._component_fn(x, v)

    def inverse(self) -> "NaturalMap":
        if self._explicit_inverse is not None:
            return self._explicit_inverse
        return _enumerated_inverse(self)


def natural_map(name: str, source: Species, target: Species, component_fn, inverse: NaturalMap | None = None) -> NaturalMap:
    m = NaturalMap()
    m.name = name
    m.source = source
    m.target = target
    m._component_fn = component_fn
    m._explicit_inverse = inverse
    m._inv_memo = {}
    if inverse is not None and inverse._explicit_inverse is None:
        inverse._explicit_inverse = m
    return m


def _enumerated_inverse(m: NaturalMap) -> NaturalMap:
    def component(x: FiniteSet, v: StructureValue):
        table = m._inv_memo.get(x)
        if table is None:
            table = {}
            for s in m.source.eval(x):
                table[m.apply(x, s)] = s
            if len(table) != len(m.source.eval(x)) or set(table) != set(m.target.eval(x)):
                raise ValueError(f"{m.name} is not bijective at {x.render()}")
            m._inv_memo[x] = table
        return table[v]

    return natural_map(f"inv({m.name})", m.target, m.source, component, inverse=m)


def nat_identity(s: Species) -> NaturalMap:
    m = natural_map(f"id[{s.name}]", s, s, lambda x, v: v)
    m._explicit_inverse = m
    return m


def nat_compose(*maps: NaturalMap) -> NaturalMap:
    """Composite in application order of mathematics: the last map runs first."""
    if len(maps) < 2:
        raise ValueError("need at least two maps")
    for outer, inner in zip(maps, maps[1:]):
        if outer.source is not inner.target:
            raise ValueError(f"cannot compose {outer.name} after {inner.name}: "
                             f"{inner.target.name} != {outer.source.name}")

    def component(x, v):
        for m in reversed(maps):
            v = m.apply(x, v)
        return v

    name = "(" + "*".join(m.name for m in maps) + ")"
    return natural_map(name, maps[-1].source, maps[0].target, component)


def nat_hprod(m1: NaturalMap, m2: NaturalMap) -> NaturalMap:
    """Product of maps, componentwise on pairs."""
    src = product(m1.source, m2.source)
    tgt = product(m1.target, m2.target)

    def component(x, v: PairVal):
        return pair(m1.apply(v.x1, v.left), m2.apply(v.x2, v.right), v.x1, v.x2)

    return natural_map(f"({m1.name}.{m2.name})", src, tgt, component)


def nat_dmap(m: NaturalMap) -> NaturalMap:
    """Derivative of a map: act on the star-enlarged set."""
    src = derivative(m.source)
    tgt = derivative(m.target)

    def component(x, v):
        return m.apply(x.with_star(), v)

    return natural_map(f"der({m.name})", src, tgt, component)


def nat_sum(*maps: NaturalMap) -> NaturalMap:
    src = sum_species(*[m.source for m in maps])
    tgt = sum_species(*[m.target for m in maps])

    def component(x, v: TaggedVal):
        return tagged(v.index, maps[v.index].apply(x, v.value))

    return natural_map("(" + "+".join(m.name for m in maps) + ")", src, tgt, component)


def nat_copair(maps: list[NaturalMap], source: Species | None = None) -> NaturalMap:
    tgt = maps[0].target
    for m in maps:
        if m.target is not tgt:
            raise ValueError("copairing needs a common target")
    src = source if source is not None else sum_species(*[m.source for m in maps])

    def component(x, v: TaggedVal):
        return maps[v.index].apply(x, v.value)

    return natural_map("[" + ",".join(m.name for m in maps) + "]", src, tgt, component)


def nat_inject(summands: list[Species], index: int) -> NaturalMap:
    src = summands[index]
    tgt = sum_species(*summands)

    def component(x, v):
        return tagged(index, v)

    return natural_map(f"in{index}[{tgt.name}]", src, tgt, component)


def nat_proj_point(s: Species) -> NaturalMap:
    """First projection out of the pointing species."""

    def component(x, v: PointedVal):
        return v.base

    return natural_map(f"pi1[{s.name}]", pointing(s), s, component)


# ---------------------------------------------------------------------------
# checks


def check_functoriality(s: Species, max_size: int = 3, pool=None) -> Report:
    """Identity and composition laws for transport, plus per-map bijectivity."""
    from cyclops.labels import atom_pool

    if pool is None:
        pool = atom_pool(max_size)
    report = Report(f"functoriality[{s.name}]")
    sets = subsets(pool, 0, max_size)
    for x in sets:
        values = s.eval(x)
        ident = identity_bijection(x)
        for v in values:
            got = s.transport(ident, v)
            report.check(
                got is v,
                "FUN-ID",
                {"X": x.render(), "f": v.render()},
                got.render(),
                v.render(),
            )
    by_size: dict[int, list[FiniteSet]] = {}
    for x in sets:
        by_size.setdefault(len(x), []).append(x)
    for n, same in by_size.items():
        for x in same:
            values = s.eval(x)
            for y in same:
                for sigma in all_bijections(y, x):
                    moved = [s.transport(sigma, v) for v in values]
                    members = s.members(y)
                    ok = len(set(moved)) == len(values) and all(m in members for m in moved)
                    report.check(
                        ok,
                        "FUN-BIJ",
                        {"sigma": sigma.render(), "X": x.render()},
                        "|image|=" + str(len(set(moved))),
                        "|S(Y)|=" + str(len(members)),
                    )
                    for z in same:
                        for tau in all_bijections(z, y):
                            comp = compose_bijections(sigma, tau)
                            for v, m in zip(values, moved):
                                stepwise = s.transport(tau, m)
                                direct = s.transport(comp, v)
                                report.check(
                                    stepwise is direct,
                                    "FUN-COMP",
                                    {"sigma": sigma.render(), "tau": tau.render(), "f": v.render()},
                                    direct.render(),
                                    stepwise.render(),
                                )
    return report


def check_naturality(m: NaturalMap, max_size: int = 3, pool=None) -> Report:
    from cyclops.labels import atom_pool

    if pool is None:
        pool = atom_pool(max_size)
    report = Report(f"naturality[{m.name}]")
    sets = subsets(pool, 0, max_size)
    by_size: dict[int, list[FiniteSet]] = {}
    for x in sets:
        by_size.setdefault(len(x), []).append(x)
    for n, same in by_size.items():
        for x in same:
            values = m.source.eval(x)
            if not values:
                continue
            mapped = [m.apply(x, v) for v in values]
            for y in same:
                for sigma in all_bijections(y, x):
                    for v, w in zip(values, mapped):
                        lhs = m.target.transport(sigma, w)
                        rhs = m.apply(y, m.source.transport(sigma, v))
                        report.check(
                            lhs is rhs,
                            "NAT",
                            {"sigma": sigma.render(), "X": x.render(), "f": v.render()},
                            lhs.render(),
                            rhs.render(),
                        )
    return report


def check_map_equality(tag: str, m1: NaturalMap, m2: NaturalMap, max_size: int = 3, pool=None,
                       report: Report | None = None) -> Report:
    """Pointwise equality of two parallel natural maps over a pool of atom sets."""
    from cyclops.labels import atom_pool

    if m1.source is not m2.source:
        raise ValueError(f"{m1.name} and {m2.name} have different sources")
    if pool is None:
        pool = atom_pool(max_size)
    if report is None:
        report = Report(tag)
    for x in subsets(pool, 0, max_size):
        for v in m1.source.eval(x):
            lhs = m1.apply(x, v)
            rhs = m2.apply(x, v)
            report.check(lhs is rhs, tag, {"X": x.render(), "f": v.render()},
                         lhs.render(), rhs.render())
    return report


def check_bijectivity(m: NaturalMap, max_size: int = 4, pool=None) -> Report:
    """Each component is a bijection and composes with the inverse to identity."""
    from cyclops.labels import atom_pool

    if pool is None:
        pool = atom_pool(max_size)
    inv = m.inverse()
    report = Report(f"bijectivity[{m.name}]")
    for x in subsets(pool, 0, max_size):
        source = m.source.eval(x)
        target = m.target.eval(x)
        image = []
        for v in source:
            w = m.apply(x, v)
            image.append(w)
            report.check(w in m.target.members(x), "ISO-INTO",
                         {"X": x.render(), "f": v.render()}, w.render(), "a target structure")
            back = inv.apply(x, w)
            report.check(back is v, "ISO-RETRACT",
                         {"X": x.render(), "f": v.render()}, back.render(), v.render())
        report.check(len(set(image)) == len(source) and len(source) == len(target),
                     "ISO-ONTO", {"X": x.render()},
                     f"{len(set(image))} images", f"{len(target)} targets")
        for w in target:
            v = inv.apply(x, w)
            forward = m.apply(x, v)
            report.check(forward is w, "ISO-SECTION",
                         {"X": x.render(), "g": w.render()}, forward.render(), w.render())
    return report

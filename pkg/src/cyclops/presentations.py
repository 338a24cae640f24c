"""Componential presentations and their exhaustive law checkers.

A presentation bundles a carrier species with unit and partial-composition
tables, truncated at ``max_size``.  Checkers instantiate every axiom over a
pool of atoms (star labels are thrown in where a law quantifies over fresh
names) and report violations with fully rendered witnesses.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from cyclops.labels import (
    FiniteSet,
    Label,
    all_bijections,
    atom_pool,
    fset,
    renaming,
    restrict_corestrict,
    star_of,
    subsets,
    union_bijection,
)
from cyclops.reporting import Report
from cyclops.species import Species, StructureValue
from cyclops.species import check_functoriality as _check_functoriality


@dataclass
class OperadPresentation:
    """Partial-composition operad: units on singletons, one input consumed."""

    name: str
    carrier: Species
    max_size: int
    unit1: Callable[[Label], StructureValue]
    compose_fn: Callable = field(repr=False, default=None)
    _memo: dict = field(default_factory=dict, repr=False)

    def __init__(self, name, carrier, max_size, unit1, compose):
        self.name = name
        self.carrier = carrier
        self.max_size = max_size
        self.unit1 = unit1
        self.compose_fn = compose
        self._memo = {}

    def compose(self, x_set: FiniteSet, f, x: Label, y_set: FiniteSet, g) -> StructureValue:
        key = (x_set, f, x, y_set, g)
        got = self._memo.get(key)
        if got is None:
            got = self.compose_fn(x_set, f, x, y_set, g)
            self._memo[key] = got
        return got

    def result_set(self, x_set: FiniteSet, x: Label, y_set: FiniteSet) -> FiniteSet:
        return x_set.without(x).union(y_set)


@dataclass
class EntriesOnlyPresentation:
    """Cyclic operad with interchangeable entries: units on two-element sets."""

    name: str
    carrier: Species
    max_size: int
    unit2: Callable[[FiniteSet], StructureValue]
    compose2_fn: Callable = field(repr=False, default=None)
    _memo: dict = field(default_factory=dict, repr=False)

    def __init__(self, name, carrier, max_size, unit2, compose2):
        self.name = name
        self.carrier = carrier
        self.max_size = max_size
        self.unit2 = unit2
        self.compose2_fn = compose2
        self._memo = {}

    def compose2(self, x_set, f, x, y_set, g, y) -> StructureValue:
        key = (x_set, f, x, y_set, g, y)
        got = self._memo.get(key)
        if got is None:
            got = self.compose2_fn(x_set, f, x, y_set, g, y)
            self._memo[key] = got
        return got

    def result_set(self, x_set, x, y_set, y) -> FiniteSet:
        return x_set.without(x).union(y_set.without(y))


@dataclass
class ExchangeableOutputPresentation:
    """Operad enriched with per-input output-exchange actions."""

    name: str
    carrier: Species
    max_size: int
    unit1: Callable[[Label], StructureValue]
    compose_fn: Callable = field(repr=False, default=None)
    dact_fn: Callable = field(repr=False, default=None)
    _memo: dict = field(default_factory=dict, repr=False)
    _dmemo: dict = field(default_factory=dict, repr=False)

    def __init__(self, name, carrier, max_size, unit1, compose, dact):
        self.name = name
        self.carrier = carrier
        self.max_size = max_size
        self.unit1 = unit1
        self.compose_fn = compose
        self.dact_fn = dact
        self._memo = {}
        self._dmemo = {}

    def compose(self, x_set, f, x, y_set, g) -> StructureValue:
        key = (x_set, f, x, y_set, g)
        got = self._memo.get(key)
        if got is None:
            got = self.compose_fn(x_set, f, x, y_set, g)
            self._memo[key] = got
        return got

    def dact(self, x_set: FiniteSet, x: Label, f) -> StructureValue:
        key = (x_set, x, f)
        got = self._dmemo.get(key)
        if got is None:
            got = self.dact_fn(x_set, x, f)
            self._dmemo[key] = got
        return got

    def result_set(self, x_set, x, y_set) -> FiniteSet:
        return x_set.without(x).union(y_set)

    def as_operad(self) -> OperadPresentation:
        return OperadPresentation(self.name, self.carrier, self.max_size, self.unit1, self.compose_fn)


# ---------------------------------------------------------------------------
# helpers


def _w(**kv) -> dict[str, str]:
    out = {}
    for k, v in kv.items():
        out[k] = v.render() if hasattr(v, "render") else str(v)
    return out


def _bijections_into(pool, x: FiniteSet):
    """All bijections from same-size atom subsets of the pool onto ``x``."""
    out = []
    for src in subsets(pool, len(x), len(x)):
        out.extend(all_bijections(src, x))
    return out


def _closure(report: Report, p, result_set: FiniteSet, value: StructureValue, witness: dict):
    report.check(
        value in p.carrier.members(result_set),
        "CLOSURE",
        witness,
        value.render(),
        f"a structure on {result_set.render()}",
    )


def _guarded(report: Report, axiom: str, witness: dict, body) -> bool:
    """Run one axiom instance; corrupt tables may raise instead of mismatching."""
    try:
        body()
        return True
    except (ValueError, KeyError) as exc:
        report.check(False, axiom, witness, f"error: {exc}", "a defined value")
        return False


# ---------------------------------------------------------------------------
# entries-only axioms


def _eo_sets(p: EntriesOnlyPresentation, pool) -> list[FiniteSet]:
    return [x for x in subsets(pool, 2, p.max_size) if p.carrier.eval(x)]


def _eo_pairs(p: EntriesOnlyPresentation, pool):
    """Legal composition instances (X, x, Y, y) within the truncation bound."""
    sets_ = _eo_sets(p, pool)
    for x_set in sets_:
        for y_set in sets_:
            for x in x_set:
                rx = x_set.without(x)
                if len(rx) + len(y_set) - 1 > p.max_size:
                    continue
                for y in y_set:
                    if rx.isdisjoint(y_set.without(y)):
                        yield x_set, x, y_set, y


def check_entries_only(p: EntriesOnlyPresentation, pool_size: int | None = None, pool=None) -> Report:
    """Parallel associativity, equivariance, left unit, unit preservation."""
    if pool is None:
        pool = atom_pool(pool_size if pool_size is not None else min(p.max_size, 4))
    report = Report(f"entries-only[{p.name}]")
    _eo_constant_free(p, pool, report)
    _eo_a1(p, pool, report)
    _eo_eq(p, pool, report)
    _eo_u1(p, pool, report)
    _eo_up(p, pool, report)
    return report


def _eo_constant_free(p, pool, report):
    from cyclops.labels import EMPTY

    report.check(not p.carrier.eval(EMPTY), "CONSTANT-FREE", {"X": "{}"},
                 str(len(p.carrier.eval(EMPTY))) + " structures", "0 structures")
    for x in subsets(pool, 1, 1):
        report.check(not p.carrier.eval(x), "CONSTANT-FREE", _w(X=x),
                     str(len(p.carrier.eval(x))) + " structures", "0 structures")


def _eo_a1(p, pool, report):
    sets_ = _eo_sets(p, pool)
    for x_set in sets_:
        fx = p.carrier.eval(x_set)
        for y_set in sets_:
            gy = p.carrier.eval(y_set)
            for z_set in sets_:
                hz = p.carrier.eval(z_set)
                for x in x_set:
                    rx = x_set.without(x)
                    for u in x_set:
                        if u is x:
                            continue
                        ru = x_set.without(u)
                        for y in y_set:
                            if not rx.isdisjoint(y_set.without(y)):
                                continue
                            mid_l = rx.union(y_set.without(y))
                            if len(mid_l) > p.max_size:
                                continue
                            for z in z_set:
                                if not ru.isdisjoint(z_set.without(z)):
                                    continue
                                if not y_set.without(y).isdisjoint(z_set.without(z)):
                                    continue
                                mid_r = ru.union(z_set.without(z))
                                if len(mid_r) > p.max_size:
                                    continue
                                final = mid_l.without(u).union(z_set.without(z))
                                if len(final) > p.max_size:
                                    continue
                                for f in fx:
                                    for g in gy:
                                        for h in hz:
                                            try:
                                                fg = p.compose2(x_set, f, x, y_set, g, y)
                                                lhs = p.compose2(mid_l, fg, u, z_set, h, z)
                                                fh = p.compose2(x_set, f, u, z_set, h, z)
                                                rhs = p.compose2(mid_r, fh, x, y_set, g, y)
                                            except (ValueError, KeyError) as exc:
                                                report.fail("A1", _w(X=x_set, x=x, u=u, Y=y_set, y=y,
                                                                     Z=z_set, z=z, f=f, g=g, h=h),
                                                            f"error: {exc}", "a defined value")
                                                continue
                                            ok = lhs is rhs and lhs in p.carrier.members(final)
                                            if ok:
                                                report.passed()
                                                report.passed()
                                            else:
                                                wit = _w(X=x_set, x=x, u=u, Y=y_set, y=y,
                                                         Z=z_set, z=z, f=f, g=g, h=h)
                                                report.check(lhs is rhs, "A1", wit,
                                                             lhs.render(), rhs.render())
                                                _closure(report, p, final, lhs, wit)


def _eo_eq(p, pool, report):
    options: dict[FiniteSet, list] = {}
    for x_set, x, y_set, y in _eo_pairs(p, pool):
        fx = p.carrier.eval(x_set)
        gy = p.carrier.eval(y_set)
        if x_set not in options:
            options[x_set] = _bijections_into(pool, x_set)
        if y_set not in options:
            options[y_set] = _bijections_into(pool, y_set)
        rx = x_set.without(x)
        ry = y_set.without(y)
        for s1 in options[x_set]:
            xp = s1.backward[x]
            rxp = s1.domain.without(xp)
            r1 = restrict_corestrict(s1, rx)
            for s2 in options[y_set]:
                yp = s2.backward[y]
                if not rxp.isdisjoint(s2.domain.without(yp)):
                    continue
                sig = union_bijection(r1, restrict_corestrict(s2, ry))
                for f in fx:
                    fp = p.carrier.transport(s1, f)
                    for g in gy:
                        gp = p.carrier.transport(s2, g)
                        try:
                            lhs = p.compose2(s1.domain, fp, xp, s2.domain, gp, yp)
                            rhs = p.carrier.transport(sig, p.compose2(x_set, f, x, y_set, g, y))
                        except (ValueError, KeyError) as exc:
                            report.fail("EQ", _w(X=x_set, x=x, Y=y_set, y=y, s1=s1, s2=s2,
                                                 f=f, g=g), f"error: {exc}", "a defined value")
                            continue
                        if lhs is rhs:
                            report.passed()
                        else:
                            report.fail("EQ", _w(X=x_set, x=x, Y=y_set, y=y, s1=s1, s2=s2,
                                                 f=f, g=g), lhs.render(), rhs.render())


def _unit_partners(x: Label, x_set: FiniteSet, pool):
    """Pool atoms plus one fresh star, all distinct from X minus x."""
    rest = x_set.without(x)
    out = [a for a in pool if a not in rest and a is not x]
    out.append(star_of(rest))
    return out


def _eo_u1(p, pool, report):
    for x_set in _eo_sets(p, pool):
        for f in p.carrier.eval(x_set):
            for x in x_set:
                for y in _unit_partners(x, x_set, pool):
                    wit = _w(X=x_set, x=x, y=y, f=f)

                    def body(f=f, x=x, y=y, wit=wit):
                        two = fset([x, y])
                        got = p.compose2(two, p.unit2(two), y, x_set, f, x)
                        report.check(got is f, "U1", wit, got.render(), f.render())

                    _guarded(report, "U1", wit, body)


def _eo_up(p, pool, report):
    twos = subsets(pool, 2, 2)
    for a in twos:
        ua = p.unit2(a)
        report.check(ua in p.carrier.members(a), "CLOSURE", _w(two=a), ua.render(),
                     f"a structure on {a.render()}")
        for b in twos:
            for sigma in all_bijections(b, a):
                wit = _w(two=a, sigma=sigma)

                def body(ua=ua, b=b, sigma=sigma, wit=wit):
                    got = p.carrier.transport(sigma, ua)
                    expect = p.unit2(b)
                    report.check(got is expect, "UP", wit, got.render(), expect.render())

                _guarded(report, "UP", wit, body)


def check_entries_only_derived(p: EntriesOnlyPresentation, pool_size: int | None = None,
                               pool=None, eq_prime_pool_size: int = 3) -> Report:
    """Commutativity, sequential associativity, right unit, relaxed equivariance."""
    if pool is None:
        pool = atom_pool(pool_size if pool_size is not None else min(p.max_size, 4))
    report = Report(f"entries-only-derived[{p.name}]")
    _eo_co(p, pool, report)
    _eo_a2(p, pool, report)
    _eo_u2(p, pool, report)
    _eo_eq_prime(p, atom_pool(eq_prime_pool_size), report)
    return report


def _eo_co(p, pool, report):
    for x_set, x, y_set, y in _eo_pairs(p, pool):
        for f in p.carrier.eval(x_set):
            for g in p.carrier.eval(y_set):
                lhs = p.compose2(x_set, f, x, y_set, g, y)
                rhs = p.compose2(y_set, g, y, x_set, f, x)
                report.check(lhs is rhs, "CO", _w(X=x_set, x=x, Y=y_set, y=y, f=f, g=g),
                             lhs.render(), rhs.render())


def _eo_a2(p, pool, report):
    sets_ = _eo_sets(p, pool)
    for x_set in sets_:
        fx = p.carrier.eval(x_set)
        for y_set in sets_:
            gy = p.carrier.eval(y_set)
            for z_set in sets_:
                hz = p.carrier.eval(z_set)
                for x in x_set:
                    rx = x_set.without(x)
                    for y in y_set:
                        if not rx.isdisjoint(y_set.without(y)):
                            continue
                        mid_l = rx.union(y_set.without(y))
                        if len(mid_l) > p.max_size:
                            continue
                        for u in y_set:
                            if u is y:
                                continue
                            for z in z_set:
                                if not y_set.without(u).isdisjoint(z_set.without(z)):
                                    continue
                                if not rx.isdisjoint(z_set.without(z)):
                                    continue
                                mid_r = y_set.without(u).union(z_set.without(z))
                                if len(mid_r) > p.max_size:
                                    continue
                                final = mid_l.without(u).union(z_set.without(z))
                                if len(final) > p.max_size:
                                    continue
                                for f in fx:
                                    for g in gy:
                                        fg = p.compose2(x_set, f, x, y_set, g, y)
                                        for h in hz:
                                            lhs = p.compose2(mid_l, fg, u, z_set, h, z)
                                            gh = p.compose2(y_set, g, u, z_set, h, z)
                                            rhs = p.compose2(x_set, f, x, mid_r, gh, y)
                                            report.check(lhs is rhs, "A2",
                                                         _w(X=x_set, x=x, Y=y_set, y=y, u=u,
                                                            Z=z_set, z=z, f=f, g=g, h=h),
                                                         lhs.render(), rhs.render())


def _eo_u2(p, pool, report):
    for x_set in _eo_sets(p, pool):
        for f in p.carrier.eval(x_set):
            for x in x_set:
                for y in _unit_partners(x, x_set, pool):
                    two = fset([x, y])
                    unit = p.unit2(two)
                    got = p.compose2(x_set, f, x, two, unit, y)
                    report.check(got is f, "U2", _w(X=x_set, x=x, y=y, f=f),
                                 got.render(), f.render())


def _eo_eq_prime(p, pool, report):
    options: dict[FiniteSet, list] = {}
    for x_set, x, y_set, y in _eo_pairs(p, pool):
        fx = p.carrier.eval(x_set)
        gy = p.carrier.eval(y_set)
        if x_set not in options:
            options[x_set] = _bijections_into(pool, x_set)
        if y_set not in options:
            options[y_set] = _bijections_into(pool, y_set)
        rx, ry = x_set.without(x), y_set.without(y)
        for t1 in options[x_set]:
            xp = t1.backward[x]
            for t2 in options[y_set]:
                yp = t2.backward[y]
                if not t1.domain.without(xp).isdisjoint(t2.domain.without(yp)):
                    continue
                mid = union_bijection(restrict_corestrict(t1, rx), restrict_corestrict(t2, ry))
                for tau in _bijections_into(pool, mid.domain):
                    from cyclops.labels import compose_bijections

                    sig = compose_bijections(mid, tau)
                    for f in fx:
                        for g in gy:
                            fg = p.compose2(x_set, f, x, y_set, g, y)
                            lhs = p.carrier.transport(sig, fg)
                            inner = p.compose2(t1.domain, p.carrier.transport(t1, f), xp,
                                               t2.domain, p.carrier.transport(t2, g), yp)
                            rhs = p.carrier.transport(tau, inner)
                            report.check(lhs is rhs, "EQ'",
                                         _w(X=x_set, x=x, Y=y_set, y=y, t1=t1, t2=t2, tau=tau),
                                         lhs.render(), rhs.render())


# ---------------------------------------------------------------------------
# operad axioms


def _op_sets(p: OperadPresentation, pool) -> list[FiniteSet]:
    return [x for x in subsets(pool, 1, p.max_size) if p.carrier.eval(x)]


def _op_pairs(p: OperadPresentation, pool):
    sets_ = _op_sets(p, pool)
    for x_set in sets_:
        for y_set in sets_:
            for x in x_set:
                rx = x_set.without(x)
                if len(rx) + len(y_set) > p.max_size:
                    continue
                if rx.isdisjoint(y_set):
                    yield x_set, x, y_set


def check_operad(p: OperadPresentation, pool_size: int | None = None, pool=None) -> Report:
    """Both associativity shapes, equivariance, units, unit preservation."""
    if pool is None:
        pool = atom_pool(pool_size if pool_size is not None else min(p.max_size, 4))
    report = Report(f"operad[{p.name}]")
    from cyclops.labels import EMPTY

    report.check(not p.carrier.eval(EMPTY), "CONSTANT-FREE", {"X": "{}"},
                 str(len(p.carrier.eval(EMPTY))) + " structures", "0 structures")
    _op_a1(p, pool, report)
    _op_a2(p, pool, report)
    _op_eq(p, pool, report)
    _op_units(p, pool, report)
    return report


def _op_a1(p, pool, report):
    sets_ = _op_sets(p, pool)
    for x_set in sets_:
        if len(x_set) < 2:
            continue
        fx = p.carrier.eval(x_set)
        for y_set in sets_:
            gy = p.carrier.eval(y_set)
            for z_set in sets_:
                hz = p.carrier.eval(z_set)
                for x in x_set:
                    for u in x_set:
                        if u is x:
                            continue
                        if not x_set.without(x).isdisjoint(y_set):
                            continue
                        if not x_set.without(u).isdisjoint(z_set):
                            continue
                        if not y_set.isdisjoint(z_set):
                            continue
                        mid_l = x_set.without(x).union(y_set)
                        mid_r = x_set.without(u).union(z_set)
                        final = mid_l.without(u).union(z_set)
                        if max(len(mid_l), len(mid_r), len(final)) > p.max_size:
                            continue
                        for f in fx:
                            for g in gy:
                                for h in hz:
                                    wit = _w(X=x_set, x=x, u=u, Y=y_set, Z=z_set, f=f, g=g, h=h)

                                    def body(f=f, g=g, h=h, wit=wit):
                                        fg = p.compose(x_set, f, x, y_set, g)
                                        lhs = p.compose(mid_l, fg, u, z_set, h)
                                        rhs = p.compose(mid_r, p.compose(x_set, f, u, z_set, h),
                                                        x, y_set, g)
                                        report.check(lhs is rhs, "A1", wit, lhs.render(), rhs.render())
                                        _closure(report, p, final, lhs, wit)

                                    _guarded(report, "A1", wit, body)


def _op_a2(p, pool, report):
    sets_ = _op_sets(p, pool)
    for x_set in sets_:
        fx = p.carrier.eval(x_set)
        for y_set in sets_:
            gy = p.carrier.eval(y_set)
            for z_set in sets_:
                hz = p.carrier.eval(z_set)
                for x in x_set:
                    if not x_set.without(x).isdisjoint(y_set):
                        continue
                    for y in y_set:
                        if not y_set.without(y).isdisjoint(z_set):
                            continue
                        if not x_set.without(x).isdisjoint(z_set):
                            continue
                        mid_l = x_set.without(x).union(y_set)
                        mid_r = y_set.without(y).union(z_set)
                        final = mid_l.without(y).union(z_set)
                        if max(len(mid_l), len(mid_r), len(final)) > p.max_size:
                            continue
                        for f in fx:
                            for g in gy:
                                for h in hz:
                                    wit = _w(X=x_set, x=x, Y=y_set, y=y, Z=z_set, f=f, g=g, h=h)

                                    def body(f=f, g=g, h=h, wit=wit):
                                        fg = p.compose(x_set, f, x, y_set, g)
                                        lhs = p.compose(mid_l, fg, y, z_set, h)
                                        rhs = p.compose(x_set, f, x, mid_r,
                                                        p.compose(y_set, g, y, z_set, h))
                                        report.check(lhs is rhs, "A2", wit, lhs.render(), rhs.render())

                                    _guarded(report, "A2", wit, body)


def _op_eq(p, pool, report):
    options: dict[FiniteSet, list] = {}
    for x_set, x, y_set in _op_pairs(p, pool):
        fx = p.carrier.eval(x_set)
        gy = p.carrier.eval(y_set)
        if x_set not in options:
            options[x_set] = _bijections_into(pool, x_set)
        if y_set not in options:
            options[y_set] = _bijections_into(pool, y_set)
        rx = x_set.without(x)
        for s1 in options[x_set]:
            xp = s1.backward[x]
            rxp = s1.domain.without(xp)
            for s2 in options[y_set]:
                if not rxp.isdisjoint(s2.domain):
                    continue
                sig = union_bijection(restrict_corestrict(s1, rx), s2)
                for f in fx:
                    fp = p.carrier.transport(s1, f)
                    for g in gy:
                        gp = p.carrier.transport(s2, g)
                        wit = _w(X=x_set, x=x, Y=y_set, s1=s1, s2=s2, f=f, g=g)

                        def body(fp=fp, gp=gp, f=f, g=g, xp=xp, s1=s1, s2=s2, sig=sig, wit=wit):
                            lhs = p.compose(s1.domain, fp, xp, s2.domain, gp)
                            rhs = p.carrier.transport(sig, p.compose(x_set, f, x, y_set, g))
                            report.check(lhs is rhs, "EQ", wit, lhs.render(), rhs.render())

                        _guarded(report, "EQ", wit, body)


def _op_units(p, pool, report):
    singles = subsets(pool, 1, 1)
    for s in singles:
        (lab,) = s.elements
        u = p.unit1(lab)
        report.check(u in p.carrier.members(s), "CLOSURE", _w(x=lab), u.render(),
                     f"a structure on {s.render()}")
        for t in singles:
            (lab2,) = t.elements
            for sigma in all_bijections(t, s):
                wit = _w(x=lab, u=lab2)

                def body(u=u, lab2=lab2, sigma=sigma, wit=wit):
                    got = p.carrier.transport(sigma, u)
                    expect = p.unit1(lab2)
                    report.check(got is expect, "UP", wit, got.render(), expect.render())

                _guarded(report, "UP", wit, body)
    for x_set in _op_sets(p, pool):
        for f in p.carrier.eval(x_set):
            for y in list(pool) + [star_of(x_set)]:
                wit = _w(X=x_set, y=y, f=f)

                def body(f=f, y=y, wit=wit):
                    one = fset([y])
                    got = p.compose(one, p.unit1(y), y, x_set, f)
                    report.check(got is f, "U1", wit, got.render(), f.render())

                _guarded(report, "U1", wit, body)
            for x in x_set:
                wit = _w(X=x_set, x=x, f=f)

                def body2(f=f, x=x, wit=wit):
                    got = p.compose(x_set, f, x, fset([x]), p.unit1(x))
                    report.check(got is f, "U2", wit, got.render(), f.render())

                _guarded(report, "U2", wit, body2)


# ---------------------------------------------------------------------------
# exchangeable-output axioms


def check_exchangeable_output(p: ExchangeableOutputPresentation, pool_size: int | None = None,
                              pool=None, include_operad: bool = True) -> Report:
    """Output-exchange axioms, on top of the underlying operad laws."""
    if pool is None:
        pool = atom_pool(pool_size if pool_size is not None else min(p.max_size, 4))
    report = Report(f"exchangeable-output[{p.name}]")
    if include_operad:
        report.merge(check_operad(p.as_operad(), pool=pool))
    sets_ = _op_sets(p, pool)

    for x_set in sets_:
        values = p.carrier.eval(x_set)
        for f in values:
            for x in x_set:
                wit = _w(X=x_set, x=x, f=f)

                def din_body(f=f, x=x, wit=wit):
                    dx = p.dact(x_set, x, f)
                    _closure(report, p, x_set, dx, wit)
                    ddx = p.dact(x_set, x, dx)
                    report.check(ddx is f, "DIN", wit, ddx.render(), f.render())

                _guarded(report, "DIN", wit, din_body)
                for y in x_set:
                    if y is x:
                        continue
                    wit2 = _w(X=x_set, x=x, y=y, f=f)

                    def dex_body(f=f, x=x, y=y, wit=wit2):
                        from cyclops.labels import transposition

                        sigma = transposition(x_set, x, y)
                        lhs = p.carrier.transport(sigma, p.dact(x_set, x, f))
                        rhs = p.dact(x_set, x, p.dact(x_set, y, f))
                        report.check(lhs is rhs, "DEX", wit, lhs.render(), rhs.render())

                    _guarded(report, "DEX", wit2, dex_body)
            for sigma in _bijections_into(pool, x_set):
                for x in x_set:
                    wit = _w(X=x_set, x=x, sigma=sigma, f=f)

                    def deq_body(f=f, x=x, sigma=sigma, wit=wit):
                        moved = p.carrier.transport(sigma, f)
                        lhs = p.carrier.transport(sigma, p.dact(x_set, x, f))
                        rhs = p.dact(sigma.domain, sigma.backward[x], moved)
                        report.check(lhs is rhs, "DEQ", wit, lhs.render(), rhs.render())

                    _guarded(report, "DEQ", wit, deq_body)

    for s in subsets(pool, 1, 1):
        (lab,) = s.elements
        wit = _w(x=lab)

        def did_body(s=s, lab=lab, wit=wit):
            u = p.unit1(lab)
            got = p.dact(s, lab, u)
            report.check(got is u, "DID", wit, got.render(), u.render())

        _guarded(report, "DID", wit, did_body)

    for x_set, x, y_set in _op_pairs(p, pool):
        fx = p.carrier.eval(x_set)
        gy = p.carrier.eval(y_set)
        out = p.result_set(x_set, x, y_set)
        for f in fx:
            for g in gy:
                for y in x_set.without(x):
                    wit = _w(X=x_set, x=x, Y=y_set, y=y, f=f, g=g)

                    def dc1_body(f=f, g=g, x=x, y=y, wit=wit):
                        fg = p.compose(x_set, f, x, y_set, g)
                        lhs = p.dact(out, y, fg)
                        rhs = p.compose(x_set, p.dact(x_set, y, f), x, y_set, g)
                        report.check(lhs is rhs, "DC1", wit, lhs.render(), rhs.render())

                    _guarded(report, "DC1", wit, dc1_body)
                for y in y_set:
                    wit = _w(X=x_set, x=x, Y=y_set, y=y, f=f, g=g)

                    def dc2_body(f=f, g=g, x=x, y=y, wit=wit):
                        fg = p.compose(x_set, f, x, y_set, g)
                        v = star_of(x_set.union(y_set))
                        s1 = renaming(y_set, y, v)
                        s2 = renaming(x_set, x, y)
                        dg = p.carrier.transport(s1, p.dact(y_set, y, g))
                        df = p.carrier.transport(s2, p.dact(x_set, x, f))
                        lhs = p.dact(out, y, fg)
                        rhs = p.compose(s1.domain, dg, v, s2.domain, df)
                        report.check(lhs is rhs, "DC2", wit, lhs.render(), rhs.render())

                    _guarded(report, "DC2", wit, dc2_body)
    return report


def dact_renamed(p: ExchangeableOutputPresentation, x_set: FiniteSet, f: StructureValue,
                 x: Label, y: Label) -> StructureValue:
    """Exchange the output with input x, then rename that slot to y."""
    if x not in x_set:
        raise ValueError("the exchanged input must belong to the set")
    if y in x_set.without(x):
        raise ValueError("the new name must be fresh")
    moved = p.dact(x_set, x, f)
    if y is x:
        return moved
    return p.carrier.transport(renaming(x_set, x, y), moved)


def check_exchangeable_output_derived(p: ExchangeableOutputPresentation, pool_size: int | None = None,
                                      pool=None) -> Report:
    """Renamed-action laws, including the two-step composition collapse."""
    if pool is None:
        pool = atom_pool(pool_size if pool_size is not None else min(p.max_size, 4))
    report = Report(f"exchangeable-output-derived[{p.name}]")
    sets_ = _op_sets(p, pool)

    for s in subsets(pool, 1, 1):
        (lab,) = s.elements
        u = p.unit1(lab)
        for y in [a for a in pool] + [star_of(s)]:
            got = dact_renamed(p, s, u, lab, y)
            expect = p.unit1(y)
            report.check(got is expect, "DID'", _w(x=lab, y=y), got.render(), expect.render())

    for x_set in sets_:
        for f in p.carrier.eval(x_set):
            for x in x_set:
                fresh = [a for a in pool if a not in x_set.without(x)] + [star_of(x_set.without(x))]
                for y in fresh:
                    moved = dact_renamed(p, x_set, f, x, y)
                    new_set = x_set.without(x).add(y)
                    back = dact_renamed(p, new_set, moved, y, x)
                    report.check(back is f, "DIN'", _w(X=x_set, x=x, y=y, f=f),
                                 back.render(), f.render())
                    if y is not x:
                        sigma = renaming(x_set, x, y)
                        lhs = dact_renamed(p, new_set, p.carrier.transport(sigma, f), y, x)
                        rhs = p.carrier.transport(sigma.inverse(), dact_renamed(p, x_set, f, x, y))
                        report.check(lhs is rhs, "DEQ'", _w(X=x_set, x=x, y=y, f=f),
                                     lhs.render(), rhs.render())
                for y in x_set:
                    if y is x:
                        continue
                    for z in [a for a in pool if a not in x_set] + [star_of(x_set)]:
                        lhs_inner = dact_renamed(p, x_set, f, y, z)
                        lhs = dact_renamed(p, x_set.without(y).add(z), lhs_inner, x, y)
                        rhs = dact_renamed(p, x_set, f, x, z)
                        report.check(lhs is rhs, "DCO", _w(X=x_set, x=x, y=y, z=z, f=f),
                                     lhs.render(), rhs.render())

    for x_set, x, y_set in _op_pairs(p, pool):
        out = p.result_set(x_set, x, y_set)
        for f in p.carrier.eval(x_set):
            for g in p.carrier.eval(y_set):
                fg = p.compose(x_set, f, x, y_set, g)
                for y in x_set.without(x):
                    for u in [a for a in pool if a not in out.without(y) and a not in x_set.without(y)] + [star_of(out)]:
                        lhs = dact_renamed(p, out, fg, y, u)
                        moved = dact_renamed(p, x_set, f, y, u)
                        rhs = p.compose(x_set.without(y).add(u), moved, x, y_set, g)
                        report.check(lhs is rhs, "DC1'", _w(X=x_set, x=x, Y=y_set, y=y, u=u, f=f, g=g),
                                     lhs.render(), rhs.render())
    return report


# ---------------------------------------------------------------------------
# simultaneous composition


def simultaneous_composition(p: OperadPresentation, x_set: FiniteSet, f: StructureValue,
                             assignment: dict[Label, tuple[FiniteSet, StructureValue]]) -> StructureValue:
    """Insert one operation into every input of ``f`` by folding partial compositions."""
    if set(assignment) != set(x_set.elements):
        raise ValueError("assignment must cover every input exactly once")
    doms = list(assignment.values())
    for i, (yi, _) in enumerate(doms):
        if not yi.isdisjoint(x_set):
            raise ValueError("inserted input sets must be disjoint from the host's inputs")
        for yj, _ in doms[i + 1:]:
            if not yi.isdisjoint(yj):
                raise ValueError("inserted input sets must be pairwise disjoint")
    current, current_set = f, x_set
    for x in x_set.elements:
        y_set, g = assignment[x]
        current = p.compose(current_set, current, x, y_set, g)
        current_set = current_set.without(x).union(y_set)
    return current

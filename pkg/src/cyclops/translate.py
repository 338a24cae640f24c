"""Constructive translations between the presentation styles.

Entries-only componential <-> algebraic (exact round trip), entries-only <->
exchangeable-output componential (round trip up to canonical isomorphism),
algebraic exchangeable-output <-> algebraic entries-only through descent, and
the quotient functor that rebuilds a species from its derivative plus an
output-exchange transformation.
"""
from __future__ import annotations

from cyclops.labels import EMPTY, Bijection, FiniteSet, Label, fset, renaming, restrict_corestrict, star_of
from cyclops.species import (
    ClassVal,
    NaturalMap,
    PairVal,
    Species,
    StructureValue,
    base_species,
    class_rep,
    derivative,
    nat_compose,
    nat_dmap,
    nat_hprod,
    nat_identity,
    nat_inject,
    natural_map,
    pair,
    product,
    species_E,
    whole,
)
from cyclops.isos import iso_c, iso_epsilon, iso_ex, iso_phi
from cyclops.algebraic import (
    AlgebraicEntriesOnly,
    AlgebraicExchangeableOutput,
    AlgebraicOperad,
    dact_from_dmap,
)
from cyclops.presentations import (
    EntriesOnlyPresentation,
    ExchangeableOutputPresentation,
)

# ---------------------------------------------------------------------------
# entries-only: componential <-> algebraic


def eo_componential_to_algebraic(p: EntriesOnlyPresentation) -> AlgebraicEntriesOnly:
    """Multiplication composes along the two fresh stars; unit is the table unit."""
    s = p.carrier
    ds = derivative(s)
    tri = product(ds, ds)

    def rho_component(x_set: FiniteSet, v: PairVal):
        return p.compose2(v.x1.with_star(), v.left, star_of(v.x1),
                          v.x2.with_star(), v.right, star_of(v.x2))

    rho = natural_map(f"rho({p.name})", tri, s, rho_component)

    def eta_component(two: FiniteSet, v: StructureValue):
        return p.unit2(two)

    eta2 = natural_map(f"eta2({p.name})", species_E(2), s, eta_component)
    return AlgebraicEntriesOnly(p.name, s, rho, eta2, p.max_size - 1)


def eo_algebraic_to_componential(a: AlgebraicEntriesOnly) -> EntriesOnlyPresentation:
    """Compositions rename the chosen entries to stars, then multiply."""
    s = a.species

    def compose2(x_set: FiniteSet, f, x: Label, y_set: FiniteSet, g, y: Label):
        if x not in x_set or y not in y_set:
            raise ValueError("composition point must belong to the operation's entries")
        rx, ry = x_set.without(x), y_set.without(y)
        if not rx.isdisjoint(ry):
            raise ValueError("remaining entry sets are not disjoint")
        fp = s.transport(renaming(x_set, x, star_of(rx)), f)
        gp = s.transport(renaming(y_set, y, star_of(ry)), g)
        return a.rho.apply(rx.union(ry), pair(fp, gp, rx, ry))

    def unit2(two: FiniteSet):
        if len(two) != 2:
            raise ValueError("units live on two-element sets")
        return a.eta2.apply(two, whole(two))

    return EntriesOnlyPresentation(a.name, s, a.max_size + 1, unit2, compose2)


# ---------------------------------------------------------------------------
# entries-only <-> exchangeable-output (componential)


def eo_to_exo(c: EntriesOnlyPresentation) -> ExchangeableOutputPresentation:
    """Designate the fresh star as output; compositions feed the starred entry."""
    cached = getattr(c, "_as_exo", None)
    if cached is not None:
        return cached
    carrier = derivative(c.carrier)

    def unit1(x: Label) -> StructureValue:
        one = fset([x])
        return c.unit2(one.add(star_of(one)))

    def compose(x_set: FiniteSet, f, x: Label, y_set: FiniteSet, g) -> StructureValue:
        if x not in x_set:
            raise ValueError("composition point must belong to the operation's inputs")
        if not x_set.without(x).isdisjoint(y_set):
            raise ValueError("input sets are not disjoint")
        out = x_set.without(x).union(y_set)
        # route the output slot through a label fresh for every set in sight;
        # renaming straight to the result's star can collide when the input
        # sets themselves contain stars
        big = x_set.union(y_set).union(out)
        big = big.add(star_of(x_set)).add(star_of(y_set)).add(star_of(out))
        w = star_of(big)
        moved = c.carrier.transport(renaming(x_set.with_star(), star_of(x_set), w), f)
        h = c.compose2(x_set.add(w), moved, x, y_set.with_star(), g, star_of(y_set))
        mid = x_set.without(x).union(y_set).add(w)
        return c.carrier.transport(renaming(mid, w, star_of(out)), h)

    def dact(x_set: FiniteSet, x: Label, f) -> StructureValue:
        from cyclops.labels import transposition

        if x is star_of(x_set):
            return f
        return c.carrier.transport(transposition(x_set.with_star(), x, star_of(x_set)), f)

    out = ExchangeableOutputPresentation(f"exo({c.name})", carrier, c.max_size - 1, unit1, compose, dact)
    c._as_exo = out
    return out


def class_members(o: ExchangeableOutputPresentation, x_set: FiniteSet, x: Label, f):
    """All (point, structure) pairs identified with (x, f) by output moves."""
    rest = x_set.without(x)
    members = [(x, f)]
    for y in rest:
        moved = o.carrier.transport(renaming(x_set.without(x), y, x), o.dact(x_set.without(x), y, f))
        members.append((y, moved))
    return members


def _canon_class(o: ExchangeableOutputPresentation, x_set: FiniteSet, x: Label, f) -> ClassVal:
    m = x_set.min_label()
    if m is x:
        return class_rep(x, f)
    moved = o.carrier.transport(renaming(x_set.without(x), m, x), o.dact(x_set.without(x), m, f))
    return class_rep(m, moved)


def quotient_species(o: ExchangeableOutputPresentation) -> Species:
    """Point-plus-structure pairs modulo output moves, by canonical representative."""

    def ev(x_set: FiniteSet):
        if not x_set.elements:
            return ()
        m = x_set.min_label()
        return [class_rep(m, f) for f in o.carrier.eval(x_set.without(m))]

    def tr(sigma: Bijection, v: ClassVal):
        y = sigma.backward[v.point]
        moved = o.carrier.transport(restrict_corestrict(sigma, sigma.codomain.without(v.point)), v.value)
        return _canon_class(o, sigma.domain, y, moved)

    return base_species(f"quot({o.name})", ev, tr)


def exo_to_eo(o: ExchangeableOutputPresentation) -> EntriesOnlyPresentation:
    """Forget which entry is the output by passing to output-move classes."""
    cached = getattr(o, "_as_eo", None)
    if cached is not None:
        return cached
    if o.carrier.eval(EMPTY):
        raise ValueError("the operad carrier must be empty on the empty set")
    carrier = quotient_species(o)

    def unit2(two: FiniteSet) -> StructureValue:
        if len(two) != 2:
            raise ValueError("units live on two-element sets")
        m, other = two.elements
        return class_rep(m, o.unit1(other))

    def compose2(x_set: FiniteSet, cf: ClassVal, x: Label, y_set: FiniteSet, cg: ClassVal, y: Label):
        if x not in x_set or y not in y_set:
            raise ValueError("composition point must belong to the operation's entries")
        if not x_set.without(x).isdisjoint(y_set.without(y)):
            raise ValueError("remaining entry sets are not disjoint")
        u, f = cf.point, cf.value
        v, g = cg.point, cg.value
        out = x_set.without(x).union(y_set.without(y))
        if v is not y:
            g = o.carrier.transport(renaming(y_set.without(v), y, v), o.dact(y_set.without(v), y, g))
        if u is x:
            z = x_set.without(x).min_label()
            f = o.carrier.transport(renaming(x_set.without(x), z, x), o.dact(x_set.without(x), z, f))
            point = z
        else:
            point = u
        host = x_set.without(point)
        composed = o.compose(host, f, x, y_set.without(y), g)
        return _canon_class(o, out, point, composed)

    out = EntriesOnlyPresentation(f"eo({o.name})", carrier, o.max_size + 1, unit2, compose2)
    o._as_eo = out
    return out


def iso_CC(c: EntriesOnlyPresentation) -> NaturalMap:
    """Round-trip comparison: classes over the star-rooted operad back to c."""
    o = eo_to_exo(c)
    back = exo_to_eo(o)

    def fwd(x_set: FiniteSet, v: ClassVal):
        rest = x_set.without(v.point)
        kappa = renaming(rest.with_star(), star_of(rest), v.point)
        return c.carrier.transport(kappa, v.value)

    def bwd(x_set: FiniteSet, f):
        m = x_set.min_label()
        rest = x_set.without(m)
        kappa = renaming(rest.with_star(), star_of(rest), m)
        return class_rep(m, c.carrier.transport(kappa.inverse(), f))

    m = natural_map(f"cc({c.name})", back.carrier, c.carrier, fwd)
    natural_map(f"cc'({c.name})", c.carrier, back.carrier, bwd, inverse=m)
    return m


def iso_OO(o: ExchangeableOutputPresentation) -> NaturalMap:
    """Round-trip comparison: an operad into the star classes of its own quotient."""
    eo = exo_to_eo(o)
    again = eo_to_exo(eo)

    def fwd(x_set: FiniteSet, f):
        return _canon_class(o, x_set.with_star(), star_of(x_set), f)

    def bwd(x_set: FiniteSet, v: ClassVal):
        full = x_set.with_star()
        if v.point is star_of(x_set):
            return v.value
        members = class_members(o, full, v.point, v.value)
        for point, g in members:
            if point is star_of(x_set):
                return g
        raise ValueError("class has no representative at the star")

    m = natural_map(f"oo({o.name})", o.carrier, again.carrier, fwd)
    natural_map(f"oo'({o.name})", again.carrier, o.carrier, bwd, inverse=m)
    return m


# ---------------------------------------------------------------------------
# descent


def descent_integrate(s: Species, dmap: NaturalMap, name: str | None = None) -> Species:
    """Quotient a species by the output moves encoded in a derivative action."""

    def dact_fn(x_set, x, f):
        return dact_from_dmap(s, dmap, x_set, x, f)

    shim = _DescentShim(s, dact_fn)
    return base_species(name or f"int({s.name})", *_quotient_callables(shim))


class _DescentShim:
    """Just enough of the exchangeable-output protocol for the quotient builder."""

    def __init__(self, carrier: Species, dact_fn):
        self.carrier = carrier
        self._dact_fn = dact_fn

    def dact(self, x_set, x, f):
        return self._dact_fn(x_set, x, f)


def _quotient_callables(o):
    def ev(x_set: FiniteSet):
        if not x_set.elements:
            return ()
        m = x_set.min_label()
        return [class_rep(m, f) for f in o.carrier.eval(x_set.without(m))]

    def tr(sigma: Bijection, v: ClassVal):
        y = sigma.backward[v.point]
        moved = o.carrier.transport(restrict_corestrict(sigma, sigma.codomain.without(v.point)), v.value)
        return _canon_class(o, sigma.domain, y, moved)

    return ev, tr


def descent_recover_iso(t: Species, integrated: Species) -> NaturalMap:
    """The canonical comparison from the integral of (dT, star exchange) to T."""

    def fwd(x_set: FiniteSet, v: ClassVal):
        rest = x_set.without(v.point)
        kappa = renaming(rest.with_star(), star_of(rest), v.point)
        return t.transport(kappa, v.value)

    def bwd(x_set: FiniteSet, f):
        m = x_set.min_label()
        rest = x_set.without(m)
        kappa = renaming(rest.with_star(), star_of(rest), m)
        return class_rep(m, t.transport(kappa.inverse(), f))

    m = natural_map(f"recover({t.name})", integrated, t, fwd)
    natural_map(f"recover'({t.name})", t, integrated, bwd, inverse=m)
    return m


def normalize_descent(a: AlgebraicExchangeableOutput) -> tuple[AlgebraicExchangeableOutput, NaturalMap]:
    """Replace the carrier by the derivative of its integral, with star exchange.

    Returns the normalized structure together with the comparison isomorphism
    from the original carrier.
    """
    cached = getattr(a, "_normalized", None)
    if cached is not None:
        return cached
    s0 = descent_integrate(a.species, a.dmap)
    t = a.species

    def dact_fn(x_set, x, f):
        return dact_from_dmap(t, a.dmap, x_set, x, f)

    shim = _DescentShim(t, dact_fn)

    def fwd(x_set: FiniteSet, f):
        return _canon_class(shim, x_set.with_star(), star_of(x_set), f)

    def bwd(x_set: FiniteSet, v: ClassVal):
        st = star_of(x_set)
        if v.point is st:
            return v.value
        full = x_set.with_star()
        rest = full.without(v.point)
        moved = t.transport(renaming(rest, st, v.point), dact_fn(rest, st, v.value))
        return moved

    ds0 = derivative(s0)
    j = natural_map(f"j({a.name})", t, ds0, fwd)
    natural_map(f"j'({a.name})", ds0, t, bwd, inverse=j)

    j_inv = j.inverse()
    nu = nat_compose(j, a.nu, nat_hprod(nat_dmap(j_inv), j_inv))
    eta1 = nat_compose(j, a.eta1)
    norm = AlgebraicExchangeableOutput(f"norm({a.name})", ds0, nu, eta1, iso_ex(s0),
                                       a.max_size, base_species=s0)
    a._normalized = (norm, j)
    return norm, j


def conjugated_dmap(a: AlgebraicExchangeableOutput, j: NaturalMap) -> NaturalMap:
    """The original output exchange, moved across the comparison isomorphism."""
    dj = nat_dmap(j)
    return nat_compose(dj, a.dmap, dj.inverse())


# ---------------------------------------------------------------------------
# algebraic exchangeable-output <-> algebraic entries-only


def _map_from_derived(name: str, src: Species, tgt: Species, derived: NaturalMap) -> NaturalMap:
    """Recover a map on nonempty sets from its derivative, shifting at the minimum."""

    def component(x_set: FiniteSet, v):
        if not x_set.elements:
            raise ValueError("empty component is the empty function")
        m = x_set.min_label()
        rest = x_set.without(m)
        sigma = renaming(x_set, m, star_of(rest))
        return tgt.transport(sigma.inverse(), derived.apply(rest, src.transport(sigma, v)))

    return natural_map(name, src, tgt, component)


def alg_exo_to_alg_eo(a: AlgebraicExchangeableOutput) -> AlgebraicEntriesOnly:
    """Output-forgetting direction; normalizes the descent data first if needed."""
    if a.base_species is None:
        a, _ = normalize_descent(a)
    s0 = a.base_species
    ds0 = derivative(s0)
    dds0 = derivative(ds0)
    rho1p = nat_compose(a.nu, nat_hprod(iso_ex(s0), nat_identity(ds0)))
    rho2p = nat_compose(rho1p, iso_c(ds0, dds0))
    from cyclops.species import nat_copair

    rho_derived = nat_compose(nat_copair([rho1p, rho2p]), iso_phi(ds0, ds0))
    tri = product(ds0, ds0)
    rho = _map_from_derived(f"rho({a.name})", tri, s0, rho_derived)

    eta2_derived = nat_compose(a.eta1, iso_epsilon(2))
    eta2 = _map_from_derived(f"eta2({a.name})", species_E(2), s0, eta2_derived)
    return AlgebraicEntriesOnly(f"eo({a.name})", s0, rho, eta2, a.max_size)


def verify_eo_exo_roundtrip(c: EntriesOnlyPresentation, pool_size: int | None = None) -> list:
    """Bijectivity, naturality, and structure preservation for the comparison."""
    from cyclops.labels import atom_pool, subsets
    from cyclops.reporting import Report
    from cyclops.species import check_bijectivity, check_naturality

    n = pool_size if pool_size is not None else min(c.max_size, 3)
    phi = iso_CC(c)
    reports = [check_bijectivity(phi, n), check_naturality(phi, min(n, 3))]
    back = exo_to_eo(eo_to_exo(c))
    report = Report(f"eo-exo-roundtrip[{c.name}]")
    pool = atom_pool(n)
    for x_set in subsets(pool, 2, n):
        for y_set in subsets(pool, 2, n):
            for x in x_set:
                if len(x_set.without(x)) + len(y_set) - 1 > n:
                    continue
                for y in y_set:
                    if not x_set.without(x).isdisjoint(y_set.without(y)):
                        continue
                    out = x_set.without(x).union(y_set.without(y))
                    for cf in back.carrier.eval(x_set):
                        for cg in back.carrier.eval(y_set):
                            lhs = phi.apply(out, back.compose2(x_set, cf, x, y_set, cg, y))
                            rhs = c.compose2(x_set, phi.apply(x_set, cf), x,
                                             y_set, phi.apply(y_set, cg), y)
                            report.check(lhs is rhs, "ISO-COMPOSE",
                                         {"X": x_set.render(), "x": x.render(),
                                          "Y": y_set.render(), "y": y.render()},
                                         lhs.render(), rhs.render())
    for two in subsets(pool, 2, 2):
        lhs = phi.apply(two, back.unit2(two))
        rhs = c.unit2(two)
        report.check(lhs is rhs, "ISO-UNIT", {"two": two.render()}, lhs.render(), rhs.render())
    reports.append(report)
    return reports


def verify_exo_eo_roundtrip(o: ExchangeableOutputPresentation, pool_size: int | None = None) -> list:
    """Same, for the operad-side comparison, including the exchange actions."""
    from cyclops.labels import atom_pool, subsets
    from cyclops.reporting import Report
    from cyclops.species import check_bijectivity, check_naturality

    n = pool_size if pool_size is not None else min(o.max_size, 3)
    psi = iso_OO(o)
    reports = [check_bijectivity(psi, n), check_naturality(psi, min(n, 3))]
    again = eo_to_exo(exo_to_eo(o))
    report = Report(f"exo-eo-roundtrip[{o.name}]")
    pool = atom_pool(n)
    for x_set in subsets(pool, 1, n):
        for y_set in subsets(pool, 1, n):
            for x in x_set:
                if len(x_set.without(x)) + len(y_set) > n:
                    continue
                if not x_set.without(x).isdisjoint(y_set):
                    continue
                out = x_set.without(x).union(y_set)
                for f in o.carrier.eval(x_set):
                    for g in o.carrier.eval(y_set):
                        lhs = psi.apply(out, o.compose(x_set, f, x, y_set, g))
                        rhs = again.compose(x_set, psi.apply(x_set, f), x,
                                            y_set, psi.apply(y_set, g))
                        report.check(lhs is rhs, "ISO-COMPOSE",
                                     {"X": x_set.render(), "x": x.render(), "Y": y_set.render()},
                                     lhs.render(), rhs.render())
    for x_set in subsets(pool, 1, n):
        for f in o.carrier.eval(x_set):
            for z in x_set:
                dl = psi.apply(x_set, o.dact(x_set, z, f))
                dr = again.dact(x_set, z, psi.apply(x_set, f))
                report.check(dl is dr, "ISO-DACT",
                             {"X": x_set.render(), "z": z.render()}, dl.render(), dr.render())
    for a in pool:
        one = fset([a])
        lhs = psi.apply(one, o.unit1(a))
        rhs = again.unit1(a)
        report.check(lhs is rhs, "ISO-UNIT", {"x": a.render()}, lhs.render(), rhs.render())
    reports.append(report)
    return reports


def exo_componential_to_algebraic(p: ExchangeableOutputPresentation) -> AlgebraicExchangeableOutput:
    """Insertion multiplication composes at the star; the exchange glues the actions."""
    s = p.carrier

    def nu_component(x_set: FiniteSet, v: PairVal):
        return p.compose(v.x1.with_star(), v.left, star_of(v.x1), v.x2, v.right)

    nu = natural_map(f"nu({p.name})", product(derivative(s), s), s, nu_component)

    def eta_component(one: FiniteSet, v: StructureValue):
        return p.unit1(one.elements[0])

    eta1 = natural_map(f"eta1({p.name})", species_E(1), s, eta_component)
    from cyclops.algebraic import dmap_from_dact

    dmap = dmap_from_dact(s, p.dact, p.name)
    return AlgebraicExchangeableOutput(p.name, s, nu, eta1, dmap, p.max_size - 1)


def exo_algebraic_to_componential(a: AlgebraicExchangeableOutput) -> ExchangeableOutputPresentation:
    """Partial compositions and per-input actions read off the algebraic data."""
    from cyclops.algebraic import operad_from_algebraic

    ops = operad_from_algebraic(a.as_operad())

    def dact(x_set: FiniteSet, x: Label, f) -> StructureValue:
        return dact_from_dmap(a.species, a.dmap, x_set, x, f)

    return ExchangeableOutputPresentation(f"ops({a.name})", a.species, a.max_size + 1,
                                          ops.unit1, ops.compose_fn, dact)


def alg_eo_to_alg_exo(a: AlgebraicEntriesOnly) -> AlgebraicExchangeableOutput:
    """Output-choosing direction: carrier becomes the derivative, exchange the star swap."""
    s = a.species
    ds = derivative(s)
    dds = derivative(ds)
    summands = [product(dds, ds), product(ds, dds)]
    nu = nat_compose(
        nat_dmap(a.rho),
        iso_phi(ds, ds).inverse(),
        nat_inject(summands, 0),
        nat_hprod(iso_ex(s), nat_identity(ds)),
    )
    eta1 = nat_compose(nat_dmap(a.eta2), iso_epsilon(2).inverse())
    return AlgebraicExchangeableOutput(f"exo({a.name})", ds, nu, eta1, iso_ex(s),
                                       a.max_size - 1, base_species=s)

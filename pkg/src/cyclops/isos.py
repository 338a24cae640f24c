"""The named natural isomorphisms of the species algebra.

Covers the product associator/commutor/unitors, the star exchange on second
derivatives, the sum and product rules for the derivative, the cardinality
drop, and the assembled associativity-like maps for the insertion product
(S*T = dS.T) and the triangle product (S^T = dS.dT) with their unitors.
"""
from __future__ import annotations

from dataclasses import dataclass

from cyclops.labels import EMPTY, FiniteSet, fset, renaming, star_of, transposition
from cyclops.species import (
    NaturalMap,
    PairVal,
    PointedVal,
    Species,
    StructureValue,
    TaggedVal,
    derivative,
    nat_compose,
    nat_hprod,
    nat_identity,
    natural_map,
    pair,
    pointed,
    pointing,
    product,
    species_E,
    sum_species,
    tagged,
    whole,
)

# ---------------------------------------------------------------------------
# product shorthands


def star_product(s: Species, t: Species) -> Species:
    """Insertion product: derive the left factor only."""
    return product(derivative(s), t)


def triangle_product(s: Species, t: Species) -> Species:
    """Triangle product: derive both factors."""
    return product(derivative(s), derivative(t))


# ---------------------------------------------------------------------------
# the basic table


def iso_alpha(s: Species, t: Species, u: Species) -> NaturalMap:
    """Associator ((f,g),h) -> (f,(g,h)), recomputing the splits."""
    src = product(product(s, t), u)
    tgt = product(s, product(t, u))

    def fwd(x, v: PairVal):
        inner, h = v.left, v.right
        return pair(inner.left, pair(inner.right, h, inner.x2, v.x2), inner.x1, inner.x2.union(v.x2))

    def bwd(x, v: PairVal):
        f, inner = v.left, v.right
        return pair(pair(f, inner.left, v.x1, inner.x1), inner.right, v.x1.union(inner.x1), inner.x2)

    m = natural_map(f"alpha[{s.name},{t.name},{u.name}]", src, tgt, fwd)
    natural_map(f"alpha'[{s.name},{t.name},{u.name}]", tgt, src, bwd, inverse=m)
    return m


def iso_c(s: Species, t: Species) -> NaturalMap:
    """Commutor (f,g) -> (g,f)."""
    src = product(s, t)
    tgt = product(t, s)

    def fwd(x, v: PairVal):
        return pair(v.right, v.left, v.x2, v.x1)

    m = natural_map(f"c[{s.name},{t.name}]", src, tgt, fwd)
    if s is t:
        m._explicit_inverse = m
    else:
        natural_map(f"c[{t.name},{s.name}]", tgt, src, fwd, inverse=m)
    return m


def iso_lambda(s: Species) -> NaturalMap:
    """Left product unitor (empty-set structure, f) -> f."""
    src = product(species_E(0), s)

    def fwd(x, v: PairVal):
        return v.right

    def bwd(x, v):
        return pair(whole(EMPTY), v, EMPTY, x)

    m = natural_map(f"lam[{s.name}]", src, s, fwd)
    natural_map(f"lam'[{s.name}]", s, src, bwd, inverse=m)
    return m


def iso_rho(s: Species) -> NaturalMap:
    """Right product unitor (f, empty-set structure) -> f."""
    src = product(s, species_E(0))

    def fwd(x, v: PairVal):
        return v.left

    def bwd(x, v):
        return pair(v, whole(EMPTY), x, EMPTY)

    m = natural_map(f"rho[{s.name}]", src, s, fwd)
    natural_map(f"rho'[{s.name}]", s, src, bwd, inverse=m)
    return m


def iso_ex(s: Species) -> NaturalMap:
    """Exchange the two fresh elements of a second derivative; an involution."""
    dds = derivative(derivative(s))

    def fwd(x: FiniteSet, v: StructureValue):
        x1 = x.with_star()
        eps = transposition(x1.with_star(), star_of(x), star_of(x1))
        return s.transport(eps, v)

    m = natural_map(f"ex[{s.name}]", dds, dds, fwd)
    m._explicit_inverse = m
    return m


def iso_Delta(s: Species, t: Species) -> NaturalMap:
    """Derivative of a sum is the sum of derivatives; the identity on values."""
    src = derivative(sum_species(s, t))
    tgt = sum_species(derivative(s), derivative(t))
    m = natural_map(f"Delta[{s.name},{t.name}]", src, tgt, lambda x, v: v)
    natural_map(f"Delta'[{s.name},{t.name}]", tgt, src, lambda x, v: v, inverse=m)
    return m


def iso_phi(s: Species, t: Species) -> NaturalMap:
    """Product rule for the derivative: route a pair by where the star sits."""
    src = derivative(product(s, t))
    tgt = sum_species(product(derivative(s), t), product(s, derivative(t)))

    def fwd(x: FiniteSet, v: PairVal):
        st = star_of(x)
        if st in v.x1:
            x1p = v.x1.without(st)
            sigma = renaming(v.x1, st, star_of(x1p))
            return tagged(0, pair(s.transport(sigma, v.left), v.right, x1p, v.x2))
        x2p = v.x2.without(st)
        sigma = renaming(v.x2, st, star_of(x2p))
        return tagged(1, pair(v.left, t.transport(sigma, v.right), v.x1, x2p))

    def bwd(x: FiniteSet, v: TaggedVal):
        st = star_of(x)
        inner: PairVal = v.value
        if v.index == 0:
            a = inner.x1
            tau = renaming(a.with_star(), star_of(a), st)
            return pair(s.transport(tau, inner.left), inner.right, a.add(st), inner.x2)
        b = inner.x2
        tau = renaming(b.with_star(), star_of(b), st)
        return pair(inner.left, t.transport(tau, inner.right), inner.x1, b.add(st))

    m = natural_map(f"phi[{s.name},{t.name}]", src, tgt, fwd)
    natural_map(f"phi'[{s.name},{t.name}]", tgt, src, bwd, inverse=m)
    return m


def iso_phi_inv(s: Species, t: Species) -> NaturalMap:
    return iso_phi(s, t).inverse()


def iso_epsilon(n: int) -> NaturalMap:
    """Drop the star: derivative of a cardinality species, one size down."""
    if n < 1:
        raise ValueError("needs cardinality at least 1")
    src = derivative(species_E(n))
    tgt = species_E(n - 1)

    def fwd(x, v):
        return whole(x)

    def bwd(x, v):
        return whole(x.with_star())

    m = natural_map(f"eps[{n}]", src, tgt, fwd)
    natural_map(f"eps'[{n}]", tgt, src, bwd, inverse=m)
    return m


# ---------------------------------------------------------------------------
# assembled multi-summand maps


@dataclass(frozen=True)
class _Route:
    """One flat leg of an assembled multi-summand isomorphism.

    ``src_unfold``/``tgt_fold`` are (side, phi map, summand index) triples
    describing how the derivative of a product factor is split or rebuilt.
    """

    src_group: int
    src_unfold: tuple | None
    flat: NaturalMap
    tgt_group: int
    tgt_fold: tuple | None


def _route_step(candidates: list[_Route], v: TaggedVal):
    inner: PairVal = v.value
    first = candidates[0]
    if first.src_unfold is None:
        return first, inner
    side, phi = first.src_unfold[0], first.src_unfold[1]
    if side == "left":
        routed: TaggedVal = phi.apply(inner.x1, inner.left)
        flat_val = pair(routed.value, inner.right, inner.x1, inner.x2)
    else:
        routed = phi.apply(inner.x2, inner.right)
        flat_val = pair(inner.left, routed.value, inner.x1, inner.x2)
    route = next(r for r in candidates if r.src_unfold[2] == routed.index)
    return route, flat_val


def _fold_step(route: _Route, x: FiniteSet, w):
    if route.tgt_fold is None:
        return tagged(route.tgt_group, w)
    side, phi_inv, sub = route.tgt_fold
    if side == "left":
        folded = phi_inv.apply(w.x1, tagged(sub, w.left))
        return tagged(route.tgt_group, pair(folded, w.right, w.x1, w.x2))
    folded = phi_inv.apply(w.x2, tagged(sub, w.right))
    return tagged(route.tgt_group, pair(w.left, folded, w.x1, w.x2))


def _assemble(name: str, source: Species, target: Species, routes: list[_Route]) -> NaturalMap:
    by_src: dict[int, list[_Route]] = {}
    for r in routes:
        by_src.setdefault(r.src_group, []).append(r)

    def fwd(x: FiniteSet, v: TaggedVal):
        route, flat_val = _route_step(by_src[v.index], v)
        return _fold_step(route, x, route.flat.apply(x, flat_val))

    m = natural_map(name, source, target, fwd)

    flipped = [
        _Route(
            r.tgt_group,
            None if r.tgt_fold is None else (r.tgt_fold[0], r.tgt_fold[1].inverse(), r.tgt_fold[2]),
            r.flat.inverse(),
            r.src_group,
            None if r.src_unfold is None else (r.src_unfold[0], r.src_unfold[1].inverse(), r.src_unfold[2]),
        )
        for r in routes
    ]
    by_tgt: dict[int, list[_Route]] = {}
    for r in flipped:
        by_tgt.setdefault(r.src_group, []).append(r)

    def bwd(x: FiniteSet, v: TaggedVal):
        route, flat_val = _route_step(by_tgt[v.index], v)
        return _fold_step(route, x, route.flat.apply(x, flat_val))

    natural_map(f"inv({name})", target, source, bwd, inverse=m)
    return m


def iso_beta_parts(s: Species, t: Species, u: Species) -> tuple[NaturalMap, NaturalMap, NaturalMap]:
    """The three flat constituents of the insertion-product associativity."""
    dds = derivative(derivative(s))
    b1 = nat_compose(
        iso_alpha(dds, u, t).inverse(),
        nat_hprod(iso_ex(s), iso_c(t, u)),
        iso_alpha(dds, t, u),
    )
    b2 = iso_alpha(derivative(s), derivative(t), u)
    b3 = iso_alpha(derivative(s), derivative(u), t).inverse()
    return b1, b2, b3


def iso_beta(s: Species, t: Species, u: Species) -> NaturalMap:
    """Two-summand associativity-like isomorphism for the insertion product."""
    src = sum_species(star_product(star_product(s, t), u), star_product(s, star_product(u, t)))
    tgt = sum_species(star_product(s, star_product(t, u)), star_product(star_product(s, u), t))
    b1, b2, b3 = iso_beta_parts(s, t, u)
    phi_st = iso_phi(derivative(s), t)
    phi_su = iso_phi(derivative(s), u)
    routes = [
        _Route(0, ("left", phi_st, 0), b1, 1, ("left", phi_su.inverse(), 0)),
        _Route(0, ("left", phi_st, 1), b2, 0, None),
        _Route(1, None, b3, 1, ("left", phi_su.inverse(), 1)),
    ]
    return _assemble(f"beta[{s.name},{t.name},{u.name}]", src, tgt, routes)


def iso_gamma_parts(s: Species, t: Species, u: Species) -> list[NaturalMap]:
    """The six flat constituents of the triangle-product associativity."""
    ds, dt, du = derivative(s), derivative(t), derivative(u)
    dds, ddt, ddu = derivative(ds), derivative(dt), derivative(du)

    def g1(a: Species, b: Species, c: Species) -> NaturalMap:
        dda = derivative(derivative(a))
        return nat_compose(
            iso_alpha(dda, derivative(c), derivative(b)).inverse(),
            nat_hprod(iso_ex(a), iso_c(derivative(b), derivative(c))),
            iso_alpha(dda, derivative(b), derivative(c)),
        )

    gamma1 = g1(s, t, u)
    gamma2 = nat_compose(iso_c(product(ddt, du), ds), g1(t, s, u), nat_hprod(iso_c(ds, ddt), nat_identity(du)))
    gamma3 = nat_compose(iso_c(product(dds, dt), du), g1(s, u, t), iso_c(dt, product(dds, du)))
    gamma4 = nat_compose(
        nat_hprod(nat_identity(ds), iso_c(ddu, dt)),
        iso_c(product(ddu, dt), ds),
        g1(u, s, t),
        nat_hprod(iso_c(ds, ddu), nat_identity(dt)),
        iso_c(dt, product(ds, ddu)),
    )
    gamma5 = nat_compose(
        nat_hprod(nat_identity(du), iso_c(ddt, ds)),
        iso_c(product(ddt, ds), du),
        g1(t, u, s),
    )
    gamma6 = nat_compose(
        iso_c(dt, product(ds, ddu)),
        nat_hprod(nat_identity(dt), iso_c(ddu, ds)),
        iso_c(product(ddu, ds), dt),
        g1(u, t, s),
        nat_hprod(iso_c(dt, ddu), nat_identity(ds)),
    )
    return [gamma1, gamma2, gamma3, gamma4, gamma5, gamma6]


def iso_gamma(s: Species, t: Species, u: Species) -> NaturalMap:
    """Three-summand associativity-like isomorphism for the triangle product."""
    src = sum_species(
        triangle_product(triangle_product(s, t), u),
        triangle_product(t, triangle_product(s, u)),
        triangle_product(triangle_product(t, u), s),
    )
    tgt = sum_species(
        triangle_product(s, triangle_product(t, u)),
        triangle_product(triangle_product(s, u), t),
        triangle_product(u, triangle_product(s, t)),
    )
    g = iso_gamma_parts(s, t, u)
    phi_st = iso_phi(derivative(s), derivative(t))
    phi_su = iso_phi(derivative(s), derivative(u))
    phi_tu = iso_phi(derivative(t), derivative(u))
    routes = [
        _Route(0, ("left", phi_st, 0), g[0], 1, ("left", phi_su.inverse(), 0)),
        _Route(0, ("left", phi_st, 1), g[1], 0, ("right", phi_tu.inverse(), 0)),
        _Route(1, ("right", phi_su, 0), g[2], 2, ("right", phi_st.inverse(), 0)),
        _Route(1, ("right", phi_su, 1), g[3], 0, ("right", phi_tu.inverse(), 1)),
        _Route(2, ("left", phi_tu, 0), g[4], 2, ("right", phi_st.inverse(), 1)),
        _Route(2, ("left", phi_tu, 1), g[5], 1, ("left", phi_su.inverse(), 1)),
    ]
    return _assemble(f"gamma[{s.name},{t.name},{u.name}]", src, tgt, routes)


# ---------------------------------------------------------------------------
# unitors for the insertion and triangle products


def iso_lambda_star(s: Species) -> NaturalMap:
    """Left insertion unitor, via the cardinality drop.  An isomorphism."""
    return nat_compose(iso_lambda(s), nat_hprod(iso_epsilon(1), nat_identity(s)))


def iso_rho_star(s: Species) -> NaturalMap:
    """Right insertion unitor: rename the star of f to the unit's label.

    Surjective and natural but not injective (every point of the underlying
    set yields one preimage), so it has no inverse.
    """
    src = star_product(s, species_E(1))

    def fwd(x: FiniteSet, v: PairVal):
        (lab,) = v.x2.elements
        sigma = renaming(x, lab, star_of(v.x1))
        return s.transport(sigma.inverse(), v.left)

    return natural_map(f"rho*[{s.name}]", src, s, fwd)


def iso_lambda_tri(s: Species) -> NaturalMap:
    """Left triangle unitor onto the pointing species."""
    src = triangle_product(species_E(2), s)
    tgt = pointing(s)

    def fwd(x: FiniteSet, v: PairVal):
        (lab,) = v.x1.elements
        sigma = renaming(x, lab, star_of(v.x2))
        return pointed(s.transport(sigma.inverse(), v.right), lab)

    def bwd(x: FiniteSet, v: PointedVal):
        lab = v.point
        rest = x.without(lab)
        sigma = renaming(x, lab, star_of(rest))
        one = fset([lab])
        return pair(whole(one.with_star()), s.transport(sigma, v.base), one, rest)

    m = natural_map(f"tri-lam[{s.name}]", src, tgt, fwd)
    natural_map(f"tri-lam'[{s.name}]", tgt, src, bwd, inverse=m)
    return m


def iso_kappa_tri(s: Species) -> NaturalMap:
    """Right triangle unitor: swap, then the left one."""
    return nat_compose(iso_lambda_tri(s), iso_c(derivative(s), derivative(species_E(2))))


def iso_delta(s: Species) -> NaturalMap:
    """Trade the chosen point for a singleton block and a fresh star."""
    src = pointing(s)
    tgt = product(species_E(1), derivative(s))

    def fwd(x: FiniteSet, v: PointedVal):
        lab = v.point
        rest = x.without(lab)
        sigma = renaming(x, lab, star_of(rest))
        one = fset([lab])
        return pair(whole(one), s.transport(sigma, v.base), one, rest)

    def bwd(x: FiniteSet, v: PairVal):
        (lab,) = v.x1.elements
        sigma = renaming(x, lab, star_of(v.x2))
        return pointed(s.transport(sigma.inverse(), v.right), lab)

    m = natural_map(f"pt-split[{s.name}]", src, tgt, fwd)
    natural_map(f"pt-split'[{s.name}]", tgt, src, bwd, inverse=m)
    return m

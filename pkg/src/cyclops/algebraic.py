"""Algebraic presentations: a species with multiplication and unit maps.

Three flavours: plain operads (insertion multiplication dS.S -> S), cyclic
operads with interchangeable entries (triangle multiplication dS.dS -> S),
and operads enriched with an output-exchange transformation on dS.  Law
checkers compare the induced multi-summand pipelines pointwise.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from cyclops.labels import FiniteSet, Label, atom_pool, fset, renaming, star_of, subsets
from cyclops.reporting import Report
from cyclops.species import (
    NaturalMap,
    Species,
    StructureValue,
    check_map_equality,
    derivative,
    nat_compose,
    nat_dmap,
    nat_hprod,
    nat_identity,
    nat_inject,
    nat_proj_point,
    natural_map,
    pair,
    product,
    species_E,
    sum_species,
)
from cyclops.isos import (
    iso_beta_parts,
    iso_c,
    iso_epsilon,
    iso_ex,
    iso_gamma_parts,
    iso_kappa_tri,
    iso_lambda_star,
    iso_lambda_tri,
    iso_phi,
    iso_rho_star,
)
from cyclops.presentations import OperadPresentation


@dataclass
class AlgebraicOperad:
    """Operad as (species, insertion multiplication, one-entry unit)."""

    name: str
    species: Species
    nu: NaturalMap
    eta1: NaturalMap
    max_size: int


@dataclass
class AlgebraicEntriesOnly:
    """Cyclic operad as (species, triangle multiplication, two-entry unit)."""

    name: str
    species: Species
    rho: NaturalMap
    eta2: NaturalMap
    max_size: int


@dataclass
class AlgebraicExchangeableOutput:
    """Operad plus an involution-like transformation on the derivative.

    ``base_species`` records, when known, the species whose derivative the
    carrier is, with the output exchange given by the star swap; round trips
    use it to avoid re-quotienting.
    """

    name: str
    species: Species
    nu: NaturalMap
    eta1: NaturalMap
    dmap: NaturalMap
    max_size: int
    base_species: Species | None = field(default=None)

    def as_operad(self) -> AlgebraicOperad:
        return AlgebraicOperad(self.name, self.species, self.nu, self.eta1, self.max_size)


# ---------------------------------------------------------------------------
# pipelines induced by the triangle multiplication


def rho_flat_pipelines(a: AlgebraicEntriesOnly) -> list[NaturalMap]:
    """The four distinct composites routing a doubly-derived triple into rho."""
    s, rho = a.species, a.rho
    ds = derivative(s)
    dds = derivative(ds)
    id_ds = nat_identity(ds)
    summands = [product(dds, ds), product(ds, dds)]
    phi_inv = iso_phi(ds, ds).inverse()
    drho = nat_dmap(rho)
    rho11 = nat_compose(rho, nat_hprod(drho, id_ds), nat_hprod(phi_inv, id_ds),
                        nat_hprod(nat_inject(summands, 0), id_ds))
    rho12 = nat_compose(rho, nat_hprod(drho, id_ds), nat_hprod(phi_inv, id_ds),
                        nat_hprod(nat_inject(summands, 1), id_ds))
    rho13 = nat_compose(rho, nat_hprod(id_ds, drho), nat_hprod(id_ds, phi_inv),
                        nat_hprod(id_ds, nat_inject(summands, 0)))
    rho14 = nat_compose(rho, nat_hprod(id_ds, drho), nat_hprod(id_ds, phi_inv),
                        nat_hprod(id_ds, nat_inject(summands, 1)))
    return [rho11, rho12, rho13, rho14]


def build_rho1_rho2(a: AlgebraicEntriesOnly) -> tuple[NaturalMap, NaturalMap]:
    """Assemble both six-summand multiplications, tagged summand by summand."""
    from cyclops.species import nat_copair

    rho11, rho12, rho13, rho14 = rho_flat_pipelines(a)
    left = [rho11, rho12, rho13, rho14, rho11, rho12]
    right = [rho11, rho13, rho13, rho14, rho14, rho12]
    src1 = sum_species(*[m.source for m in left])
    src2 = sum_species(*[m.source for m in right])
    rho1 = nat_copair([_shift_source(m, src1, i) for i, m in enumerate(left)], source=src1)
    rho2 = nat_copair([_shift_source(m, src2, i) for i, m in enumerate(right)], source=src2)
    return rho1, rho2


def _shift_source(m: NaturalMap, src: Species, index: int) -> NaturalMap:
    return natural_map(f"{m.name}@{index}", m.source, m.target, m._component_fn)


def check_CA1(a: AlgebraicEntriesOnly, pool_size: int | None = None, full: bool = False) -> Report:
    """Triangle associativity, via the single reduced equality by default.

    With ``full`` set, all six summand equalities are compared pointwise.
    """
    n = pool_size if pool_size is not None else min(a.max_size, 3)
    pool = atom_pool(n)
    report = Report(f"CA1[{a.name}]" + ("(full)" if full else ""))
    rho11, rho12, rho13, rho14 = rho_flat_pipelines(a)
    gammas = iso_gamma_parts(a.species, a.species, a.species)
    left = [rho11, rho12, rho13, rho14, rho11, rho12]
    right = [rho11, rho13, rho13, rho14, rho14, rho12]
    indices = range(6) if full else range(1)
    for i in indices:
        lhs = nat_compose(right[i], gammas[i])
        check_map_equality(f"CA1.{i + 1}", lhs, left[i], max_size=n, pool=pool, report=report)
    return report


def check_CA2(a: AlgebraicEntriesOnly, pool_size: int | None = None) -> Report:
    """Unit coherence for the triangle multiplication, left and right."""
    n = pool_size if pool_size is not None else min(a.max_size, 3)
    pool = atom_pool(n)
    s = a.species
    ds = derivative(s)
    report = Report(f"CA2[{a.name}]")
    left_lhs = nat_compose(a.rho, nat_hprod(nat_dmap(a.eta2), nat_identity(ds)))
    left_rhs = nat_compose(nat_proj_point(s), iso_lambda_tri(s))
    check_map_equality("CA2-left", left_lhs, left_rhs, max_size=n, pool=pool, report=report)
    right_lhs = nat_compose(a.rho, nat_hprod(nat_identity(ds), nat_dmap(a.eta2)))
    right_rhs = nat_compose(nat_proj_point(s), iso_kappa_tri(s))
    check_map_equality("CA2-right", right_lhs, right_rhs, max_size=n, pool=pool, report=report)
    return report


def check_rho_commutative(a: AlgebraicEntriesOnly, pool_size: int | None = None) -> Report:
    """The triangle multiplication absorbs the commutor."""
    n = pool_size if pool_size is not None else min(a.max_size, 3)
    ds = derivative(a.species)
    flipped = nat_compose(a.rho, iso_c(ds, ds))
    return check_map_equality(f"RHO-C[{a.name}]", flipped, a.rho, max_size=n)


# ---------------------------------------------------------------------------
# pipelines induced by the insertion multiplication


def nu_flat_pipelines(a: AlgebraicOperad) -> list[NaturalMap]:
    s, nu = a.species, a.nu
    ds = derivative(s)
    dds = derivative(ds)
    id_s = nat_identity(s)
    summands = [product(dds, s), product(ds, ds)]
    phi_inv = iso_phi(ds, s).inverse()
    dnu = nat_dmap(nu)
    nu11 = nat_compose(nu, nat_hprod(dnu, id_s), nat_hprod(phi_inv, id_s),
                       nat_hprod(nat_inject(summands, 0), id_s))
    nu12 = nat_compose(nu, nat_hprod(dnu, id_s), nat_hprod(phi_inv, id_s),
                       nat_hprod(nat_inject(summands, 1), id_s))
    nu13 = nat_compose(nu, nat_hprod(nat_identity(ds), nu))
    return [nu11, nu12, nu13]


def check_OA(a: AlgebraicOperad, pool_size: int | None = None) -> Report:
    """Insertion associativity (both summand equalities) and unit triangles."""
    n = pool_size if pool_size is not None else min(a.max_size, 3)
    pool = atom_pool(n)
    s = a.species
    report = Report(f"OA[{a.name}]")
    nu11, nu12, nu13 = nu_flat_pipelines(a)
    b1, b2, b3 = iso_beta_parts(s, s, s)
    check_map_equality("OA1.1", nat_compose(nu11, b1), nu11, max_size=n, pool=pool, report=report)
    check_map_equality("OA1.2", nat_compose(nu13, b2), nu12, max_size=n, pool=pool, report=report)
    check_map_equality("OA1.3", nat_compose(nu12, b3), nu13, max_size=n, pool=pool, report=report)
    left_lhs = nat_compose(a.nu, nat_hprod(nat_dmap(a.eta1), nat_identity(s)))
    check_map_equality("OA2-left", left_lhs, iso_lambda_star(s), max_size=n, pool=pool, report=report)
    right_lhs = nat_compose(a.nu, nat_hprod(nat_identity(derivative(s)), a.eta1))
    check_map_equality("OA2-right", right_lhs, iso_rho_star(s), max_size=n, pool=pool, report=report)
    return report


def nu3_pipeline(a) -> NaturalMap:
    s, nu = a.species, a.nu
    ds = derivative(s)
    summands = [product(derivative(ds), s), product(ds, ds)]
    return nat_compose(nat_dmap(nu), iso_phi(ds, s).inverse(), nat_inject(summands, 0))


def nu4_pipeline(a) -> NaturalMap:
    s, nu = a.species, a.nu
    ds = derivative(s)
    summands = [product(derivative(ds), s), product(ds, ds)]
    return nat_compose(nat_dmap(nu), iso_phi(ds, s).inverse(), nat_inject(summands, 1))


def check_D_axioms(a: AlgebraicExchangeableOutput, pool_size: int | None = None) -> Report:
    """The five output-exchange laws, plus the variant of the square."""
    n = pool_size if pool_size is not None else min(a.max_size, 3)
    pool = atom_pool(n)
    s, d = a.species, a.dmap
    ds = derivative(s)
    report = Report(f"D[{a.name}]")

    eta_d = nat_compose(nat_dmap(a.eta1), iso_epsilon(1).inverse())
    check_map_equality("D0", nat_compose(d, eta_d), eta_d, max_size=n, pool=pool, report=report)

    check_map_equality("D1", nat_compose(d, d), nat_identity(ds), max_size=n, pool=pool, report=report)

    step = nat_compose(nat_dmap(d), iso_ex(s))
    check_map_equality("D2", nat_compose(step, step, step), nat_identity(derivative(ds)),
                       max_size=n, pool=pool, report=report)

    nu3 = nu3_pipeline(a)
    dd = nat_dmap(d)
    ex = iso_ex(s)
    conj = nat_compose(ex, dd, ex)
    check_map_equality("D3", nat_compose(nu3, nat_hprod(conj, nat_identity(s))),
                       nat_compose(d, nu3), max_size=n, pool=pool, report=report)
    variant = nat_compose(dd, ex, dd)
    check_map_equality("D3-variant", nat_compose(nu3, nat_hprod(variant, nat_identity(s))),
                       nat_compose(d, nu3), max_size=n, pool=pool, report=report)

    nu4 = nu4_pipeline(a)
    check_map_equality("D4", nat_compose(nu4, iso_c(ds, ds), nat_hprod(d, d)),
                       nat_compose(d, nu4), max_size=n, pool=pool, report=report)
    return report


# ---------------------------------------------------------------------------
# componential views and the action correspondence


def operad_from_algebraic(a: AlgebraicOperad) -> OperadPresentation:
    """Partial compositions read off the insertion multiplication."""
    s = a.species

    def unit1(x: Label) -> StructureValue:
        one = fset([x])
        return a.eta1.apply(one, _whole(one))

    def compose(x_set: FiniteSet, f, x: Label, y_set: FiniteSet, g) -> StructureValue:
        if x not in x_set:
            raise ValueError("composition point must belong to the operation's inputs")
        if not x_set.without(x).isdisjoint(y_set):
            raise ValueError("input sets are not disjoint")
        rest = x_set.without(x)
        sigma = renaming(x_set, x, star_of(rest))
        out = rest.union(y_set)
        return a.nu.apply(out, pair(s.transport(sigma, f), g, rest, y_set))

    return OperadPresentation(f"ops({a.name})", s, a.max_size, unit1, compose)


def _whole(x: FiniteSet):
    from cyclops.species import whole

    return whole(x)


def dact_from_dmap(species: Species, dmap: NaturalMap, x_set: FiniteSet, x: Label,
                   value: StructureValue) -> StructureValue:
    """Exchange the output with input x, conjugating the derivative action."""
    rest = x_set.without(x)
    sigma = renaming(x_set, x, star_of(rest))
    shifted = species.transport(sigma, value)
    acted = dmap.apply(rest, shifted)
    return species.transport(sigma.inverse(), acted)


def dmap_from_dact(carrier: Species, dact_fn, name: str) -> NaturalMap:
    """Glue per-input actions into one transformation on the derivative."""
    ds = derivative(carrier)

    def component(x: FiniteSet, v: StructureValue):
        return dact_fn(x.with_star(), star_of(x), v)

    return natural_map(f"D[{name}]", ds, ds, component)


def check_dact_roundtrip(a: AlgebraicExchangeableOutput, pool_size: int | None = None) -> Report:
    """Derive per-input actions from D, re-glue them, compare with D."""
    n = pool_size if pool_size is not None else min(a.max_size, 3)
    pool = atom_pool(n)
    s, d = a.species, a.dmap
    report = Report(f"D-roundtrip[{a.name}]")

    def dact_fn(x_set, x, value):
        return dact_from_dmap(s, d, x_set, x, value)

    reglued = dmap_from_dact(s, dact_fn, a.name)
    check_map_equality("D-REGLUE", reglued, d, max_size=n, pool=pool, report=report)

    for x_set in subsets(pool, 1, n):
        for x in x_set:
            for v in s.eval(x_set):
                got = dact_fn(x_set, x, dact_fn(x_set, x, v))
                report.check(got is v, "DIN-derived",
                             {"X": x_set.render(), "x": x.render(), "f": v.render()},
                             got.render(), v.render())
    return report

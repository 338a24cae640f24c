import pytest

from cyclops.labels import atom, atoms, atom_pool, fset, star_of, subsets
from cyclops.species import (
    check_bijectivity,
    check_map_equality,
    check_naturality,
    derivative,
    species_E,
    whole,
)
from cyclops.isos import iso_ex
from cyclops.algebraic import check_CA1, check_CA2, check_D_axioms, check_OA
from cyclops.presentations import (
    check_entries_only,
    check_entries_only_derived,
    check_exchangeable_output,
)
from cyclops.translate import (
    alg_eo_to_alg_exo,
    alg_exo_to_alg_eo,
    class_members,
    conjugated_dmap,
    descent_integrate,
    descent_recover_iso,
    eo_algebraic_to_componential,
    eo_componential_to_algebraic,
    eo_to_exo,
    exo_componential_to_algebraic,
    exo_to_eo,
    iso_CC,
    iso_OO,
    normalize_descent,
)
from cyclops.zoo import (
    comm_cyclic,
    comm_species,
    cyc_species,
    cyclic_orders,
    free_cyclic,
    rooted_view,
)

MODELS = [lambda: comm_cyclic(4), lambda: cyclic_orders(4), lambda: free_cyclic({"g": 3}, 4)]


def eo_instances(p, pool_size):
    pool = atom_pool(pool_size)
    sets_ = [s for s in subsets(pool, 2, p.max_size) if p.carrier.eval(s)]
    for x_set in sets_:
        for y_set in sets_:
            for x in x_set:
                if len(x_set.without(x)) + len(y_set) - 1 > p.max_size:
                    continue
                for y in y_set:
                    if x_set.without(x).isdisjoint(y_set.without(y)):
                        yield x_set, x, y_set, y


class TestStrongRoundTrip:
    @pytest.mark.parametrize("make", MODELS)
    def test_tables_recovered_exactly(self, make):
        p = make()
        back = eo_algebraic_to_componential(eo_componential_to_algebraic(p))
        count = 0
        for x_set, x, y_set, y in eo_instances(p, 4):
            for f in p.carrier.eval(x_set):
                for g in p.carrier.eval(y_set):
                    assert back.compose2(x_set, f, x, y_set, g, y) is \
                        p.compose2(x_set, f, x, y_set, g, y)
                    count += 1
        assert count > 0
        for two in subsets(atom_pool(4), 2, 2):
            assert back.unit2(two) is p.unit2(two)

    def test_algebraic_recovered_exactly(self, make=lambda: cyclic_orders(4)):
        a = eo_componential_to_algebraic(make())
        again = eo_componential_to_algebraic(eo_algebraic_to_componential(a))
        r = check_map_equality("RT-RHO", again.rho, a.rho, max_size=3)
        assert r.ok and r.checked > 0
        r = check_map_equality("RT-ETA", again.eta2, a.eta2, max_size=3)
        assert r.ok and r.checked > 0

    def test_eta_empty_off_two_sets(self):
        a = eo_componential_to_algebraic(comm_cyclic(4))
        assert a.eta2.source.eval(atoms("a", "b", "c")) == ()
        assert a.eta2.source.eval(fset()) == ()


class TestOutputChoosing:
    @pytest.mark.parametrize("make", [lambda: comm_cyclic(5), lambda: cyclic_orders(4),
                                      lambda: free_cyclic({"g": 3}, 4)])
    def test_image_passes_axioms(self, make):
        o = eo_to_exo(make())
        r = check_exchangeable_output(o, pool_size=3)
        assert r.ok, r.format()

    @pytest.mark.parametrize("make", [lambda: comm_cyclic(5), lambda: cyclic_orders(4),
                                      lambda: free_cyclic({"g": 3}, 4)])
    def test_matches_rooted_oracle(self, make):
        model = make()
        o = eo_to_exo(model)
        rv = rooted_view(model)
        pool = atom_pool(3)
        for x_set in subsets(pool, 1, 3):
            assert o.carrier.eval(x_set) == rv.carrier.eval(x_set)
            for f in o.carrier.eval(x_set):
                for x in x_set:
                    assert o.dact(x_set, x, f) is rv.dact(x_set, x, f)
        for x_set in subsets(pool, 1, 2):
            for y_set in subsets(pool, 1, 2):
                for x in x_set:
                    if not x_set.without(x).isdisjoint(y_set):
                        continue
                    if len(x_set.without(x)) + len(y_set) > o.max_size:
                        continue
                    for f in o.carrier.eval(x_set):
                        for g in o.carrier.eval(y_set):
                            assert o.compose(x_set, f, x, y_set, g) is \
                                rv.compose(x_set, f, x, y_set, g)

    def test_unit_traced(self):
        model = cyclic_orders(4)
        o = eo_to_exo(model)
        for f in o.carrier.eval(atoms("a", "b")):
            got = o.compose(atoms("c"), o.unit1(atom("c")), atom("c"), atoms("a", "b"), f)
            assert got is f


class TestOutputForgetting:
    def test_class_count_comm(self):
        o = eo_to_exo(comm_cyclic(5))
        eo = exo_to_eo(o)
        assert len(eo.carrier.eval(atoms("a", "b"))) == 1

    def test_unit_identification(self):
        o = eo_to_exo(cyclic_orders(4))
        eo = exo_to_eo(o)
        x, y = atom("a"), atom("b")
        two = atoms("a", "b")
        members = class_members(o, two, x, o.unit1(y))
        assert (y, o.unit1(x)) in members

    @pytest.mark.parametrize("make", [lambda: comm_cyclic(5), lambda: cyclic_orders(4)])
    def test_quotient_passes_axioms(self, make):
        eo = exo_to_eo(eo_to_exo(make()))
        r = check_entries_only(eo, pool_size=3)
        assert r.ok, r.format()

    def test_unique_representative_per_point(self):
        o = eo_to_exo(cyclic_orders(4))
        pool = atom_pool(3)
        for x_set in subsets(pool, 2, 3):
            for x in x_set:
                for f in o.carrier.eval(x_set.without(x)):
                    members = class_members(o, x_set, x, f)
                    points = [pt for pt, _ in members]
                    assert len(points) == len(set(points)) == len(x_set)

    def test_composition_well_defined_over_representatives(self):
        o = eo_to_exo(cyclic_orders(4))
        eo = exo_to_eo(o)
        pool = atom_pool(3)
        checked = 0
        for x_set, x, y_set, y in eo_instances(eo, 3):
            if len(x_set) > 3 or len(y_set) > 3:
                continue
            for cf in eo.carrier.eval(x_set):
                for cg in eo.carrier.eval(y_set):
                    expected = eo.compose2(x_set, cf, x, y_set, cg, y)
                    for u, f in class_members(o, x_set, cf.point, cf.value):
                        for v, g in class_members(o, y_set, cg.point, cg.value):
                            from cyclops.species import class_rep
                            from cyclops.translate import _canon_class

                            alt = eo.compose2(x_set, _canon_class(o, x_set, u, f), x,
                                              y_set, _canon_class(o, y_set, v, g), y)
                            assert alt is expected
                            checked += 1
        assert checked > 0

    def test_point_moving_congruence(self):
        # moving the retained point across the removed one commutes with composition
        o = eo_to_exo(cyclic_orders(4))
        x_set, y_set = atoms("a", "b", "c"), atoms("c", "d")
        x, y = atom("a"), atom("c")
        for f in o.carrier.eval(x_set.without(x)):
            for g in o.carrier.eval(y_set.without(y)):
                from cyclops.presentations import dact_renamed

                results = set()
                for z in x_set.without(x):
                    moved = dact_renamed(o, x_set.without(x), f, z, x)
                    host = x_set.without(z)
                    composed = o.compose(host, moved, x, y_set.without(y), g)
                    from cyclops.translate import _canon_class

                    results.add(_canon_class(o, x_set.without(x).union(y_set.without(y)), z, composed))
                assert len(results) == 1


class TestComparisonIsos:
    @pytest.mark.parametrize("make", [lambda: comm_cyclic(5), lambda: cyclic_orders(4),
                                      lambda: free_cyclic({"g": 3}, 4)])
    def test_cc_is_an_isomorphism(self, make):
        phi = iso_CC(make())
        assert check_bijectivity(phi, 4).ok
        assert check_naturality(phi, 3).ok

    def test_cc_preserves_structure(self):
        c = cyclic_orders(4)
        phi = iso_CC(c)
        back = exo_to_eo(eo_to_exo(c))
        for x_set, x, y_set, y in eo_instances(back, 3):
            out = x_set.without(x).union(y_set.without(y))
            for cf in back.carrier.eval(x_set):
                for cg in back.carrier.eval(y_set):
                    lhs = phi.apply(out, back.compose2(x_set, cf, x, y_set, cg, y))
                    rhs = c.compose2(x_set, phi.apply(x_set, cf), x,
                                     y_set, phi.apply(y_set, cg), y)
                    assert lhs is rhs
        for two in subsets(atom_pool(3), 2, 2):
            assert phi.apply(two, back.unit2(two)) is c.unit2(two)

    def test_cc_unit_class_lands_on_unit(self):
        c = cyclic_orders(4)
        phi = iso_CC(c)
        o = eo_to_exo(c)
        from cyclops.translate import _canon_class

        two = atoms("a", "b")
        cls = _canon_class(o, two, atom("a"), o.unit1(atom("b")))
        assert phi.apply(two, cls) is c.unit2(two)

    @pytest.mark.parametrize("make", [lambda: comm_cyclic(5), lambda: cyclic_orders(4)])
    def test_oo_is_an_isomorphism(self, make):
        psi = iso_OO(eo_to_exo(make()))
        assert check_bijectivity(psi, 3).ok
        assert check_naturality(psi, 3).ok

    def test_oo_preserves_structure(self):
        o = rooted_view(cyclic_orders(4))
        psi = iso_OO(o)
        again = eo_to_exo(exo_to_eo(o))
        pool = atom_pool(3)
        for x_set in subsets(pool, 1, 2):
            for y_set in subsets(pool, 1, 2):
                for x in x_set:
                    if not x_set.without(x).isdisjoint(y_set):
                        continue
                    out = x_set.without(x).union(y_set)
                    if len(out) > o.max_size:
                        continue
                    for f in o.carrier.eval(x_set):
                        for g in o.carrier.eval(y_set):
                            lhs = psi.apply(out, o.compose(x_set, f, x, y_set, g))
                            rhs = again.compose(x_set, psi.apply(x_set, f), x,
                                                y_set, psi.apply(y_set, g))
                            assert lhs is rhs
            for f in o.carrier.eval(x_set):
                for x in x_set:
                    assert psi.apply(x_set, o.dact(x_set, x, f)) is \
                        again.dact(x_set, x, psi.apply(x_set, f))
        for a in pool:
            one = fset([a])
            assert psi.apply(one, o.unit1(a)) is again.unit1(a)


class TestDescent:
    def test_two_pairs_one_class(self):
        e2 = species_E(2)
        integrated = descent_integrate(derivative(e2), iso_ex(e2))
        assert len(integrated.eval(atoms("a", "b"))) == 1

    def test_empty_at_singletons(self):
        integrated = descent_integrate(derivative(cyc_species()), iso_ex(cyc_species()))
        assert integrated.eval(atoms("a")) == ()
        assert integrated.eval(fset()) == ()

    @pytest.mark.parametrize("s", [species_E(2), comm_species(), cyc_species()])
    def test_recovers_the_species(self, s):
        integrated = descent_integrate(derivative(s), iso_ex(s))
        rec = descent_recover_iso(s, integrated)
        assert check_bijectivity(rec, 4).ok
        assert check_naturality(rec, 3).ok
        for n in range(5):
            x = fset(atom_pool(n))
            assert len(integrated.eval(x)) == len(s.eval(x))

    def test_normalization_conjugates_to_star_exchange(self):
        a = alg_eo_to_alg_exo(eo_componential_to_algebraic(cyclic_orders(5)))
        anon = type(a)(a.name + "-anon", a.species, a.nu, a.eta1, a.dmap, a.max_size)
        norm, j = normalize_descent(anon)
        assert check_bijectivity(j, 3).ok
        assert check_naturality(j, 2).ok
        conj = conjugated_dmap(anon, j)
        r = check_map_equality("CONJ-EX", conj, iso_ex(norm.base_species), max_size=2)
        assert r.ok and r.checked > 0


class TestAlgebraicEquivalence:
    @pytest.mark.parametrize("make", [lambda: comm_cyclic(5), lambda: cyclic_orders(5),
                                      lambda: free_cyclic({"g": 3}, 5)])
    def test_eo_exo_eo_recovers_multiplication(self, make):
        a = eo_componential_to_algebraic(make())
        b = alg_eo_to_alg_exo(a)
        back = alg_exo_to_alg_eo(b)
        r = check_map_equality("RHO-RT", back.rho, a.rho, max_size=3)
        assert r.ok and r.checked > 0, r.format()
        r = check_map_equality("ETA2-RT", back.eta2, a.eta2, max_size=3)
        assert r.ok and r.checked > 0, r.format()

    @pytest.mark.parametrize("make", [lambda: comm_cyclic(5), lambda: cyclic_orders(5)])
    def test_exo_eo_exo_recovers_multiplication(self, make):
        b = alg_eo_to_alg_exo(eo_componential_to_algebraic(make()))
        eo = alg_exo_to_alg_eo(b)
        again = alg_eo_to_alg_exo(eo)
        r = check_map_equality("NU-RT", again.nu, b.nu, max_size=2)
        assert r.ok and r.checked > 0, r.format()
        r = check_map_equality("ETA1-RT", again.eta1, b.eta1, max_size=2)
        assert r.ok and r.checked > 0, r.format()

    def test_derived_structures_pass_laws(self):
        b = alg_eo_to_alg_exo(eo_componential_to_algebraic(cyclic_orders(5)))
        assert check_OA(b.as_operad(), pool_size=3).ok
        assert check_D_axioms(b, pool_size=3).ok
        eo = alg_exo_to_alg_eo(b)
        assert check_CA1(eo, pool_size=3).ok
        assert check_CA2(eo, pool_size=3).ok

    def test_componential_exo_to_algebraic(self):
        o = rooted_view(cyclic_orders(5))
        b = exo_componential_to_algebraic(o)
        assert check_OA(b.as_operad(), pool_size=2).ok
        assert check_D_axioms(b, pool_size=2).ok

    def test_generic_quotient_route(self):
        o = rooted_view(cyclic_orders(5))
        b = exo_componential_to_algebraic(o)
        eo = alg_exo_to_alg_eo(b)
        assert check_CA1(eo, pool_size=2).ok
        assert check_CA2(eo, pool_size=2).ok

import pytest

from cyclops.labels import atom, atoms, atom_pool, fset, star_of
from cyclops.presentations import (
    EntriesOnlyPresentation,
    ExchangeableOutputPresentation,
    OperadPresentation,
    check_entries_only,
    check_entries_only_derived,
    check_exchangeable_output,
    check_exchangeable_output_derived,
    check_operad,
    dact_renamed,
    simultaneous_composition,
)
from cyclops.species import model_val, whole
from cyclops.zoo import (
    comm_cyclic,
    cyclic_orders,
    free_cyclic,
    free_operad,
    parity_cyclic,
    rooted_view,
    terminal_operad,
)


def corrupt_compose2(p: EntriesOnlyPresentation, instance, wrong):
    """Replace one composition-table entry; everything else passes through."""

    def compose2(x_set, f, x, y_set, g, y):
        if (x_set, f, x, y_set, g, y) == instance:
            return wrong
        return p.compose2_fn(x_set, f, x, y_set, g, y)

    return EntriesOnlyPresentation(p.name + "-corrupt", p.carrier, p.max_size, p.unit2, compose2)


class TestEntriesOnlySuites:
    @pytest.mark.parametrize("make,pool", [(lambda: comm_cyclic(4), 4),
                                           (lambda: cyclic_orders(4), 3),
                                           (lambda: free_cyclic({"g": 3}, 4), 3),
                                           (lambda: parity_cyclic(4), 3)])
    def test_axioms(self, make, pool):
        p = make()
        report = check_entries_only(p, pool_size=pool)
        assert report.ok, report.format()

    @pytest.mark.parametrize("make", [lambda: comm_cyclic(4), lambda: cyclic_orders(3),
                                      lambda: free_cyclic({"g": 3}, 3)])
    def test_derived_laws(self, make):
        p = make()
        report = check_entries_only_derived(p, pool_size=3)
        assert report.ok, report.format()

    def test_swapped_composition_caught(self):
        base = cyclic_orders(3)

        def swapped(x_set, f, x, y_set, g, y):
            return base.compose2_fn(y_set, g, y, x_set, f, x)

        # swapping arguments is invisible for commutative composition, so pick
        # one noncommutative-looking instance and feed a rotated value instead
        x_set, y_set = atoms("a", "b", "c"), atoms("c", "d")
        f = base.carrier.eval(x_set)[0]
        g = base.carrier.eval(y_set)[0]
        wrong = base.carrier.eval(atoms("a", "b", "d"))[1]
        right = base.compose2(x_set, f, atom("a"), y_set, g, atom("c"))
        assert wrong is not right
        bad = corrupt_compose2(base, (x_set, f, atom("a"), y_set, g, atom("c")), wrong)
        report = check_entries_only(bad, pool_size=4)
        assert not report.ok
        assert report.axioms_violated() & {"A1", "EQ", "U1"}

    def test_corrupted_unit_caught(self):
        base = parity_cyclic(3)

        def bad_unit(two):
            return base.carrier.eval(two)[1]

        bad = EntriesOnlyPresentation("parity-bad-unit", base.carrier, 3, bad_unit,
                                      base.compose2_fn)
        report = check_entries_only(bad, pool_size=3)
        assert not report.ok
        assert "U1" in report.axioms_violated()

    def test_carrier_with_constants_caught(self):
        from cyclops.species import species_E_at_least

        base = comm_cyclic(3)
        bad = EntriesOnlyPresentation("comm-with-units", species_E_at_least(1), 3,
                                      base.unit2, base.compose2_fn)
        report = check_entries_only(bad, pool_size=2)
        assert "CONSTANT-FREE" in report.axioms_violated()


class TestOperadSuites:
    def test_terminal(self):
        report = check_operad(terminal_operad(4), pool_size=4)
        assert report.ok, report.format()

    def test_free_rooted_trees(self):
        report = check_operad(free_operad({"m": 2}, 4), pool_size=3)
        assert report.ok, report.format()

    def test_corrupted_unit_gives_u1_witness(self):
        base = free_operad({"m": 2}, 3)

        def bad_unit(x):
            # a structure, but on the wrong singleton
            return model_val("rtree", atom("z"))

        bad = OperadPresentation("rtree-bad-unit", base.carrier, 3, bad_unit, base.compose_fn)
        report = check_operad(bad, pool_size=2)
        assert not report.ok
        violated = report.axioms_violated()
        assert "U1" in violated or "CLOSURE" in violated


class TestExchangeableOutputSuites:
    @pytest.mark.parametrize("make,pool", [(lambda: comm_cyclic(5), 4),
                                           (lambda: cyclic_orders(4), 3),
                                           (lambda: free_cyclic({"g": 3}, 4), 3)])
    def test_rooted_views_pass(self, make, pool):
        p = rooted_view(make())
        report = check_exchangeable_output(p, pool_size=pool)
        assert report.ok, report.format()
        report = check_exchangeable_output_derived(p, pool_size=min(pool, 3))
        assert report.ok, report.format()

    def test_identity_action_on_noncommutative_model_fails_dc2(self):
        base = rooted_view(cyclic_orders(4))

        def ident_dact(x_set, x, f):
            return f

        bad = ExchangeableOutputPresentation("cyc-id-act", base.carrier, base.max_size,
                                             base.unit1, base.compose_fn, ident_dact)
        report = check_exchangeable_output(bad, pool_size=3)
        assert not report.ok
        assert "DC2" in report.axioms_violated()

    def test_corrupted_action_fails_din(self):
        base = rooted_view(cyclic_orders(4))
        x_set = atoms("a", "b")
        f0 = base.carrier.eval(x_set)[0]
        other = base.carrier.eval(x_set)[1]

        def bad_dact(x_set_, x, f):
            if (x_set_, x, f) == (x_set, atom("a"), f0):
                return base.dact_fn(x_set_, atom("b"), other)
            return base.dact_fn(x_set_, x, f)

        bad = ExchangeableOutputPresentation("cyc-bad-act", base.carrier, base.max_size,
                                             base.unit1, base.compose_fn, bad_dact)
        report = check_exchangeable_output(bad, pool_size=2)
        assert not report.ok
        assert report.axioms_violated() & {"DIN", "DEQ", "DEX", "DC1", "DC2"}


class TestDactRenamed:
    def test_same_name_is_plain_action(self):
        p = rooted_view(cyclic_orders(4))
        x_set = atoms("a", "b")
        f = p.carrier.eval(x_set)[0]
        assert dact_renamed(p, x_set, f, atom("a"), atom("a")) is p.dact(x_set, atom("a"), f)

    def test_round_trip(self):
        p = rooted_view(cyclic_orders(4))
        x_set = atoms("a", "b", "c")
        for f in p.carrier.eval(x_set):
            moved = dact_renamed(p, x_set, f, atom("a"), atom("d"))
            back = dact_renamed(p, atoms("b", "c", "d"), moved, atom("d"), atom("a"))
            assert back is f

    def test_two_step_collapse(self):
        p = rooted_view(cyclic_orders(4))
        x_set = atoms("a", "b")
        d = atom("d")
        for f in p.carrier.eval(x_set):
            one = dact_renamed(p, x_set, f, atom("b"), d)
            two = dact_renamed(p, atoms("a", "d"), one, atom("a"), atom("b"))
            direct = dact_renamed(p, x_set, f, atom("a"), d)
            assert two is dact_renamed(p, atoms("b", "d"), direct, d, d) or two is direct

    def test_rejects_collisions(self):
        p = rooted_view(cyclic_orders(4))
        x_set = atoms("a", "b")
        f = p.carrier.eval(x_set)[0]
        with pytest.raises(ValueError):
            dact_renamed(p, x_set, f, atom("a"), atom("b"))


class TestSimultaneousComposition:
    def test_single_input_is_partial_composition(self):
        p = terminal_operad(4)
        x_set = atoms("a")
        f = p.carrier.eval(x_set)[0]
        y_set = atoms("b", "c")
        g = p.carrier.eval(y_set)[0]
        got = simultaneous_composition(p, x_set, f, {atom("a"): (y_set, g)})
        assert got is p.compose(x_set, f, atom("a"), y_set, g)

    def test_all_units_is_a_renaming(self):
        p = free_operad({"m": 2}, 4)
        x_set = atoms("a", "b")
        f = p.carrier.eval(x_set)[0]
        assignment = {atom("a"): (atoms("c"), p.unit1(atom("c"))),
                      atom("b"): (atoms("d"), p.unit1(atom("d")))}
        got = simultaneous_composition(p, x_set, f, assignment)
        from cyclops.labels import bijection

        sigma = bijection(atoms("c", "d"), x_set, {atom("c"): atom("a"), atom("d"): atom("b")})
        assert got is p.carrier.transport(sigma, f)

    def test_fold_order_independence(self):
        p = free_operad({"m": 2}, 5)
        x_set = atoms("a", "b")
        f = p.carrier.eval(x_set)[0]
        ys = (atoms("c", "d"), atoms("e", "f"))
        gs = [p.carrier.eval(y)[0] for y in ys]
        one = simultaneous_composition(p, x_set, f, {atom("a"): (ys[0], gs[0]),
                                                     atom("b"): (ys[1], gs[1])})
        mid1 = p.compose(x_set, f, atom("a"), ys[0], gs[0])
        other = p.compose(atoms("b", "c", "d"), mid1, atom("b"), ys[1], gs[1])
        mid2 = p.compose(x_set, f, atom("b"), ys[1], gs[1])
        swapped = p.compose(atoms("a", "e", "f"), mid2, atom("a"), ys[0], gs[0])
        assert one is other is swapped

    def test_rejects_partial_assignments(self):
        p = terminal_operad(4)
        x_set = atoms("a", "b")
        f = p.carrier.eval(x_set)[0]
        with pytest.raises(ValueError):
            simultaneous_composition(p, x_set, f, {atom("a"): (atoms("c"), p.carrier.eval(atoms("c"))[0])})

    def test_rejects_overlap(self):
        p = terminal_operad(4)
        x_set = atoms("a", "b")
        f = p.carrier.eval(x_set)[0]
        with pytest.raises(ValueError):
            simultaneous_composition(p, x_set, f, {
                atom("a"): (atoms("c"), p.carrier.eval(atoms("c"))[0]),
                atom("b"): (atoms("c"), p.carrier.eval(atoms("c"))[0]),
            })

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from cyclops.labels import (
    Decomposition,
    all_bijections,
    atom,
    atoms,
    atom_pool,
    bijection,
    compose_bijections,
    enumerate_binary_decompositions,
    enumerate_partitions,
    fset,
    identity_bijection,
    parse_label,
    parse_set,
    partial_extension,
    render_label,
    render_set,
    renaming,
    restrict_corestrict,
    star_of,
    subsets,
    transposition,
)

# label generators: atoms, stars over small sets, one nesting level


def label_strategy():
    base = st.sampled_from([atom(c) for c in "abcd"])
    sets0 = st.lists(base, max_size=3).map(fset)
    lab1 = st.one_of(base, sets0.map(star_of))
    sets1 = st.lists(lab1, max_size=3).map(fset)
    return st.one_of(lab1, sets1.map(star_of))


class TestStars:
    def test_star_of_singleton(self):
        x = atoms("a")
        assert star_of(x).base is x

    def test_star_of_empty_not_member(self):
        from cyclops.labels import EMPTY

        assert star_of(EMPTY) not in EMPTY

    def test_nested_star_distinct(self):
        x = atoms("a")
        nested = x.add(star_of(x))
        assert star_of(nested) is not star_of(x)
        assert star_of(nested).base is nested

    @given(st.lists(label_strategy(), max_size=4))
    @settings(max_examples=200, deadline=None)
    def test_star_never_in_base(self, labels):
        x = fset(labels)
        assert star_of(x) not in x

    def test_deterministic(self):
        assert star_of(atoms("a", "b")) is star_of(atoms("b", "a"))


class TestOrder:
    @given(label_strategy(), label_strategy())
    @settings(max_examples=200, deadline=None)
    def test_trichotomy(self, a, b):
        assert (a is b) + (a < b) + (b < a) == 1

    @given(label_strategy(), label_strategy(), label_strategy())
    @settings(max_examples=200, deadline=None)
    def test_transitive(self, a, b, c):
        if a < b and b < c:
            assert a < c

    def test_atoms_before_stars(self):
        assert atom("z") < star_of(atoms("a"))

    def test_stars_before_blocks(self):
        from cyclops.labels import block_ref

        assert star_of(atoms("z")) < block_ref(atoms("a"))


class TestPartialExtension:
    def test_identity(self):
        x = atoms("a")
        ext = partial_extension(identity_bijection(x))
        assert ext.domain is x.with_star()
        assert ext.is_identity()

    def test_named_rename(self):
        sigma = bijection(atoms("b"), atoms("a"), {atom("b"): atom("a")})
        ext = partial_extension(sigma)
        assert ext.apply(atom("b")) is atom("a")
        assert ext.apply(star_of(atoms("b"))) is star_of(atoms("a"))

    def test_functorial_on_two_element_sets(self):
        x, y, z = atoms("a", "b"), atoms("c", "d"), atoms("e", "f")
        for sigma in all_bijections(y, x):
            for tau in all_bijections(z, y):
                lhs = partial_extension(compose_bijections(sigma, tau))
                rhs = compose_bijections(partial_extension(sigma), partial_extension(tau))
                assert lhs is rhs


class TestRestrict:
    def test_identity_restriction(self):
        sigma = identity_bijection(atoms("a", "b"))
        got = restrict_corestrict(sigma, atoms("a"))
        assert got is identity_bijection(atoms("a"))

    def test_preimage(self):
        sigma = bijection(atoms("x", "y"), atoms("a", "b"),
                          {atom("x"): atom("b"), atom("y"): atom("a")})
        got = restrict_corestrict(sigma, atoms("a"))
        assert got.domain is atoms("y")
        assert got.apply(atom("y")) is atom("a")

    def test_full_codomain(self):
        sigma = bijection(atoms("x", "y"), atoms("a", "b"),
                          {atom("x"): atom("b"), atom("y"): atom("a")})
        assert restrict_corestrict(sigma, sigma.codomain) is sigma

    def test_not_a_subset(self):
        sigma = identity_bijection(atoms("a"))
        with pytest.raises(ValueError):
            restrict_corestrict(sigma, atoms("b"))


class TestDecompositions:
    def test_empty(self):
        from cyclops.labels import EMPTY

        assert enumerate_binary_decompositions(EMPTY) == [Decomposition((EMPTY, EMPTY), EMPTY)]

    def test_singleton_order(self):
        x = atoms("a")
        got = enumerate_binary_decompositions(x)
        assert [tuple(d.parts) for d in got] == [(fset(), x), (x, fset())]

    @given(st.integers(min_value=0, max_value=4))
    @settings(deadline=None)
    def test_count_and_validity(self, n):
        x = fset(atom_pool(n))
        got = enumerate_binary_decompositions(x)
        assert len(got) == 2 ** n
        # independent oracle: every membership pattern appears exactly once
        patterns = {tuple(e in d.parts[0] for e in x.elements) for d in got}
        assert len(patterns) == 2 ** n

    def test_overlapping_parts_rejected(self):
        x = atoms("a")
        with pytest.raises(ValueError):
            Decomposition((x, x), x)


def bell(n):
    """Independent partition-count oracle via the recurrence."""
    import math

    if n == 0:
        return 1
    return sum(math.comb(n - 1, k) * bell(k) for k in range(n))


class TestPartitions:
    def test_singleton(self):
        x = atoms("a")
        assert enumerate_partitions(x) == [(x,)]

    def test_two_elements_exact(self):
        got = enumerate_partitions(atoms("a", "b"))
        assert got == [(atoms("a", "b"),), (atoms("a"), atoms("b"))]

    @given(st.integers(min_value=0, max_value=5))
    @settings(deadline=None)
    def test_bell_counts(self, n):
        x = fset(atom_pool(n))
        got = enumerate_partitions(x)
        assert len(got) == bell(n)
        for blocks in got:
            assert all(len(b) > 0 for b in blocks)
            union = [e for b in blocks for e in b]
            assert sorted(union, key=lambda e: e.key) == list(x.elements)


class TestAllBijections:
    def test_identity_only(self):
        assert all_bijections(atoms("a"), atoms("a")) == [identity_bijection(atoms("a"))]

    @pytest.mark.parametrize("n,count", [(2, 2), (3, 6)])
    def test_factorial_counts(self, n, count):
        y = fset(atom_pool(n))
        x = fset([atom(c) for c in "xyz"[:n]])
        got = all_bijections(y, x)
        assert len(got) == count
        assert len(set(got)) == count

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            all_bijections(atoms("a"), atoms("a", "b"))


class TestRenderParse:
    def test_star_render(self):
        assert render_label(star_of(atoms("a", "b"))) == "*{a,b}"

    def test_block_render(self):
        from cyclops.labels import block_ref

        assert render_label(block_ref(atoms("a"))) == "#{a}"

    @given(label_strategy())
    @settings(max_examples=200, deadline=None)
    def test_label_roundtrip(self, lab):
        assert parse_label(render_label(lab)) is lab

    @given(st.lists(label_strategy(), max_size=4))
    @settings(max_examples=200, deadline=None)
    def test_set_roundtrip(self, labels):
        x = fset(labels)
        assert parse_set(render_set(x)) is x

    def test_reject_garbage(self):
        with pytest.raises(ValueError):
            parse_label("A!")
        with pytest.raises(ValueError):
            parse_set("{a,a}")


class TestRenamings:
    def test_renaming_direction(self):
        x = atoms("a", "b")
        sigma = renaming(x, atom("a"), atom("c"))
        assert sigma.domain is atoms("b", "c")
        assert sigma.apply(atom("c")) is atom("a")

    def test_transposition_involution(self):
        x = atoms("a", "b", "c")
        t = transposition(x, atom("a"), atom("c"))
        assert compose_bijections(t, t).is_identity()

    def test_subsets_deterministic(self):
        pool = atom_pool(3)
        got = subsets(pool, 0, 2)
        assert got[0] is fset()
        assert len(got) == 1 + 3 + 3

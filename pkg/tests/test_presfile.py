import pytest

from cyclops.labels import atom, atoms, atom_pool, fset, star_of, subsets
from cyclops.presfile import (
    ParseError,
    PresentationData,
    SemanticError,
    content_id,
    export_entries_only,
    export_exchangeable_output,
    load,
    parse,
    render,
)
from cyclops.presentations import check_entries_only, check_exchangeable_output
from cyclops.species import check_functoriality
from cyclops.translate import eo_to_exo
from cyclops.zoo import comm_cyclic, cyclic_orders, free_cyclic


@pytest.fixture(scope="module")
def cyc_text():
    return render(export_entries_only(cyclic_orders(4)))


@pytest.fixture(scope="module")
def exo_text():
    return render(export_exchangeable_output(eo_to_exo(cyclic_orders(4))))


class TestRoundTrip:
    def test_parse_render_inverse_on_data(self, cyc_text):
        data = parse(cyc_text)
        assert parse(render(data)) == data

    def test_render_parse_bit_exact(self, cyc_text, exo_text):
        assert render(parse(cyc_text)) == cyc_text
        assert render(parse(exo_text)) == exo_text

    @pytest.mark.parametrize("make", [lambda: comm_cyclic(4), lambda: free_cyclic({"g": 3}, 4)])
    def test_all_zoo_exports(self, make):
        text = render(export_entries_only(make()))
        assert render(parse(text)) == text

    def test_reexport_of_loaded_is_identical(self, cyc_text):
        loaded = load(cyc_text, "cyc")
        again = render(export_entries_only(loaded, n_atoms=5))
        assert again == cyc_text


class TestParseErrors:
    def test_missing_header(self):
        with pytest.raises(ParseError):
            parse("version 1\nend\n")

    def test_missing_end(self, cyc_text):
        with pytest.raises(ParseError):
            parse(cyc_text.replace("\nend\n", "\n"))

    def test_unknown_kind(self):
        with pytest.raises(ParseError):
            parse("cyclops-presentation\nversion 1\nkind sideways\nmax-size 2\natoms a b\nend\n")

    def test_bad_row(self, cyc_text):
        with pytest.raises(ParseError):
            parse(cyc_text.replace("end", "compose only two\nend", 1))


class TestSemanticErrors:
    def test_dangling_compose_id(self, cyc_text):
        data = parse(cyc_text)
        row = data.compose[0]
        bad = data.compose[1:] + ((("0" * 12),) + row[1:],)
        broken = PresentationData(data.version, data.kind, data.max_size, data.atoms,
                                  data.structures, data.units, tuple(sorted(bad)),
                                  data.dact, data.transport)
        with pytest.raises(SemanticError):
            load(render(broken), "bad")

    def test_missing_unit(self, cyc_text):
        data = parse(cyc_text)
        broken = PresentationData(data.version, data.kind, data.max_size, data.atoms,
                                  data.structures, data.units[1:], data.compose,
                                  data.dact, data.transport)
        with pytest.raises(SemanticError):
            load(render(broken), "bad")

    def test_missing_transport_rows(self, cyc_text):
        data = parse(cyc_text)
        kept = tuple(r for r in data.transport if r[1] != "swap")
        broken = PresentationData(data.version, data.kind, data.max_size, data.atoms,
                                  data.structures, data.units, data.compose,
                                  data.dact, kept)
        with pytest.raises(SemanticError):
            load(render(broken), "bad")

    def test_missing_compose_row(self, cyc_text):
        data = parse(cyc_text)
        broken = PresentationData(data.version, data.kind, data.max_size, data.atoms,
                                  data.structures, data.units, data.compose[1:],
                                  data.dact, data.transport)
        with pytest.raises(SemanticError):
            load(render(broken), "bad")


class TestLoadedTables:
    def test_counts_match_native(self, cyc_text):
        loaded = load(cyc_text, "cyc")
        native = cyclic_orders(4)
        for n in range(2, 5):
            x = fset(atom_pool(n))
            assert len(loaded.carrier.eval(x)) == len(native.carrier.eval(x))

    def test_functorial(self, cyc_text):
        loaded = load(cyc_text, "cyc")
        assert check_functoriality(loaded.carrier, 3).ok

    def test_axioms_pass(self, cyc_text):
        loaded = load(cyc_text, "cyc")
        r = check_entries_only(loaded, pool_size=3)
        assert r.ok, r.format()

    def test_star_set_extension(self, cyc_text):
        loaded = load(cyc_text, "cyc")
        x = atoms("a", "b")
        starred = x.with_star()
        assert len(loaded.carrier.eval(starred)) == 2

    def test_star_composition_matches_native(self, cyc_text):
        # compositions at fresh-star entries go through the renormalization path
        loaded = load(cyc_text, "cyc")
        native = cyclic_orders(4)
        x = atoms("a", "b")
        starred = x.with_star()
        y = atoms("c").with_star()
        lv = loaded.carrier.eval(starred)
        nv = native.carrier.eval(starred)
        got = loaded.compose2(starred, lv[0], star_of(x), y, loaded.carrier.eval(y)[0], star_of(atoms("c")))
        expect = native.compose2(starred, nv[0], star_of(x), y, native.carrier.eval(y)[0], star_of(atoms("c")))
        assert got.payload[-1].render() == "c" or len(got.payload) == 4
        out = x.union(atoms("c"))
        assert got in loaded.carrier.members(out)
        assert expect in native.carrier.members(out)

    def test_exo_table_passes(self, exo_text):
        loaded = load(exo_text, "cyc-exo")
        r = check_exchangeable_output(loaded, pool_size=3)
        assert r.ok, r.format()

    def test_corrupt_compose_row_fails_checks(self, cyc_text):
        data = parse(cyc_text)
        rows = list(data.compose)
        # redirect one row, within the checked pool, to a same-set sibling
        pool_atoms = set("abcd")
        homes = {sid: set_r for set_r, sid, _ in data.structures}
        by_set = {}
        for set_r, sid, _ in data.structures:
            by_set.setdefault(set_r, []).append(sid)

        def in_pool(sid):
            return set(homes[sid]).issubset(pool_atoms | set("{},"))

        for i, row in enumerate(rows):
            fid, xl, gid, yl, hid = row
            if not (xl in pool_atoms and yl in pool_atoms):
                continue
            if not (in_pool(fid) and in_pool(gid) and in_pool(hid)):
                continue
            siblings = [s for s in by_set[homes[hid]] if s != hid]
            if siblings:
                rows[i] = row[:4] + (siblings[0],)
                break
        broken = PresentationData(data.version, data.kind, data.max_size, data.atoms,
                                  data.structures, data.units, tuple(sorted(rows)),
                                  data.dact, data.transport)
        loaded = load(render(broken), "bad")
        r = check_entries_only(loaded, pool_size=4)
        assert not r.ok

    def test_corrupt_transport_row_caught(self, cyc_text):
        data = parse(cyc_text)
        rows = list(data.transport)
        for i, row in enumerate(rows):
            set_r, op, l1, l2, sid, tid = row
            if op == "swap" and sid != tid and set(set_r).issubset(set("abc{},")):
                rows[i] = (set_r, op, l1, l2, sid, sid)
                break
        broken = PresentationData(data.version, data.kind, data.max_size, data.atoms,
                                  data.structures, data.units, data.compose,
                                  data.dact, tuple(sorted(rows)))
        loaded = load(render(broken), "bad")
        merged = check_functoriality(loaded.carrier, 3)
        merged.merge(check_entries_only(loaded, pool_size=3))
        assert not merged.ok


class TestIds:
    def test_content_hash_stable(self):
        assert content_id("cyc(a,b)") == content_id("cyc(a,b)")
        assert len(content_id("x")) == 12

    def test_ids_match_forms(self, cyc_text):
        data = parse(cyc_text)
        for _, sid, form in data.structures:
            assert sid == content_id(form)

"""Line-oriented presentation files and the tabulated species they define.

A file lists, over a fixed atom pool: the structures on every set in range,
the unit table, the composition table, optionally the output-exchange table,
and transport tables for generator bijections (adjacent transpositions of
each set plus one renaming per applicable atom pair).  Structure ids are
content hashes of canonical forms.  Rendering is canonical, so parse and
render are mutually inverse, byte for byte, on rendered files.
"""
from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass, field

from cyclops.labels import (
    Bijection,
    FiniteSet,
    Label,
    atom,
    bijection,
    fset,
    parse_label,
    parse_set,
    subsets,
)
from cyclops.presentations import EntriesOnlyPresentation, ExchangeableOutputPresentation
from cyclops.species import ModelVal, Species, StructureValue, base_species, model_val


class ParseError(ValueError):
    """Malformed file text."""


class SemanticError(ValueError):
    """Well-formed text with dangling references or incomplete tables."""


def content_id(form: str) -> str:
    return hashlib.sha256(form.encode()).hexdigest()[:12]


@dataclass(frozen=True)
class PresentationData:
    """Normalized in-memory image of one presentation file."""

    version: int
    kind: str
    max_size: int
    atoms: tuple[str, ...]
    structures: tuple[tuple[str, str, str], ...]  # (set, id, form)
    units: tuple[tuple[str, str], ...]  # (set, id)
    compose: tuple[tuple[str, str, str, str, str], ...]  # (id, label, id, label|-, id)
    dact: tuple[tuple[str, str, str], ...] = field(default=())  # (label, id, id)
    transport: tuple[tuple[str, str, str, str, str, str], ...] = field(default=())
    # (set, swap|rename, label, label, id, id)


KINDS = ("entries-only", "exchangeable-output")


def render(data: PresentationData) -> str:
    lines = ["cyclops-presentation", f"version {data.version}", f"kind {data.kind}",
             f"max-size {data.max_size}", "atoms " + " ".join(data.atoms)]
    for set_r, sid, form in sorted(data.structures):
        lines.append(f"structure {set_r} {sid} {form}")
    for set_r, sid in sorted(data.units):
        lines.append(f"unit {set_r} {sid}")
    for row in sorted(data.compose):
        lines.append("compose " + " ".join(row))
    for row in sorted(data.dact):
        lines.append("dact " + " ".join(row))
    for row in sorted(data.transport):
        lines.append("transport " + " ".join(row))
    lines.append("end")
    return "\n".join(lines) + "\n"


def parse(text: str) -> PresentationData:
    lines = [ln for ln in text.splitlines()]
    body = [ln.strip() for ln in lines if ln.strip()]
    if not body or body[0] != "cyclops-presentation":
        raise ParseError("missing presentation header")
    if body[-1] != "end":
        raise ParseError("missing end marker")
    version = kind = max_size = None
    atoms_: tuple[str, ...] | None = None
    structures, units, compose, dact, transport = [], [], [], [], []
    for ln in body[1:-1]:
        fields = ln.split()
        tag = fields[0]
        try:
            if tag == "version":
                version = int(fields[1])
            elif tag == "kind":
                kind = fields[1]
                if kind not in KINDS:
                    raise ParseError(f"unknown kind {kind!r}")
            elif tag == "max-size":
                max_size = int(fields[1])
            elif tag == "atoms":
                atoms_ = tuple(fields[1:])
            elif tag == "structure":
                set_r, sid = fields[1], fields[2]
                form = ln.split(None, 3)[3]
                structures.append((set_r, sid, form))
            elif tag == "unit":
                units.append((fields[1], fields[2]))
            elif tag == "compose":
                if len(fields) != 6:
                    raise ParseError(f"bad compose row: {ln!r}")
                compose.append(tuple(fields[1:]))
            elif tag == "dact":
                if len(fields) != 4:
                    raise ParseError(f"bad dact row: {ln!r}")
                dact.append(tuple(fields[1:]))
            elif tag == "transport":
                if len(fields) != 7 or fields[2] not in ("swap", "rename"):
                    raise ParseError(f"bad transport row: {ln!r}")
                transport.append(tuple(fields[1:]))
            else:
                raise ParseError(f"unknown row tag {tag!r}")
        except (IndexError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"malformed row: {ln!r}") from exc
    if version is None or kind is None or max_size is None or atoms_ is None:
        raise ParseError("missing header field (version, kind, max-size, atoms)")
    for set_r, _, _ in structures:
        parse_set(set_r)
    return PresentationData(version, kind, max_size, atoms_,
                            tuple(sorted(structures)), tuple(sorted(units)),
                            tuple(sorted(compose)), tuple(sorted(dact)),
                            tuple(sorted(transport)))


# ---------------------------------------------------------------------------
# the species defined by a loaded table


_token_counter = itertools.count()
_tables: dict[str, "TabulatedSpecies"] = {}


def _form_of(value: StructureValue) -> str:
    """Canonical form of a structure; loaded values keep their file form."""
    if isinstance(value, ModelVal) and value.tag == "tab":
        tab = _tables.get(value.payload[0])
        if tab is not None:
            sid = value.payload[1]
            carrier = fset(value.payload[2:])
            if tab.set_of.get(sid) is carrier:
                return tab.forms[sid]
    return value.render()


class TabulatedSpecies:
    """Structures and transports given by finite tables over an atom pool.

    Evaluation at unlisted sets (stars, for instance) relabels the canonical
    prefix set of the same size along the order-preserving bijection, and
    transports conjugate through the table on generator paths.
    """

    def __init__(self, data: PresentationData):
        self.data = data
        self.token = f"t{next(_token_counter)}"
        _tables[self.token] = self
        self.atoms = [atom(a) for a in data.atoms]
        self.max_size = data.max_size
        lo = 2 if data.kind == "entries-only" else 1
        self.lo = lo
        self.table: dict[FiniteSet, tuple[str, ...]] = {
            x: () for x in subsets(self.atoms, lo, data.max_size)
        }
        self.forms: dict[str, str] = {}
        self.set_of: dict[str, FiniteSet] = {}
        for set_r, sid, form in data.structures:
            x = parse_set(set_r)
            if x not in self.table:
                raise SemanticError(f"structure set {set_r} out of range")
            if sid in self.forms:
                raise SemanticError(f"duplicate structure id {sid}")
            self.table[x] = self.table[x] + (sid,)
            self.forms[sid] = form
            self.set_of[sid] = x
        self.table = {x: tuple(sorted(ids)) for x, ids in self.table.items()}
        self.swap_rows: dict[tuple, dict[str, str]] = {}
        self.rename_rows: dict[tuple, dict[str, str]] = {}
        for set_r, op, l1, l2, sid, tid in data.transport:
            x = parse_set(set_r)
            a, b = parse_label(l1), parse_label(l2)
            for ref in (sid, tid):
                if ref not in self.forms:
                    raise SemanticError(f"transport row references unknown id {ref}")
            rows = self.swap_rows if op == "swap" else self.rename_rows
            rows.setdefault((x, a, b), {})[sid] = tid
        self._check_transport_totality()
        self.species = self._build_species()

    # -- validation

    def _check_transport_totality(self):
        for x, ids in self.table.items():
            if not ids:
                continue
            elems = x.elements
            for i in range(len(elems) - 1):
                key = (x, elems[i], elems[i + 1])
                got = self.swap_rows.get(key, {})
                if set(got) != set(ids):
                    raise SemanticError(f"incomplete swap table for {x.render()} "
                                        f"at {elems[i].render()},{elems[i + 1].render()}")
                self._check_row_targets(got, x)
            for a in elems:
                for b in self.atoms:
                    if b in x:
                        continue
                    target = x.without(a).add(b)
                    if target not in self.table:
                        continue
                    key = (x, a, b)
                    got = self.rename_rows.get(key, {})
                    if set(got) != set(ids):
                        raise SemanticError(f"incomplete rename table for {x.render()} "
                                            f"at {a.render()}->{b.render()}")
                    for tid in got.values():
                        if self.set_of.get(tid) is not target:
                            raise SemanticError(f"rename row lands on wrong set: {tid}")

    def _check_row_targets(self, rows: dict[str, str], x: FiniteSet):
        for tid in rows.values():
            if self.set_of.get(tid) is not x:
                raise SemanticError(f"swap row lands on wrong set: {tid}")

    # -- values

    def value(self, x: FiniteSet, sid: str) -> ModelVal:
        return model_val("tab", (self.token, sid) + x.elements)

    def id_of(self, v: ModelVal) -> str:
        return v.payload[1]

    def _prefix_set(self, n: int) -> FiniteSet:
        if n > len(self.atoms):
            raise SemanticError(f"no listed set of size {n}")
        return fset(self.atoms[:n])

    def _can(self, w: FiniteSet) -> Bijection:
        target = self._prefix_set(len(w))
        return bijection(w, target, dict(zip(w.elements, target.elements)))

    # -- transports on the listed groupoid

    def _apply_renames(self, sid: str, src: FiniteSet, dst: FiniteSet) -> tuple[str, Bijection]:
        """Move a structure from src to dst by single-atom renames; returns the
        realized bijection dst -> src."""
        current, cid = src, sid
        realized: list[Bijection] = []
        removals = [e for e in src.elements if e not in dst]
        additions = [e for e in dst.elements if e not in src]
        for a, b in zip(removals, additions):
            key = (current, a, b)
            if key not in self.rename_rows or cid not in self.rename_rows[key]:
                raise SemanticError(f"missing rename row {current.render()} {a.render()}->{b.render()}")
            cid = self.rename_rows[key][cid]
            nxt = current.without(a).add(b)
            forward = {e: e for e in current.without(a)}
            forward[b] = a
            realized.append(bijection(nxt, current, forward))
            current = nxt
        tau = None
        for sig in realized:
            tau = sig if tau is None else _compose(tau, sig)
        if tau is None:
            from cyclops.labels import identity_bijection

            tau = identity_bijection(src)
        return cid, tau

    def _apply_perm(self, sid: str, x: FiniteSet, perm: Bijection) -> str:
        """Move a structure along a self-bijection of a listed set.

        Factors the permutation into adjacent transpositions applied on the
        value side, so the row applications compose contravariantly to the
        requested permutation.
        """
        elems = x.elements
        position = {}
        for i, z in enumerate(elems):
            position[perm.forward[z]] = i
        cid = sid
        while True:
            inverted = None
            for i in range(len(elems) - 1):
                u, w = elems[i], elems[i + 1]
                if position[u] > position[w]:
                    inverted = (u, w)
                    break
            if inverted is None:
                break
            u, w = inverted
            key = (x, u, w)
            if key not in self.swap_rows or cid not in self.swap_rows[key]:
                raise SemanticError(f"missing swap row for {x.render()}")
            cid = self.swap_rows[key][cid]
            position[u], position[w] = position[w], position[u]
        return cid

    def listed_transport(self, sigma: Bijection, sid: str) -> str:
        src, dst = sigma.codomain, sigma.domain
        cid, tau = self._apply_renames(sid, src, dst)
        perm = _compose(tau.inverse(), sigma)
        return self._apply_perm(cid, dst, perm)

    # -- the species

    def _build_species(self) -> Species:
        tab = self

        def ev(w: FiniteSet):
            n = len(w)
            if n < tab.lo or n > tab.max_size:
                return ()
            if w in tab.table:
                return [tab.value(w, sid) for sid in tab.table[w]]
            prefix = tab._prefix_set(n)
            return [tab.value(w, sid) for sid in tab.table[prefix]]

        def tr(sigma: Bijection, v: ModelVal):
            w1, w2 = sigma.codomain, sigma.domain
            sid = tab.id_of(v)
            listed1, listed2 = w1 in tab.table, w2 in tab.table
            if listed1 and listed2:
                return tab.value(w2, tab.listed_transport(sigma, sid))
            if listed1:
                route = _compose(sigma, tab._can(w2).inverse())
                return tab.value(w2, tab.listed_transport(route, sid))
            if listed2:
                route = _compose(tab._can(w1), sigma)
                return tab.value(w2, tab.listed_transport(route, sid))
            route = _compose(tab._can(w1), _compose(sigma, tab._can(w2).inverse()))
            return tab.value(w2, tab.listed_transport(route, sid))

        return base_species(f"tab:{self.token}", ev, tr)


def _compose(sigma: Bijection, tau: Bijection) -> Bijection:
    from cyclops.labels import compose_bijections

    return compose_bijections(sigma, tau)


# ---------------------------------------------------------------------------
# loaded presentations


def _normalize_instance(tab: TabulatedSpecies, x_set: FiniteSet, x: Label,
                        y_set: FiniteSet, y: Label):
    """Bijections onto listed sets sharing only the composition points."""
    m, k = len(x_set), len(y_set)
    if m + k - 1 > len(tab.atoms):
        raise SemanticError("atom pool too small to normalize a starred instance")
    ax = [tab.atoms[0]] + tab.atoms[1:m]
    ay = [tab.atoms[0]] + tab.atoms[m:m + k - 1]
    x0, y0 = fset(ax), fset(ay)
    s1 = bijection(x0, x_set, dict(zip(ax, [x] + [e for e in x_set.elements if e is not x])))
    s2 = bijection(y0, y_set, dict(zip(ay, [y] + [e for e in y_set.elements if e is not y])))
    return s1, s2


class LoadedEntriesOnly(EntriesOnlyPresentation):
    def __init__(self, name: str, data: PresentationData):
        if data.kind != "entries-only":
            raise SemanticError(f"expected an entries-only file, found {data.kind}")
        tab = TabulatedSpecies(data)
        self.tab = tab
        units: dict[FiniteSet, str] = {}
        for set_r, sid in data.units:
            two = parse_set(set_r)
            if sid not in tab.forms:
                raise SemanticError(f"unit references unknown id {sid}")
            if len(two) != 2 or tab.set_of[sid] is not two:
                raise SemanticError(f"unit row is not a structure on {set_r}")
            units[two] = sid
        for two in subsets(tab.atoms, 2, 2):
            if two not in units:
                raise SemanticError(f"missing unit for {two.render()}")
        rows: dict[tuple, str] = {}
        for fid, xl, gid, yl, hid in data.compose:
            for ref in (fid, gid, hid):
                if ref not in tab.forms:
                    raise SemanticError(f"compose row references unknown id {ref}")
            rows[(fid, parse_label(xl), gid, parse_label(yl))] = hid
        self._rows = rows
        self._units = units
        _check_compose_totality_eo(tab, rows)

        def unit2(two: FiniteSet) -> StructureValue:
            if len(two) != 2:
                raise ValueError("units live on two-element sets")
            if two in self._units:
                return tab.value(two, self._units[two])
            base = fset(tab.atoms[:2])
            u0 = tab.value(base, self._units[base])
            sigma = bijection(two, base, dict(zip(two.elements, base.elements)))
            return tab.species.transport(sigma, u0)

        def compose2(x_set, f, x, y_set, g, y):
            if x not in x_set or y not in y_set:
                raise ValueError("composition point must belong to the operation's entries")
            if not x_set.without(x).isdisjoint(y_set.without(y)):
                raise ValueError("remaining entry sets are not disjoint")
            key = (tab.id_of(f), x, tab.id_of(g), y)
            if x_set in tab.table and y_set in tab.table and key in self._rows:
                hid = self._rows[key]
                return tab.value(tab.set_of[hid], hid)
            s1, s2 = _normalize_instance(tab, x_set, x, y_set, y)
            f0 = tab.species.transport(s1, f)
            g0 = tab.species.transport(s2, g)
            x0, y0 = s1.domain.min_label(), s2.domain.min_label()
            key0 = (tab.id_of(f0), x0, tab.id_of(g0), y0)
            if key0 not in self._rows:
                raise SemanticError(f"missing compose row for normalized instance {key0}")
            hid = self._rows[key0]
            h0 = tab.value(tab.set_of[hid], hid)
            from cyclops.labels import restrict_corestrict, union_bijection

            sig = union_bijection(restrict_corestrict(s1, x_set.without(x)),
                                  restrict_corestrict(s2, y_set.without(y)))
            return tab.species.transport(sig.inverse(), h0)

        super().__init__(name, tab.species, data.max_size, unit2, compose2)


def _check_compose_totality_eo(tab: TabulatedSpecies, rows: dict):
    for x_set, ids in tab.table.items():
        for y_set, jds in tab.table.items():
            for x in x_set:
                if len(x_set.without(x)) + len(y_set) - 1 > tab.max_size:
                    continue
                for y in y_set:
                    if not x_set.without(x).isdisjoint(y_set.without(y)):
                        continue
                    for fid in ids:
                        for gid in jds:
                            if (fid, x, gid, y) not in rows:
                                raise SemanticError(
                                    f"missing compose row {fid} {x.render()} {gid} {y.render()}")


class LoadedExchangeableOutput(ExchangeableOutputPresentation):
    def __init__(self, name: str, data: PresentationData):
        if data.kind != "exchangeable-output":
            raise SemanticError(f"expected an exchangeable-output file, found {data.kind}")
        tab = TabulatedSpecies(data)
        self.tab = tab
        units: dict[FiniteSet, str] = {}
        for set_r, sid in data.units:
            one = parse_set(set_r)
            if sid not in tab.forms:
                raise SemanticError(f"unit references unknown id {sid}")
            if len(one) != 1 or tab.set_of[sid] is not one:
                raise SemanticError(f"unit row is not a structure on {set_r}")
            units[one] = sid
        for one in subsets(tab.atoms, 1, 1):
            if one not in units:
                raise SemanticError(f"missing unit for {one.render()}")
        rows: dict[tuple, str] = {}
        for fid, xl, gid, yl, hid in data.compose:
            if yl != "-":
                raise SemanticError("exchangeable-output compose rows use '-' in the fourth slot")
            for ref in (fid, gid, hid):
                if ref not in tab.forms:
                    raise SemanticError(f"compose row references unknown id {ref}")
            rows[(fid, parse_label(xl), gid)] = hid
        drows: dict[tuple, str] = {}
        for xl, fid, tid in data.dact:
            for ref in (fid, tid):
                if ref not in tab.forms:
                    raise SemanticError(f"dact row references unknown id {ref}")
            drows[(parse_label(xl), fid)] = tid
        self._rows, self._drows, self._units = rows, drows, units
        _check_compose_totality_exo(tab, rows)
        _check_dact_totality(tab, drows)

        def unit1(x: Label) -> StructureValue:
            one = fset([x])
            if one in self._units:
                return tab.value(one, self._units[one])
            base = fset(tab.atoms[:1])
            u0 = tab.value(base, self._units[base])
            sigma = bijection(one, base, {x: tab.atoms[0]})
            return tab.species.transport(sigma, u0)

        def compose(x_set, f, x, y_set, g):
            if x not in x_set:
                raise ValueError("composition point must belong to the operation's inputs")
            if not x_set.without(x).isdisjoint(y_set):
                raise ValueError("input sets are not disjoint")
            key = (tab.id_of(f), x, tab.id_of(g))
            if x_set in tab.table and y_set in tab.table and key in self._rows:
                hid = self._rows[key]
                return tab.value(tab.set_of[hid], hid)
            m, k = len(x_set), len(y_set)
            if m + k > len(tab.atoms):
                raise SemanticError("atom pool too small to normalize a starred instance")
            ax = tab.atoms[:m]
            ay = tab.atoms[m:m + k]
            s1 = bijection(fset(ax), x_set, dict(zip(ax, [x] + [e for e in x_set.elements if e is not x])))
            s2 = bijection(fset(ay), y_set, dict(zip(ay, y_set.elements)))
            f0 = tab.species.transport(s1, f)
            g0 = tab.species.transport(s2, g)
            key0 = (tab.id_of(f0), ax[0], tab.id_of(g0))
            if key0 not in self._rows:
                raise SemanticError(f"missing compose row for normalized instance {key0}")
            hid = self._rows[key0]
            h0 = tab.value(tab.set_of[hid], hid)
            from cyclops.labels import restrict_corestrict, union_bijection

            sig = union_bijection(restrict_corestrict(s1, x_set.without(x)), s2)
            return tab.species.transport(sig.inverse(), h0)

        def dact(x_set, x, f):
            key = (x, tab.id_of(f))
            if x_set in tab.table and key in self._drows:
                tid = self._drows[key]
                return tab.value(tab.set_of[tid], tid)
            prefix = tab._prefix_set(len(x_set))
            mapping = dict(zip([x] + [e for e in x_set.elements if e is not x],
                               prefix.elements))
            s1 = bijection(prefix, x_set, {mapping[e]: e for e in x_set.elements})
            f0 = tab.species.transport(s1, f)
            key0 = (tab.atoms[0], tab.id_of(f0))
            if key0 not in self._drows:
                raise SemanticError(f"missing dact row for normalized instance {key0}")
            tid = self._drows[key0]
            t0 = tab.value(tab.set_of[tid], tid)
            return tab.species.transport(s1.inverse(), t0)

        super().__init__(name, tab.species, data.max_size, unit1, compose, dact)


def _check_compose_totality_exo(tab: TabulatedSpecies, rows: dict):
    for x_set, ids in tab.table.items():
        for y_set, jds in tab.table.items():
            for x in x_set:
                if len(x_set.without(x)) + len(y_set) > tab.max_size:
                    continue
                if not x_set.without(x).isdisjoint(y_set):
                    continue
                for fid in ids:
                    for gid in jds:
                        if (fid, x, gid) not in rows:
                            raise SemanticError(f"missing compose row {fid} {x.render()} {gid}")


def _check_dact_totality(tab: TabulatedSpecies, drows: dict):
    for x_set, ids in tab.table.items():
        for x in x_set:
            for fid in ids:
                if (x, fid) not in drows:
                    raise SemanticError(f"missing dact row {x.render()} {fid}")


def load(text: str, name: str = "loaded"):
    data = parse(text)
    if data.kind == "entries-only":
        return LoadedEntriesOnly(name, data)
    return LoadedExchangeableOutput(name, data)


# ---------------------------------------------------------------------------
# export


def export_entries_only(p: EntriesOnlyPresentation, n_atoms: int | None = None) -> PresentationData:
    """Tabulate an entries-only presentation over a fresh atom pool.

    The pool holds one atom more than the size bound so that loaded tables
    can renormalize instances whose sets carry stars.
    """
    from cyclops.labels import atom_pool

    pool = atom_pool(n_atoms if n_atoms is not None else p.max_size + 1)
    ids: dict[StructureValue, str] = {}
    structures = []
    sets_ = subsets(pool, 2, p.max_size)
    for x in sets_:
        for v in p.carrier.eval(x):
            form = _form_of(v)
            sid = content_id(form)
            if v in ids:
                raise SemanticError("duplicate structure while exporting")
            ids[v] = sid
            structures.append((x.render(), sid, form))
    units = []
    for two in subsets(pool, 2, 2):
        units.append((two.render(), ids[p.unit2(two)]))
    compose_rows = set()
    for x_set in sets_:
        for y_set in sets_:
            for x in x_set:
                if len(x_set.without(x)) + len(y_set) - 1 > p.max_size:
                    continue
                for y in y_set:
                    if not x_set.without(x).isdisjoint(y_set.without(y)):
                        continue
                    for f in p.carrier.eval(x_set):
                        for g in p.carrier.eval(y_set):
                            h = p.compose2(x_set, f, x, y_set, g, y)
                            compose_rows.add((ids[f], x.render(), ids[g], y.render(), ids[h]))
    transport = _transport_rows(p.carrier, sets_, pool, ids)
    return PresentationData(1, "entries-only", p.max_size, tuple(a.name for a in pool),
                            tuple(sorted(structures)), tuple(sorted(units)),
                            tuple(sorted(compose_rows)), (), tuple(sorted(transport)))


def export_exchangeable_output(p: ExchangeableOutputPresentation,
                               n_atoms: int | None = None) -> PresentationData:
    from cyclops.labels import atom_pool

    pool = atom_pool(n_atoms if n_atoms is not None else p.max_size + 1)
    ids: dict[StructureValue, str] = {}
    structures = []
    sets_ = subsets(pool, 1, p.max_size)
    for x in sets_:
        for v in p.carrier.eval(x):
            form = _form_of(v)
            sid = content_id(form)
            if v in ids:
                raise SemanticError("duplicate structure while exporting")
            ids[v] = sid
            structures.append((x.render(), sid, form))
    units = []
    for one in subsets(pool, 1, 1):
        (lab,) = one.elements
        units.append((one.render(), ids[p.unit1(lab)]))
    compose_rows = set()
    for x_set in sets_:
        for y_set in sets_:
            for x in x_set:
                if len(x_set.without(x)) + len(y_set) > p.max_size:
                    continue
                if not x_set.without(x).isdisjoint(y_set):
                    continue
                for f in p.carrier.eval(x_set):
                    for g in p.carrier.eval(y_set):
                        h = p.compose(x_set, f, x, y_set, g)
                        compose_rows.add((ids[f], x.render(), ids[g], "-", ids[h]))
    dact_rows = set()
    for x_set in sets_:
        for x in x_set:
            for f in p.carrier.eval(x_set):
                dact_rows.add((x.render(), ids[f], ids[p.dact(x_set, x, f)]))
    transport = _transport_rows(p.carrier, sets_, pool, ids)
    return PresentationData(1, "exchangeable-output", p.max_size, tuple(a.name for a in pool),
                            tuple(sorted(structures)), tuple(sorted(units)),
                            tuple(sorted(compose_rows)), tuple(sorted(dact_rows)),
                            tuple(sorted(transport)))


def _transport_rows(carrier: Species, sets_, pool, ids) -> set:
    from cyclops.labels import renaming, transposition

    rows = set()
    for x in sets_:
        values = carrier.eval(x)
        elems = x.elements
        for i in range(len(elems) - 1):
            sigma = transposition(x, elems[i], elems[i + 1])
            for v in values:
                rows.add((x.render(), "swap", elems[i].render(), elems[i + 1].render(),
                          ids[v], ids[carrier.transport(sigma, v)]))
        for a in elems:
            for b in pool:
                if b in x:
                    continue
                sigma = renaming(x, a, b)
                target = x.without(a).add(b)
                if target not in sets_:
                    continue
                for v in values:
                    rows.add((x.render(), "rename", a.render(), b.render(),
                              ids[v], ids[carrier.transport(sigma, v)]))
    return rows

"""Concrete finite cyclic operads and operads used to exercise every checker.

Each model's composition has two independent implementations (positional
versus adjacency-style); tests cross-check them against each other.
"""
from __future__ import annotations

import itertools

from cyclops.labels import (
    Bijection,
    FiniteSet,
    Label,
    enumerate_partitions,
    fset,
    star_of,
)
from cyclops.presentations import (
    EntriesOnlyPresentation,
    ExchangeableOutputPresentation,
    OperadPresentation,
)
from cyclops.species import (
    ModelVal,
    Species,
    StructureValue,
    _registered,
    model_val,
    species_E_at_least,
    whole,
    derivative,
)

# ---------------------------------------------------------------------------
# the one-structure-per-set model


def comm_species() -> Species:
    return species_E_at_least(2)


def comm_cyclic(max_size: int = 5) -> EntriesOnlyPresentation:
    """Terminal constant-free cyclic operad: one operation per set of size >= 2."""
    carrier = comm_species()

    def unit2(two: FiniteSet) -> StructureValue:
        if len(two) != 2:
            raise ValueError("units live on two-element sets")
        return whole(two)

    def compose2(x_set, f, x, y_set, g, y):
        _check_compose2(x_set, f, x, y_set, g, y)
        return whole(x_set.without(x).union(y_set.without(y)))

    return EntriesOnlyPresentation("comm", carrier, max_size, unit2, compose2)


def _check_compose2(x_set: FiniteSet, f, x: Label, y_set: FiniteSet, g, y: Label):
    if x not in x_set or y not in y_set:
        raise ValueError("composition point must belong to the operation's entries")
    if not x_set.without(x).isdisjoint(y_set.without(y)):
        raise ValueError("remaining entry sets are not disjoint")


# ---------------------------------------------------------------------------
# cyclic orders


def _canon_cycle(seq: tuple[Label, ...]) -> tuple[Label, ...]:
    i = min(range(len(seq)), key=lambda k: seq[k].key)
    return seq[i:] + seq[:i]


def cyc_species() -> Species:
    def make():
        def ev(x: FiniteSet):
            if len(x) < 2:
                return ()
            first, rest = x.elements[0], x.elements[1:]
            return [model_val("cyc", (first,) + p) for p in itertools.permutations(rest)]

        def tr(sigma: Bijection, v: ModelVal):
            return model_val("cyc", _canon_cycle(tuple(sigma.backward[l] for l in v.payload)))

        return ev, tr

    return _registered("cyc", make)


def splice_positional(fw: tuple, x: Label, gw: tuple, y: Label) -> tuple:
    """Replace x in f's cycle by g's cycle read from just after y."""
    i = fw.index(x)
    j = gw.index(y)
    return _canon_cycle(fw[:i] + gw[j + 1:] + gw[:j] + fw[i + 1:])


def splice_successors(fw: tuple, x: Label, gw: tuple, y: Label) -> tuple:
    """Same splice computed on successor maps; the independent oracle."""
    succ_f = {fw[i]: fw[(i + 1) % len(fw)] for i in range(len(fw))}
    succ_g = {gw[i]: gw[(i + 1) % len(gw)] for i in range(len(gw))}
    succ = {}
    for a in fw:
        if a is x:
            continue
        nxt = succ_f[a]
        succ[a] = nxt if nxt is not x else succ_g[y]
    for b in gw:
        if b is y:
            continue
        nxt = succ_g[b]
        succ[b] = nxt if nxt is not y else succ_f[x]
    start = min(succ, key=lambda l: l.key)
    out, cur = [start], succ[start]
    while cur is not start:
        out.append(cur)
        cur = succ[cur]
    return tuple(out)


def cyclic_orders(max_size: int = 4) -> EntriesOnlyPresentation:
    """Cyclic orders with splice composition; carrier counts are (n-1)!."""
    carrier = cyc_species()

    def unit2(two: FiniteSet) -> StructureValue:
        if len(two) != 2:
            raise ValueError("units live on two-element sets")
        return model_val("cyc", two.elements)

    def compose2(x_set, f: ModelVal, x, y_set, g: ModelVal, y):
        _check_compose2(x_set, f, x, y_set, g, y)
        return model_val("cyc", splice_positional(f.payload, x, g.payload, y))

    return EntriesOnlyPresentation("cyc", carrier, max_size, unit2, compose2)


# ---------------------------------------------------------------------------
# unrooted trees with decorated vertices (free model)


def _node(gen: str, children: tuple) -> tuple:
    from cyclops.species import _payload_key

    return ("n", gen) + tuple(sorted(children, key=_payload_key))


def _is_node(enc) -> bool:
    return isinstance(enc, tuple) and enc and enc[0] == "n"


def _dangler_leaves(enc) -> set[Label]:
    if not _is_node(enc):
        return {enc}
    out = set()
    for child in enc[2:]:
        out |= _dangler_leaves(child)
    return out


def _normalize(enc):
    if not _is_node(enc):
        return enc
    return _node(enc[1], tuple(_normalize(c) for c in enc[2:]))


def _relabel(enc, mapping):
    if not _is_node(enc):
        return mapping[enc]
    return _node(enc[1], tuple(_relabel(c, mapping) for c in enc[2:]))


def _pull_up(enc, target: Label, attach):
    """Reroot: the dangler below ``target`` once edge(enc, attach) is rerooted."""
    if not _is_node(enc):
        if enc is not target:
            raise ValueError("leaf not found while rerooting")
        return attach
    for i, child in enumerate(enc[2:]):
        if target in _dangler_leaves(child):
            rest = enc[2:][:i] + enc[2:][i + 1:]
            return _pull_up(child, target, _node(enc[1], rest + (attach,)))
    raise ValueError("leaf not found while rerooting")


def _canon_edge(d1, d2) -> tuple:
    """Canonical unrooted form of the tree joining danglers d1 and d2."""
    leaves = _dangler_leaves(d1) | _dangler_leaves(d2)
    m = min(leaves, key=lambda l: l.key)
    if m in _dangler_leaves(d1):
        inside, outside = d1, d2
    else:
        inside, outside = d2, d1
    if not _is_node(inside):
        return ("r", m, _normalize(outside))
    return ("r", m, _normalize(_pull_up(inside, m, outside)))


def _rooted_danglers(leaves: FiniteSet, signature: dict[str, int]) -> list:
    if len(leaves) == 1:
        return [leaves.elements[0]]
    out = []
    for gen, arity in sorted(signature.items()):
        parts = arity - 1
        if parts < 2 or parts > len(leaves):
            continue
        for blocks in enumerate_partitions(leaves):
            if len(blocks) != parts:
                continue
            for combo in itertools.product(*[_rooted_danglers(b, signature) for b in blocks]):
                out.append(_node(gen, combo))
    return out


def tree_species(signature: dict[str, int], size_cap: int) -> Species:
    sig_name = ",".join(f"{g}:{a}" for g, a in sorted(signature.items()))

    def make():
        def ev(x: FiniteSet):
            if len(x) < 2 or len(x) > size_cap:
                return ()
            m = x.elements[0]
            rest = x.without(m)
            out = []
            if len(x) == 2:
                out.append(model_val("tree", ("r", m, rest.elements[0])))
            for gen, arity in sorted(signature.items()):
                parts = arity - 1
                if parts < 2 or parts > len(rest):
                    continue
                for blocks in enumerate_partitions(rest):
                    if len(blocks) != parts:
                        continue
                    for combo in itertools.product(*[_rooted_danglers(b, signature) for b in blocks]):
                        out.append(model_val("tree", ("r", m, _node(gen, combo))))
            return out

        def tr(sigma: Bijection, v: ModelVal):
            _, root, enc = v.payload
            mapping = dict(sigma.backward)
            moved_root = mapping[root]
            moved = _relabel(enc, mapping) if _is_node(enc) else mapping[enc]
            return model_val("tree", _canon_edge(moved_root, moved))

        return ev, tr

    return _registered(f"tree[{sig_name};cap{size_cap}]", make)


def graft_adjacency(fp: tuple, x: Label, gp: tuple, y: Label) -> tuple:
    """Graft two trees by fusing leaves x and y; adjacency-dict surgery.

    Vertices of the two trees are namespaced first: the fused entry of one
    tree may share its label with a surviving leaf of the other.
    """
    adj: dict = {}
    gens: dict = {}
    counter = itertools.count()

    def add_edge(a, b):
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)

    def decode(side, enc, parent):
        if not _is_node(enc):
            add_edge((side, enc), parent)
            return
        me = ("v", next(counter))
        gens[me] = enc[1]
        add_edge(me, parent)
        for child in enc[2:]:
            decode(side, child, me)

    for side, payload in (("f", fp), ("g", gp)):
        _, root, enc = payload
        if not _is_node(enc):
            add_edge((side, root), (side, enc))
        else:
            me = ("v", next(counter))
            gens[me] = enc[1]
            add_edge((side, root), me)
            for child in enc[2:]:
                decode(side, child, me)

    fx, gy = ("f", x), ("g", y)
    (nx,) = adj[fx]
    (ny,) = adj[gy]
    adj[nx].discard(fx)
    adj[ny].discard(gy)
    del adj[fx], adj[gy]
    add_edge(nx, ny)

    def encode(v, parent):
        if v not in gens:
            return v[1]
        return _node(gens[v], tuple(encode(w, v) for w in adj[v] if w != parent))

    leaves = [v for v in adj if v not in gens]
    m = min(leaves, key=lambda l: l[1].key)
    (nb,) = adj[m]
    return ("r", m[1], encode(nb, m))


def graft_terms(fp: tuple, x: Label, gp: tuple, y: Label) -> tuple:
    """The same graft by term rewriting; the independent oracle."""
    _, rf, ef = fp
    _, rg, eg = gp
    df = ef if rf is x else _pull_up(ef, x, rf) if _is_node(ef) else rf
    dg = eg if rg is y else _pull_up(eg, y, rg) if _is_node(eg) else rg
    return _canon_edge(df, dg)


def free_cyclic(signature: dict[str, int], size_cap: int = 4) -> EntriesOnlyPresentation:
    """Free entries-only model: decorated unrooted trees, composition by grafting.

    Generators of arity 2 are rejected: they would admit unboundedly long
    chains of internal vertices over a fixed leaf set, so no finite carrier
    table can be closed under composition.
    """
    for gen, arity in signature.items():
        if arity < 2:
            raise ValueError(f"generator {gen} must have arity at least 2")
        if arity == 2:
            raise ValueError(f"generator {gen}: arity-2 generators give infinite carriers")
    carrier = tree_species(signature, size_cap)

    def unit2(two: FiniteSet) -> StructureValue:
        if len(two) != 2:
            raise ValueError("units live on two-element sets")
        a, b = two.elements
        return model_val("tree", ("r", a, b))

    def compose2(x_set, f: ModelVal, x, y_set, g: ModelVal, y):
        _check_compose2(x_set, f, x, y_set, g, y)
        return model_val("tree", graft_adjacency(f.payload, x, g.payload, y))

    name = "tree[" + ",".join(f"{g}:{a}" for g, a in sorted(signature.items())) + "]"
    return EntriesOnlyPresentation(name, carrier, size_cap, unit2, compose2)


# ---------------------------------------------------------------------------
# a two-structures-per-set model (parity-graded variant of comm)


def parity_species() -> Species:
    def make():
        def ev(x: FiniteSet):
            if len(x) < 2:
                return ()
            return [model_val("par", (0,) + x.elements), model_val("par", (1,) + x.elements)]

        def tr(sigma: Bijection, v: ModelVal):
            grade = v.payload[0]
            return model_val("par", (grade,) + sigma.domain.elements)

        return ev, tr

    return _registered("par", make)


def parity_cyclic(max_size: int = 4) -> EntriesOnlyPresentation:
    """Grade-0/1 copies of the one-structure model; grades add modulo 2.

    Used by negative controls that need a unit which is not forced.
    """
    carrier = parity_species()

    def unit2(two: FiniteSet) -> StructureValue:
        if len(two) != 2:
            raise ValueError("units live on two-element sets")
        return model_val("par", (0,) + two.elements)

    def compose2(x_set, f: ModelVal, x, y_set, g: ModelVal, y):
        _check_compose2(x_set, f, x, y_set, g, y)
        grade = (f.payload[0] + g.payload[0]) % 2
        out = x_set.without(x).union(y_set.without(y))
        return model_val("par", (grade,) + out.elements)

    return EntriesOnlyPresentation("parity", carrier, max_size, unit2, compose2)


# ---------------------------------------------------------------------------
# plain operads (for the symmetric-operad checker)


def terminal_operad(max_size: int = 4) -> OperadPresentation:
    """One operation per nonempty set; every composite is forced."""
    carrier = species_E_at_least(1)

    def unit1(x: Label) -> StructureValue:
        return whole(fset([x]))

    def compose(x_set, f, x, y_set, g):
        if x not in x_set:
            raise ValueError("composition point must belong to the operation's inputs")
        if not x_set.without(x).isdisjoint(y_set):
            raise ValueError("input sets are not disjoint")
        return whole(x_set.without(x).union(y_set))

    return OperadPresentation("terminal", carrier, max_size, unit1, compose)


def _rooted_trees(leaves: FiniteSet, signature: dict[str, int]) -> list:
    """Rooted decorated trees: an arity-k generator node has k children."""
    if len(leaves) == 1:
        return [leaves.elements[0]]
    out = []
    for gen, arity in sorted(signature.items()):
        if arity < 2 or arity > len(leaves):
            continue
        for blocks in enumerate_partitions(leaves):
            if len(blocks) != arity:
                continue
            for combo in itertools.product(*[_rooted_trees(b, signature) for b in blocks]):
                out.append(_node(gen, combo))
    return out


def rtree_species(signature: dict[str, int], size_cap: int) -> Species:
    sig_name = ",".join(f"{g}:{a}" for g, a in sorted(signature.items()))

    def make():
        def ev(x: FiniteSet):
            if not x.elements or len(x) > size_cap:
                return ()
            return [model_val("rtree", d) for d in _rooted_trees(x, signature)]

        def tr(sigma: Bijection, v: ModelVal):
            mapping = dict(sigma.backward)
            enc = v.payload
            return model_val("rtree", _relabel(enc, mapping) if _is_node(enc) else mapping[enc])

        return ev, tr

    return _registered(f"rtree[{sig_name};cap{size_cap}]", make)


def _subst_leaf(enc, x: Label, replacement):
    if not _is_node(enc):
        return replacement if enc is x else enc
    return _node(enc[1], tuple(_subst_leaf(c, x, replacement) for c in enc[2:]))


def free_operad(signature: dict[str, int], size_cap: int = 4) -> OperadPresentation:
    """Free operad on unordered generators: rooted decorated trees, grafting."""
    for gen, arity in signature.items():
        if arity < 2:
            raise ValueError(f"generator {gen} must have arity at least 2")
    carrier = rtree_species(signature, size_cap)

    def unit1(x: Label) -> StructureValue:
        return model_val("rtree", x)

    def compose(x_set, f: ModelVal, x, y_set, g: ModelVal):
        if x not in x_set:
            raise ValueError("composition point must belong to the operation's inputs")
        if not x_set.without(x).isdisjoint(y_set):
            raise ValueError("input sets are not disjoint")
        return model_val("rtree", _normalize(_subst_leaf(f.payload, x, g.payload)))

    name = "rtree[" + ",".join(f"{g}:{a}" for g, a in sorted(signature.items())) + "]"
    return OperadPresentation(name, carrier, size_cap, unit1, compose)


# ---------------------------------------------------------------------------
# rooted views (independent oracles for the output-choosing translation)


def rooted_view(model: EntriesOnlyPresentation) -> ExchangeableOutputPresentation:
    """Present an entries-only model with the fresh star as a designated output.

    Compositions and output exchanges are recomputed by model-specific rooted
    strategies, independent of the generic translation.
    """
    base = model.carrier
    carrier = derivative(base)
    kind = base.name

    def unit1(x: Label) -> StructureValue:
        one = fset([x])
        return model.unit2(one.add(star_of(one)))

    if kind == "E>=2":

        def compose(x_set, f, x, y_set, g):
            out = x_set.without(x).union(y_set)
            return whole(out.add(star_of(out)))

        def dact(x_set, x, f):
            return f

    elif kind == "cyc":

        def compose(x_set, f: ModelVal, x, y_set, g: ModelVal):
            wf = _word_of(f, x_set)
            wg = _word_of(g, y_set)
            i = wf.index(x)
            word = wf[:i] + wg + wf[i + 1:]
            out = x_set.without(x).union(y_set)
            return model_val("cyc", _canon_cycle((star_of(out),) + word))

        def dact(x_set, x, f: ModelVal):
            w = _word_of(f, x_set)
            i = w.index(x)
            word = w[i + 1:] + (x,) + w[:i]
            return model_val("cyc", _canon_cycle((star_of(x_set),) + word))

    elif kind.startswith("tree["):

        def _dangler(f: ModelVal, base_set: FiniteSet) -> tuple:
            _, root, enc = f.payload
            st = star_of(base_set)
            if root is st:
                return enc
            return _pull_up(enc, st, root) if _is_node(enc) else root

        def compose(x_set, f: ModelVal, x, y_set, g: ModelVal):
            df = _dangler(f, x_set)
            dg = _dangler(g, y_set)
            grafted = _subst_leaf(df, x, dg) if _is_node(df) else (dg if df is x else df)
            out = x_set.without(x).union(y_set)
            return model_val("tree", _canon_edge(star_of(out), grafted))

        def dact(x_set, x, f: ModelVal):
            st = star_of(x_set)
            d = _dangler(f, x_set)
            swap = {lab: lab for lab in _dangler_leaves(d) if lab is not x}
            swap[x] = st
            moved = _relabel(d, swap) if _is_node(d) else swap[d]
            return model_val("tree", _canon_edge(x, moved))

    else:
        raise ValueError(f"no rooted view for model {model.name}")

    # the carrier evaluates the base model one size up, so the bound drops
    return ExchangeableOutputPresentation(f"rooted({model.name})", carrier, model.max_size - 1, unit1, compose, dact)


def _word_of(f: ModelVal, base_set: FiniteSet) -> tuple:
    """Cut a cycle on base+star at the star, giving the rooted linear word."""
    seq = f.payload
    i = seq.index(star_of(base_set))
    return seq[i + 1:] + seq[:i]

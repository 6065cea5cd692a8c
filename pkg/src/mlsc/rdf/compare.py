"""Graph equality up to blank node renaming."""

from __future__ import annotations

from .terms import BlankNode, Triple, TripleGraph


def _signature(triples, n, colour):
    sig = []
    for s, p, o in triples:
        if s == n:
            sig.append(("s", p, colour[o] if isinstance(o, BlankNode) else o))
        if o == n:
            sig.append(("o", p, colour[s] if isinstance(s, BlankNode) else s))
    return colour[n], tuple(sorted(sig, key=repr))


def _refine(graphs: list[tuple[list[Triple], list[BlankNode]]]) -> list[dict[BlankNode, int]]:
    # colours come from one shared palette so they are comparable across graphs
    colours = [{n: 0 for n in nodes} for _, nodes in graphs]
    palette: dict = {}
    while True:
        new = [
            {n: palette.setdefault(_signature(triples, n, colour), len(palette)) for n in nodes}
            for (triples, nodes), colour in zip(graphs, colours)
        ]
        stable = all(len(set(c.values())) == len(set(o.values())) for c, o in zip(new, colours))
        colours = new
        if stable:
            return colours


def isomorphic(a: TripleGraph, b: TripleGraph) -> bool:
    """True when ``a`` and ``b`` are equal after some bijective blank node relabelling."""
    if len(a) != len(b):
        return False

    def split(g: TripleGraph):
        ground, other = set(), []
        for t in g:
            if isinstance(t.subject, BlankNode) or isinstance(t.object, BlankNode):
                other.append(t)
            else:
                ground.add(t)
        return ground, other

    ground_a, bn_a = split(a)
    ground_b, bn_b = split(b)
    if ground_a != ground_b:
        return False
    nodes_a = list(dict.fromkeys(x for t in bn_a for x in (t.subject, t.object) if isinstance(x, BlankNode)))
    nodes_b = list(dict.fromkeys(x for t in bn_b for x in (t.subject, t.object) if isinstance(x, BlankNode)))
    if len(nodes_a) != len(nodes_b):
        return False
    col_a, col_b = _refine([(bn_a, nodes_a), (bn_b, nodes_b)])
    if sorted(col_a.values()) != sorted(col_b.values()):
        return False

    target = set(bn_b)
    candidates = {n: [m for m in nodes_b if col_b[m] == col_a[n]] for n in nodes_a}
    order = sorted(nodes_a, key=lambda n: len(candidates[n]))

    def search(i: int, mapping: dict, used: set) -> bool:
        if i == len(order):
            def m(x):
                return mapping[x] if isinstance(x, BlankNode) else x
            return {Triple(m(s), p, m(o)) for s, p, o in bn_a} == target
        n = order[i]
        for cand in candidates[n]:
            if cand in used:
                continue
            mapping[n] = cand
            used.add(cand)
            if search(i + 1, mapping, used):
                return True
            used.discard(cand)
            del mapping[n]
        return False

    return search(0, {}, set())

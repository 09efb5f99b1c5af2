"""Z/2 markings on tesselation edges modulo triangle moves.

A marking is stored as the frozenset of its odd edges (edge keys from
:func:`spinmcg.farey.edge_key`).  A triangle move adds 1 to the three sides of
a triangle.  The ambient tesselation is any object with a method
``neighbors(a, b) -> (c, d)`` giving the third vertices of the triangles to the
left and right of ``a->b`` (for instance :class:`spinmcg.spinstate.TessState`).

Triviality is decided in the dual tree.  A finite set S of triangles has edge
boundary delta(S); in a tree, a marking equals delta(S) for a finite S exactly
when the 2-coloring that changes color across marked edges has a finite color
class.  Only the minimal subtree spanning the marked edges needs to be
colored: every component of its complement is infinite and inherits the color
of the vertex it hangs from.
"""

from __future__ import annotations

from collections import deque

from . import gf2
from .farey import edge_key, edge_str, in_closed_arc, in_open_arc, parse_edge, triangle, triangle_sides

Marking = frozenset
EMPTY = frozenset()


def marking_of(*edges) -> frozenset:
    """Marking with the given odd edges; each edge is a pair of Rationals."""
    out: set = set()
    for a, b in edges:
        out ^= {edge_key(a, b)}
    return frozenset(out)


def _check_triangle(tess, tri: tuple) -> None:
    a, b, c = tri
    for x, y, z in ((a, b, c), (b, c, a), (a, c, b)):
        if z not in tess.neighbors(x, y):
            raise ValueError(f"triangle {tri} is not in the tesselation")


def apply_triangle_move(m: frozenset, tri: tuple, tess=None) -> frozenset:
    """Add 1 to each side of ``tri``.  With ``tess`` given, check ``tri`` belongs to it."""
    tri = triangle(*tri)
    if tess is not None:
        _check_triangle(tess, tri)
    return m.symmetric_difference(triangle_sides(tri))


def edge_triangles(tess, key: tuple) -> tuple:
    a, b = key
    c, d = tess.neighbors(a, b)
    return triangle(a, b, c), triangle(a, b, d)


def _step_toward(tess, tri: tuple, target: tuple) -> tuple:
    """Neighbor of ``tri`` on the dual-tree path to ``target``."""
    a, b, c = tri
    for x, y, z in ((a, b, c), (b, c, a), (a, c, b)):
        # far side of side {x, y}: the arc between x and y not containing z
        lo, hi = (y, x) if in_open_arc(z, x, y) else (x, y)
        if all(in_closed_arc(v, lo, hi) for v in target):
            c1, c2 = tess.neighbors(x, y)
            w = c2 if c1 == z else c1
            return triangle(x, y, w)
    raise AssertionError(f"no side of {tri} faces {target}")


def spanning_subtree(tess, m) -> dict:
    """Minimal dual subtree containing every edge of ``m``.

    Returns an adjacency map ``triangle -> {neighbor: shared edge key}``.
    """
    terminals: list[tuple] = []
    for key in m:
        terminals.extend(edge_triangles(tess, key))
    if not terminals:
        return {}
    root = terminals[0]
    adj: dict = {root: {}}
    for t in terminals[1:]:
        path = [t]
        cur = t
        while cur not in adj:
            cur = _step_toward(tess, cur, root)
            path.append(cur)
        for u, v in zip(path, path[1:]):
            shared = set(u) & set(v)
            key = edge_key(*shared)
            adj.setdefault(u, {})[v] = key
            adj.setdefault(v, {})[u] = key
    return adj


def is_trivial(m, tess) -> bool:
    """True iff ``m`` is reachable from the empty marking by finitely many triangle moves."""
    if not m:
        return True
    adj = spanning_subtree(tess, m)
    root = next(iter(adj))
    color = {root: 0}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v, key in adj[u].items():
            if v not in color:
                color[v] = color[u] ^ (key in m)
                queue.append(v)
    frontier = {color[u] for u in adj if len(adj[u]) < 3}
    return len(frontier) <= 1


def oracle_is_trivial(m, tess) -> bool:
    """Independent check: is ``m`` a GF(2) sum of side-triples of subtree triangles?"""
    if not m:
        return True
    tris = list(spanning_subtree(tess, m))
    index: dict = {}
    rows = []
    for tri in tris:
        r = 0
        for side in triangle_sides(tri):
            r |= 1 << index.setdefault(side, len(index))
        rows.append(r)
    target = 0
    for key in m:
        if key not in index:
            return False
        target |= 1 << index[key]
    return gf2.in_span(target, rows)


def trivializing_triangles(m, tess) -> list | None:
    """A finite set of triangles whose moves produce ``m`` from the empty marking, or None."""
    if not m:
        return []
    tris = list(spanning_subtree(tess, m))
    index: dict = {}
    rows = []
    for tri in tris:
        r = 0
        for side in triangle_sides(tri):
            r |= 1 << index.setdefault(side, len(index))
        rows.append(r)
    target = 0
    for key in m:
        target |= 1 << index[key]
    x = gf2.solve(rows, target)
    if x is None:
        return None
    return [tri for i, tri in enumerate(tris) if x >> i & 1]


def equivalent(m1, m2, tess) -> bool:
    return is_trivial(frozenset(m1).symmetric_difference(m2), tess)


def serialize(m) -> list[str]:
    return sorted(edge_str(e) for e in m)


def deserialize(items) -> frozenset:
    return frozenset(parse_edge(s) for s in items)

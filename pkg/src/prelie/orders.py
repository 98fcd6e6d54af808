"""Vertex orders on rooted trees.

Three relations on the vertex set of a tree, each refining the previous:

* ``<``    tree order: v < w when the path from the root to w passes
           through v.  Partial; the root is the unique minimum.
* ``<<``   planar refinement: transitive closure of ``<`` together with
           "right sibling before left sibling".  Planar trees only.
* ``<<<``  total order: recursively, with t = branch o-> trunk, every
           trunk vertex comes before every branch vertex.

Vertices are identified by their root path (tuple of child indices).
"""

from __future__ import annotations

from dataclasses import dataclass

from .trees import DomainError, PlanarTree, Tree

VertexId = tuple[int, ...]

ORDER_KINDS = ("<", "<<", "<<<")


def tree_less(v: VertexId, w: VertexId) -> bool:
    """v < w in the tree order: v a strict ancestor of w."""
    return len(v) < len(w) and w[: len(v)] == v


def _closure(n_index: dict[VertexId, int], edges: set[tuple[int, int]]) -> list[list[bool]]:
    n = len(n_index)
    reach = [[False] * n for _ in range(n)]
    for a, b in edges:
        reach[a][b] = True
    for k in range(n):
        rk = reach[k]
        for i in range(n):
            if reach[i][k]:
                ri = reach[i]
                for j in range(n):
                    if rk[j]:
                        ri[j] = True
    return reach


def left_refined_pairs(t: PlanarTree) -> set[tuple[VertexId, VertexId]]:
    """All pairs (v, w) with v << w, as the transitive closure of the
    parent->child and right-sibling->left-sibling relations."""
    verts = t.vertices()
    index = {v: i for i, v in enumerate(verts)}
    edges = set()
    for v in verts:
        node = t.subtree(v)
        k = len(node.children)
        for i in range(k):
            edges.add((index[v], index[v + (i,)]))
        for i in range(k - 1):
            edges.add((index[v + (i + 1,)], index[v + (i,)]))
    reach = _closure(index, edges)
    return {
        (verts[i], verts[j])
        for i in range(len(verts))
        for j in range(len(verts))
        if reach[i][j]
    }


def total_order_list(t: PlanarTree) -> list[VertexId]:
    """Vertices of ``t`` listed in increasing ``<<<`` order."""
    if not t.children:
        return [()]
    branch = t.children[0]
    trunk = PlanarTree(t.children[1:], t.label)
    trunk_part = []
    for v in total_order_list(trunk):
        trunk_part.append(v if not v else (v[0] + 1,) + v[1:])
    branch_part = [(0,) + v for v in total_order_list(branch)]
    return trunk_part + branch_part


@dataclass(frozen=True)
class VertexOrder:
    """Queryable pair relation over the vertices of one tree."""

    kind: str
    pairs: frozenset[tuple[VertexId, VertexId]]

    def holds(self, v: VertexId, w: VertexId) -> bool:
        return (v, w) in self.pairs


def vertex_order(t: PlanarTree | Tree, kind: str) -> VertexOrder:
    if kind not in ORDER_KINDS:
        raise DomainError(f"unknown order kind {kind!r}")
    if kind != "<" and not isinstance(t, PlanarTree):
        raise DomainError(f"order {kind!r} needs a planar tree")
    verts = t.vertices()
    if kind == "<":
        pairs = {(v, w) for v in verts for w in verts if tree_less(v, w)}
    elif kind == "<<":
        pairs = left_refined_pairs(t)
    else:
        ordered = total_order_list(t)
        rank = {v: i for i, v in enumerate(ordered)}
        pairs = {(v, w) for v in verts for w in verts if rank[v] < rank[w]}
    return VertexOrder(kind, frozenset(pairs))

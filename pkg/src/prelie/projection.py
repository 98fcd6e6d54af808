"""Forgetting planarity: the projection, its sections, and the induced
non-planar base-change matrices.

The composite of the planar base change with the projection expands a
planar tree over non-planar trees with coefficients alpha(s, tau); those
equal a bijection count divided by the symmetry factor of s.  Precomposing
with a section (a choice of planar representative per tree) gives a square
unipotent matrix per degree.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations, product

from .matrix import CoeffMatrix
from .orders import tree_less
from .psi import _count_bijections, coeff_c_recursive, psi
from .products import NONPLANAR, TreeSum
from .trees import (
    BRUTE_FORCE_CAP,
    ENUMERATION_CAP,
    DegreeCapError,
    DomainError,
    PlanarTree,
    Tree,
    enumerate_nonplanar,
    serial_key,
    symmetry_factor,
)


def forget_planarity(sigma: PlanarTree) -> Tree:
    """Project a planar tree onto its canonical non-planar form."""
    return Tree(tuple(forget_planarity(c) for c in sigma.children), sigma.label)


@lru_cache(maxsize=None)
def planar_embeddings(s: Tree) -> tuple[PlanarTree, ...]:
    """All distinct planar trees projecting onto s (the fiber of s)."""
    child_options = [planar_embeddings(c) for c in s.children]
    out = set()
    for picks in product(*child_options):
        for perm in set(permutations(picks)):
            out.add(PlanarTree(perm, s.label))
    return tuple(sorted(out, key=lambda t: serial_key(t.serialize()), reverse=True))


def psi_bar(tau: PlanarTree) -> TreeSum:
    """Planar base change followed by termwise projection."""
    return psi(tau).map_trees(forget_planarity, NONPLANAR)


def alpha(s: Tree, tau: PlanarTree) -> int:
    """Coefficient of s in the projected image of tau: the fiber sum of the
    planar coefficients."""
    if s.degree != tau.degree:
        raise DomainError("alpha needs equal degrees")
    return sum(coeff_c_recursive(sigma, tau) for sigma in planar_embeddings(s))


def count_tilde_b(s: Tree, tau: PlanarTree, cap: int = BRUTE_FORCE_CAP) -> int:
    """Bijections from V(s) to V(tau) increasing from the tree order into
    the total order, with tree-order increasing inverse."""
    if s.degree != tau.degree:
        raise DomainError("bijection count needs equal degrees")
    if s.degree > cap:
        raise DegreeCapError(f"degree {s.degree} exceeds brute-force cap {cap}")
    verts = s.vertices()
    ancestors = {v: {u for u in verts if tree_less(u, v)} for v in verts}
    return _count_bijections(verts, ancestors, tau)


def alpha_matrix(n: int, max_degree: int = ENUMERATION_CAP) -> CoeffMatrix:
    """Rectangular matrix of the projected base change: non-planar rows,
    planar columns, both in canonical order."""
    from .trees import enumerate_planar

    rows = enumerate_nonplanar(n, max_degree)
    cols = enumerate_planar(n, max_degree)
    images = [psi_bar(tau) for tau in cols]
    entries = tuple(tuple(img.coefficient(s) for img in images) for s in rows)
    return CoeffMatrix(
        degree=n,
        row_basis=tuple(t.serialize() for t in rows),
        col_basis=tuple(t.serialize() for t in cols),
        entries=entries,
    )


# ---------------------------------------------------------------------------
# sections


class Section:
    """A choice of planar representative for each non-planar tree, with
    the projection returning the original tree (validated eagerly)."""

    def __init__(self, mapping: dict[Tree, PlanarTree]):
        for t, sigma in mapping.items():
            if forget_planarity(sigma) != t:
                raise DomainError(
                    f"not a section: {sigma.serialize()} does not project to "
                    f"{t.serialize()}"
                )
        self._map = dict(mapping)

    def __call__(self, t: Tree) -> PlanarTree:
        if t not in self._map:
            raise DomainError(f"section does not cover {t.serialize()}")
        return self._map[t]

    def covers(self, t: Tree) -> bool:
        return t in self._map

    def items(self):
        return self._map.items()

    def covered_degrees(self) -> set[int]:
        return {t.degree for t in self._map}

    def to_text(self) -> str:
        lines = [
            f"{t.serialize()} => {sigma.serialize()}"
            for t, sigma in sorted(
                self._map.items(), key=lambda kv: (kv[0].degree, kv[0].serialize())
            )
        ]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Section":
        from .trees import parse_planar, parse_tree

        mapping = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=>" not in line:
                raise DomainError(f"line {lineno}: expected '<tree> => <planar>'")
            left, right = (part.strip() for part in line.split("=>", 1))
            mapping[parse_tree(left)] = parse_planar(right)
        return cls(mapping)


def default_embedding(t: Tree) -> PlanarTree:
    """Canonical planar representative: embedded children in descending
    serialization order."""
    embedded = sorted(
        (default_embedding(c) for c in t.children),
        key=lambda p: serial_key(p.serialize()),
        reverse=True,
    )
    return PlanarTree(tuple(embedded), t.label)


def default_section(n: int, max_degree: int = ENUMERATION_CAP) -> Section:
    return Section({t: default_embedding(t) for t in enumerate_nonplanar(n, max_degree)})


def all_sections(n: int, max_degree: int = ENUMERATION_CAP):
    """Every section of the projection on the degree-n trees.  Fiber sizes
    grow quickly; meant for small degrees."""
    basis = enumerate_nonplanar(n, max_degree)
    fibers = [planar_embeddings(t) for t in basis]
    for picks in product(*fibers):
        yield Section(dict(zip(basis, picks)))


def psi_tilde(section: Section, t: Tree) -> TreeSum:
    """Non-planar expansion of t through its chosen planar representative."""
    return psi_bar(section(t))


def beta_matrix(section: Section, n: int, max_degree: int = ENUMERATION_CAP) -> CoeffMatrix:
    basis = enumerate_nonplanar(n, max_degree)
    for t in basis:
        if not section.covers(t):
            raise DomainError(f"section does not cover degree {n}")
    images = [psi_tilde(section, t) for t in basis]
    entries = tuple(tuple(img.coefficient(s) for img in images) for s in basis)
    names = tuple(t.serialize() for t in basis)
    return CoeffMatrix(degree=n, row_basis=names, col_basis=names, entries=entries)

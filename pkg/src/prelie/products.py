"""Tree sums and the five bilinear products.

``TreeSum`` is a finite integer linear combination of trees, all planar or
all non-planar.  Like terms are collected eagerly, so equality of sums is
plain equality of term maps.  Coefficients are Python ints (arbitrary
precision, so "overflow" cannot occur silently).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Iterable

from .trees import DomainError, PlanarTree, Tree, serial_key

PLANAR = "planar"
NONPLANAR = "nonplanar"


@dataclass(frozen=True)
class TreeSum:
    flavor: str
    terms: tuple[tuple[PlanarTree | Tree, int], ...]

    @classmethod
    def make(cls, flavor: str, terms: Iterable[tuple[PlanarTree | Tree, int]]) -> "TreeSum":
        if flavor not in (PLANAR, NONPLANAR):
            raise DomainError(f"unknown flavor {flavor!r}")
        want = PlanarTree if flavor == PLANAR else Tree
        acc: dict = {}
        for tree, coeff in terms:
            if not isinstance(tree, want):
                raise DomainError(f"{flavor} sum cannot hold {type(tree).__name__}")
            acc[tree] = acc.get(tree, 0) + coeff
        cleaned = tuple(
            sorted(
                ((t, c) for t, c in acc.items() if c != 0),
                key=lambda tc: serial_key(tc[0].serialize()),
                reverse=True,
            )
        )
        return cls(flavor, cleaned)

    @classmethod
    def single(cls, tree: PlanarTree | Tree, coeff: int = 1) -> "TreeSum":
        flavor = PLANAR if isinstance(tree, PlanarTree) else NONPLANAR
        return cls.make(flavor, [(tree, coeff)])

    @classmethod
    def zero(cls, flavor: str) -> "TreeSum":
        return cls.make(flavor, [])

    def coefficient(self, tree: PlanarTree | Tree) -> int:
        for t, c in self.terms:
            if t == tree:
                return c
        return 0

    def coefficient_sum(self) -> int:
        return sum(c for _, c in self.terms)

    def __add__(self, other: "TreeSum") -> "TreeSum":
        if self.flavor != other.flavor:
            raise DomainError("cannot add sums of different flavors")
        return TreeSum.make(self.flavor, self.terms + other.terms)

    def __sub__(self, other: "TreeSum") -> "TreeSum":
        return self + other.scale(-1)

    def scale(self, k: int) -> "TreeSum":
        return TreeSum.make(self.flavor, [(t, k * c) for t, c in self.terms])

    def map_trees(self, f: Callable, flavor: str) -> "TreeSum":
        return TreeSum.make(flavor, [(f(t), c) for t, c in self.terms])

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for i, (t, c) in enumerate(self.terms):
            sign = "-" if c < 0 else "+"
            chunk = f"{abs(c)} {t.serialize()}"
            if i == 0:
                parts.append(chunk if c > 0 else f"-{chunk}")
            else:
                parts.append(f"{sign} {chunk}")
        return " ".join(parts)

    def to_json(self) -> list[dict]:
        return [{"coeff": str(c), "tree": t.to_json()} for t, c in self.terms]

    def to_json_str(self) -> str:
        return json.dumps(self.to_json())


# ---------------------------------------------------------------------------
# magmatic products (single-tree results)


def binary_join(t1, t2):
    """The v-product on planar binary trees: new root with t1 left, t2 right."""
    from .trees import BinaryTree

    return BinaryTree(t1, t2)


def rotation(t) -> PlanarTree:
    """Knuth's rotation correspondence onto planar rooted trees."""
    if t.is_leaf:
        return PlanarTree()
    return left_butcher(rotation(t.left), rotation(t.right))


def left_butcher(sigma: PlanarTree, tau: PlanarTree) -> PlanarTree:
    """sigma becomes the leftmost branch at the root of tau."""
    return PlanarTree((sigma,) + tau.children, tau.label)


def butcher(s: Tree, t: Tree) -> Tree:
    """Butcher product: graft the root of s onto the root of t (non-planar)."""
    return Tree((s,) + t.children, t.label)


# ---------------------------------------------------------------------------
# grafting products (sums over vertices)


def _graft_planar_at(sigma: PlanarTree, tau: PlanarTree, path) -> PlanarTree:
    if not path:
        return PlanarTree((sigma,) + tau.children, tau.label)
    i = path[0]
    new_child = _graft_planar_at(sigma, tau.children[i], path[1:])
    return PlanarTree(tau.children[:i] + (new_child,) + tau.children[i + 1 :], tau.label)


def left_graft(sigma: PlanarTree, tau: PlanarTree) -> TreeSum:
    """Sum over the vertices v of tau of grafting sigma leftmost at v."""
    return TreeSum.make(
        PLANAR, [(_graft_planar_at(sigma, tau, v), 1) for v in tau.vertices()]
    )


def _graft_nonplanar_at(s: Tree, t: Tree, path) -> Tree:
    if not path:
        return Tree((s,) + t.children, t.label)
    i = path[0]
    new_child = _graft_nonplanar_at(s, t.children[i], path[1:])
    return Tree(t.children[:i] + (new_child,) + t.children[i + 1 :], t.label)


def graft(s: Tree, t: Tree) -> TreeSum:
    """Pre-Lie grafting: sum over all vertices of t, like terms collected."""
    return TreeSum.make(
        NONPLANAR, [(_graft_nonplanar_at(s, t, v), 1) for v in t.vertices()]
    )


PRODUCTS: dict[str, Callable] = {
    "left-butcher": left_butcher,
    "butcher": butcher,
    "left-graft": left_graft,
    "graft": graft,
}

_PRODUCT_FLAVOR = {
    "left-butcher": PLANAR,
    "butcher": NONPLANAR,
    "left-graft": PLANAR,
    "graft": NONPLANAR,
}


def product_flavor(name: str) -> str:
    if name not in _PRODUCT_FLAVOR:
        raise DomainError(f"unknown product {name!r}")
    return _PRODUCT_FLAVOR[name]


def apply_product(name: str, a, b) -> TreeSum:
    """Apply a named product to two trees, always returning a TreeSum."""
    result = PRODUCTS[name](a, b)
    if isinstance(result, TreeSum):
        return result
    return TreeSum.single(result)


def bilinear_extend(name: str, a: TreeSum, b: TreeSum) -> TreeSum:
    """Distribute a named product over two sums with coefficient products."""
    flavor = product_flavor(name)
    if a.flavor != flavor or b.flavor != flavor:
        raise DomainError(f"product {name!r} needs two {flavor} sums")
    total = TreeSum.zero(flavor)
    for ta, ca in a.terms:
        for tb, cb in b.terms:
            total = total + apply_product(name, ta, tb).scale(ca * cb)
    return total

"""Monomial expressions over generators and Agrachev-Gamkrelidze bases.

A monomial is a full binary expression tree over generators with an
abstract product slot; the product (pre-Lie grafting, Butcher, left
Butcher, left grafting) is only bound at evaluation.  Serialization is
``g`` for a generator and ``[M,M]`` for the product.

Evaluating a monomial over a single generator uses unlabeled vertices, so
results are directly comparable with the plain tree bases; multi-generator
monomials evaluate to vertex-labeled trees.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .matrix import CoeffMatrix
from .products import TreeSum, bilinear_extend, product_flavor
from .projection import Section
from .trees import (
    ENUMERATION_CAP,
    DegreeCapError,
    DomainError,
    PlanarTree,
    Tree,
    canonical_key,
    enumerate_nonplanar,
)


@dataclass(frozen=True)
class Generator:
    name: str = "g"

    def serialize(self) -> str:
        return self.name

    @property
    def degree(self) -> int:
        return 1

    def generator_names(self) -> set[str]:
        return {self.name}


@dataclass(frozen=True)
class Product:
    left: "MonomialExpr"
    right: "MonomialExpr"

    def serialize(self) -> str:
        return f"[{self.left.serialize()},{self.right.serialize()}]"

    @property
    def degree(self) -> int:
        return self.left.degree + self.right.degree

    def generator_names(self) -> set[str]:
        return self.left.generator_names() | self.right.generator_names()


MonomialExpr = Generator | Product

_MONO_TOKEN = re.compile(r"[a-z0-9_]+|[\[\],]")


def parse_monomial(text: str) -> MonomialExpr:
    tokens = _MONO_TOKEN.findall(text)
    if "".join(tokens) != text.replace(" ", ""):
        raise DomainError(f"cannot tokenize monomial {text!r}")

    def parse(pos: int):
        if pos >= len(tokens):
            raise DomainError("unexpected end of monomial")
        tok = tokens[pos]
        if tok == "[":
            left, pos = parse(pos + 1)
            if pos >= len(tokens) or tokens[pos] != ",":
                raise DomainError("expected ',' in monomial")
            right, pos = parse(pos + 1)
            if pos >= len(tokens) or tokens[pos] != "]":
                raise DomainError("expected ']' in monomial")
            return Product(left, right), pos + 1
        if tok in ",]":
            raise DomainError(f"unexpected {tok!r} in monomial")
        return Generator(tok), pos + 1

    expr, pos = parse(0)
    if pos != len(tokens):
        raise DomainError(f"trailing input in monomial {text!r}")
    return expr


def evaluate(m: MonomialExpr, product: str, labeled: bool | None = None) -> TreeSum:
    """Fold a monomial under one of the four products.

    The magmatic products give single-tree sums; the grafting products
    give genuine sums.  With ``labeled=None`` vertices stay unlabeled when
    the expression uses a single generator symbol.
    """
    flavor = product_flavor(product)
    if labeled is None:
        labeled = len(m.generator_names()) > 1
    leaf_cls = PlanarTree if flavor == "planar" else Tree

    def run(expr: MonomialExpr) -> TreeSum:
        if isinstance(expr, Generator):
            return TreeSum.single(leaf_cls((), expr.name if labeled else None))
        return bilinear_extend(product, run(expr.left), run(expr.right))

    return run(m)


def lower_energy_term(m: MonomialExpr) -> Tree:
    """The single tree obtained by binding the product to the Butcher fold."""
    terms = evaluate(m, "butcher").terms
    return terms[0][0]


def planar_lower_term(m: MonomialExpr) -> PlanarTree:
    return evaluate(m, "left-butcher").terms[0][0]


# ---------------------------------------------------------------------------
# Agrachev-Gamkrelidze bases


@dataclass(frozen=True)
class GeneratorOrder:
    """Totally ordered generator alphabet, ascending."""

    alphabet: tuple[str, ...] = ("g",)

    def __post_init__(self):
        if len(set(self.alphabet)) != len(self.alphabet) or not self.alphabet:
            raise DomainError("alphabet must be non-empty without repeats")


@lru_cache(maxsize=None)
def _ag_raw(n: int, alphabet: tuple[str, ...]) -> tuple[MonomialExpr, ...]:
    """Degree-n basis monomials: weakly decreasing words of lower-degree
    basis elements applied to a generator.

    Basis elements are ordered degree-major (higher degree first), then by
    construction index; words are emitted in descending lexicographic
    order of that total order.
    """
    if n == 1:
        return tuple(Generator(a) for a in alphabet)
    pool: list[MonomialExpr] = []
    for j in range(n - 1, 0, -1):
        pool.extend(reversed(_ag_raw(j, alphabet)))

    words: list[tuple[MonomialExpr, ...]] = []

    def extend(start: int, budget: int, chosen: tuple[MonomialExpr, ...]):
        if budget == 0:
            words.append(chosen)
            return
        for i in range(start, len(pool)):
            if pool[i].degree <= budget:
                extend(i, budget - pool[i].degree, chosen + (pool[i],))

    extend(0, n - 1, ())

    out = []
    for word in words:
        for a in alphabet:
            expr: MonomialExpr = Generator(a)
            for u in reversed(word):
                expr = Product(u, expr)
            out.append(expr)
    return tuple(out)


@dataclass(frozen=True)
class MonomialBasis:
    degree: int
    monomials: tuple[MonomialExpr, ...]

    def lower_terms(self) -> tuple[Tree, ...]:
        return tuple(lower_energy_term(m) for m in self.monomials)

    def serialized(self) -> tuple[str, ...]:
        return tuple(m.serialize() for m in self.monomials)


def ag_basis(n: int, order: GeneratorOrder | None = None) -> MonomialBasis:
    """One-generator basis of the degree-n homogeneous component, sorted so
    that lower-energy terms follow the canonical tree order."""
    if n < 1:
        raise DomainError(f"degree must be positive, got {n}")
    order = order or GeneratorOrder()
    if len(order.alphabet) != 1:
        raise DomainError("ag_basis is single-generator; use ag_basis_multigen")
    monos = sorted(
        _ag_raw(n, order.alphabet),
        key=lambda m: canonical_key(lower_energy_term(m)),
        reverse=True,
    )
    return MonomialBasis(n, tuple(monos))


def ag_basis_multigen(
    n: int, order: GeneratorOrder, cap: int = 5
) -> list[MonomialExpr]:
    """Multi-generator basis monomials of degree n, in enumeration order."""
    if n < 1:
        raise DomainError(f"degree must be positive, got {n}")
    if n > cap:
        raise DegreeCapError(f"degree {n} exceeds multi-generator cap {cap}")
    return list(_ag_raw(n, order.alphabet))


def expand_basis(basis: MonomialBasis, max_degree: int = ENUMERATION_CAP) -> CoeffMatrix:
    """Tree expansions of a one-generator basis: one column per monomial,
    rows over the canonical non-planar basis."""
    rows = enumerate_nonplanar(basis.degree, max_degree)
    images = [evaluate(m, "graft") for m in basis.monomials]
    for m in basis.monomials:
        if len(m.generator_names()) != 1:
            raise DomainError("expansion matrices are single-generator only")
    entries = tuple(tuple(img.coefficient(s) for img in images) for s in rows)
    return CoeffMatrix(
        degree=basis.degree,
        row_basis=tuple(t.serialize() for t in rows),
        col_basis=basis.serialized(),
        entries=entries,
    )


def is_tree_grounded(
    monomials: list[MonomialExpr] | tuple[MonomialExpr, ...], n: int
) -> tuple[bool, dict]:
    """Whether the lower-energy terms are exactly the degree-n tree basis.

    The witness lists missing and duplicated trees on failure.
    """
    for m in monomials:
        if m.degree != n:
            raise DomainError(
                f"monomial {m.serialize()} has degree {m.degree}, expected {n}"
            )
    lower = [lower_energy_term(m) for m in monomials]
    counts: dict[Tree, int] = {}
    for t in lower:
        counts[t] = counts.get(t, 0) + 1
    expected = set(enumerate_nonplanar(n))
    missing = sorted(
        (t.serialize() for t in expected if counts.get(t, 0) == 0)
    )
    duplicated = sorted(
        t.serialize() for t, c in counts.items() if c > 1
    )
    extraneous = sorted(
        t.serialize() for t in counts if t not in expected
    )
    ok = not missing and not duplicated and not extraneous and len(lower) == len(expected)
    witness = {"missing": missing, "duplicated": duplicated, "extraneous": extraneous}
    return ok, witness


def section_of_basis(
    monomials: list[MonomialExpr] | tuple[MonomialExpr, ...], n: int
) -> Section:
    """Section defined by a tree-grounded family: each lower-energy term is
    sent to the left-Butcher reading of its monomial."""
    ok, witness = is_tree_grounded(monomials, n)
    if not ok:
        raise DomainError(f"monomials are not tree-grounded: {witness}")
    return Section({lower_energy_term(m): planar_lower_term(m) for m in monomials})


def load_monomials(text: str) -> list[MonomialExpr]:
    """One serialized monomial per line; '#' comments allowed."""
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(parse_monomial(line))
    return out

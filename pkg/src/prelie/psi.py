"""The base change between the two free magmatic structures on planar trees.

The left Butcher product and the left grafting product each make the span
of planar rooted trees a free magmatic algebra; the unique isomorphism
fixing the single vertex and intertwining the two products is unipotent
upper triangular per degree in the canonical basis order.  Its
coefficients c(sigma, tau) are computed two independent ways: by the
decomposition recursion, and by brute-force counting of order-compatible
vertex bijections.
"""

from __future__ import annotations

from functools import lru_cache

from .matrix import CoeffMatrix
from .orders import left_refined_pairs, total_order_list, tree_less
from .products import PLANAR, TreeSum, bilinear_extend, left_butcher
from .trees import (
    BRUTE_FORCE_CAP,
    ENUMERATION_CAP,
    DegreeCapError,
    DomainError,
    PlanarTree,
    enumerate_planar,
)


def decompose(sigma: PlanarTree) -> tuple[PlanarTree, PlanarTree]:
    """Unique splitting sigma = branch o-> trunk off the leftmost root branch."""
    if not sigma.children:
        raise DomainError("cannot decompose a single vertex")
    branch = sigma.children[0]
    trunk = PlanarTree(sigma.children[1:], sigma.label)
    return branch, trunk


def _detach_leftmost(sigma: PlanarTree, path) -> tuple[PlanarTree, PlanarTree] | None:
    """Leftmost branch at the vertex ``path`` and the remaining trunk, or
    None when that vertex has no children."""
    if not path:
        if not sigma.children:
            return None
        return sigma.children[0], PlanarTree(sigma.children[1:], sigma.label)
    i = path[0]
    inner = _detach_leftmost(sigma.children[i], path[1:])
    if inner is None:
        return None
    branch, new_child = inner
    trunk = PlanarTree(
        sigma.children[:i] + (new_child,) + sigma.children[i + 1 :], sigma.label
    )
    return branch, trunk


@lru_cache(maxsize=None)
def psi(tau: PlanarTree) -> TreeSum:
    """Image of a planar tree under the magmatic isomorphism."""
    if not tau.children:
        return TreeSum.single(tau)
    branch, trunk = decompose(tau)
    return bilinear_extend("left-graft", psi(branch), psi(trunk))


@lru_cache(maxsize=None)
def coeff_c_recursive(sigma: PlanarTree, tau: PlanarTree) -> int:
    """Coefficient of sigma in the image of tau, by the branch/trunk recursion."""
    if sigma.degree != tau.degree:
        return 0
    if not tau.children:
        return 1 if not sigma.children else 0
    tau1, tau2 = decompose(tau)
    total = 0
    for v in sigma.vertices():
        detached = _detach_leftmost(sigma, v)
        if detached is None:
            continue
        branch, trunk = detached
        if branch.degree != tau1.degree:
            continue
        total += coeff_c_recursive(branch, tau1) * coeff_c_recursive(trunk, tau2)
    return total


def _count_bijections(dom_verts, pred, tau: PlanarTree) -> int:
    """Backtracking count of bijections onto V(tau), processed in the
    total-order listing of tau.

    ``pred[v]`` is the set of domain vertices that must already be assigned
    before v may be used; the inverse must carry the tree order of tau to
    the tree order of the domain (checked on parent covers, root forced to
    root).
    """
    targets = total_order_list(tau)
    assigned: dict = {}  # tau vertex -> domain vertex
    used: set = set()

    def place(k: int) -> int:
        if k == len(targets):
            return 1
        w = targets[k]
        parent_image = assigned[w[:-1]] if w else None
        count = 0
        for v in dom_verts:
            if v in used:
                continue
            if not pred[v] <= used:
                continue
            if w and not tree_less(parent_image, v):
                continue
            if not w and v != ():
                continue  # tau root must map back to the domain root
            assigned[w] = v
            used.add(v)
            count += place(k + 1)
            used.discard(v)
            del assigned[w]
        return count

    return place(0)


def coeff_c_bijections(
    sigma: PlanarTree, tau: PlanarTree, cap: int = BRUTE_FORCE_CAP
) -> int:
    """Same coefficient, counted as bijections increasing from the planar
    refinement order on sigma to the total order on tau, with tree-order
    increasing inverse."""
    if sigma.degree != tau.degree:
        raise DomainError("bijection count needs equal degrees")
    if sigma.degree > cap:
        raise DegreeCapError(f"degree {sigma.degree} exceeds brute-force cap {cap}")
    verts = sigma.vertices()
    below = {v: set() for v in verts}
    for u, v in left_refined_pairs(sigma):
        below[v].add(u)
    return _count_bijections(verts, below, tau)


def psi_matrix(n: int, max_degree: int = ENUMERATION_CAP) -> CoeffMatrix:
    """Per-degree matrix of the isomorphism over the canonical planar basis."""
    basis = enumerate_planar(n, max_degree)
    images = [psi(tau) for tau in basis]
    entries = tuple(
        tuple(img.coefficient(sigma) for img in images) for sigma in basis
    )
    return CoeffMatrix(
        degree=n,
        row_basis=tuple(t.serialize() for t in basis),
        col_basis=tuple(t.serialize() for t in basis),
        entries=entries,
    )


@lru_cache(maxsize=None)
def _inverse_columns(n: int) -> dict[PlanarTree, tuple[tuple[PlanarTree, int], ...]]:
    basis = enumerate_planar(n)
    m = psi_matrix(n)
    size = len(basis)
    columns = {}
    for j in range(size):
        x = [0] * size
        x[j] = 1
        for i in range(j, -1, -1):
            acc = (1 if i == j else 0) - sum(
                m.entries[i][k] * x[k] for k in range(i + 1, size)
            )
            x[i] = acc
        columns[basis[j]] = tuple(
            (basis[i], x[i]) for i in range(size) if x[i] != 0
        )
    return columns


def psi_inverse(sigma: PlanarTree) -> TreeSum:
    """Preimage of a planar tree, by back-substitution on the unipotent
    per-degree matrix."""
    if not sigma.children:
        return TreeSum.single(sigma)
    columns = _inverse_columns(sigma.degree)
    return TreeSum.make(PLANAR, columns[sigma])


@lru_cache(maxsize=None)
def n_statistic(sigma: PlanarTree) -> int:
    """Number of trees, with multiplicity, in the image of sigma."""
    if not sigma.children:
        return 1
    branch, trunk = decompose(sigma)
    return n_statistic(branch) * n_statistic(trunk) * trunk.degree


def n_statistic_total(n: int) -> int:
    return sum(n_statistic(sigma) for sigma in enumerate_planar(n))


def _poly_mul(a: list[int], b: list[int], order: int) -> list[int]:
    out = [0] * (order + 1)
    for i, ai in enumerate(a[: order + 1]):
        if ai:
            for j, bj in enumerate(b[: order + 1 - i]):
                out[i + j] += ai * bj
    return out


def verify_a088716(max_n: int, max_degree: int = ENUMERATION_CAP) -> dict:
    """Check the per-degree totals against their convolution recursion and
    the generating-series differential equation A = 1 + x A^2 + x^2 A A'.

    Returns a machine-readable report; every check carries its own status.
    """
    if max_n > max_degree:
        raise DegreeCapError(f"max_n {max_n} exceeds cap {max_degree}")
    checks = []
    totals = [n_statistic_total(n) for n in range(1, max_n + 1)]

    recursed = [1]
    for n in range(2, max_n + 1):
        recursed.append(
            sum(recursed[p - 1] * recursed[n - p - 1] * (n - p) for p in range(1, n))
        )
    ok = totals == recursed
    checks.append(
        {
            "name": "totals-match-recursion",
            "status": "pass" if ok else "fail",
            "detail": f"direct={totals} recursion={recursed}",
        }
    )

    # a_k is the total at degree k+1; residual of the ODE must vanish.
    order = max_n - 2
    if order >= 0:
        a = totals  # a[k] = total for degree k+1
        da = [(k + 1) * a[k + 1] for k in range(len(a) - 1)]
        rhs = [0] * (order + 1)
        rhs[0] = 1
        xa2 = _poly_mul(a, a, order)
        for k in range(order):
            rhs[k + 1] += xa2[k]
        x2ada = _poly_mul(a, da, order)
        for k in range(order - 1):
            rhs[k + 2] += x2ada[k]
        residual = [a[k] - rhs[k] for k in range(order + 1)]
        ok = all(r == 0 for r in residual)
        checks.append(
            {
                "name": f"ode-residual-through-order-{order}",
                "status": "pass" if ok else "fail",
                "detail": f"residual={residual}",
            }
        )

    status = "pass" if all(c["status"] == "pass" for c in checks) else "fail"
    return {"suite": "a088716", "status": status, "checks": checks}

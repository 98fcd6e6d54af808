"""Exact integer coefficient matrices over tree bases."""

from __future__ import annotations

import io
import json
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class CoeffMatrix:
    """Integer matrix indexed by row/column tree serializations.

    For the planar base change the matrix is square, upper triangular and
    unipotent in the canonical (descending potential energy) basis order;
    the planar-to-non-planar matrix is rectangular.
    """

    degree: int
    row_basis: tuple[str, ...]
    col_basis: tuple[str, ...]
    entries: tuple[tuple[int, ...], ...]

    def entry(self, row: str, col: str) -> int:
        return self.entries[self.row_basis.index(row)][self.col_basis.index(col)]

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.row_basis), len(self.col_basis))

    def entry_sum(self) -> int:
        return sum(sum(row) for row in self.entries)

    def column(self, col: str) -> tuple[int, ...]:
        j = self.col_basis.index(col)
        return tuple(row[j] for row in self.entries)

    def column_sums(self) -> tuple[int, ...]:
        return tuple(sum(col) for col in zip(*self.entries))

    def entry_multiset(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for row in self.entries:
            for e in row:
                counts[e] = counts.get(e, 0) + 1
        return counts

    def is_upper_triangular(self) -> bool:
        return all(
            self.entries[i][j] == 0
            for i in range(len(self.row_basis))
            for j in range(min(i, len(self.col_basis)))
        )

    def is_unipotent_upper_triangular(self) -> bool:
        n, m = self.shape
        if n != m or not self.is_upper_triangular():
            return False
        return all(self.entries[i][i] == 1 for i in range(n))

    def determinant(self) -> Fraction:
        """Exact determinant by fraction-free-enough Gaussian elimination."""
        n, m = self.shape
        if n != m:
            raise ValueError("determinant of a non-square matrix")
        a = [[Fraction(e) for e in row] for row in self.entries]
        det = Fraction(1)
        for col in range(n):
            pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
            if pivot is None:
                return Fraction(0)
            if pivot != col:
                a[col], a[pivot] = a[pivot], a[col]
                det = -det
            det *= a[col][col]
            inv = a[col][col]
            for r in range(col + 1, n):
                factor = a[r][col] / inv
                if factor:
                    a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
        return det

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("," + ",".join(self.col_basis) + "\n")
        for name, row in zip(self.row_basis, self.entries):
            buf.write(name + "," + ",".join(str(e) for e in row) + "\n")
        return buf.getvalue()

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "row_basis": list(self.row_basis),
            "col_basis": list(self.col_basis),
            "entries": [list(row) for row in self.entries],
        }

    def to_json_str(self) -> str:
        return json.dumps(self.to_json())

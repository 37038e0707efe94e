"""Row-compressed sparse matrices with Python integer entries."""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping, Sequence, TextIO


class SparseIntMatrix:
    """Square sparse matrix; ``rows[r]`` maps column -> nonzero integer.

    Rows are kept with strictly increasing column keys and no stored zeros,
    so two matrices with equal entries compare (and dump) identically.
    """

    __slots__ = ("dim", "rows")

    def __init__(self, dim: int, rows: Sequence[Mapping[int, int]] | None = None):
        self.dim = dim
        if rows is None:
            self.rows: list[dict[int, int]] = [{} for _ in range(dim)]
        else:
            if len(rows) != dim:
                raise ValueError(f"expected {dim} rows, got {len(rows)}")
            self.rows = [{c: int(v) for c, v in sorted(r.items()) if v} for r in rows]

    @classmethod
    def from_entries(cls, dim: int, entries: Iterable[tuple[int, int, int]]) -> SparseIntMatrix:
        """Sum ``(row, col, value)`` triples into a matrix."""
        acc: list[dict[int, int]] = [{} for _ in range(dim)]
        for r, c, v in entries:
            row = acc[r]
            row[c] = row.get(c, 0) + v
        return cls(dim, acc)

    @classmethod
    def identity(cls, dim: int, scale: int = 1) -> SparseIntMatrix:
        return cls(dim, [{i: scale} for i in range(dim)])

    @classmethod
    def zeros(cls, dim: int) -> SparseIntMatrix:
        return cls(dim)

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def entries(self) -> Iterator[tuple[int, int, int]]:
        for r, row in enumerate(self.rows):
            for c, v in row.items():
                yield r, c, v

    def __getitem__(self, rc: tuple[int, int]) -> int:
        r, c = rc
        return self.rows[r].get(c, 0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseIntMatrix):
            return NotImplemented
        return self.dim == other.dim and self.rows == other.rows

    def __repr__(self) -> str:
        return f"SparseIntMatrix(dim={self.dim}, nnz={self.nnz})"

    def __add__(self, other: SparseIntMatrix) -> SparseIntMatrix:
        return SparseIntMatrix.from_entries(self.dim, [*self.entries(), *other.entries()])

    def __sub__(self, other: SparseIntMatrix) -> SparseIntMatrix:
        neg = ((r, c, -v) for r, c, v in other.entries())
        return SparseIntMatrix.from_entries(self.dim, [*self.entries(), *neg])

    def __matmul__(self, other: SparseIntMatrix) -> SparseIntMatrix:
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        out: list[dict[int, int]] = []
        for row in self.rows:
            acc: dict[int, int] = {}
            for k, a in row.items():
                for c, b in other.rows[k].items():
                    acc[c] = acc.get(c, 0) + a * b
            out.append(acc)
        return SparseIntMatrix(self.dim, out)

    def matvec(self, v: Sequence) -> list:
        """``M @ v`` with exact arithmetic on whatever number type ``v`` holds."""
        return [sum(a * v[c] for c, a in row.items()) for row in self.rows]

    def transpose(self) -> SparseIntMatrix:
        return SparseIntMatrix.from_entries(self.dim, ((c, r, v) for r, c, v in self.entries()))

    def permute(self, perm: Sequence[int]) -> SparseIntMatrix:
        """``P M P^T`` for the permutation sending index ``i`` to ``perm[i]``."""
        return SparseIntMatrix.from_entries(
            self.dim, ((perm[r], perm[c], v) for r, c, v in self.entries())
        )

    def column_sums(self) -> list[int]:
        sums = [0] * self.dim
        for _, c, v in self.entries():
            sums[c] += v
        return sums

    def to_dense(self) -> list[list[int]]:
        dense = [[0] * self.dim for _ in range(self.dim)]
        for r, c, v in self.entries():
            dense[r][c] = v
        return dense

    def dump(self, fh: TextIO) -> None:
        """Write ``dim nnz`` then one 0-based ``row col value`` line per entry."""
        fh.write(f"{self.dim} {self.nnz}\n")
        for r, c, v in self.entries():
            fh.write(f"{r} {c} {v}\n")

    @classmethod
    def load(cls, fh: TextIO) -> SparseIntMatrix:
        dim, nnz = map(int, fh.readline().split())
        triples = []
        for _ in range(nnz):
            r, c, v = fh.readline().split()
            triples.append((int(r), int(c), int(v)))
        return cls.from_entries(dim, triples)

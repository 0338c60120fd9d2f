"""Sparse integer matrices and coefficient rings."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Ring:
    """Coefficient ring: the integers, the rationals or a prime field.

    ``kind`` is one of ``"Z"``, ``"Q"``, ``"Fp"``; ``p`` is only meaningful
    for prime fields.
    """

    kind: str
    p: int = 0

    def __post_init__(self) -> None:
        if self.kind not in ("Z", "Q", "Fp"):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind == "Fp" and not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.kind != "Fp" and self.p != 0:
            raise ValueError("p is only allowed for prime fields")

    @property
    def is_field(self) -> bool:
        return self.kind != "Z"

    @property
    def characteristic(self) -> int:
        return self.p if self.kind == "Fp" else 0

    def reduce(self, x: int) -> int:
        return x % self.p if self.kind == "Fp" else x

    @property
    def name(self) -> str:
        if self.kind == "Fp":
            return f"F{self.p}"
        return self.kind

    def __str__(self) -> str:
        return self.name

    @classmethod
    def parse(cls, text: str) -> "Ring":
        """Parse ``Z``, ``Q``, ``F2``, ``f3``, ``fp:7`` and similar."""
        t = text.strip().lower()
        if t in ("z", "zz", "int", "integers"):
            return ZZ
        if t in ("q", "qq", "rationals"):
            return QQ
        for prefix in ("fp:", "gf", "f"):
            if t.startswith(prefix):
                digits = t[len(prefix):]
                if digits.isdigit():
                    return cls("Fp", int(digits))
        raise ValueError(f"cannot parse ring {text!r}")


ZZ = Ring("Z")
QQ = Ring("Q")


def GF(p: int) -> Ring:
    return Ring("Fp", p)


# Prime fields and Q are the field descriptors accepted by fibre modules.
FieldScalarSpec = Ring


@dataclass(frozen=True)
class IntMatrix:
    """Sparse integer matrix stored as ``{(row, col): value}`` with no zeros."""

    rows: int
    cols: int
    entries: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative shape")
        for (i, j), v in self.entries.items():
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise IndexError(f"entry ({i}, {j}) outside {self.rows}x{self.cols}")
            if v == 0:
                raise ValueError("explicit zero stored in sparse matrix")

    # construction -------------------------------------------------------

    @classmethod
    def from_triples(cls, rows: int, cols: int, triples: Iterable[tuple[int, int, int]]) -> "IntMatrix":
        acc: dict[tuple[int, int], int] = {}
        for i, j, v in triples:
            if v:
                key = (i, j)
                s = acc.get(key, 0) + v
                if s:
                    acc[key] = s
                else:
                    acc.pop(key, None)
        return cls(rows, cols, acc)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> "IntMatrix":
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if nrows else 0
        ent = {(i, j): int(v) for i, r in enumerate(rows) for j, v in enumerate(r) if v}
        return cls(nrows, ncols, ent)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, {})

    # views ---------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def row_dicts(self) -> list[dict[int, int]]:
        rows: list[dict[int, int]] = [{} for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        return rows

    def triples(self) -> Iterator[tuple[int, int, int]]:
        for (i, j), v in self.entries.items():
            yield i, j, v

    def is_zero(self) -> bool:
        return not self.entries

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    def reduce(self, ring: Ring) -> "IntMatrix":
        if ring.kind != "Fp":
            return self
        p = ring.p
        return IntMatrix(
            self.rows, self.cols, {k: v % p for k, v in self.entries.items() if v % p}
        )

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        right = other.row_dicts()
        acc: dict[tuple[int, int], int] = {}
        for (i, k), a in self.entries.items():
            for j, b in right[k].items():
                key = (i, j)
                acc[key] = acc.get(key, 0) + a * b
        return IntMatrix(self.rows, other.cols, {k: v for k, v in acc.items() if v})

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        acc = dict(self.entries)
        for k, v in other.entries.items():
            s = acc.get(k, 0) + v
            if s:
                acc[k] = s
            else:
                acc.pop(k, None)
        return IntMatrix(self.rows, self.cols, acc)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and dict(self.entries) == dict(other.entries)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, frozenset(self.entries.items())))

    def __repr__(self) -> str:
        return f"IntMatrix({self.rows}x{self.cols}, nnz={self.nnz})"


def hstack(blocks: Sequence[IntMatrix]) -> IntMatrix:
    rows = blocks[0].rows
    ent: dict[tuple[int, int], int] = {}
    off = 0
    for b in blocks:
        if b.rows != rows:
            raise ValueError("row mismatch in hstack")
        for (i, j), v in b.entries.items():
            ent[(i, j + off)] = v
        off += b.cols
    return IntMatrix(rows, off, ent)


def vstack(blocks: Sequence[IntMatrix]) -> IntMatrix:
    cols = blocks[0].cols
    ent: dict[tuple[int, int], int] = {}
    off = 0
    for b in blocks:
        if b.cols != cols:
            raise ValueError("column mismatch in vstack")
        for (i, j), v in b.entries.items():
            ent[(i + off, j)] = v
        off += b.rows
    return IntMatrix(off, cols, ent)


def block(grid: Sequence[Sequence[IntMatrix | None]], row_sizes: Sequence[int], col_sizes: Sequence[int]) -> IntMatrix:
    """Assemble a block matrix; ``None`` entries are zero blocks."""
    ent: dict[tuple[int, int], int] = {}
    roff = 0
    for bi, row in enumerate(grid):
        coff = 0
        for bj, b in enumerate(row):
            if b is not None:
                if b.shape != (row_sizes[bi], col_sizes[bj]):
                    raise ValueError("block shape mismatch")
                for (i, j), v in b.entries.items():
                    ent[(i + roff, j + coff)] = v
            coff += col_sizes[bj]
        roff += row_sizes[bi]
    return IntMatrix(sum(row_sizes), sum(col_sizes), ent)

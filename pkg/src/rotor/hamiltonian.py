"""Two-colour generators and the rotor Hamiltonian.

A rotor state is an ordered pair ``(c1, c2)`` of link patterns, one per
particle colour, flattened as ``c1 * d + c2``.  Every bond ``k`` carries
three operators built from the single-colour TL generator ``e_k``:

* ``R_k`` acts with ``e_k`` on colour 1 when ``k`` is odd, colour 2 when even,
* ``L_k`` acts on the other colour,
* ``E_k = R_k L_k`` acts on both.

Hamiltonian bonds are 1-based: ``1..N-1`` for closed boundaries and
``1..N`` for the two periodic variants, bond ``N`` joining site ``N`` to
site ``1``.  Every closed loop has weight 1, so all generator matrices are
0/1 with exactly one nonzero per column.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from .errors import InvalidBondError, UnsupportedSizeError
from .linkpattern import (
    PatternBasis,
    apply_e_affine,
    apply_e_disk,
    apply_e_line,
    enumerate_affine,
    enumerate_disk,
    enumerate_line,
)
from .sparse import SparseIntMatrix


class BoundaryCondition(str, enum.Enum):
    CLOSED = "closed"
    PERIODIC = "periodic"
    IDENTIFIED = "identified"

    @classmethod
    def parse(cls, value: BoundaryCondition | str) -> BoundaryCondition:
        if isinstance(value, cls):
            return value
        aliases = {"open": "closed", "pbc": "periodic", "periodic-identified": "identified"}
        value = str(value).lower()
        return cls(aliases.get(value, value))

    def validate(self, n: int) -> None:
        if n < 1:
            raise UnsupportedSizeError(f"system size must be positive, got {n}")
        if self is BoundaryCondition.IDENTIFIED and n % 2:
            raise UnsupportedSizeError(
                f"identified connectivities are only defined for even N, got {n}"
            )

    def bonds(self, n: int) -> range:
        if self is BoundaryCondition.CLOSED:
            return range(1, n)
        return range(1, n + 1)


BC = BoundaryCondition


@lru_cache(maxsize=None)
def colour_basis(n: int, bc: BoundaryCondition | str) -> PatternBasis:
    bc = BC.parse(bc)
    bc.validate(n)
    if bc is BC.CLOSED:
        return PatternBasis(enumerate_line(n))
    if bc is BC.PERIODIC:
        return PatternBasis(enumerate_affine(n))
    return PatternBasis(enumerate_disk(n))


@lru_cache(maxsize=None)
def colour_action(n: int, bc: BoundaryCondition | str, bond: int) -> tuple[int, ...]:
    """Image index of every colour-basis pattern under ``e`` at ``bond``."""
    bc = BC.parse(bc)
    if bond not in bc.bonds(n):
        raise InvalidBondError(f"bond {bond} is not valid for {bc.value} N={n}")
    basis = colour_basis(n, bc)
    if n == 1:
        return (0,)
    if bc is BC.CLOSED:
        return tuple(basis.index(apply_e_line(p, bond).pattern) for p in basis)
    apply = apply_e_affine if bc is BC.PERIODIC else apply_e_disk
    return tuple(basis.index(apply(p, bond - 1).pattern) for p in basis)


@dataclass(frozen=True)
class TwoColourBasis:
    colour: PatternBasis
    d: int = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "d", len(self.colour))

    @property
    def dimension(self) -> int:
        return self.d * self.d

    def flat(self, c1: int, c2: int) -> int:
        return c1 * self.d + c2

    def split(self, s: int) -> tuple[int, int]:
        return divmod(s, self.d)

    def swap_permutation(self) -> list[int]:
        """Flat index of ``(c2, c1)`` for every flat index of ``(c1, c2)``."""
        d = self.d
        return [c2 * d + c1 for c1, c2 in product(range(d), repeat=2)]

    def label(self, s: int) -> str:
        c1, c2 = self.split(s)
        return f"{self.colour[c1].pretty()} | {self.colour[c2].pretty()}"


def two_colour_basis(n: int, bc: BoundaryCondition | str) -> TwoColourBasis:
    return TwoColourBasis(colour_basis(n, bc))


def _colour_of_R(bond: int) -> int:
    return 1 if bond % 2 else 2


def _single_colour_matrix(n: int, bc, bond: int, colour: int) -> SparseIntMatrix:
    img = colour_action(n, bc, bond)
    d = len(img)
    if colour == 1:
        entries = ((img[c1] * d + c2, c1 * d + c2, 1) for c1 in range(d) for c2 in range(d))
    else:
        entries = ((c1 * d + img[c2], c1 * d + c2, 1) for c1 in range(d) for c2 in range(d))
    return SparseIntMatrix.from_entries(d * d, entries)


def op_R(n: int, bc: BoundaryCondition | str, i: int) -> SparseIntMatrix:
    return _single_colour_matrix(n, BC.parse(bc), i, _colour_of_R(i))


def op_L(n: int, bc: BoundaryCondition | str, i: int) -> SparseIntMatrix:
    return _single_colour_matrix(n, BC.parse(bc), i, 3 - _colour_of_R(i))


def op_E(n: int, bc: BoundaryCondition | str, i: int) -> SparseIntMatrix:
    img = colour_action(n, BC.parse(bc), i)
    d = len(img)
    entries = ((img[c1] * d + img[c2], c1 * d + c2, 1) for c1 in range(d) for c2 in range(d))
    return SparseIntMatrix.from_entries(d * d, entries)


def build_hamiltonian(n: int, bc: BoundaryCondition | str) -> SparseIntMatrix:
    """``H = sum_k (3 - R_k - L_k - E_k)`` acting on column vectors."""
    bc = BC.parse(bc)
    bc.validate(n)
    d = len(colour_basis(n, bc))
    dim = d * d
    if n == 1:
        return SparseIntMatrix.zeros(dim)
    bonds = bc.bonds(n)
    images = [colour_action(n, bc, k) for k in bonds]
    rows: list[dict[int, int]] = [{} for _ in range(dim)]
    diag = 3 * len(bonds)
    for c1 in range(d):
        for c2 in range(d):
            s = c1 * d + c2
            rows[s][s] = rows[s].get(s, 0) + diag
            for img in images:
                i1, i2 = img[c1], img[c2]
                for t in (i1 * d + c2, c1 * d + i2, i1 * d + i2):
                    row = rows[t]
                    row[s] = row.get(s, 0) - 1
    return SparseIntMatrix(dim, rows)


# -- algebra checks -----------------------------------------------------------


@dataclass
class RelationCheck:
    name: str
    holds: bool
    witness: str | None = None
    informational: bool = False


@dataclass
class RelationReport:
    n: int
    bc: BoundaryCondition
    checks: list[RelationCheck] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.holds for c in self.checks if not c.informational)

    def failures(self) -> list[RelationCheck]:
        return [c for c in self.checks if not c.holds and not c.informational]

    def summary(self) -> str:
        gating = [c for c in self.checks if not c.informational]
        lines = [
            f"{self.bc.value} N={self.n}: {sum(c.holds for c in gating)}/{len(gating)} relations hold"
        ]
        for c in self.checks:
            if not c.holds or c.informational:
                tag = "info" if c.informational else "FAIL"
                status = "holds" if c.holds else "fails"
                lines.append(f"  [{tag}] {c.name} {status}" + (f" at {c.witness}" if c.witness else ""))
        return "\n".join(lines)


def _witness(a: SparseIntMatrix, b: SparseIntMatrix, basis: TwoColourBasis) -> str | None:
    at, bt = a.transpose(), b.transpose()
    for s in range(a.dim):
        if at.rows[s] != bt.rows[s]:
            return basis.label(s)
    return None


def _adjacent(bc: BoundaryCondition, n: int, k: int, j: int) -> bool:
    if bc is BoundaryCondition.CLOSED:
        return abs(k - j) == 1
    if n == 2:
        return k != j
    return (k - j) % n in (1, n - 1)


def check_tl_relations(n: int, bc: BoundaryCondition | str) -> RelationReport:
    """Verify the TL relations of R, L and E as exact matrix identities.

    Colour family 1 is ``{R_k : k odd} | {L_k : k even}``, family 2 the rest.
    For odd periodic systems the single ``2N``-site chain
    ``R_1, L_2, ..., R_N, L_1, R_2, ..., L_N`` is also tested, but only as
    information: two independent colours cannot realise it.
    """
    bc = BC.parse(bc)
    bc.validate(n)
    report = RelationReport(n, bc)
    if n == 1:
        return report
    basis = two_colour_basis(n, bc)
    bonds = list(bc.bonds(n))
    R = {k: op_R(n, bc, k) for k in bonds}
    L = {k: op_L(n, bc, k) for k in bonds}
    E = {k: op_E(n, bc, k) for k in bonds}
    fam1 = {k: (R[k] if k % 2 else L[k]) for k in bonds}
    fam2 = {k: (L[k] if k % 2 else R[k]) for k in bonds}

    def name(sym: str, k: int) -> str:
        return f"{sym}{k}"

    def fam_name(fam: int, k: int) -> str:
        odd = k % 2 == 1
        sym = ("R" if odd else "L") if fam == 1 else ("L" if odd else "R")
        return name(sym, k)

    def add(label: str, lhs: SparseIntMatrix, rhs: SparseIntMatrix, info: bool = False) -> None:
        holds = lhs == rhs
        report.checks.append(
            RelationCheck(label, holds, None if holds else _witness(lhs, rhs, basis), info)
        )

    for sym, ops in (("R", R), ("L", L), ("E", E)):
        for k in bonds:
            x = ops[k]
            add(f"{sym}{k}^2 = {sym}{k}", x @ x, x)

    for label, fam, fid in (("family 1", fam1, 1), ("family 2", fam2, 2), ("E", E, 0)):
        for k in bonds:
            for j in bonds:
                if j == k:
                    continue
                nk = name("E", k) if fid == 0 else fam_name(fid, k)
                nj = name("E", j) if fid == 0 else fam_name(fid, j)
                if _adjacent(bc, n, k, j):
                    add(f"{nk} {nj} {nk} = {nk}", fam[k] @ fam[j] @ fam[k], fam[k])
                elif j > k:
                    add(f"[{nk}, {nj}] = 0", fam[k] @ fam[j], fam[j] @ fam[k])

    for k in bonds:
        for j in bonds:
            a, b = fam1[k], fam2[j]
            add(f"[{fam_name(1, k)}, {fam_name(2, j)}] = 0", a @ b, b @ a)

    if bc is BC.PERIODIC and n % 2 and n >= 3:
        chain = [R[k] if k % 2 else L[k] for k in bonds] + [L[k] if k % 2 else R[k] for k in bonds]
        names = [f"R{k}" if k % 2 else f"L{k}" for k in bonds] + [
            f"L{k}" if k % 2 else f"R{k}" for k in bonds
        ]
        for t in range(len(chain)):
            u = (t + 1) % len(chain)
            add(
                f"2N-chain {names[t]} {names[u]} {names[t]} = {names[t]}",
                chain[t] @ chain[u] @ chain[t],
                chain[t],
                info=True,
            )
    return report

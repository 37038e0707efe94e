"""Exact nullspaces and the normalised rotor groundstate.

Two independent exact engines are provided:

``fraction-free``
    Sparse Gaussian elimination over the integers.  A row update is
    ``(p*r - a*P) / g`` followed by removal of the row content, so no
    fractions ever appear.  Pivots are picked by a cheap Markowitz-style
    rule: the shortest active row, then its column with the fewest
    occurrences, then the smallest magnitude, with ties broken by the lowest
    index so runs are deterministic.

``modular``
    Dense elimination modulo word-sized primes (numpy), Chinese remaindering
    and rational reconstruction.  Every candidate is checked by exact
    multiplication, so an unlucky prime can cost time but not correctness.

The groundstate pipeline exploits two facts about ``H``.  Its columns sum to
zero and its off-diagonal entries are non-positive, so ``-H^T`` generates a
continuous-time Markov chain and ``ker H`` holds its stationary vectors.
When the transition graph is strongly connected the kernel is exactly
one-dimensional and spanned by a strictly positive vector.  That vector is
then invariant under every lattice symmetry commuting with ``H``, so it is
enough to solve the much smaller orbit-summed system and lift the answer.
"""

from __future__ import annotations

import math
import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import DegeneracyError, ModelInconsistencyError, PositivityError
from .hamiltonian import BoundaryCondition, build_hamiltonian, colour_basis, two_colour_basis
from .linkpattern import reflect, rotate
from .sparse import SparseIntMatrix

METHODS = ("fraction-free", "modular")


@dataclass
class SolverStats:
    method: str = ""
    dimension: int = 0
    reduced_dimension: int = 0
    initial_nnz: int = 0
    fill_in: int = 0
    max_bits: int = 0
    elapsed: float = 0.0

    def as_dict(self) -> dict:
        return {
            "method": self.method,
            "dimension": self.dimension,
            "reduced_dimension": self.reduced_dimension,
            "initial_nnz": self.initial_nnz,
            "fill_in": self.fill_in,
            "max_bits": self.max_bits,
            "elapsed": round(self.elapsed, 6),
        }


# -- fraction-free sparse elimination ----------------------------------------


def _echelon_fraction_free(
    rows: Sequence[dict[int, int]], stats: SolverStats
) -> list[tuple[int, dict[int, int]]]:
    """Forward elimination; returns ``(pivot column, row)`` in pivot order."""
    active: dict[int, dict[int, int]] = {i: dict(r) for i, r in enumerate(rows) if r}
    col_rows: dict[int, set[int]] = {}
    for i, r in active.items():
        for c in r:
            col_rows.setdefault(c, set()).add(i)
    nnz = sum(len(r) for r in active.values())
    stats.initial_nnz = nnz
    peak = nnz
    max_bits = max((abs(v).bit_length() for r in active.values() for v in r.values()), default=0)
    pivots: list[tuple[int, dict[int, int]]] = []

    while active:
        pi = min(active, key=lambda i: (len(active[i]), i))
        prow = active.pop(pi)
        pc = min(prow, key=lambda c: (len(col_rows[c]), abs(prow[c]), c))
        p = prow[pc]
        for c in prow:
            col_rows[c].discard(pi)
        nnz -= len(prow)
        pivots.append((pc, prow))

        for j in sorted(col_rows[pc]):
            r = active[j]
            a = r[pc]
            g = math.gcd(p, a)
            mp, ma = p // g, a // g
            before = set(r)
            if mp != 1:
                for k in r:
                    r[k] *= mp
            for k, v in prow.items():
                x = r.get(k, 0) - ma * v
                if x:
                    r[k] = x
                else:
                    r.pop(k, None)
            after = set(r)
            for k in before - after:
                col_rows[k].discard(j)
            for k in after - before:
                col_rows.setdefault(k, set()).add(j)
            nnz += len(after) - len(before)
            if not r:
                del active[j]
                continue
            content = math.gcd(*r.values())
            if content > 1:
                for k in r:
                    r[k] //= content
            bits = max(abs(v).bit_length() for v in r.values())
            if bits > max_bits:
                max_bits = bits
        peak = max(peak, nnz + sum(len(r) for _, r in pivots))

    stats.fill_in = max(0, peak - stats.initial_nnz)
    stats.max_bits = max_bits
    return pivots


def _back_substitute(
    pivots: list[tuple[int, dict[int, int]]], ncols: int, free: int
) -> list[int]:
    x = [0] * ncols
    x[free] = 1
    for pc, row in reversed(pivots):
        s = sum(v * x[k] for k, v in row.items() if k != pc)
        p = row[pc]
        if s % p:
            m = p // math.gcd(s, p)
            x = [m * t for t in x]
            s *= m
        x[pc] = -s // p
    return x


def _primitive(v: Sequence[int]) -> list[int]:
    g = math.gcd(*v)
    if g == 0:
        return list(v)
    v = [t // g for t in v]
    lead = next(t for t in v if t)
    return [-t for t in v] if lead < 0 else v


def _nullspace_fraction_free(m: SparseIntMatrix, stats: SolverStats) -> list[list[int]]:
    pivots = _echelon_fraction_free(m.rows, stats)
    pivot_cols = {c for c, _ in pivots}
    free_cols = [c for c in range(m.dim) if c not in pivot_cols]
    return [_primitive(_back_substitute(pivots, m.dim, f)) for f in free_cols]


# -- multi-modular route ------------------------------------------------------

# primes just below 2**31 keep every product inside int64
_PRIMES = (
    2147483647, 2147483629, 2147483587, 2147483579, 2147483563, 2147483549,
    2147483543, 2147483497, 2147483489, 2147483477, 2147483423, 2147483399,
    2147483353, 2147483323, 2147483269, 2147483249, 2147483237, 2147483179,
    2147483171, 2147483137, 2147483123, 2147483077, 2147483069, 2147483059,
    2147483053, 2147483033, 2147483029, 2147482951, 2147482949, 2147482943,
    2147482937, 2147482921, 2147482877, 2147482873, 2147482867, 2147482859,
    2147482819, 2147482817, 2147482811, 2147482801, 2147482763, 2147482739,
)


def _rref_mod(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    a = a % p
    nrows, ncols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        rows = np.nonzero(col)[0]
        if rows.size:
            a[rows] = (a[rows] - (col[rows, None] * a[r]) % p) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def _kernel_mod(a: np.ndarray, p: int) -> tuple[list[int], np.ndarray]:
    """Kernel basis mod p in reduced form: one column per free variable."""
    red, pivots = _rref_mod(a, p)
    ncols = a.shape[1]
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = np.zeros((ncols, len(free)), dtype=np.int64)
    for j, f in enumerate(free):
        basis[f, j] = 1
        for i, pc in enumerate(pivots):
            basis[pc, j] = (-red[i, f]) % p
    return free, basis


def _rational_reconstruct(u: int, mod: int) -> Fraction | None:
    bound = math.isqrt(mod // 2)
    r0, r1 = mod, u % mod
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or math.gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


def _nullspace_modular(m: SparseIntMatrix, stats: SolverStats) -> list[list[int]]:
    dense = np.zeros((m.dim, m.dim), dtype=np.int64)
    for r, c, v in m.entries():
        dense[r, c] = v
    stats.initial_nnz = m.nnz
    # dense elimination: every structural zero is potential fill
    stats.fill_in = m.dim * m.dim - m.nnz
    best_free: list[int] | None = None
    residues: list[np.ndarray] = []
    moduli: list[int] = []
    for p in _PRIMES:
        free, basis = _kernel_mod(dense, p)
        if best_free is None or len(free) < len(best_free) or (
            len(free) == len(best_free) and free > best_free
        ):
            # fewer free variables (or later ones) means the earlier primes were unlucky
            if best_free is not None and free != best_free:
                residues, moduli = [], []
            best_free = free
        if free != best_free:
            continue
        residues.append(basis)
        moduli.append(p)
        if not free:
            return []
        candidate = _crt_candidate(residues, moduli)
        if candidate is not None and all(
            not any(row) for row in (m.matvec(v) for v in candidate)
        ):
            stats.max_bits = max(abs(t).bit_length() for v in candidate for t in v)
            return [_primitive(v) for v in candidate]
    raise ModelInconsistencyError("multi-modular nullspace did not converge")


def _crt_candidate(residues: list[np.ndarray], moduli: list[int]) -> list[list[int]] | None:
    mod = math.prod(moduli)
    nvec = residues[0].shape[1]
    out = []
    for j in range(nvec):
        combined = [0] * residues[0].shape[0]
        for basis, p in zip(residues, moduli):
            rest = mod // p
            coef = rest * pow(rest, -1, p)
            col = basis[:, j]
            for i in range(len(combined)):
                combined[i] += int(col[i]) * coef
        fracs = []
        for u in combined:
            q = _rational_reconstruct(u % mod, mod)
            if q is None:
                return None
            fracs.append(q)
        den = math.lcm(*(q.denominator for q in fracs))
        out.append([int(q * den) for q in fracs])
    return out


# -- public API ---------------------------------------------------------------


def nullspace(
    m: SparseIntMatrix, method: str = "fraction-free", stats: SolverStats | None = None
) -> list[list[int]]:
    """Exact basis of ``{v : m v = 0}`` as primitive integer vectors.

    Each returned vector is verified by exact multiplication.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    stats = SolverStats() if stats is None else stats
    stats.method = method
    stats.dimension = stats.dimension or m.dim
    start = time.perf_counter()
    if method == "fraction-free":
        basis = _nullspace_fraction_free(m, stats)
    else:
        basis = _nullspace_modular(m, stats)
    for v in basis:
        if any(m.matvec(v)):
            raise ModelInconsistencyError("nullspace vector failed exact verification")
    stats.elapsed += time.perf_counter() - start
    return basis


def is_irreducible(m: SparseIntMatrix) -> bool:
    """True when the directed graph of off-diagonal entries is strongly connected."""
    if m.dim <= 1:
        return True
    rows, cols = [], []
    for r, c, _ in m.entries():
        if r != c:
            rows.append(r)
            cols.append(c)
    graph = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(m.dim, m.dim))
    return connected_components(graph, directed=True, connection="strong")[0] == 1


def symmetry_orbits(n: int, bc: BoundaryCondition | str) -> list[list[int]]:
    """Orbits of two-colour states under colour swap, reflection and (for the
    cylinder geometries) rotation, each sorted, ordered by smallest member."""
    bc = BoundaryCondition.parse(bc)
    basis = colour_basis(n, bc)
    d = len(basis)
    if n == 1:
        return [[0]]
    single = [[basis.index(reflect(p)) for p in basis]]
    if bc is not BoundaryCondition.CLOSED:
        single.append([basis.index(rotate(p)) for p in basis])

    parent = list(range(d * d))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    for c1 in range(d):
        for c2 in range(d):
            s = c1 * d + c2
            union(s, c2 * d + c1)
            for g in single:
                union(s, g[c1] * d + g[c2])
    groups: dict[int, list[int]] = {}
    for s in range(d * d):
        groups.setdefault(find(s), []).append(s)
    return sorted(groups.values(), key=lambda o: o[0])


def orbit_reduce(m: SparseIntMatrix, orbits: list[list[int]]) -> SparseIntMatrix:
    """Matrix of ``m`` on orbit-constant vectors, read off at representatives."""
    where = {}
    for k, orbit in enumerate(orbits):
        for s in orbit:
            where[s] = k
    rows = []
    for orbit in orbits:
        acc: dict[int, int] = {}
        for c, v in m.rows[orbit[0]].items():
            k = where[c]
            acc[k] = acc.get(k, 0) + v
        rows.append(acc)
    return SparseIntMatrix(len(orbits), rows)


@dataclass
class Groundstate:
    n: int
    bc: BoundaryCondition
    vector: list[int]
    stats: SolverStats = field(default_factory=SolverStats)

    @property
    def dimension(self) -> int:
        return len(self.vector)

    @property
    def components(self) -> list[tuple[int, int]]:
        """``(value, multiplicity)`` pairs by decreasing value."""
        return sorted(Counter(self.vector).items(), reverse=True)

    @property
    def total(self) -> int:
        return sum(self.vector)

    @property
    def minimum(self) -> int:
        return min(self.vector)


def _positive_primitive(v: list[int]) -> list[int]:
    v = _primitive(v)
    if v and v[0] < 0:
        v = [-t for t in v]
    if any(t <= 0 for t in v):
        raise PositivityError("groundstate vector is not strictly positive")
    return v


def groundstate(
    n: int,
    bc: BoundaryCondition | str,
    method: str = "fraction-free",
    reduce: bool = True,
) -> Groundstate:
    """Primitive, positive integer zero-energy vector of ``H(n, bc)``.

    With ``reduce=True`` uniqueness comes from strong connectivity of ``H``
    and the kernel is solved on symmetry orbits; with ``reduce=False`` the
    full matrix is eliminated and its nullity is read off directly.  Either
    way the final vector is checked against the full ``H``.
    """
    bc = BoundaryCondition.parse(bc)
    h = build_hamiltonian(n, bc)
    stats = SolverStats(dimension=h.dim)
    start = time.perf_counter()
    if reduce:
        if not is_irreducible(h):
            raise DegeneracyError(
                f"H({bc.value}, N={n}) is reducible; uniqueness of the zero mode is not guaranteed"
            )
        orbits = symmetry_orbits(n, bc)
        red = orbit_reduce(h, orbits)
        stats.reduced_dimension = red.dim
        basis = nullspace(red, method, stats)
        if len(basis) != 1:
            raise DegeneracyError(f"reduced kernel has dimension {len(basis)}")
        vec = [0] * h.dim
        for k, orbit in enumerate(orbits):
            for s in orbit:
                vec[s] = basis[0][k]
    else:
        stats.reduced_dimension = h.dim
        basis = nullspace(h, method, stats)
        if len(basis) != 1:
            raise DegeneracyError(
                f"H({bc.value}, N={n}) has a {len(basis)}-dimensional kernel"
            )
        vec = basis[0]
    vec = _positive_primitive(vec)
    if any(h.matvec(vec)):
        raise ModelInconsistencyError("lifted groundstate fails H psi = 0")
    stats.elapsed = time.perf_counter() - start
    stats.dimension = h.dim
    return Groundstate(n, bc, vec, stats)


def kernel_dimension(n: int, bc: BoundaryCondition | str, method: str = "fraction-free") -> int:
    """Nullity of the full Hamiltonian, by direct elimination."""
    return len(nullspace(build_hamiltonian(n, bc), method))


def swap_symmetric(gs: Groundstate) -> bool:
    perm = two_colour_basis(gs.n, gs.bc).swap_permutation()
    return all(gs.vector[s] == gs.vector[perm[s]] for s in range(len(perm)))

"""Link patterns and the single-colour Temperley-Lieb action.

Three geometries are supported:

* :class:`LinePattern` -- sites on a strip with reflecting ends (closed bc).
* :class:`AffinePattern` -- sites on a cylinder where an arc remembers
  which way round the cylinder it runs (periodic bc).
* :class:`DiskPattern` -- sites on a cylinder with the two routes of an
  arc identified, i.e. chords of a disk (identified connectivities).

All patterns store 0-based site indices.  ``None`` marks a defect (an
unpaired site).  Only the minimal defect sector is used: no defect for even
``N`` and a single defect for odd ``N``.

Affine patterns are stored through the partner function ``f`` of the
periodic cover of the cylinder: ``lift[i] = f(i)`` for ``0 <= i < N``, and
``f(i + N) = f(i) + N``.  An arc from site ``i`` to ``lift[i]`` outside
``[0, N)`` crosses the seam between site ``N-1`` and site ``0``.  Since
``f`` itself is the pattern, two equal annular diagrams always have equal
``lift`` tuples, so no further normalisation is needed.

Bond conventions: line bonds are numbered ``1..N-1`` and bond ``i`` joins
sites ``i-1`` and ``i``.  Cyclic bonds (affine and disk) are numbered
``0..N-1`` and bond ``i`` joins sites ``i`` and ``(i+1) mod N``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import comb
from typing import Generic, Iterable, Iterator, NamedTuple, Sequence, TypeVar, Union

from .errors import (
    InvalidBondError,
    ModelInconsistencyError,
    OutOfSectorError,
    UnsupportedSizeError,
)

DEFECT = None


@dataclass(frozen=True)
class LinePattern:
    partner: tuple[int | None, ...]

    @property
    def n(self) -> int:
        return len(self.partner)

    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, j in enumerate(self.partner) if j is not None and i < j]

    def defects(self) -> list[int]:
        return [i for i, j in enumerate(self.partner) if j is None]

    def pretty(self) -> str:
        return _render(self.partner, lambda i, j: (i < j, False))

    def is_valid(self) -> bool:
        return _valid_on_line(self.partner)


@dataclass(frozen=True)
class AffinePattern:
    lift: tuple[int | None, ...]

    @property
    def n(self) -> int:
        return len(self.lift)

    def f(self, x: int) -> int | None:
        """Partner of the cover point ``x`` (``None`` for a defect lift)."""
        q, r = divmod(x, len(self.lift))
        y = self.lift[r]
        return None if y is None else y + q * len(self.lift)

    def defects(self) -> list[int]:
        return [i for i, j in enumerate(self.lift) if j is None]

    def pretty(self) -> str:
        n = self.n

        def classify(i: int, y: int) -> tuple[bool, bool]:
            j = y % n
            return (i < j, not 0 <= y < n)

        return _render(self.lift, classify)

    def is_valid(self) -> bool:
        n = self.n
        defects = self.defects()
        if len(defects) != n % 2:
            return False
        lo = -2 * n
        hi = 3 * n
        for x in range(lo, hi):
            y = self.f(x)
            if y is None:
                continue
            if y == x or self.f(y) != x or abs(y - x) >= n:
                return False
            a, b = min(x, y), max(x, y)
            for z in range(a + 1, b):
                w = self.f(z)
                if w is None or not a < w < b:
                    return False
        return True


@dataclass(frozen=True)
class DiskPattern:
    partner: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.partner)

    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, j in enumerate(self.partner) if i < j]

    def pretty(self) -> str:
        return _render(self.partner, lambda i, j: (i < j, False))

    def is_valid(self) -> bool:
        return len(self.partner) % 2 == 0 and _valid_on_line(self.partner)


Pattern = Union[LinePattern, AffinePattern, DiskPattern]
P = TypeVar("P", LinePattern, AffinePattern, DiskPattern)


class GeneratorResult(NamedTuple):
    pattern: Pattern
    contractible_loops: int = 0
    winding_loops: int = 0

    @property
    def loops(self) -> int:
        return self.contractible_loops + self.winding_loops


def _render(partner: Sequence[int | None], classify) -> str:
    """Format a pattern as ``(1 2)(3 4)``, 1-based, ``d3`` for a defect and
    ``[w]`` after an arc that crosses the seam of the cylinder."""
    out = []
    for i, j in enumerate(partner):
        if j is None:
            out.append(f"d{i + 1}")
            continue
        first, winding = classify(i, j)
        if first:
            out.append(f"({i + 1} {j % len(partner) + 1})" + ("[w]" if winding else ""))
    return "".join(out)


def _valid_on_line(partner: Sequence[int | None]) -> bool:
    n = len(partner)
    if sum(1 for j in partner if j is None) != n % 2:
        return False
    stack: list[int] = []
    for i, j in enumerate(partner):
        if j is None:
            if stack:
                return False
            continue
        if not 0 <= j < n or j == i or partner[j] != i:
            return False
        if i < j:
            stack.append(j)
        elif not stack or stack.pop() != i:
            return False
    return not stack


def _join(partner: list, a: int, b: int) -> int:
    """Apply the TL generator joining sites ``a`` and ``b`` in place on a
    finite partner list.  Returns the number of closed loops (0 or 1)."""
    pa, pb = partner[a], partner[b]
    if pa == b:
        return 1
    if pa is None and pb is None:
        raise ModelInconsistencyError(f"two defects collide at sites {a}, {b}")
    partner[a], partner[b] = b, a
    if pa is not None:
        partner[pa] = pb
    if pb is not None:
        partner[pb] = pa
    return 0


# -- enumeration -------------------------------------------------------------


def _bracket_words(n: int, defects: int) -> Iterator[tuple[int | None, ...]]:
    """Noncrossing partial matchings of ``n`` points on a line with the given
    number of defects, none of them covered by an arc."""
    partner: list[int | None] = [None] * n
    stack: list[int] = []

    def rec(pos: int, left: int) -> Iterator[tuple[int | None, ...]]:
        if pos == n:
            if not stack and left == 0:
                yield tuple(partner)
            return
        remaining = n - pos
        # close
        if stack:
            j = stack.pop()
            partner[j], partner[pos] = pos, j
            yield from rec(pos + 1, left)
            partner[j] = partner[pos] = None
            stack.append(j)
        # open
        if len(stack) + 1 <= remaining - 1 - left:
            stack.append(pos)
            yield from rec(pos + 1, left)
            stack.pop()
        # defect
        if not stack and left > 0:
            partner[pos] = None
            yield from rec(pos + 1, left - 1)

    yield from rec(0, defects)


def line_dimension(n: int) -> int:
    return comb(n, n // 2) - (comb(n, n // 2 - 1) if n >= 2 else 0)


def affine_dimension(n: int) -> int:
    return comb(n, n // 2)


def disk_dimension(n: int) -> int:
    if n % 2:
        raise UnsupportedSizeError(f"disk patterns need an even number of sites, got {n}")
    k = n // 2
    return comb(2 * k, k) // (k + 1)


def enumerate_line(n: int) -> list[LinePattern]:
    """All minimal-sector line patterns on ``n`` sites, in bracket-word order
    (close before open before defect, scanning left to right)."""
    if n < 1:
        raise UnsupportedSizeError(f"need at least one site, got {n}")
    return [LinePattern(p) for p in _bracket_words(n, n % 2)]


def enumerate_disk(n: int) -> list[DiskPattern]:
    if n < 2 or n % 2:
        raise UnsupportedSizeError(
            f"identified connectivities need an even number of sites, got {n}"
        )
    return [DiskPattern(p) for p in _bracket_words(n, 0)]  # type: ignore[arg-type]


def affine_seed(n: int) -> AffinePattern:
    """Fully nested pairing, with the defect on the last site for odd ``n``."""
    m = n - (n % 2)
    lift: list[int | None] = [None] * n
    for k in range(m // 2):
        lift[k], lift[m - 1 - k] = m - 1 - k, k
    return AffinePattern(tuple(lift))


def enumerate_affine(n: int, max_size: int | None = None) -> list[AffinePattern]:
    """Affine basis as the breadth-first orbit of :func:`affine_seed` under
    all cyclic generators.

    ``max_size`` bounds the closure; overshooting it, or ending with a size
    other than ``C(n, n//2)``, raises :class:`ModelInconsistencyError`.
    """
    if n < 1:
        raise UnsupportedSizeError(f"need at least one site, got {n}")
    if n == 1:
        return [AffinePattern((None,))]
    expected = affine_dimension(n)
    bound = expected if max_size is None else max_size
    seed = affine_seed(n)
    seen = {seed: None}
    queue = deque([seed])
    while queue:
        p = queue.popleft()
        for i in range(n):
            q = apply_e_affine(p, i).pattern
            if q not in seen:
                seen[q] = None
                if len(seen) > bound:
                    raise ModelInconsistencyError(
                        f"affine closure for N={n} exceeded {bound} patterns"
                    )
                queue.append(q)
    if max_size is None and len(seen) != expected:
        raise ModelInconsistencyError(
            f"affine closure for N={n} has {len(seen)} patterns, expected {expected}"
        )
    return list(seen)


# -- generator action ---------------------------------------------------------


def apply_e_line(p: LinePattern, i: int) -> GeneratorResult:
    n = p.n
    if not 1 <= i <= n - 1:
        raise InvalidBondError(f"line bond {i} out of range 1..{n - 1}")
    partner = list(p.partner)
    loops = _join(partner, i - 1, i)
    return GeneratorResult(LinePattern(tuple(partner)) if not loops else p, loops, 0)


def apply_e_disk(p: DiskPattern, i: int) -> GeneratorResult:
    n = p.n
    if not 0 <= i < n:
        raise InvalidBondError(f"cyclic bond {i} out of range 0..{n - 1}")
    partner = list(p.partner)
    loops = _join(partner, i, (i + 1) % n)
    return GeneratorResult(DiskPattern(tuple(partner)) if not loops else p, loops, 0)


def apply_e_affine(p: AffinePattern, i: int) -> GeneratorResult:
    """Join cover points ``i + kN`` and ``i + 1 + kN`` for every ``k``."""
    n = p.n
    if not 0 <= i < n:
        raise InvalidBondError(f"cyclic bond {i} out of range 0..{n - 1}")
    if n == 1:
        # single defect joined to its own translate: nothing to pair
        raise ModelInconsistencyError("generator on a one-site cylinder")
    a, b = i, i + 1
    fa, fb = p.f(a), p.f(b)
    if fa == b:
        return GeneratorResult(p, 1, 0)
    if fa is None and fb is None:
        raise ModelInconsistencyError(f"two defects collide at bond {i}")
    lift = list(p.lift)

    def pair(x: int, y: int) -> None:
        lift[x % n] = y - (x - x % n)
        lift[y % n] = x - (y - y % n)

    if fa is not None and (fa - b) % n == 0:
        # a is tied to a translate of b: the old arc and the new cap close
        # a loop around the cylinder; everything else is untouched
        pair(a, b)
        return GeneratorResult(AffinePattern(tuple(lift)), 0, 1)
    pair(a, b)
    if fa is None:
        lift[fb % n] = None
    elif fb is None:
        lift[fa % n] = None
    else:
        pair(fa, fb)
    return GeneratorResult(AffinePattern(tuple(lift)), 0, 0)


# -- bases ----------------------------------------------------------------------


class PatternBasis(Generic[P]):
    """An ordered, indexable list of patterns."""

    def __init__(self, patterns: Iterable[P]):
        self.patterns: tuple[P, ...] = tuple(patterns)
        self._index = {p: k for k, p in enumerate(self.patterns)}
        if len(self._index) != len(self.patterns):
            raise ModelInconsistencyError("basis contains duplicate patterns")

    def __len__(self) -> int:
        return len(self.patterns)

    def __getitem__(self, k: int) -> P:
        return self.patterns[k]

    def __iter__(self) -> Iterator[P]:
        return iter(self.patterns)

    def __contains__(self, p: object) -> bool:
        return p in self._index

    def index(self, p: P) -> int:
        try:
            return self._index[p]
        except KeyError:
            raise OutOfSectorError(f"pattern {p.pretty()} is not in the basis") from None


def canonical_index(p: Pattern, basis: PatternBasis | Sequence[Pattern]) -> int:
    if not isinstance(basis, PatternBasis):
        basis = PatternBasis(basis)
    return basis.index(p)


# -- lattice symmetries -------------------------------------------------------


def reflect(p: P) -> P:
    """Mirror image under site ``x -> N-1-x``."""
    n = p.n
    if isinstance(p, AffinePattern):
        return AffinePattern(
            tuple(None if p.f(n - 1 - i) is None else n - 1 - p.f(n - 1 - i) for i in range(n))
        )
    src = p.partner
    new = tuple(None if src[n - 1 - i] is None else n - 1 - src[n - 1 - i] for i in range(n))
    return type(p)(new)


def rotate(p: AffinePattern | DiskPattern) -> AffinePattern | DiskPattern:
    """Shift every site by one step round the cylinder."""
    n = p.n
    if isinstance(p, AffinePattern):
        return AffinePattern(
            tuple(None if p.f(i - 1) is None else p.f(i - 1) + 1 for i in range(n))
        )
    if isinstance(p, DiskPattern):
        return DiskPattern(tuple((p.partner[(i - 1) % n] + 1) % n for i in range(n)))
    raise TypeError("line patterns have no rotation symmetry")

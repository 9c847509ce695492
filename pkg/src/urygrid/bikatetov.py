"""The ordered involutive semigroup of bi-Katetov matrices over a space.

A bi-Katetov matrix assigns a grid value to every ordered point pair so that
every row and every column is Katetov; geometrically it records the cross
distances of a space covered by two isometric copies of the base. The
product is the bounded min-plus composition, the involution is transposition,
the metric itself is the unity and the constant diameter is an absorbing
zero. Idempotents above the metric route through subsets; invertibles come
from isometries.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import _kernels
from .errors import GuardError, InvariantError, ValidationError
from .grid import add_capped
from .katetov import iso_group
from .spaces import FiniteMetricSpace, PartialSpec, shortest_path_completion

CLASSIFY_CANDIDATE_GUARD = 10 ** 9
SATURATION_GUARD = 100_000


@dataclass(frozen=True)
class BiKatetovMatrix:
    space: FiniteMetricSpace
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(tuple(r) for r in self.entries))
        n = self.space.n
        q = self.space.denominator
        if len(self.entries) != n or any(len(r) != n for r in self.entries):
            raise ValidationError(f"matrix is not {n}x{n}")
        for row in self.entries:
            for e in row:
                if not isinstance(e, int) or not 0 <= e <= q:
                    raise ValidationError(f"entry {e!r} is not an integer in [0, {q}]")
        if not _kernels.is_bikatetov(n, [e for r in self.entries for e in r],
                                     self.space.flat(), q):
            w = bikatetov_witness(self.space, self.entries)
            raise ValidationError(f"matrix is not bi-Katetov, witness {w}", w)

    def flat(self) -> list[int]:
        return [e for row in self.entries for e in row]

    def at(self, a: str, b: str) -> int:
        return self.entries[self.space.index(a)][self.space.index(b)]

    def __le__(self, other: "BiKatetovMatrix") -> bool:
        _same_base(self, other)
        return all(a <= b for ra, rb in zip(self.entries, other.entries)
                   for a, b in zip(ra, rb))

    def __ge__(self, other: "BiKatetovMatrix") -> bool:
        return other.__le__(self)


def bikatetov_witness(space: FiniteMetricSpace, entries):
    """One (x, y, z) triple violating a row or column Katetov condition,
    or None."""
    n = space.n
    for x in range(n):
        for y in range(n):
            for z in range(n):
                d = space.dist[y][z]
                a, b = entries[x][y], entries[x][z]
                if abs(a - b) > d or d > a + b:
                    return ("row", space.points[x], space.points[y], space.points[z])
                a, b = entries[y][x], entries[z][x]
                if abs(a - b) > d or d > a + b:
                    return ("col", space.points[x], space.points[y], space.points[z])
    return None


def is_bikatetov_matrix(space: FiniteMetricSpace, entries) -> bool:
    flat = [e for r in entries for e in r]
    return _kernels.is_bikatetov(space.n, flat, space.flat(), space.denominator)


def _same_base(f: BiKatetovMatrix, g: BiKatetovMatrix):
    if f.space != g.space:
        raise ValidationError("matrices live over different base spaces")


def _wrap(space: FiniteMetricSpace, flat: list[int]) -> BiKatetovMatrix:
    n = space.n
    return BiKatetovMatrix(space, tuple(tuple(flat[i * n + j] for j in range(n))
                                        for i in range(n)))


def metric_unit(space: FiniteMetricSpace) -> BiKatetovMatrix:
    """The metric itself; the unity of the semigroup."""
    return BiKatetovMatrix(space, space.dist)


def constant_zero(space: FiniteMetricSpace) -> BiKatetovMatrix:
    """The constant diameter; absorbs every product."""
    q = space.denominator
    return BiKatetovMatrix(space, tuple(tuple(q for _ in range(space.n))
                                        for _ in range(space.n)))


def product(f: BiKatetovMatrix, g: BiKatetovMatrix) -> BiKatetovMatrix:
    """Bounded min-plus composition: min over z of (f(x,z) + g(z,y)) capped
    at the diameter. Closed on bi-Katetov matrices."""
    _same_base(f, g)
    n = f.space.n
    return _wrap(f.space, _kernels.minplus_product(n, f.flat(), g.flat(),
                                                   f.space.denominator))


def star(f: BiKatetovMatrix) -> BiKatetovMatrix:
    """Transposition; the involution of the semigroup."""
    return BiKatetovMatrix(f.space, tuple(zip(*f.entries)))


def characterization_check(space: FiniteMetricSpace, entries) -> bool:
    """Algebraic membership test on a raw grid matrix: absorbs the metric on
    both sides and both star-products dominate the metric. Must agree with
    the direct row/column definition; that agreement is itself a test."""
    n = space.n
    q = space.denominator
    flat = [e for r in entries for e in r]
    if len(flat) != n * n or any(not isinstance(e, int) or not 0 <= e <= q for e in flat):
        raise ValidationError("matrix entries must be integers in [0, q]")
    d = space.flat()
    k = _kernels
    if k.minplus_product(n, flat, d, q) != flat:
        return False
    if k.minplus_product(n, d, flat, q) != flat:
        return False
    tflat = [flat[j * n + i] for i in range(n) for j in range(n)]
    left = k.minplus_product(n, tflat, flat, q)
    right = k.minplus_product(n, flat, tflat, q)
    return all(left[i] >= d[i] for i in range(n * n)) and \
        all(right[i] >= d[i] for i in range(n * n))


def _check_isometry(space: FiniteMetricSpace, perm) -> tuple[int, ...]:
    perm = tuple(perm)
    n = space.n
    if sorted(perm) != list(range(n)):
        raise ValidationError(f"{perm} is not a permutation of {n} points")
    for i in range(n):
        for j in range(n):
            if space.dist[i][j] != space.dist[perm[i]][perm[j]]:
                raise ValidationError(
                    f"permutation does not preserve d({space.points[i]},{space.points[j]})",
                    (i, j))
    return perm


def embed_isometry(space: FiniteMetricSpace, perm) -> BiKatetovMatrix:
    """The matrix (x, y) -> d(x, perm(y)). A monoid-with-involution morphism
    from the isometry group into the semigroup."""
    perm = _check_isometry(space, perm)
    return BiKatetovMatrix(space, tuple(
        tuple(space.dist[x][perm[y]] for y in range(space.n)) for x in range(space.n)))


def routing_idempotent(space: FiniteMetricSpace, subset) -> BiKatetovMatrix:
    """Cheapest capped route from x into the subset and back out to y; the
    idempotent of gluing two copies of the space along the subset. The empty
    subset gives the constant diameter."""
    idx = sorted(space.index(p) for p in subset)
    q = space.denominator
    if not idx:
        return constant_zero(space)
    n = space.n
    return BiKatetovMatrix(space, tuple(
        tuple(min(add_capped(space.dist[x][z], space.dist[z][y], q) for z in idx)
              for y in range(n)) for x in range(n)))


def inner_aut(perm, p: BiKatetovMatrix) -> BiKatetovMatrix:
    """Conjugation by an isometry: relabel both coordinates."""
    perm = _check_isometry(p.space, perm)
    n = p.space.n
    inv = [0] * n
    for i, t in enumerate(perm):
        inv[t] = i
    return BiKatetovMatrix(p.space, tuple(
        tuple(p.entries[inv[x]][inv[y]] for y in range(n)) for x in range(n)))


def act_left(perm, p: BiKatetovMatrix) -> BiKatetovMatrix:
    """Closed form of multiplying by an embedded isometry on the left:
    (x, y) -> p(perm^{-1}(x), y). Equals product(embed_isometry(perm), p)."""
    perm = _check_isometry(p.space, perm)
    n = p.space.n
    inv = [0] * n
    for i, t in enumerate(perm):
        inv[t] = i
    return BiKatetovMatrix(p.space, tuple(tuple(p.entries[inv[x]][y] for y in range(n))
                                          for x in range(n)))


def act_right(p: BiKatetovMatrix, perm) -> BiKatetovMatrix:
    """Closed form of multiplying by an embedded isometry on the right:
    (x, y) -> p(x, perm(y))."""
    perm = _check_isometry(p.space, perm)
    n = p.space.n
    return BiKatetovMatrix(p.space, tuple(tuple(p.entries[x][perm[y]] for y in range(n))
                                          for x in range(n)))


def invertible_isometry(f: BiKatetovMatrix):
    """The isometry whose embedding equals f, if one exists; invertible
    elements are exactly the embedded isometries, so None means f has no
    two-sided inverse."""
    for perm in iso_group(f.space):
        if embed_isometry(f.space, perm) == f:
            return perm
    return None


def greatest_idempotent(gens) -> BiKatetovMatrix | None:
    """Saturate the generators under the product (grid finiteness bounds
    the closure), keep the elements dominating the metric, and fold them
    together; the fold dominates everything it folded, so it is the greatest
    element, and it must come out idempotent."""
    gens = list(gens)
    if not gens:
        raise ValidationError("need at least one generator")
    space = gens[0].space
    for g in gens:
        _same_base(gens[0], g)
    seen = {g.entries: g for g in gens}
    changed = True
    while changed:
        changed = False
        items = list(seen.values())
        for a in items:
            for b in items:
                c = product(a, b)
                if c.entries not in seen:
                    seen[c.entries] = c
                    changed = True
                    if len(seen) > SATURATION_GUARD:
                        raise GuardError("saturation exceeded the guard")
    unit = metric_unit(space)
    above = [f for f in seen.values() if f >= unit]
    if not above:
        return None
    above.sort(key=lambda f: f.entries)
    top = above[0]
    for f in above[1:]:
        top = product(top, f)
    for f in above:
        if not top >= f:
            raise InvariantError("fold of the dominating elements is not greatest")
    if product(top, top) != top:
        raise InvariantError("greatest dominating element is not idempotent")
    return top


def classify_idempotents(space: FiniteMetricSpace,
                         candidate_guard: int = CLASSIFY_CANDIDATE_GUARD):
    """Exhaustively enumerate the grid idempotents dominating the metric and
    pair each with the subset it routes through (the zero set of its
    diagonal). Uses a depth-first sweep over matrix entries pruned by the
    row/column constraints; the pruning skips infeasible prefixes only, so
    the enumeration stays exhaustive."""
    n = space.n
    q = space.denominator
    if (q + 1) ** (n * n) > candidate_guard:
        raise GuardError(
            f"{(q + 1) ** (n * n)} candidate matrices exceed the guard {candidate_guard}")
    dist = space.dist
    found: list[BiKatetovMatrix] = []
    entries = [[0] * n for _ in range(n)]

    def rec(pos: int):
        if pos == n * n:
            for x in range(n):
                for y in range(n):
                    best = q
                    for z in range(n):
                        s = entries[x][z] + entries[z][y]
                        if s > q:
                            s = q
                        if s < best:
                            best = s
                    if best != entries[x][y]:
                        return
            found.append(BiKatetovMatrix(space, tuple(tuple(r) for r in entries)))
            return
        r, c = divmod(pos, n)
        for v in range(dist[r][c], q + 1):
            ok = True
            for c2 in range(c):
                w = entries[r][c2]
                if abs(v - w) > dist[c][c2] or dist[c][c2] > v + w:
                    ok = False
                    break
            if ok:
                for r2 in range(r):
                    w = entries[r2][c]
                    if abs(v - w) > dist[r][r2] or dist[r][r2] > v + w:
                        ok = False
                        break
            if ok:
                entries[r][c] = v
                rec(pos + 1)
        entries[r][c] = 0

    rec(0)
    out = []
    for p in found:
        subset = tuple(space.points[x] for x in range(n) if p.entries[x][x] == 0)
        if routing_idempotent(space, subset) != p:
            raise InvariantError(
                f"idempotent does not route through its diagonal zero set {subset}")
        out.append((p, subset))
    out.sort(key=lambda pair: pair[0].entries)
    return out


def enumerate_bikatetov(space: FiniteMetricSpace,
                        candidate_guard: int = CLASSIFY_CANDIDATE_GUARD):
    """Exhaustively enumerate every grid bi-Katetov matrix over the space,
    in lexicographic entry order. Depth-first with prefix pruning on the
    row/column constraints; only feasible for small spaces and grids."""
    n = space.n
    q = space.denominator
    if (q + 1) ** (n * n) > candidate_guard:
        raise GuardError(
            f"{(q + 1) ** (n * n)} candidate matrices exceed the guard {candidate_guard}")
    dist = space.dist
    found: list[BiKatetovMatrix] = []
    entries = [[0] * n for _ in range(n)]

    def rec(pos: int):
        if pos == n * n:
            found.append(BiKatetovMatrix(space, tuple(tuple(r) for r in entries)))
            return
        r, c = divmod(pos, n)
        for v in range(q + 1):
            ok = True
            for c2 in range(c):
                w = entries[r][c2]
                if abs(v - w) > dist[c][c2] or dist[c][c2] > v + w:
                    ok = False
                    break
            if ok:
                for r2 in range(r):
                    w = entries[r2][c]
                    if abs(v - w) > dist[r][r2] or dist[r][r2] > v + w:
                        ok = False
                        break
            if ok:
                entries[r][c] = v
                rec(pos + 1)
        entries[r][c] = 0

    rec(0)
    return found


def product_via_amalgam(p: BiKatetovMatrix, q_: BiKatetovMatrix) -> BiKatetovMatrix:
    """Independent geometric route to the product: lay out three copies of
    the base, wire copy one to copy two by p and copy two to copy three by
    q_, complete the missing outer block by capped shortest chains, and read
    that block off. Must equal product(p, q_) exactly."""
    _same_base(p, q_)
    space = p.space
    n = space.n
    q = space.denominator
    names = tuple(space.points) + tuple(f"{x}'" for x in space.points) \
        + tuple(f"{x}''" for x in space.points)
    m = 3 * n
    cells: list[list[int | None]] = [[None] * m for _ in range(m)]
    for i in range(n):
        for j in range(n):
            d = space.dist[i][j]
            cells[i][j] = d
            cells[n + i][n + j] = d
            cells[2 * n + i][2 * n + j] = d
            cells[i][n + j] = p.entries[i][j]
            cells[n + j][i] = p.entries[i][j]
            cells[n + i][2 * n + j] = q_.entries[i][j]
            cells[2 * n + j][n + i] = q_.entries[i][j]
    spec = PartialSpec(names, q, tuple(tuple(r) for r in cells))
    closed = shortest_path_completion(spec)
    for i in range(m):
        for j in range(m):
            want = cells[i][j]
            if want is not None and closed.dist[i][j] != want:
                raise InvariantError(
                    f"three-copy layout is not a pseudometric at ({names[i]},{names[j]})")
    block = tuple(tuple(closed.dist[i][2 * n + j] for j in range(n)) for i in range(n))
    return BiKatetovMatrix(space, block)


def random_bikatetov_below(upper: BiKatetovMatrix, rng: random.Random,
                           sweeps: int = 2) -> BiKatetovMatrix:
    """Random bi-Katetov matrix entrywise at most ``upper``: the same Gibbs
    sweep started at the ceiling and clamped by it."""
    space = upper.space
    n = space.n
    q = space.denominator
    e = [list(r) for r in upper.entries]
    for _ in range(sweeps):
        for x in range(n):
            for y in range(n):
                lo, hi = 0, upper.entries[x][y]
                for z in range(n):
                    if z != y:
                        d = space.dist[y][z]
                        w = e[x][z]
                        lo = max(lo, w - d, d - w)
                        hi = min(hi, w + d)
                    if z != x:
                        d = space.dist[x][z]
                        w = e[z][y]
                        lo = max(lo, w - d, d - w)
                        hi = min(hi, w + d)
                hi = min(hi, upper.entries[x][y])
                e[x][y] = rng.randint(lo, hi)
    return BiKatetovMatrix(space, tuple(tuple(r) for r in e))


def random_bikatetov(space: FiniteMetricSpace, rng: random.Random,
                     sweeps: int = 3) -> BiKatetovMatrix:
    """Exact sampler: start at the metric and re-draw entries uniformly
    inside their feasible interval given all the others, several sweeps.
    Every intermediate matrix is bi-Katetov, so validity is never repaired
    after the fact."""
    n = space.n
    q = space.denominator
    e = [list(r) for r in space.dist]
    for _ in range(sweeps):
        for x in range(n):
            for y in range(n):
                lo, hi = 0, q
                for z in range(n):
                    if z != y:
                        d = space.dist[y][z]
                        w = e[x][z]
                        lo = max(lo, w - d, d - w)
                        hi = min(hi, w + d)
                    if z != x:
                        d = space.dist[x][z]
                        w = e[z][y]
                        lo = max(lo, w - d, d - w)
                        hi = min(hi, w + d)
                e[x][y] = rng.randint(lo, hi)
    return BiKatetovMatrix(space, tuple(tuple(r) for r in e))

"""Finite metric and pseudometric spaces with exact grid distances.

A space carries named points and a square matrix of integer numerators over
a shared denominator q; distances are the rationals entry/q and the diameter
never exceeds 1 (entries stay in [0, q]). Everything downstream (Katetov
extensions, bounded min-plus products, amalgams) operates on these integers,
so identities are checked exactly rather than within tolerances.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations

from ._kernels import INF, floyd_warshall_capped
from .errors import ValidationError
from .grid import lcm


@dataclass(frozen=True)
class Violation:
    kind: str  # shape | range | diagonal | symmetry | triangle | identity
    message: str
    witness: tuple = ()

    @property
    def structural(self) -> bool:
        return self.kind in ("shape", "range")


@dataclass(frozen=True)
class ValidationReport:
    problems: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.problems

    @property
    def structural(self) -> tuple[Violation, ...]:
        return tuple(v for v in self.problems if v.structural)

    @property
    def axiom_violations(self) -> tuple[Violation, ...]:
        return tuple(v for v in self.problems if not v.structural)

    def __str__(self) -> str:
        if self.ok:
            return "valid"
        return "; ".join(v.message for v in self.problems)


def validate_space(points, denominator, dist, pseudo: bool = False) -> ValidationReport:
    """Check a candidate space. Structural problems (bad shape, entries off
    the grid) are reported with kinds distinct from metric axiom violations;
    axioms are only checked once the shape is sound."""
    problems: list[Violation] = []
    points = list(points)
    n = len(points)
    if n == 0:
        problems.append(Violation("shape", "space needs at least one point"))
    if len(set(points)) != n:
        problems.append(Violation("shape", "duplicate point names"))
    if not isinstance(denominator, int) or denominator < 1:
        problems.append(Violation("shape", f"denominator must be a positive integer, got {denominator!r}"))
        return ValidationReport(tuple(problems))
    rows = list(dist)
    if len(rows) != n or any(len(row) != n for row in rows):
        problems.append(Violation("shape", f"distance matrix is not {n}x{n}"))
        return ValidationReport(tuple(problems))
    for i in range(n):
        for j in range(n):
            e = rows[i][j]
            if not isinstance(e, int) or isinstance(e, bool) or not 0 <= e <= denominator:
                problems.append(Violation(
                    "range",
                    f"entry ({points[i]},{points[j]}) = {e!r} is not an integer in [0, {denominator}]",
                    (i, j)))
    if any(v.kind == "range" for v in problems):
        return ValidationReport(tuple(problems))
    for i in range(n):
        if rows[i][i] != 0:
            problems.append(Violation("diagonal", f"d({points[i]},{points[i]}) = {rows[i][i]} != 0", (i,)))
    for i in range(n):
        for j in range(i + 1, n):
            if rows[i][j] != rows[j][i]:
                problems.append(Violation(
                    "symmetry",
                    f"d({points[i]},{points[j]}) = {rows[i][j]} but d({points[j]},{points[i]}) = {rows[j][i]}",
                    (i, j)))
            elif not pseudo and rows[i][j] == 0:
                problems.append(Violation(
                    "identity",
                    f"distinct points {points[i]}, {points[j]} at distance 0 in a metric space",
                    (i, j)))
    for i, j, k in combinations(range(n), 3):
        for a, b, c in ((i, j, k), (i, k, j), (j, k, i)):
            if rows[a][b] > rows[a][c] + rows[c][b]:
                problems.append(Violation(
                    "triangle",
                    f"d({points[a]},{points[b]}) = {rows[a][b]} > "
                    f"{rows[a][c]} + {rows[c][b]} via {points[c]}",
                    (a, b, c)))
    return ValidationReport(tuple(problems))


@dataclass(frozen=True)
class FiniteMetricSpace:
    """Named points with an exact grid distance matrix, diameter <= 1.

    ``pseudo`` permits zero distances between distinct points; with the
    default False the constructor insists on a genuine metric.
    """

    points: tuple[str, ...]
    denominator: int
    dist: tuple[tuple[int, ...], ...]
    pseudo: bool = False
    _index: dict = field(init=False, repr=False, compare=False, hash=False, default=None)

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "dist", tuple(tuple(row) for row in self.dist))
        report = validate_space(self.points, self.denominator, self.dist, self.pseudo)
        if not report.ok:
            raise ValidationError(f"invalid space: {report}", report)
        object.__setattr__(self, "_index", {p: i for i, p in enumerate(self.points)})

    @property
    def n(self) -> int:
        return len(self.points)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValidationError(f"unknown point {name!r}") from None

    def d(self, i: int, j: int) -> int:
        return self.dist[i][j]

    def distance(self, a: str, b: str) -> int:
        return self.dist[self.index(a)][self.index(b)]

    def flat(self) -> list[int]:
        return [e for row in self.dist for e in row]

    def rescaled(self, new_denominator: int) -> "FiniteMetricSpace":
        """Same space over a finer grid; new denominator must be a multiple."""
        if new_denominator == self.denominator:
            return self
        if new_denominator % self.denominator != 0:
            raise ValidationError(
                f"cannot rescale grid {self.denominator} to {new_denominator}")
        f = new_denominator // self.denominator
        return FiniteMetricSpace(
            self.points, new_denominator,
            tuple(tuple(e * f for e in row) for row in self.dist), self.pseudo)

    def restrict(self, names) -> "FiniteMetricSpace":
        idx = [self.index(p) for p in names]
        return FiniteMetricSpace(
            tuple(self.points[i] for i in idx), self.denominator,
            tuple(tuple(self.dist[i][j] for j in idx) for i in idx), self.pseudo)

    def with_point(self, name: str, row, pseudo: bool | None = None) -> "FiniteMetricSpace":
        """Extension by one point whose distances to the old points are ``row``."""
        if name in self._index:
            raise ValidationError(f"point name {name!r} already used")
        row = tuple(row)
        new_rows = tuple(old + (row[i],) for i, old in enumerate(self.dist))
        new_rows += (row + (0,),)
        if pseudo is None:
            pseudo = self.pseudo
        return FiniteMetricSpace(self.points + (name,), self.denominator, new_rows, pseudo)


def common_grid(x: FiniteMetricSpace, y: FiniteMetricSpace):
    """Rescale two spaces to their least common denominator."""
    q = lcm(x.denominator, y.denominator)
    return x.rescaled(q), y.rescaled(q)


UNSPECIFIED = None


@dataclass(frozen=True)
class PartialSpec:
    """A space candidate whose matrix may leave entries unspecified (None).
    Specified entries must be symmetric with a zero diagonal."""

    points: tuple[str, ...]
    denominator: int
    entries: tuple[tuple[int | None, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "entries", tuple(tuple(row) for row in self.entries))
        n = len(self.points)
        if len(set(self.points)) != n or n == 0:
            raise ValidationError("points must be nonempty and unique")
        if len(self.entries) != n or any(len(r) != n for r in self.entries):
            raise ValidationError(f"entry matrix is not {n}x{n}")
        for i in range(n):
            if self.entries[i][i] not in (0, None):
                raise ValidationError(f"nonzero diagonal at {self.points[i]}")
            for j in range(n):
                e = self.entries[i][j]
                if e is None:
                    continue
                if not isinstance(e, int) or not 0 <= e <= self.denominator:
                    raise ValidationError(
                        f"entry ({self.points[i]},{self.points[j]}) = {e!r} "
                        f"is not an integer in [0, {self.denominator}]")
                if self.entries[j][i] is not None and self.entries[j][i] != e:
                    raise ValidationError(
                        f"asymmetric specification at ({self.points[i]},{self.points[j]})")


def shortest_path_completion(spec: PartialSpec, unreachable: str = "error") -> FiniteMetricSpace:
    """Fill the unspecified entries with minimum chain sums over specified
    edges, capped at the denominator.

    This is the largest pseudometric below the specification. A pair with no
    connecting chain raises by default; ``unreachable="cap"`` fills it with
    the diameter cap instead (the diameter-1 amalgamation convention).
    """
    n = len(spec.points)
    q = spec.denominator
    w = [INF] * (n * n)
    for i in range(n):
        w[i * n + i] = 0
        for j in range(n):
            e = spec.entries[i][j]
            if e is not None:
                w[i * n + j] = e
    closed = floyd_warshall_capped(n, w, q)
    for i in range(n):
        for j in range(n):
            if closed[i * n + j] >= INF:
                if unreachable == "cap":
                    closed[i * n + j] = q
                else:
                    raise ValidationError(
                        f"no chain of specified entries connects "
                        f"{spec.points[i]} and {spec.points[j]}", (spec.points[i], spec.points[j]))
    rows = tuple(tuple(closed[i * n + j] for j in range(n)) for i in range(n))
    pseudo = any(rows[i][j] == 0 for i in range(n) for j in range(n) if i != j)
    return FiniteMetricSpace(spec.points, q, rows, pseudo=pseudo)


@dataclass(frozen=True)
class QuotientResult:
    space: FiniteMetricSpace
    classes: tuple[tuple[str, ...], ...]
    projection: dict


def quotient_pseudometric(space: FiniteMetricSpace) -> QuotientResult:
    """Identify points at distance zero. The zero relation is transitive by
    the triangle inequality, so the classes are well defined; each class is
    named after its first member and the projection is distance preserving."""
    n = space.n
    rep = list(range(n))
    for i in range(n):
        for j in range(i):
            if space.dist[i][j] == 0:
                rep[i] = rep[j]
                break
    classes: dict[int, list[int]] = {}
    for i in range(n):
        classes.setdefault(rep[i], []).append(i)
    reps = sorted(classes)
    names = tuple(space.points[r] for r in reps)
    rows = tuple(tuple(space.dist[a][b] for b in reps) for a in reps)
    out = FiniteMetricSpace(names, space.denominator, rows, pseudo=False)
    projection = {space.points[i]: space.points[rep[i]] for i in range(n)}
    return QuotientResult(
        out, tuple(tuple(space.points[i] for i in classes[r]) for r in reps), projection)


def amalgam(x: FiniteMetricSpace, y: FiniteMetricSpace, glue: dict) -> FiniteMetricSpace:
    """Glue two spaces along an isometry between a subspace of x and one of y.

    The union keeps all points of x plus the unglued points of y; missing
    cross distances are completed by shortest chains through the glued part
    and capped at the shared denominator. The two restrictions then embed
    both inputs isometrically.
    """
    x, y = common_grid(x, y)
    q = x.denominator
    for a in glue:
        x.index(a)
    for b in glue.values():
        y.index(b)
    if len(set(glue.values())) != len(glue):
        raise ValidationError("glue is not injective")
    for (a1, b1) in glue.items():
        for (a2, b2) in glue.items():
            if x.distance(a1, a2) != y.distance(b1, b2):
                raise ValidationError(
                    f"glue is not distance-preserving on ({a1},{a2}): "
                    f"{x.distance(a1, a2)} vs {y.distance(b1, b2)}",
                    ((a1, a2), (b1, b2)))
    glued_range = set(glue.values())
    y_rest = [p for p in y.points if p not in glued_range]
    clash = set(y_rest) & set(x.points)
    if clash:
        raise ValidationError(f"unglued point names appear in both spaces: {sorted(clash)}")
    names = tuple(x.points) + tuple(y_rest)
    to_y = {a: b for a, b in glue.items()}
    n = len(names)
    entries: list[list[int | None]] = [[None] * n for _ in range(n)]
    for i, a in enumerate(names):
        for j, b in enumerate(names):
            if a in x._index and b in x._index:
                entries[i][j] = x.distance(a, b)
            elif a not in x._index and b not in x._index:
                entries[i][j] = y.distance(a, b)
            else:
                # cross pair: specified only when one side is glued
                xa, yb = (a, b) if a in x._index else (b, a)
                if xa in to_y:
                    entries[i][j] = y.distance(to_y[xa], yb)
    spec = PartialSpec(names, q, tuple(tuple(r) for r in entries))
    return shortest_path_completion(spec, unreachable="cap")


def random_grid_space(n: int, q: int, seed: int) -> FiniteMetricSpace:
    """Deterministic random metric space on n points over the grid 1/q.

    Generator notes: draw a symmetric integer matrix uniform in [1, q] off
    the diagonal, close it with capped shortest paths to force the triangle
    inequality, then sweep the entries once more in row order, re-sampling
    each uniformly inside its exact feasible interval given the others.
    The second pass undoes the bias toward path-like metrics that closure
    alone would leave.
    """
    if n < 1 or q < 1:
        raise ValidationError("need n >= 1 and q >= 1")
    rng = random.Random(seed)
    names = tuple(f"p{i}" for i in range(n))
    if n == 1:
        return FiniteMetricSpace(names, q, ((0,),))
    w = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            w[i][j] = w[j][i] = rng.randint(1, q)
    flat = floyd_warshall_capped(n, [e for row in w for e in row], q)
    d = [[flat[i * n + j] for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            lo, hi = 1, q
            for k in range(n):
                if k in (i, j):
                    continue
                lo = max(lo, abs(d[i][k] - d[k][j]))
                hi = min(hi, d[i][k] + d[k][j])
            d[i][j] = d[j][i] = rng.randint(lo, hi)
    return FiniteMetricSpace(names, q, tuple(tuple(row) for row in d))

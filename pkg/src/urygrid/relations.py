"""Relations on the space of non-expanding grid functions.

The carrier is every function from the base points to the grid that changes
by at most the distance between its arguments. Isometries of the base act on
the carrier, each action has a graph, and graphs compose like relations.
A relation maps back to a matrix over the base by taking, entrywise, the
largest gap |second(x) - first(y)| over its member pairs; conversely a
bi-Katetov matrix carves out the relation of all pairs within its bounds.
On the grid these two maps invert each other exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bikatetov import BiKatetovMatrix
from .errors import GuardError, ValidationError
from .katetov import iso_group
from .spaces import FiniteMetricSpace

CARRIER_GUARD = 200_000


@dataclass(frozen=True)
class GridFunctionSpace:
    """All non-expanding functions base -> {0..q}, enumerated once in
    lexicographic order; relations below are sets of index pairs into
    ``members``."""

    space: FiniteMetricSpace
    members: tuple[tuple[int, ...], ...]

    def index(self, values) -> int:
        values = tuple(values)
        try:
            return self.members.index(values)
        except ValueError:
            raise ValidationError(f"{values} is not non-expanding here") from None

    @property
    def size(self) -> int:
        return len(self.members)


def enumerate_carrier(space: FiniteMetricSpace, guard: int = CARRIER_GUARD) -> GridFunctionSpace:
    """Exhaustive depth-first enumeration with the non-expanding constraint
    pruned prefixwise; deterministic lexicographic order."""
    n = space.n
    q = space.denominator
    if (q + 1) ** n > guard:
        raise GuardError(f"{(q + 1) ** n} candidate functions exceed the guard {guard}")
    out: list[tuple[int, ...]] = []
    prefix: list[int] = []

    def rec():
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        j = len(prefix)
        lo, hi = 0, q
        for t in range(j):
            d = space.dist[t][j]
            lo = max(lo, prefix[t] - d)
            hi = min(hi, prefix[t] + d)
        for v in range(lo, hi + 1):
            prefix.append(v)
            rec()
            prefix.pop()

    rec()
    return GridFunctionSpace(space, tuple(out))


def act(carrier: GridFunctionSpace, perm, member_idx: int) -> int:
    """Index of the function x -> f(perm^{-1}(x)); the left action of an
    isometry on the carrier."""
    n = carrier.space.n
    perm = tuple(perm)
    inv = [0] * n
    for i, t in enumerate(perm):
        inv[t] = i
    f = carrier.members[member_idx]
    return carrier.index(tuple(f[inv[x]] for x in range(n)))


Relation = frozenset  # of (member index, member index) pairs


def action_graph(carrier: GridFunctionSpace, perm) -> Relation:
    """The graph {(f, perm.f)} of the action of an isometry on the carrier."""
    return frozenset((i, act(carrier, perm, i)) for i in range(carrier.size))


def compose(r: Relation, s: Relation) -> Relation:
    """Same convention as relation composition elsewhere: rightmost first."""
    by_first: dict[int, list[int]] = {}
    for (z, y) in r:
        by_first.setdefault(z, []).append(y)
    out = set()
    for (x, z) in s:
        for y in by_first.get(z, ()):
            out.add((x, y))
    return frozenset(out)


def invert(r: Relation) -> Relation:
    return frozenset((y, x) for (x, y) in r)


def matrix_of_relation(carrier: GridFunctionSpace, r: Relation) -> tuple[tuple[int, ...], ...]:
    """Entrywise largest gap sup |second(x) - first(y)| over the relation's
    pairs. Raw matrix; the caller decides whether it is bi-Katetov."""
    if not r:
        raise ValidationError("the empty relation has no matrix")
    n = carrier.space.n
    members = carrier.members
    out = [[0] * n for _ in range(n)]
    for (pi, qi) in r:
        p, q_ = members[pi], members[qi]
        for x in range(n):
            qx = q_[x]
            for y in range(n):
                gap = qx - p[y]
                if gap < 0:
                    gap = -gap
                if gap > out[x][y]:
                    out[x][y] = gap
    return tuple(tuple(row) for row in out)


def relation_of_matrix(carrier: GridFunctionSpace, f: BiKatetovMatrix) -> Relation:
    """All carrier pairs (p, q) with |q(x) - p(y)| <= f(x, y) everywhere.
    Round-tripping through matrix_of_relation recovers f exactly."""
    if f.space != carrier.space:
        raise ValidationError("matrix and carrier disagree on the base space")
    n = carrier.space.n
    members = carrier.members
    ent = f.entries
    out = set()
    for pi, p in enumerate(members):
        for qi, q_ in enumerate(members):
            if all(abs(q_[x] - p[y]) <= ent[x][y] for x in range(n) for y in range(n)):
                out.add((pi, qi))
    return frozenset(out)


def restriction_equivalence(carrier: GridFunctionSpace, subset) -> Relation:
    """Pairs of functions agreeing on the subset; for the empty subset this
    is everything. These are the relations the routing idempotents map to."""
    idx = [carrier.space.index(p) for p in subset]
    out = set()
    for i, p in enumerate(carrier.members):
        for j, q_ in enumerate(carrier.members):
            if all(p[t] == q_[t] for t in idx):
                out.add((i, j))
    return frozenset(out)


def is_equivalence(carrier: GridFunctionSpace, r: Relation) -> bool:
    size = carrier.size
    if any((i, i) not in r for i in range(size)):
        return False
    if invert(r) != r:
        return False
    return compose(r, r) == r


def isometry_graphs(carrier: GridFunctionSpace):
    """Action graphs of the whole isometry group, keyed by permutation."""
    return {perm: action_graph(carrier, perm) for perm in iso_group(carrier.space)}

"""Pure-Python kernels.

Same contract as the compiled extension in ``_ext.pyx``; matrices come in as
flat row-major lists of non-negative ints, words as parallel letter/sign
lists. These are the reference implementations the compiled versions are
tested against.
"""

from __future__ import annotations

BACKEND = "python"

INF = 1 << 30


def minplus_product(n: int, f: list[int], g: list[int], cap: int) -> list[int]:
    """Entrywise min over z of min(f[x][z] + g[z][y], cap)."""
    out = [0] * (n * n)
    for x in range(n):
        row = x * n
        for y in range(n):
            best = cap
            for z in range(n):
                s = f[row + z] + g[z * n + y]
                if s > cap:
                    s = cap
                if s < best:
                    best = s
            out[row + y] = best
    return out


def is_bikatetov(n: int, f: list[int], d: list[int], cap: int) -> bool:
    """Rows and columns of f are both Katetov on (range(n), d)."""
    for x in range(n):
        row = x * n
        for y in range(n):
            for z in range(y + 1, n):
                dyz = d[y * n + z]
                a, b = f[row + y], f[row + z]
                if abs(a - b) > dyz or dyz > a + b:
                    return False
                a, b = f[y * n + x], f[z * n + x]
                if abs(a - b) > dyz or dyz > a + b:
                    return False
    return True


def floyd_warshall_capped(n: int, w: list[int], cap: int) -> list[int]:
    """All-pairs shortest chains with saturating addition at cap.

    Missing edges are INF; an entry still INF afterwards is unreachable.
    The result is the largest pseudometric below the specified entries.
    """
    dist = list(w)
    for i in range(n):
        dist[i * n + i] = 0
    for k in range(n):
        kn = k * n
        for i in range(n):
            dik = dist[i * n + k]
            if dik >= INF:
                continue
            inn = i * n
            for j in range(n):
                dkj = dist[kn + j]
                if dkj >= INF:
                    continue
                s = dik + dkj
                if s > cap:
                    s = cap
                if s < dist[inn + j]:
                    dist[inn + j] = s
    return dist


def graev_norm_dp(letters: list[int], signs: list[int], nl: int,
                  dist: list[int], weights: list[int]) -> int:
    """Interval dynamic program over the leftmost position.

    P[i][j] = min cost of positions i..j-1: either position i is unpaired
    and pays its weight, or it arcs to an opposite-sign position m, paying
    the letter distance plus the nested interior plus the disjoint tail.
    """
    n = len(letters)
    P = [[0] * (n + 1) for _ in range(n + 1)]
    for span in range(1, n + 1):
        for i in range(n - span + 1):
            j = i + span
            li = letters[i]
            best = weights[li] + P[i + 1][j]
            si = signs[i]
            for m in range(i + 1, j):
                if signs[m] == -si:
                    c = dist[li * nl + letters[m]] + P[i + 1][m] + P[m + 1][j]
                    if c < best:
                        best = c
            P[i][j] = best
    return P[0][n]


def iter_pairings(signs: list[int], i: int, j: int):
    """Yield every non-crossing opposite-sign pairing of positions i..j-1,
    each as a list of (a, b) arcs, each pairing exactly once."""
    if i >= j:
        yield []
        return
    yield from iter_pairings(signs, i + 1, j)
    for m in range(i + 1, j):
        if signs[m] == -signs[i]:
            for inner in iter_pairings(signs, i + 1, m):
                for outer in iter_pairings(signs, m + 1, j):
                    yield inner + outer + [(i, m)]


def graev_norm_bruteforce(letters: list[int], signs: list[int], nl: int,
                          dist: list[int], weights: list[int]) -> int:
    """Minimum Graev sum over all pairings, each pairing summed from scratch:
    paired positions contribute the letter distance, unpaired ones their
    weight. Deliberately enumerative; the oracle side of the DP."""
    n = len(letters)
    best = INF
    for pairing in iter_pairings(signs, 0, n):
        paired = 0
        total = 0
        for a, b in pairing:
            total += dist[letters[a] * nl + letters[b]]
            paired |= (1 << a) | (1 << b)
        for p in range(n):
            if not paired & (1 << p):
                total += weights[letters[p]]
        if total < best:
            best = total
    return best


def graev_agree_exhaustive(nl: int, dist: list[int], weights: list[int],
                           max_len: int, prefix_letters=(), prefix_signs=()
                           ) -> tuple[int, int]:
    """Check graev_norm_dp == graev_norm_bruteforce on every (letter, sign)
    sequence of length <= max_len extending the given prefix (the prefix
    itself included). Returns (words checked, mismatches). The prefix lets
    callers partition the sweep across workers by first symbol."""
    letters: list[int] = list(prefix_letters)
    signs: list[int] = list(prefix_signs)
    checked = 0
    mismatches = 0

    def rec() -> None:
        nonlocal checked, mismatches
        checked += 1
        if graev_norm_dp(letters, signs, nl, dist, weights) != \
                graev_norm_bruteforce(letters, signs, nl, dist, weights):
            mismatches += 1
        if len(letters) == max_len:
            return
        for letter in range(nl):
            for s in (1, -1):
                letters.append(letter)
                signs.append(s)
                rec()
                letters.pop()
                signs.pop()

    rec()
    return checked, mismatches

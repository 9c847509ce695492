# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernels; same contract as the pure fallback in _fallback.py.

Matrices arrive as flat row-major lists of non-negative ints, words as
parallel letter/sign lists. Values stay well inside C long range: grid
numerators are small and INF is 2**30.
"""

from libc.stdlib cimport free, malloc

BACKEND = "compiled"
INF = 1 << 30

cdef long C_INF = 1 << 30


cdef long* _copy(seq) except NULL:
    cdef Py_ssize_t n = len(seq)
    cdef long* out = <long*> malloc(n * sizeof(long) if n else sizeof(long))
    if out == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        out[i] = seq[i]
    return out


def minplus_product(int n, f, g, long cap):
    """Entrywise min over z of min(f[x][z] + g[z][y], cap)."""
    cdef long* fa = _copy(f)
    cdef long* ga = _copy(g)
    cdef list out = [0] * (n * n)
    cdef int x, y, z
    cdef long best, s
    try:
        for x in range(n):
            for y in range(n):
                best = cap
                for z in range(n):
                    s = fa[x * n + z] + ga[z * n + y]
                    if s > cap:
                        s = cap
                    if s < best:
                        best = s
                out[x * n + y] = best
        return out
    finally:
        free(fa)
        free(ga)


def is_bikatetov(int n, f, d, long cap):
    """Rows and columns of f are both Katetov on (range(n), d)."""
    cdef long* fa = _copy(f)
    cdef long* da = _copy(d)
    cdef int x, y, z
    cdef long a, b, dyz, diff
    cdef bint ok = True
    try:
        for x in range(n):
            if not ok:
                break
            for y in range(n):
                if not ok:
                    break
                for z in range(y + 1, n):
                    dyz = da[y * n + z]
                    a = fa[x * n + y]
                    b = fa[x * n + z]
                    diff = a - b if a > b else b - a
                    if diff > dyz or dyz > a + b:
                        ok = False
                        break
                    a = fa[y * n + x]
                    b = fa[z * n + x]
                    diff = a - b if a > b else b - a
                    if diff > dyz or dyz > a + b:
                        ok = False
                        break
        return bool(ok)
    finally:
        free(fa)
        free(da)


def floyd_warshall_capped(int n, w, long cap):
    """All-pairs shortest chains with saturating addition at cap; INF marks
    a missing edge and survives as unreachable."""
    cdef long* dist = _copy(w)
    cdef int i, j, k
    cdef long dik, dkj, s
    cdef list out
    try:
        for i in range(n):
            dist[i * n + i] = 0
        for k in range(n):
            for i in range(n):
                dik = dist[i * n + k]
                if dik >= C_INF:
                    continue
                for j in range(n):
                    dkj = dist[k * n + j]
                    if dkj >= C_INF:
                        continue
                    s = dik + dkj
                    if s > cap:
                        s = cap
                    if s < dist[i * n + j]:
                        dist[i * n + j] = s
        out = [0] * (n * n)
        for i in range(n * n):
            out[i] = dist[i]
        return out
    finally:
        free(dist)


cdef long _dp(int n, int* letters, int* signs, int nl, long* dist,
              long* weights, long* table) noexcept nogil:
    """Interval dynamic program over the leftmost position. ``table`` holds
    (n+1)*(n+1) slots."""
    cdef int span, i, j, m, li
    cdef long best, c
    for i in range(n + 1):
        for j in range(n + 1):
            table[i * (n + 1) + j] = 0
    for span in range(1, n + 1):
        for i in range(0, n - span + 1):
            j = i + span
            li = letters[i]
            best = weights[li] + table[(i + 1) * (n + 1) + j]
            for m in range(i + 1, j):
                if signs[m] == -signs[i]:
                    c = dist[li * nl + letters[m]] \
                        + table[(i + 1) * (n + 1) + m] \
                        + table[(m + 1) * (n + 1) + j]
                    if c < best:
                        best = c
            table[i * (n + 1) + j] = best
    return table[n]


cdef long _bf(int n, int* letters, int* signs, int nl, long* dist,
              long* weights, int* stack, int* choice, int* depths,
              long* accs, int* saved, int* opened) noexcept nogil:
    """Minimum Graev sum by explicit enumeration of every pairing.

    Positions are scanned left to right; each is skipped (pays its weight),
    closes the innermost open arc (pays the letter distance; opposite signs
    only), or opens a new arc. The stack discipline walks exactly the
    non-crossing pairings, one leaf per complete pairing, and the minimum is
    taken over leaves only; no interval value is ever reused.

    A frame that opens an arc overwrites one stack slot; sibling subtrees
    explored later may reuse that slot at lower depth, so the previous value
    is saved per frame and restored when the frame finally pops.

    Buffer sizes: stack n, choice/depths/accs/saved/opened n+1.
    """
    cdef long best = C_INF
    cdef int pos = 0
    cdef int depth
    cdef long acc
    cdef int top
    choice[0] = 0
    accs[0] = 0
    depths[0] = 0
    while pos >= 0:
        if pos == n:
            if depths[pos] == 0 and accs[pos] < best:
                best = accs[pos]
            pos -= 1
            continue
        depth = depths[pos]
        acc = accs[pos]
        if n - pos < depth:      # not enough room to close what is open
            pos -= 1
            continue
        if choice[pos] == 0:
            choice[pos] = 1
            accs[pos + 1] = acc + weights[letters[pos]]
            depths[pos + 1] = depth
            pos += 1
            if pos < n:
                choice[pos] = 0
            continue
        if choice[pos] == 1:
            choice[pos] = 2
            if depth > 0:
                top = stack[depth - 1]
                if signs[pos] == -signs[top]:
                    accs[pos + 1] = acc + dist[letters[top] * nl + letters[pos]]
                    depths[pos + 1] = depth - 1
                    pos += 1
                    if pos < n:
                        choice[pos] = 0
            continue
        if choice[pos] == 2:
            choice[pos] = 3
            if pos < n - 1:
                saved[pos] = stack[depth]
                opened[pos] = 1
                stack[depth] = pos
                accs[pos + 1] = acc
                depths[pos + 1] = depth + 1
                pos += 1
                choice[pos] = 0
            else:
                opened[pos] = 0
            continue
        if opened[pos]:
            stack[depth] = saved[pos]
        pos -= 1
    return best


cdef struct WordBuffers:
    int* letters
    int* signs
    int* stack
    int* choice
    int* depths
    int* saved
    int* opened
    long* accs
    long* table
    long* dist
    long* weights


cdef int _alloc_buffers(WordBuffers* b, int n, dist, weights) except -1:
    cdef int m = n + 2
    cdef int i
    b.letters = <int*> malloc(m * sizeof(int))
    b.signs = <int*> malloc(m * sizeof(int))
    b.stack = <int*> malloc(m * sizeof(int))
    b.choice = <int*> malloc(m * sizeof(int))
    b.depths = <int*> malloc(m * sizeof(int))
    b.saved = <int*> malloc(m * sizeof(int))
    b.opened = <int*> malloc(m * sizeof(int))
    b.accs = <long*> malloc(m * sizeof(long))
    b.table = <long*> malloc(m * m * sizeof(long))
    b.dist = NULL
    b.weights = NULL
    if (b.letters == NULL or b.signs == NULL or b.stack == NULL or
            b.choice == NULL or b.depths == NULL or b.saved == NULL or
            b.opened == NULL or b.accs == NULL or b.table == NULL):
        _free_buffers(b)
        raise MemoryError()
    b.dist = _copy(dist)
    b.weights = _copy(weights)
    for i in range(m):
        b.stack[i] = 0
    return 0


cdef void _free_buffers(WordBuffers* b) noexcept:
    free(b.letters); free(b.signs); free(b.stack); free(b.choice)
    free(b.depths); free(b.saved); free(b.opened); free(b.accs)
    free(b.table); free(b.dist); free(b.weights)


def graev_norm_dp(letters, signs, int nl, dist, weights):
    cdef int n = len(letters)
    cdef WordBuffers b
    _alloc_buffers(&b, n, dist, weights)
    cdef int i
    try:
        for i in range(n):
            b.letters[i] = letters[i]
            b.signs[i] = signs[i]
        return _dp(n, b.letters, b.signs, nl, b.dist, b.weights, b.table)
    finally:
        _free_buffers(&b)


def graev_norm_bruteforce(letters, signs, int nl, dist, weights):
    cdef int n = len(letters)
    cdef WordBuffers b
    _alloc_buffers(&b, n, dist, weights)
    cdef int i
    try:
        for i in range(n):
            b.letters[i] = letters[i]
            b.signs[i] = signs[i]
        return _bf(n, b.letters, b.signs, nl, b.dist, b.weights,
                   b.stack, b.choice, b.depths, b.accs, b.saved, b.opened)
    finally:
        _free_buffers(&b)


def graev_agree_exhaustive(int nl, dist, weights, int max_len,
                           prefix_letters=(), prefix_signs=()):
    """Check dp == bruteforce on every (letter, sign) sequence of length
    <= max_len extending the prefix (prefix included). Returns
    (words checked, mismatches)."""
    cdef int plen = len(prefix_letters)
    cdef WordBuffers b
    _alloc_buffers(&b, max_len, dist, weights)
    # sym[i] encodes the choice at depth i >= plen: letter = sym >> 1,
    # sign = +1 for even, -1 for odd
    cdef int* sym = <int*> malloc((max_len + 2) * sizeof(int))
    if sym == NULL:
        _free_buffers(&b)
        raise MemoryError()
    cdef long checked = 0
    cdef long mismatches = 0
    cdef int depth = plen
    cdef int i
    cdef int nsym = 2 * nl
    cdef bint descending = True
    try:
        for i in range(plen):
            b.letters[i] = prefix_letters[i]
            b.signs[i] = prefix_signs[i]
        with nogil:
            while True:
                if descending:
                    checked += 1
                    if _dp(depth, b.letters, b.signs, nl, b.dist, b.weights,
                           b.table) != \
                            _bf(depth, b.letters, b.signs, nl, b.dist,
                                b.weights, b.stack, b.choice, b.depths,
                                b.accs, b.saved, b.opened):
                        mismatches += 1
                    if depth < max_len:
                        sym[depth] = 0
                        b.letters[depth] = 0
                        b.signs[depth] = 1
                        depth += 1
                        continue
                    descending = False
                    continue
                if depth == plen:
                    break
                depth -= 1
                sym[depth] += 1
                if sym[depth] >= nsym:
                    continue
                b.letters[depth] = sym[depth] >> 1
                b.signs[depth] = 1 if (sym[depth] & 1) == 0 else -1
                depth += 1
                descending = True
        return checked, mismatches
    finally:
        _free_buffers(&b)
        free(sym)

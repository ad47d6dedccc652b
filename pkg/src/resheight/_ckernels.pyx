# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled band-minor and Laplace kernels.

Same algorithms and return types as ``_pykernels``.  Coefficients are
int64 with every add/multiply overflow-checked; on overflow the kernels
raise ``OverflowError`` and the dispatcher falls back to exact Python ints.

Each DP state stores its polynomial as a sorted run of packed keys.
Multiplying by ``f_j`` adds a constant to every key, which keeps runs
sorted, so a column step is a small k-way merge (k <= m + 1).
"""

from libc.stdlib cimport malloc, realloc, free, calloc
from libc.string cimport memset

cdef extern from *:
    """
    static inline int rh_add_ovf(long long a, long long b, long long *r) { return __builtin_add_overflow(a, b, r); }
    static inline int rh_mul_ovf(long long a, long long b, long long *r) { return __builtin_mul_overflow(a, b, r); }
    static inline int rh_popcount(unsigned int x) { return __builtin_popcount(x); }
    """
    int rh_add_ovf(long long a, long long b, long long *r) nogil
    int rh_mul_ovf(long long a, long long b, long long *r) nogil
    int rh_popcount(unsigned int x) nogil


ctypedef struct Vec:
    long long *keys
    long long *vals
    Py_ssize_t length
    Py_ssize_t cap


cdef int vec_reserve(Vec *v, Py_ssize_t need) nogil:
    cdef Py_ssize_t cap
    cdef long long *k
    cdef long long *x
    if need <= v.cap:
        return 0
    cap = v.cap * 2 if v.cap else 16
    while cap < need:
        cap *= 2
    k = <long long *> realloc(v.keys, cap * sizeof(long long))
    if k == NULL:
        return -1
    v.keys = k
    x = <long long *> realloc(v.vals, cap * sizeof(long long))
    if x == NULL:
        return -1
    v.vals = x
    v.cap = cap
    return 0


cdef void vec_free(Vec *v) nogil:
    free(v.keys)
    free(v.vals)
    v.keys = NULL
    v.vals = NULL
    v.length = 0
    v.cap = 0


cdef int _band_dp(int m, int n, const char *rem, Vec *cur, Vec *nxt, Vec **result) nogil:
    """Run the column sweep; ``*result`` points at the final state's run.

    Returns 0 on success, 1 on overflow, -1 on allocation failure.
    ``cur`` and ``nxt`` must each hold 2**(m+1) zeroed Vecs.
    """
    cdef int nrows = m + n
    cdef int nstates = 1 << (m + 1)
    cdef int full = nstates - 1
    cdef long long base = n + 1
    cdef long long steps[8]
    cdef int c, j, s, t, rw, incoming, chosen, nm, last, r, i, k, best_i
    cdef int run_src[32][8]
    cdef int run_j[32][8]
    cdef int run_neg[32][8]
    cdef int nruns[32]
    cdef Py_ssize_t pos[8]
    cdef Py_ssize_t total
    cdef long long key, mn, acc, v
    cdef Vec *tmp
    cdef Vec *src
    cdef Vec *dst

    steps[0] = 1
    for j in range(1, m + 1):
        steps[j] = steps[j - 1] * base

    rw = 0
    for j in range(m + 1):
        if j < nrows and rem[j]:
            rw |= 1 << j
    if vec_reserve(&cur[rw], 1):
        return -1
    cur[rw].keys[0] = 0
    cur[rw].vals[0] = 1
    cur[rw].length = 1

    for c in range(n):
        rw = 0
        for j in range(m + 1):
            if c + j < nrows and rem[c + j]:
                rw |= 1 << j
        incoming = (1 << m) if (c + 1 + m < nrows and rem[c + 1 + m]) else 0
        last = c == n - 1
        for t in range(nstates):
            nruns[t] = 0
            nxt[t].length = 0
        for s in range(nstates):
            if cur[s].length == 0:
                continue
            chosen = s & ~rw
            for j in range(m + 1):
                if s & (1 << j):
                    continue
                nm = s | (1 << j)
                if last:
                    if nm != full:
                        continue
                    t = 0
                else:
                    if not (nm & 1):
                        continue
                    t = (nm >> 1) | incoming
                k = nruns[t]
                run_src[t][k] = s
                run_j[t][k] = j
                run_neg[t][k] = rh_popcount(<unsigned int> (chosen >> (j + 1))) & 1
                nruns[t] = k + 1
        for t in range(nstates):
            k = nruns[t]
            if k == 0:
                continue
            total = 0
            for i in range(k):
                total += cur[run_src[t][i]].length
                pos[i] = 0
            dst = &nxt[t]
            if vec_reserve(dst, total):
                return -1
            while True:
                best_i = -1
                mn = 0
                for i in range(k):
                    src = &cur[run_src[t][i]]
                    if pos[i] < src.length:
                        key = src.keys[pos[i]] + steps[run_j[t][i]]
                        if best_i < 0 or key < mn:
                            mn = key
                            best_i = i
                if best_i < 0:
                    break
                acc = 0
                for i in range(k):
                    src = &cur[run_src[t][i]]
                    if pos[i] < src.length and src.keys[pos[i]] + steps[run_j[t][i]] == mn:
                        v = src.vals[pos[i]]
                        if run_neg[t][i]:
                            if rh_mul_ovf(v, -1, &v):
                                return 1
                        if rh_add_ovf(acc, v, &acc):
                            return 1
                        pos[i] += 1
                if acc != 0:
                    dst.keys[dst.length] = mn
                    dst.vals[dst.length] = acc
                    dst.length += 1
        tmp = cur
        cur = nxt
        nxt = tmp
    result[0] = &cur[0]
    return 0


cdef class _Workspace:
    """Two banks of per-state runs, reused across minors."""
    cdef Vec *a
    cdef Vec *b
    cdef int nstates

    def __cinit__(self, int m):
        self.nstates = 1 << (m + 1)
        self.a = <Vec *> calloc(self.nstates, sizeof(Vec))
        self.b = <Vec *> calloc(self.nstates, sizeof(Vec))
        if self.a == NULL or self.b == NULL:
            raise MemoryError()

    def __dealloc__(self):
        cdef int i
        if self.a != NULL:
            for i in range(self.nstates):
                vec_free(&self.a[i])
            free(self.a)
        if self.b != NULL:
            for i in range(self.nstates):
                vec_free(&self.b[i])
            free(self.b)

    cdef void reset(self) nogil:
        cdef int i
        for i in range(self.nstates):
            self.a[i].length = 0
            self.b[i].length = 0


def _check_dims(int m, int n):
    if m < 1 or m > 4:
        raise ValueError("compiled kernels support 1 <= m <= 4")
    if n < 0:
        raise ValueError("n must be non-negative")


def band_minor(int m, int n, removed):
    """Packed f-polynomial of the f-block minor; see ``_pykernels.band_minor``."""
    _check_dims(m, n)
    cdef int nrows = m + n
    cdef bytearray rem = bytearray(nrows + 1)
    for r in removed:
        rem[r] = 1
    if n == 0:
        return {0: 1}
    cdef _Workspace ws = _Workspace(m)
    cdef Vec *res = NULL
    cdef char *remp = rem
    cdef int rc
    with nogil:
        rc = _band_dp(m, n, remp, ws.a, ws.b, &res)
    if rc == 1:
        raise OverflowError("int64 overflow in band_minor")
    if rc < 0:
        raise MemoryError()
    cdef Py_ssize_t i
    out = {}
    for i in range(res.length):
        out[res.keys[i]] = res.vals[i]
    return out


cdef long long _binom(int a, int b):
    cdef long long r = 1
    cdef int i
    if b < 0 or b > a:
        return 0
    for i in range(1, b + 1):
        r = r * (a - b + i) // i
    return r


def laplace_expand(int m, int n, long long max_cells=64 * 1024 * 1024):
    """Resultant grouped by g-monomial; see ``_pykernels.laplace_expand``.

    Accumulates into a dense int64 table indexed by (g-monomial rank,
    reduced f-index (e_1..e_{m-1})); raises ``MemoryError`` when that table
    would exceed ``max_cells`` entries.
    """
    _check_dims(m, n)
    from itertools import combinations, permutations
    from ._pykernels import perm_sign

    cdef int nrows = m + n
    cdef long long base = n + 1
    cdef long long P = 1
    cdef int j
    for j in range(m - 1):
        P *= base
    cdef long long G = _binom(n + m, m)
    if G * P > max_cells:
        raise MemoryError(f"dense accumulator of {G * P} cells exceeds limit {max_cells}")

    # multiset rank: sorted (a_0 <= ... <= a_{m-1}) -> strictly increasing b_i = a_i + i -> colex rank
    perms = [(p, perm_sign(p)) for p in permutations(range(m))]

    cdef long long *table = <long long *> calloc(G * P, sizeof(long long))
    if table == NULL:
        raise MemoryError()
    cdef _Workspace ws = _Workspace(m)
    cdef bytearray rem = bytearray(nrows + 1)
    cdef char *remp
    cdef Vec *res = NULL
    cdef int rc, sgn, lap, i
    cdef long long gidx, fidx, coef, prod, cell
    cdef Py_ssize_t t
    cdef long long divp = base
    cdef long long g_terms_rank[24]
    cdef long long g_terms_coef[24]
    cdef int ng

    try:
        for rows in combinations(range(nrows), m):
            gm = {}
            for perm, ps in perms:
                idx = []
                for i in range(m):
                    d = rows[i] - perm[i]
                    if d < 0 or d > n:
                        break
                    idx.append(d)
                else:
                    key = tuple(sorted(idx))
                    gm[key] = gm.get(key, 0) + ps
            ng = 0
            for key, gc in gm.items():
                if gc:
                    rank = 0
                    for i in range(m):
                        rank += _binom(key[i] + i, i + 1)
                    g_terms_rank[ng] = rank
                    g_terms_coef[ng] = gc
                    ng += 1
            if ng == 0:
                continue
            lap = (sum(rows) + m * n + m * (m - 1) // 2) & 1
            for i in range(nrows + 1):
                rem[i] = 0
            for r in rows:
                rem[r] = 1
            remp = rem
            ws.reset()
            with nogil:
                rc = _band_dp(m, n, remp, ws.a, ws.b, &res)
            if rc == 1:
                raise OverflowError("int64 overflow in laplace_expand")
            if rc < 0:
                raise MemoryError()
            with nogil:
                for i in range(ng):
                    coef = g_terms_coef[i]
                    if lap:
                        coef = -coef
                    gidx = g_terms_rank[i] * P
                    for t in range(res.length):
                        fidx = (res.keys[t] // divp) % P
                        if rh_mul_ovf(coef, res.vals[t], &prod):
                            rc = 1
                            break
                        if rh_add_ovf(table[gidx + fidx], prod, &cell):
                            rc = 1
                            break
                        table[gidx + fidx] = cell
                    if rc:
                        break
            if rc:
                raise OverflowError("int64 overflow in laplace_expand")

        # unpack: rank -> g multiset, reduced f index -> packed key (e_0 and e_m from degree and weight)
        out = {}
        for combo in combinations(range(n + m), m):
            key = tuple(combo[i] - i for i in range(m))
            rank = 0
            for i in range(m):
                rank += _binom(combo[i], i + 1)
            w_g = sum(key)
            w_f = m * n - w_g
            poly = {}
            gidx = rank * P
            for fidx in range(P):
                cell = table[gidx + fidx]
                if cell == 0:
                    continue
                rest = fidx
                mid = []
                wsum = 0
                dsum = 0
                for j in range(1, m):
                    e = rest % base
                    rest //= base
                    mid.append(e)
                    wsum += j * e
                    dsum += e
                em, remw = divmod(w_f - wsum, m)
                e0 = n - dsum - em
                packed = e0
                mult = base
                for e in mid:
                    packed += e * mult
                    mult *= base
                packed += em * mult
                poly[packed] = cell
            if poly:
                out[key] = poly
        return out
    finally:
        free(table)

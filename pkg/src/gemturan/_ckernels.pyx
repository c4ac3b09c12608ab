# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: canonical labelling, gem detection, power iteration.

Mirrors ``_pykernels`` step for step (same refinement, same branching and
pruning order) so both backends return identical canonical labels.
Rows are 128-bit sets stored as (lo, hi) uint64 pairs.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, realloc, free
from libc.string cimport memcpy
from libc.math cimport fabs, sqrt, INFINITY

BACKEND = "cython"

cdef extern from *:
    int popcount64 "__builtin_popcountll"(unsigned long long) nogil
    int ctz64 "__builtin_ctzll"(unsigned long long) nogil

cdef enum:
    MAXN = 128

cdef uint64_t LOWMASK = 0xFFFFFFFFFFFFFFFF


cdef int load_rows(object rows, int n, uint64_t* lo, uint64_t* hi) except -1:
    cdef int i
    if n > MAXN or n < 0:
        raise ValueError("order outside 0..128")
    for i in range(n):
        r = rows[i]
        lo[i] = <uint64_t>(r & LOWMASK)
        hi[i] = <uint64_t>(r >> 64)
    return 0


cdef inline int pc2(uint64_t a, uint64_t b) nogil:
    return popcount64(a) + popcount64(b)


# ----------------------------------------------------------------------
# gem detection


cdef bint p4_through_edge(uint64_t* lo, uint64_t* hi, uint64_t slo, uint64_t shi,
                          int p, int q) nogil:
    cdef uint64_t alo, ahi, dlo, dhi, pqlo, pqhi, x
    cdef int w, r
    alo = lo[p] & slo
    ahi = hi[p] & shi
    dlo = lo[q] & slo
    dhi = hi[q] & shi
    if q < 64:
        alo &= ~(<uint64_t>1 << q)
    else:
        ahi &= ~(<uint64_t>1 << (q - 64))
    if p < 64:
        dlo &= ~(<uint64_t>1 << p)
    else:
        dhi &= ~(<uint64_t>1 << (p - 64))
    if (alo | ahi) and (dlo | dhi):
        if not (alo == dlo and ahi == dhi and pc2(alo, ahi) == 1):
            return True
    pqlo = 0
    pqhi = 0
    if p < 64:
        pqlo |= <uint64_t>1 << p
    else:
        pqhi |= <uint64_t>1 << (p - 64)
    if q < 64:
        pqlo |= <uint64_t>1 << q
    else:
        pqhi |= <uint64_t>1 << (q - 64)
    for w in range(2):
        x = dlo if w == 0 else dhi
        while x:
            r = ctz64(x) + 64 * w
            x &= x - 1
            if (lo[r] & slo & ~pqlo) or (hi[r] & shi & ~pqhi):
                return True
    for w in range(2):
        x = alo if w == 0 else ahi
        while x:
            r = ctz64(x) + 64 * w
            x &= x - 1
            if (lo[r] & slo & ~pqlo) or (hi[r] & shi & ~pqhi):
                return True
    return False


cdef bint has_p4(uint64_t* lo, uint64_t* hi, uint64_t slo, uint64_t shi) nogil:
    cdef int w, w2, b, c
    cdef uint64_t x, y, alo, ahi, dlo, dhi
    for w in range(2):
        x = slo if w == 0 else shi
        while x:
            b = ctz64(x) + 64 * w
            x &= x - 1
            for w2 in range(2):
                y = (lo[b] & slo) if w2 == 0 else (hi[b] & shi)
                while y:
                    c = ctz64(y) + 64 * w2
                    y &= y - 1
                    if c <= b:
                        continue
                    alo = lo[b] & slo
                    ahi = hi[b] & shi
                    dlo = lo[c] & slo
                    dhi = hi[c] & shi
                    if c < 64:
                        alo &= ~(<uint64_t>1 << c)
                    else:
                        ahi &= ~(<uint64_t>1 << (c - 64))
                    if b < 64:
                        dlo &= ~(<uint64_t>1 << b)
                    else:
                        dhi &= ~(<uint64_t>1 << (b - 64))
                    if (alo | ahi) and (dlo | dhi):
                        if not (alo == dlo and ahi == dhi and pc2(alo, ahi) == 1):
                            return True
    return False


def has_gem(int n, rows):
    cdef uint64_t lo[MAXN]
    cdef uint64_t hi[MAXN]
    cdef int h
    load_rows(rows, n, lo, hi)
    for h in range(n):
        if pc2(lo[h], hi[h]) >= 4 and has_p4(lo, hi, lo[h], hi[h]):
            return True
    return False


def gem_through_edge(int n, rows, int a, int b):
    cdef uint64_t lo[MAXN]
    cdef uint64_t hi[MAXN]
    cdef int hub, other, y, w, h, k
    cdef uint64_t x
    load_rows(rows, n, lo, hi)
    for k in range(2):
        hub = a if k == 0 else b
        other = b if k == 0 else a
        if pc2(lo[hub], hi[hub]) < 4:
            continue
        for w in range(2):
            x = (lo[other] & lo[hub]) if w == 0 else (hi[other] & hi[hub])
            while x:
                y = ctz64(x) + 64 * w
                x &= x - 1
                if p4_through_edge(lo, hi, lo[hub], hi[hub], other, y):
                    return True
    for w in range(2):
        x = (lo[a] & lo[b]) if w == 0 else (hi[a] & hi[b])
        while x:
            h = ctz64(x) + 64 * w
            x &= x - 1
            if pc2(lo[h], hi[h]) >= 4 and p4_through_edge(lo, hi, lo[h], hi[h], a, b):
                return True
    return False


# ----------------------------------------------------------------------
# canonical labelling


cdef struct Canon:
    int n
    uint64_t* lo
    uint64_t* hi
    int* sig          # scratch: n * n signature counts
    int* idx          # scratch: sort indices
    uint64_t* mlo     # scratch: cell masks
    uint64_t* mhi
    int* tmp_lab
    int* tmp_start
    int* tmp_len
    int have_best
    int* best_order
    uint64_t* best_lo
    uint64_t* best_hi
    int* cur_order
    uint64_t* cur_lo
    uint64_t* cur_hi
    int* pos
    int* auts         # naut * n
    int naut
    int cap


cdef int add_aut(Canon* C, int* perm) except -1:
    cdef int* grown
    if C.naut == C.cap:
        C.cap = C.cap * 2 + 4
        grown = <int*>realloc(C.auts, C.cap * C.n * sizeof(int))
        if grown == NULL:
            raise MemoryError()
        C.auts = grown
    memcpy(C.auts + C.naut * C.n, perm, C.n * sizeof(int))
    C.naut += 1
    return 0


cdef inline int sig_cmp(int* a, int* b, int k) nogil:
    cdef int i
    for i in range(k):
        if a[i] != b[i]:
            return -1 if a[i] < b[i] else 1
    return 0


cdef int refine(Canon* C, int* lab, int* cstart, int* clen, int ncells) nogil:
    """Equitable refinement in place; returns the new cell count."""
    cdef int n = C.n
    cdef int c, i, j, v, k, nn, changed, s, t, key
    cdef int* sg
    while True:
        for c in range(ncells):
            C.mlo[c] = 0
            C.mhi[c] = 0
            for i in range(cstart[c], cstart[c] + clen[c]):
                v = lab[i]
                if v < 64:
                    C.mlo[c] |= <uint64_t>1 << v
                else:
                    C.mhi[c] |= <uint64_t>1 << (v - 64)
        nn = 0
        changed = 0
        for c in range(ncells):
            s = cstart[c]
            k = clen[c]
            if k == 1:
                C.tmp_lab[s] = lab[s]
                C.tmp_start[nn] = s
                C.tmp_len[nn] = 1
                nn += 1
                continue
            for i in range(k):
                v = lab[s + i]
                sg = C.sig + i * ncells
                for j in range(ncells):
                    sg[j] = pc2(C.lo[v] & C.mlo[j], C.hi[v] & C.mhi[j])
                C.idx[i] = i
            # stable insertion sort of the cell by signature
            for i in range(1, k):
                key = C.idx[i]
                j = i - 1
                while j >= 0 and sig_cmp(C.sig + C.idx[j] * ncells, C.sig + key * ncells, ncells) > 0:
                    C.idx[j + 1] = C.idx[j]
                    j -= 1
                C.idx[j + 1] = key
            C.tmp_start[nn] = s
            C.tmp_len[nn] = 0
            for i in range(k):
                if i > 0 and sig_cmp(C.sig + C.idx[i - 1] * ncells, C.sig + C.idx[i] * ncells, ncells) != 0:
                    nn += 1
                    C.tmp_start[nn] = s + i
                    C.tmp_len[nn] = 0
                    changed = 1
                C.tmp_lab[s + i] = lab[s + C.idx[i]]
                C.tmp_len[nn] += 1
            nn += 1
        memcpy(lab, C.tmp_lab, n * sizeof(int))
        memcpy(cstart, C.tmp_start, nn * sizeof(int))
        memcpy(clen, C.tmp_len, nn * sizeof(int))
        ncells = nn
        if not changed:
            return ncells


cdef int leaf(Canon* C, int* lab) except -1:
    cdef int n = C.n
    cdef int i, v, w, cmp, wd
    cdef uint64_t x, rlo, rhi
    for i in range(n):
        C.pos[lab[i]] = i
    for i in range(n):
        v = lab[i]
        rlo = 0
        rhi = 0
        for wd in range(2):
            x = C.lo[v] if wd == 0 else C.hi[v]
            while x:
                w = C.pos[ctz64(x) + 64 * wd]
                x &= x - 1
                if w < 64:
                    rlo |= <uint64_t>1 << w
                else:
                    rhi |= <uint64_t>1 << (w - 64)
        C.cur_lo[i] = rlo
        C.cur_hi[i] = rhi
    if not C.have_best:
        cmp = 1
    else:
        cmp = 0
        for i in range(n):
            if C.cur_hi[i] != C.best_hi[i]:
                cmp = 1 if C.cur_hi[i] > C.best_hi[i] else -1
                break
            if C.cur_lo[i] != C.best_lo[i]:
                cmp = 1 if C.cur_lo[i] > C.best_lo[i] else -1
                break
    if cmp > 0:
        C.have_best = 1
        memcpy(C.best_lo, C.cur_lo, n * sizeof(uint64_t))
        memcpy(C.best_hi, C.cur_hi, n * sizeof(uint64_t))
        memcpy(C.best_order, lab, n * sizeof(int))
    elif cmp == 0:
        for i in range(n):
            C.cur_order[lab[i]] = C.best_order[i]
        add_aut(C, C.cur_order)
    return 0


cdef inline int uf_find(int* parent, int x) nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


cdef void orbit_classes(Canon* C, int* fixed, int nfixed, int* cls) nogil:
    """Orbit representatives under the automorphisms fixing the prefix."""
    cdef int n = C.n
    cdef int a, i, x, ra, rb
    cdef int* p
    for i in range(n):
        cls[i] = i
    for a in range(C.naut):
        p = C.auts + a * n
        for i in range(nfixed):
            if p[fixed[i]] != fixed[i]:
                break
        else:
            for x in range(n):
                ra = uf_find(cls, x)
                rb = uf_find(cls, p[x])
                if ra != rb:
                    if ra < rb:
                        cls[rb] = ra
                    else:
                        cls[ra] = rb
    for x in range(n):
        cls[x] = uf_find(cls, x)


cdef int search(Canon* C, int* lab, int* cstart, int* clen, int ncells,
                int* fixed, int nfixed) except -1:
    cdef int n = C.n
    cdef int target = -1
    cdef int size = n + 1
    cdef int c, i, j, v, s, k, nexp, nc
    cdef int* explored
    cdef int* clab
    cdef int* cst
    cdef int* cln
    cdef int* cls
    cdef int known = -1
    cdef bint seen
    for c in range(ncells):
        if 1 < clen[c] < size:
            target = c
            size = clen[c]
    if target < 0:
        return leaf(C, lab)
    s = cstart[target]
    k = clen[target]
    explored = <int*>malloc(k * sizeof(int))
    clab = <int*>malloc(n * sizeof(int))
    cst = <int*>malloc((n + 1) * sizeof(int))
    cln = <int*>malloc((n + 1) * sizeof(int))
    cls = <int*>malloc(n * sizeof(int))
    if explored == NULL or clab == NULL or cst == NULL or cln == NULL or cls == NULL:
        free(explored); free(clab); free(cst); free(cln); free(cls)
        raise MemoryError()
    nexp = 0
    try:
        for i in range(k):
            v = lab[s + i]
            if nexp:
                if known != C.naut:
                    known = C.naut
                    orbit_classes(C, fixed, nfixed, cls)
                seen = False
                for j in range(nexp):
                    if cls[explored[j]] == cls[v]:
                        seen = True
                        break
                if seen:
                    continue
            explored[nexp] = v
            nexp += 1
            # child partition: cells before, [v], rest of the cell, cells after
            memcpy(clab, lab, n * sizeof(int))
            clab[s] = v
            j = s + 1
            for c in range(k):
                if lab[s + c] != v:
                    clab[j] = lab[s + c]
                    j += 1
            for c in range(target):
                cst[c] = cstart[c]
                cln[c] = clen[c]
            cst[target] = s
            cln[target] = 1
            cst[target + 1] = s + 1
            cln[target + 1] = k - 1
            for c in range(target + 1, ncells):
                cst[c + 1] = cstart[c]
                cln[c + 1] = clen[c]
            nc = refine(C, clab, cst, cln, ncells + 1)
            fixed[nfixed] = v
            search(C, clab, cst, cln, nc, fixed, nfixed + 1)
    finally:
        free(explored)
        free(clab)
        free(cst)
        free(cln)
        free(cls)
    return 0


def canon_label(int n, rows):
    """Return ``(order, cert)`` exactly as ``_pykernels.canon_label``."""
    cdef uint64_t lo[MAXN]
    cdef uint64_t hi[MAXN]
    cdef Canon C
    cdef int i, v, closed, first_v
    cdef int lab[MAXN]
    cdef int cstart[MAXN + 1]
    cdef int clen[MAXN + 1]
    cdef int fixed[MAXN]
    cdef int perm[MAXN]
    cdef int nc
    if n == 0:
        return [], ()
    load_rows(rows, n, lo, hi)
    C.n = n
    C.lo = lo
    C.hi = hi
    C.sig = <int*>malloc(n * (n + 1) * sizeof(int))
    C.idx = <int*>malloc(n * sizeof(int))
    C.mlo = <uint64_t*>malloc((n + 1) * sizeof(uint64_t))
    C.mhi = <uint64_t*>malloc((n + 1) * sizeof(uint64_t))
    C.tmp_lab = <int*>malloc(n * sizeof(int))
    C.tmp_start = <int*>malloc((n + 1) * sizeof(int))
    C.tmp_len = <int*>malloc((n + 1) * sizeof(int))
    C.best_order = <int*>malloc(n * sizeof(int))
    C.best_lo = <uint64_t*>malloc(n * sizeof(uint64_t))
    C.best_hi = <uint64_t*>malloc(n * sizeof(uint64_t))
    C.cur_order = <int*>malloc(n * sizeof(int))
    C.cur_lo = <uint64_t*>malloc(n * sizeof(uint64_t))
    C.cur_hi = <uint64_t*>malloc(n * sizeof(uint64_t))
    C.pos = <int*>malloc(n * sizeof(int))
    C.cap = 2 * n + 4
    C.naut = 0
    C.auts = <int*>malloc(C.cap * n * sizeof(int))
    C.have_best = 0
    try:
        if (C.sig == NULL or C.idx == NULL or C.mlo == NULL or C.mhi == NULL
                or C.tmp_lab == NULL or C.tmp_start == NULL or C.tmp_len == NULL
                or C.best_order == NULL or C.best_lo == NULL or C.best_hi == NULL
                or C.cur_order == NULL or C.cur_lo == NULL or C.cur_hi == NULL
                or C.pos == NULL
                or C.auts == NULL):
            raise MemoryError()
        # twin transpositions seed the automorphism list (open, then closed)
        for closed in range(2):
            seen = {}
            for v in range(n):
                key = rows[v] | (1 << v) if closed else rows[v]
                first_v = seen.get(key, -1)
                if first_v >= 0:
                    for i in range(n):
                        perm[i] = i
                    perm[first_v] = v
                    perm[v] = first_v
                    add_aut(&C, perm)
                seen[key] = v
        for i in range(n):
            lab[i] = i
        cstart[0] = 0
        clen[0] = n
        nc = refine(&C, lab, cstart, clen, 1)
        search(&C, lab, cstart, clen, nc, fixed, 0)
        order = [C.best_order[i] for i in range(n)]
        cert = tuple((<object>C.best_hi[i] << 64) | <object>C.best_lo[i] for i in range(n))
        return order, cert
    finally:
        free(C.sig); free(C.idx); free(C.mlo); free(C.mhi)
        free(C.tmp_lab); free(C.tmp_start); free(C.tmp_len)
        free(C.best_order); free(C.best_lo); free(C.best_hi)
        free(C.cur_order); free(C.cur_lo); free(C.cur_hi)
        free(C.pos); free(C.auts)


# ----------------------------------------------------------------------
# power iteration


def perron_iterate(int n, rows, x0, double shift, double tol, long maxit):
    """Shifted power iteration; same contract as ``_pykernels.perron_iterate``."""
    cdef uint64_t lo[MAXN]
    cdef uint64_t hi[MAXN]
    cdef int deg_start[MAXN + 1]
    cdef int* nbr
    cdef double x[MAXN]
    cdef double y[MAXN]
    cdef double bx[MAXN]
    cdef int i, j, w, m2, it, stall
    cdef uint64_t bits
    cdef double rho, res, norm, best_res, best_rho, s, d, anchor
    load_rows(rows, n, lo, hi)
    m2 = 0
    for i in range(n):
        m2 += pc2(lo[i], hi[i])
    nbr = <int*>malloc((m2 + 1) * sizeof(int))
    if nbr == NULL:
        raise MemoryError()
    try:
        j = 0
        for i in range(n):
            deg_start[i] = j
            for w in range(2):
                bits = lo[i] if w == 0 else hi[i]
                while bits:
                    nbr[j] = ctz64(bits) + 64 * w
                    bits &= bits - 1
                    j += 1
        deg_start[n] = j
        norm = 0.0
        for i in range(n):
            x[i] = float(x0[i])
            norm += x[i] * x[i]
        norm = sqrt(norm)
        for i in range(n):
            x[i] /= norm
        best_res = INFINITY
        anchor = INFINITY
        best_rho = 0.0
        memcpy(bx, x, n * sizeof(double))
        stall = 0
        it = 0
        with nogil:
            while it < maxit:
                it += 1
                rho = 0.0
                for i in range(n):
                    s = 0.0
                    for j in range(deg_start[i], deg_start[i + 1]):
                        s += x[nbr[j]]
                    y[i] = s
                    rho += x[i] * s
                res = 0.0
                for i in range(n):
                    d = fabs(y[i] - rho * x[i])
                    if d > res:
                        res = d
                if res < best_res:
                    if res < 0.5 * anchor:
                        stall = 0
                        anchor = res
                    best_res = res
                    best_rho = rho
                    memcpy(bx, x, n * sizeof(double))
                if res <= tol:
                    break
                stall += 1
                if stall > 20000:
                    break
                norm = 0.0
                for i in range(n):
                    y[i] += shift * x[i]
                    norm += y[i] * y[i]
                norm = sqrt(norm)
                for i in range(n):
                    x[i] = y[i] / norm
        if res <= tol:
            return rho, [x[i] for i in range(n)], res, it, True
        return best_rho, [bx[i] for i in range(n)], best_res, it, False
    finally:
        free(nbr)

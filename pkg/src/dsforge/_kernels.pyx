# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same contracts as ``_kernels_py``."""

from libc.stdlib cimport malloc, calloc, free


cdef inline Py_ssize_t _upper(const Py_ssize_t* a, Py_ssize_t lo, Py_ssize_t hi, Py_ssize_t v) noexcept nogil:
    # first index in a[lo:hi] with a[i] > v
    cdef Py_ssize_t mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if a[mid] <= v:
            lo = mid + 1
        else:
            hi = mid
    return lo


cdef class _Search:
    cdef Py_ssize_t L, n, k, sigma
    cdef Py_ssize_t* pat
    cdef Py_ssize_t* host
    cdef Py_ssize_t* occ_start   # sigma + 1 offsets into occ
    cdef Py_ssize_t* occ         # positions grouped by symbol
    cdef Py_ssize_t* occ_idx     # index of each position inside its group
    cdef Py_ssize_t* cnt
    cdef Py_ssize_t* rem         # L * k
    cdef Py_ssize_t* img
    cdef char* used
    cdef Py_ssize_t* pos
    cdef Py_ssize_t* best
    cdef Py_ssize_t* key
    cdef bint has_key, colex, found

    def __cinit__(self, pat, host, Py_ssize_t sigma, order_key, bint colex):
        cdef Py_ssize_t t, x, h, p
        self.L = len(pat)
        self.n = len(host)
        self.sigma = sigma
        self.k = max(pat) + 1 if self.L else 0
        self.colex = colex
        self.found = False
        self.has_key = order_key is not None
        self.pat = <Py_ssize_t*> malloc((self.L + 1) * sizeof(Py_ssize_t))
        self.host = <Py_ssize_t*> malloc((self.n + 1) * sizeof(Py_ssize_t))
        self.occ_start = <Py_ssize_t*> calloc(sigma + 2, sizeof(Py_ssize_t))
        self.occ = <Py_ssize_t*> malloc((self.n + 1) * sizeof(Py_ssize_t))
        self.occ_idx = <Py_ssize_t*> malloc((self.n + 1) * sizeof(Py_ssize_t))
        self.cnt = <Py_ssize_t*> calloc(self.k + 1, sizeof(Py_ssize_t))
        self.rem = <Py_ssize_t*> calloc(self.L * self.k + 1, sizeof(Py_ssize_t))
        self.img = <Py_ssize_t*> malloc((self.k + 1) * sizeof(Py_ssize_t))
        self.used = <char*> calloc(sigma + 1, 1)
        self.pos = <Py_ssize_t*> malloc((self.L + 1) * sizeof(Py_ssize_t))
        self.best = <Py_ssize_t*> malloc((self.L + 1) * sizeof(Py_ssize_t))
        self.key = <Py_ssize_t*> malloc((self.k + 1) * sizeof(Py_ssize_t))
        if not (self.pat and self.host and self.occ_start and self.occ and self.occ_idx and self.cnt
                and self.rem and self.img and self.used and self.pos and self.best and self.key):
            raise MemoryError()
        for t in range(self.L):
            self.pat[t] = pat[t]
            self.cnt[self.pat[t]] += 1
        for x in range(self.n):
            h = host[x]
            self.host[x] = h
            self.occ_start[h + 1] += 1
        for h in range(sigma):
            self.occ_start[h + 1] += self.occ_start[h]
        cdef Py_ssize_t* fill = <Py_ssize_t*> calloc(sigma + 1, sizeof(Py_ssize_t))
        if not fill:
            raise MemoryError()
        for x in range(self.n):
            h = self.host[x]
            self.occ_idx[x] = fill[h]
            self.occ[self.occ_start[h] + fill[h]] = x
            fill[h] += 1
        free(fill)
        for t in range(self.L - 2, -1, -1):
            for p in range(self.k):
                self.rem[t * self.k + p] = self.rem[(t + 1) * self.k + p]
            self.rem[t * self.k + self.pat[t + 1]] += 1
        for p in range(self.k):
            self.img[p] = -1
            self.key[p] = order_key[p] if self.has_key else 0

    def __dealloc__(self):
        free(self.pat); free(self.host); free(self.occ_start); free(self.occ)
        free(self.occ_idx); free(self.cnt); free(self.rem); free(self.img)
        free(self.used); free(self.pos); free(self.best); free(self.key)

    cdef inline Py_ssize_t _next(self, Py_ssize_t h, Py_ssize_t q) noexcept nogil:
        cdef Py_ssize_t lo = self.occ_start[h], hi = self.occ_start[h + 1]
        cdef Py_ssize_t i = _upper(self.occ, lo, hi, q)
        return self.occ[i] if i < hi else -1

    cdef bint _lookahead(self, Py_ssize_t t, Py_ssize_t x, Py_ssize_t assigned) noexcept nogil:
        cdef Py_ssize_t u, p, q = x
        for u in range(t + 1, self.L):
            p = self.pat[u]
            if p >= assigned:
                continue
            q = self._next(self.img[p], q)
            if q < 0:
                return False
        return True

    cdef bint _better(self) noexcept nogil:
        cdef Py_ssize_t u
        if not self.found:
            return True
        for u in range(self.L - 1, -1, -1):
            if self.pos[u] != self.best[u]:
                return self.pos[u] < self.best[u]
        return False

    cdef bint _dfs(self, Py_ssize_t t, Py_ssize_t q, Py_ssize_t assigned) noexcept nogil:
        cdef Py_ssize_t p, p2, r, W, need, x, h, oi, lo, hi, u
        cdef bint ok
        while t < self.L and self.pat[t] < assigned:
            q = self._next(self.img[self.pat[t]], q)
            if q < 0:
                return False
            if self.colex and self.found and q > self.best[self.L - 1]:
                return False
            self.pos[t] = q
            t += 1
        if t == self.L:
            if not self.colex:
                for u in range(self.L):
                    self.best[u] = self.pos[u]
                self.found = True
                return True
            if self._better():
                for u in range(self.L):
                    self.best[u] = self.pos[u]
                self.found = True
            return False
        p = assigned
        W = self.n - (self.L - t) + 1
        for p2 in range(assigned):
            r = self.rem[t * self.k + p2]
            if r:
                hi = self.occ_start[self.img[p2] + 1]
                if self.occ[hi - r] < W:
                    W = self.occ[hi - r]
        if self.colex and self.found and self.best[self.L - 1] + 1 < W:
            W = self.best[self.L - 1] + 1
        need = self.cnt[p]
        for x in range(q + 1, W):
            h = self.host[x]
            if self.used[h]:
                continue
            oi = self.occ_idx[x]
            lo = self.occ_start[h]
            hi = self.occ_start[h + 1]
            if oi and self.occ[lo + oi - 1] > q:
                continue
            if hi - lo - oi < need:
                continue
            if self.has_key:
                ok = True
                for p2 in range(assigned):
                    if (self.key[p2] < self.key[p]) != (self.img[p2] < h):
                        ok = False
                        break
                if not ok:
                    continue
            self.img[p] = h
            self.used[h] = 1
            if self._lookahead(t, x, assigned + 1):
                self.pos[t] = x
                if self._dfs(t + 1, x, assigned + 1):
                    return True
            self.used[h] = 0
            self.img[p] = -1
        return False

    def run(self):
        cdef Py_ssize_t u
        if self.L == 0:
            return []
        if self.L > self.n:
            return None
        with nogil:
            self._dfs(0, -1, 0)
        if not self.found:
            return None
        return [self.best[u] for u in range(self.L)]


def _check_dense(pat, host, Py_ssize_t sigma, order_key):
    # lists are indexed unchecked below, so reject anything out of range here
    k = max(pat) + 1 if len(pat) else 0
    if any(p < 0 for p in pat) or any(not 0 <= h < sigma for h in host):
        raise ValueError("inputs must be dense: pattern ids >= 0, host ids in 0..sigma-1")
    if order_key is not None and len(order_key) < k:
        raise ValueError("order_key needs one entry per pattern symbol")


def find_embedding(pat, host, Py_ssize_t sigma, order_key=None, bint colex=False):
    _check_dense(pat, host, sigma, order_key)
    return _Search(pat, host, sigma, order_key, colex).run()


cdef Py_ssize_t _pair_runs(const Py_ssize_t* a, Py_ssize_t na, const Py_ssize_t* b, Py_ssize_t nb) noexcept nogil:
    cdef Py_ssize_t i = 0, j = 0, runs = 0
    cdef int side = -1
    while i < na or j < nb:
        if j == nb or (i < na and a[i] < b[j]):
            if side != 0:
                runs += 1
                side = 0
            i = _upper(a, i, na, b[j]) if j < nb else na
        else:
            if side != 1:
                runs += 1
                side = 1
            j = _upper(b, j, nb, a[i]) if i < na else nb
    return runs


def pair_runs(la, lb):
    cdef Py_ssize_t na = len(la), nb = len(lb), i
    cdef Py_ssize_t* a = <Py_ssize_t*> malloc((na + 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t* b = <Py_ssize_t*> malloc((nb + 1) * sizeof(Py_ssize_t))
    try:
        for i in range(na):
            a[i] = la[i]
        for i in range(nb):
            b[i] = lb[i]
        return _pair_runs(a, na, b, nb)
    finally:
        free(a)
        free(b)


def max_alternation(host, Py_ssize_t sigma, Py_ssize_t stop=0):
    cdef Py_ssize_t n = len(host), x, h, ia, ib, a, b, r, best = 1, m
    if n == 0:
        return 0
    cdef Py_ssize_t* start = <Py_ssize_t*> calloc(sigma + 2, sizeof(Py_ssize_t))
    cdef Py_ssize_t* fill = <Py_ssize_t*> calloc(sigma + 1, sizeof(Py_ssize_t))
    cdef Py_ssize_t* occ = <Py_ssize_t*> malloc((n + 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t* hs = <Py_ssize_t*> malloc((n + 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t* order = <Py_ssize_t*> malloc((sigma + 1) * sizeof(Py_ssize_t))
    if not (start and fill and occ and hs and order):
        free(start); free(fill); free(occ); free(hs); free(order)
        raise MemoryError()
    try:
        for x in range(n):
            h = host[x]
            if h < 0 or h >= sigma:
                raise ValueError("host ids must lie in 0..sigma-1")
            hs[x] = h
            start[h + 1] += 1
        for h in range(sigma):
            start[h + 1] += start[h]
        # symbols in order of first appearance
        m = 0
        for x in range(n):
            h = hs[x]
            if fill[h] == 0:
                order[m] = h
                m += 1
            occ[start[h] + fill[h]] = x
            fill[h] += 1
        with nogil:
            for ia in range(m):
                a = order[ia]
                for ib in range(ia + 1, m):
                    b = order[ib]
                    if occ[start[b]] > occ[start[a + 1] - 1]:
                        if best < 2:
                            best = 2
                        break
                    r = _pair_runs(occ + start[a], start[a + 1] - start[a], occ + start[b], start[b + 1] - start[b])
                    if r > best:
                        best = r
                        if stop and best >= stop:
                            break
                if stop and best >= stop:
                    break
        return best
    finally:
        free(start); free(fill); free(occ); free(hs); free(order)


def greedy_rounds(seq, Py_ssize_t k, quotas, bint repeat_last):
    cdef Py_ssize_t nq = len(quotas), n = len(seq), x, h, c, rounds = 0, q = 0, quota, missing
    if k == 0:
        return 0
    if nq == 0:
        raise ValueError("quotas must be non-empty")
    cdef Py_ssize_t* have = <Py_ssize_t*> calloc(k, sizeof(Py_ssize_t))
    cdef Py_ssize_t* qs = <Py_ssize_t*> malloc(nq * sizeof(Py_ssize_t))
    if not (have and qs):
        free(have); free(qs)
        raise MemoryError()
    try:
        for x in range(nq):
            qs[x] = quotas[x]
        quota = qs[0]
        missing = k
        # read the sequence lazily so an early exit does not pay for a full copy
        for x in range(n):
            h = seq[x]
            if h < 0 or h >= k:
                raise ValueError("sequence ids must lie in 0..k-1")
            have[h] += 1
            if have[h] == quota:
                missing -= 1
                if missing == 0:
                    rounds += 1
                    q += 1
                    if q >= nq:
                        if not repeat_last:
                            return rounds
                        q = nq - 1
                    quota = qs[q]
                    for c in range(k):
                        have[c] = 0
                    missing = k
        return rounds
    finally:
        free(have); free(qs)

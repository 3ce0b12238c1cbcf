"""Pure-Python kernels.  ``_kernels.pyx`` mirrors these function by function.

All inputs are dense: host symbols are 0..sigma-1, pattern symbols are
0..k-1 numbered by first appearance.
"""

from bisect import bisect_right


def _check_dense(pat, host, sigma, order_key):
    k = max(pat) + 1 if pat else 0
    if any(p < 0 for p in pat) or any(not 0 <= h < sigma for h in host):
        raise ValueError("inputs must be dense: pattern ids >= 0, host ids in 0..sigma-1")
    if order_key is not None and len(order_key) < k:
        raise ValueError("order_key needs one entry per pattern symbol")

def find_embedding(pat, host, sigma, order_key=None, colex=False):
    """Positions of an embedding of ``pat`` into ``host``, or None.

    With ``colex`` False the first witness found is returned, which is the
    lexicographically least position vector.  With ``colex`` True every
    symbol assignment is explored and the witness that completes earliest
    (compared from the last position backwards) is returned.
    ``order_key`` makes the symbol map monotone with respect to those keys.
    """
    _check_dense(pat, host, sigma, order_key)
    L = len(pat)
    n = len(host)
    if L == 0:
        return []
    if L > n:
        return None
    k = max(pat) + 1
    occ = [[] for _ in range(sigma)]
    occ_idx = [0] * n
    for x, h in enumerate(host):
        occ_idx[x] = len(occ[h])
        occ[h].append(x)
    cnt = [0] * k
    for p in pat:
        cnt[p] += 1
    # rem[t][p]: occurrences of p at pattern indices > t
    rem = [None] * L
    run = [0] * k
    for t in range(L - 1, -1, -1):
        rem[t] = run[:]
        run[pat[t]] += 1

    img = [-1] * k
    used = [False] * sigma
    pos = [0] * L
    best = [None]

    def lookahead(t, x, assigned):
        # greedy check of the pattern restricted to assigned symbols from index t+1
        q = x
        for u in range(t + 1, L):
            p = pat[u]
            if p >= assigned:
                continue
            lst = occ[img[p]]
            i = bisect_right(lst, q)
            if i == len(lst):
                return False
            q = lst[i]
        return True

    def dfs(t, q, assigned):
        while t < L and pat[t] < assigned:
            lst = occ[img[pat[t]]]
            i = bisect_right(lst, q)
            if i == len(lst):
                return False
            q = lst[i]
            if colex and best[0] is not None and q > best[0][-1]:
                return False
            pos[t] = q
            t += 1
        if t == L:
            if not colex:
                best[0] = pos[:]
                return True
            if best[0] is None or pos[::-1] < best[0][::-1]:
                best[0] = pos[:]
            return False
        p = assigned
        W = n - (L - t) + 1  # leave room for the rest of the pattern
        for p2 in range(assigned):
            r = rem[t][p2]
            if r:
                lst = occ[img[p2]]
                W = min(W, lst[len(lst) - r])
        if colex and best[0] is not None:
            W = min(W, best[0][-1] + 1)
        need = cnt[p]
        for x in range(q + 1, W):
            h = host[x]
            if used[h]:
                continue
            oi = occ_idx[x]
            lst = occ[h]
            if oi and lst[oi - 1] > q:
                continue  # not the first occurrence of h after q
            if len(lst) - oi < need:
                continue
            if order_key is not None:
                ok = True
                kp = order_key[p]
                for p2 in range(assigned):
                    if (order_key[p2] < kp) != (img[p2] < h):
                        ok = False
                        break
                if not ok:
                    continue
            img[p] = h
            used[h] = True
            if lookahead(t, x, assigned + 1):
                pos[t] = x
                if dfs(t + 1, x, assigned + 1):
                    return True
            used[h] = False
            img[p] = -1
        return False

    dfs(0, -1, 0)
    return best[0]


def pair_runs(la, lb):
    """Number of maximal runs in the merge of two disjoint sorted position lists."""
    i = j = 0
    na, nb = len(la), len(lb)
    runs = 0
    side = -1
    while i < na or j < nb:
        if j == nb or (i < na and la[i] < lb[j]):
            if side != 0:
                runs += 1
                side = 0
            # jump past every a before the next b
            if j < nb:
                i = bisect_right(la, lb[j], i)
            else:
                i = na
        else:
            if side != 1:
                runs += 1
                side = 1
            if i < na:
                j = bisect_right(lb, la[i], j)
            else:
                j = nb
    return runs


def max_alternation(host, sigma, stop=0):
    """Longest alternation a b a b ... over all symbol pairs (0 for empty host).

    Returns early once ``stop`` (if positive) is reached.
    """
    if not host:
        return 0
    occ = [[] for _ in range(sigma)]
    for x, h in enumerate(host):
        if not 0 <= h < sigma:
            raise ValueError("host ids must lie in 0..sigma-1")
        occ[h].append(x)
    syms = [h for h in range(sigma) if occ[h]]
    syms.sort(key=lambda h: occ[h][0])
    best = 1
    for ia in range(len(syms)):
        la = occ[syms[ia]]
        last_a = la[-1]
        for ib in range(ia + 1, len(syms)):
            lb = occ[syms[ib]]
            if lb[0] > last_a:
                if best < 2:
                    best = 2
                break  # later symbols start even further right
            r = pair_runs(la, lb)
            if r > best:
                best = r
                if stop and best >= stop:
                    return best
        if stop and best >= stop:
            return best
    return best


def greedy_rounds(seq, k, quotas, repeat_last):
    """Count consecutive greedy rounds; round q needs ``quotas[q]`` copies of every symbol 0..k-1.

    With ``repeat_last`` the final quota is reused indefinitely, otherwise
    at most ``len(quotas)`` rounds are counted.
    """
    if k == 0:
        return 0
    if not quotas:
        raise ValueError("quotas must be non-empty")
    have = [0] * k
    rounds = 0
    q = 0
    quota = quotas[0]
    missing = k
    for h in seq:
        if not 0 <= h < k:
            raise ValueError("sequence ids must lie in 0..k-1")
        have[h] += 1
        if have[h] == quota:
            missing -= 1
            if missing == 0:
                rounds += 1
                q += 1
                if q >= len(quotas):
                    if not repeat_last:
                        return rounds
                    q = len(quotas) - 1
                quota = quotas[q]
                for c in range(k):
                    have[c] = 0
                missing = k
    return rounds

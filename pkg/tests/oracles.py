"""Brute-force references that share no code path with the library's search."""

from itertools import combinations, permutations


def _inject(fcols, acols, j, used):
    if j == len(fcols):
        return True
    for i, col in enumerate(acols):
        if i not in used and col == fcols[j]:
            used.add(i)
            if _inject(fcols, acols, j + 1, used):
                return True
            used.discard(i)
    return False


def brute_contains(A, F):
    """Try every row subset, every ordering of it, and every column injection."""
    a, f = A.rows(), F.rows()
    k, m = len(f), len(a)
    ell, n = F.num_cols, A.num_cols
    if k > m or ell > n:
        return False
    fcols = [tuple(f[r][j] for r in range(k)) for j in range(ell)]
    for rows in combinations(range(m), k):
        for order in permutations(rows):
            acols = [tuple(a[r][j] for r in order) for j in range(n)]
            if _inject(fcols, acols, 0, set()):
                return True
    return False


def naive_forb(m, family):
    """Largest family-free subset of all 2**m columns, by enumerating every subset."""
    from forbconf.matrix import BinaryMatrix

    best = 0
    for mask in range(1 << (1 << m)):
        cols = tuple(c for c in range(1 << m) if mask >> c & 1)
        if len(cols) <= best:
            continue
        A = BinaryMatrix(m, cols)
        if not any(brute_contains(A, F) for F in family):
            best = len(cols)
    return best


def columns_by_transitions(m, max_t):
    """All m-bit columns with at most ``max_t`` adjacent changes, by filtering."""
    out = []
    for c in range(1 << m):
        bits = [c >> i & 1 for i in range(m)]
        if sum(bits[i] != bits[i + 1] for i in range(m - 1)) <= max_t:
            out.append(c)
    return out

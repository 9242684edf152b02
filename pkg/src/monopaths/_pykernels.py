"""Pure-Python kernels.  ``_ckernels.pyx`` mirrors every function here."""


def path_end_table(n, rows):
    """``ends[S]`` = bitmask of vertices ``v`` such that some path on ``rows``
    visits exactly ``S`` and ends at ``v``.  ``ends[0] == 0``."""
    size = 1 << n
    ends = [0] * size
    for v in range(n):
        ends[1 << v] = 1 << v
    for mask in range(1, size):
        e = ends[mask]
        while e:
            low = e & -e
            v = low.bit_length() - 1
            e ^= low
            free = rows[v] & ~mask
            while free:
                b = free & -free
                free ^= b
                ends[mask | b] |= b
    return ends


def rooted_path_table(n, rows):
    """``h[S]`` = endpoints of paths that start at the lowest vertex of ``S`` and visit exactly ``S``."""
    size = 1 << n
    h = [0] * size
    for v in range(n):
        h[1 << v] = 1 << v
    for mask in range(1, size):
        e = h[mask]
        if not e:
            continue
        low_s = mask & -mask
        above = ~((low_s << 1) - 1)
        while e:
            lb = e & -e
            v = lb.bit_length() - 1
            e ^= lb
            free = rows[v] & ~mask & above
            while free:
                b = free & -free
                free ^= b
                h[mask | b] |= b
    return h


def cycle_flags(n, rows, h):
    """``flags[S]`` is 1 when ``S`` spans a cycle (empty, a vertex and an edge count)."""
    size = 1 << n
    flags = bytearray(size)
    for mask in range(size):
        pc = bin(mask).count("1")
        if pc <= 1:
            flags[mask] = 1
            continue
        s = (mask & -mask).bit_length() - 1
        if pc == 2:
            other = mask ^ (1 << s)
            flags[mask] = 1 if rows[s] & other else 0
        else:
            flags[mask] = 1 if h[mask] & rows[s] else 0
    return flags


def canonical_codes(m, tab, P, lo, hi, swap):
    """Codes ``c`` in ``[lo, hi)`` that are minimal in their orbit.

    ``tab[(p * nbytes + j) * 256 + b]`` is the image under permutation ``p`` of
    byte ``b`` placed at byte position ``j``.  With ``swap`` the complement
    orbit is included.
    """
    full = (1 << m) - 1
    nbytes = (m + 7) // 8
    tab = [int(t) for t in tab]
    out = []
    for c in range(lo, hi):
        if swap and (full ^ c) < c:
            continue
        ok = True
        for p in range(P):
            img = 0
            x = c
            base = p * nbytes * 256
            for j in range(nbytes):
                img |= tab[base + j * 256 + (x & 255)]
                x >>= 8
            if img < c or (swap and (full ^ img) < c):
                ok = False
                break
        if ok:
            out.append(c)
    return out


def split_bb(n, cross, red, ub):
    """Minimum number of edge deletions leaving a split-coloured bipartite graph.

    Labels are ``2*side + group``.  A cross pair on one side costs 1; a pair
    across sides costs 1 unless it is blue exactly when the groups agree.
    Returns ``(cost, labels)``; ``labels`` is None when nothing beats ``ub``.
    """
    best = [ub, None]
    labels = [0] * n
    # penalty[v][l]: cost between v (label l) and the already-labelled vertices
    penalty = [[0, 0, 0, 0] for _ in range(n)]

    def pair_cost(u, lu, v, lv):
        if (lu >> 1) == (lv >> 1):
            return 1
        blue = not ((red[u] >> v) & 1)
        return 0 if blue == ((lu & 1) == (lv & 1)) else 1

    def rec(i, cost):
        if i == n:
            if cost < best[0]:
                best[0] = cost
                best[1] = labels[:]
            return
        rest = 0
        for w in range(i + 1, n):
            rest += min(penalty[w])
        choices = (0,) if i == 0 else sorted(range(4), key=lambda l: penalty[i][l])
        for l in choices:
            c = cost + penalty[i][l]
            if c + rest >= best[0]:
                continue
            labels[i] = l
            nb = cross[i]
            touched = []
            for w in range(i + 1, n):
                if (nb >> w) & 1:
                    row = penalty[w]
                    for lw in range(4):
                        row[lw] += pair_cost(i, l, w, lw)
                    touched.append(w)
            rec(i + 1, c)
            for w in touched:
                row = penalty[w]
                for lw in range(4):
                    row[lw] -= pair_cost(i, l, w, lw)

    rec(0, 0)
    return best[0], best[1]

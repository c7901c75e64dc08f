"""Pure-Python versions of the hot search kernels.

Both kernels work on points encoded as bit positions of Python ints. The
compiled module ``_ckernels`` implements the same functions with the same
visiting order, so the two paths return identical answers.
"""

BACKEND = "python"

_UNBOUNDED = 1 << 30


def first_separating(pts, masks):
    """Return ``(mask_index, point_index)`` of the first point whose projection
    onto a coordinate mask is unique among ``pts``; masks are tried in order.
    Returns ``(-1, -1)`` when no mask separates anything.
    """
    for mi, m in enumerate(masks):
        counts = {}
        for p in pts:
            key = p & m
            counts[key] = counts.get(key, 0) + 1
        for pi, p in enumerate(pts):
            if counts[p & m] == 1:
                return mi, pi
    return -1, -1


def _popcount(x):
    return bin(x).count("1")


def multicover_search(flats, need, cap, budget):
    """Find a multiset of at most ``budget`` flats meeting every demand.

    ``flats`` are point bitmasks. Point ``q`` must be hit at least ``need[q]``
    times and at most ``cap[q]`` times (``cap[q] < 0`` means unbounded).
    Returns a sorted list of flat indices (with repetition) or ``None``.
    """
    npts = len(need)
    need = list(need)
    cap = [(_UNBOUNDED if c < 0 else c) for c in cap]
    nflats = len(flats)
    banned = bytearray(nflats)
    members = [[q for q in range(npts) if f >> q & 1] for f in flats]
    chosen = []

    def rec(budget):
        needy = 0
        total = 0
        maxneed = 0
        full = 0
        for q in range(npts):
            if need[q] > 0:
                needy |= 1 << q
                total += need[q]
                if need[q] > maxneed:
                    maxneed = need[q]
            if cap[q] == 0:
                full |= 1 << q
        if not needy:
            return True
        if budget == 0 or maxneed > budget:
            return False
        maxcov = 0
        counts = [0] * npts
        allowed = []
        for fi in range(nflats):
            f = flats[fi]
            if banned[fi] or f & full:
                continue
            cov = _popcount(f & needy)
            if cov == 0:
                continue
            allowed.append((fi, cov))
            if cov > maxcov:
                maxcov = cov
            for q in members[fi]:
                counts[q] += 1
        if maxcov == 0 or total > maxcov * budget:
            return False
        best = -1
        for q in range(npts):
            if needy >> q & 1 and (best < 0 or counts[q] < counts[best]):
                best = q
        if counts[best] == 0:
            return False
        cands = [(fi, cov) for fi, cov in allowed if flats[fi] >> best & 1]
        cands.sort(key=lambda fc: (-fc[1], fc[0]))
        found = False
        done = 0
        for fi, _ in cands:
            touched = members[fi]
            for q in touched:
                need[q] -= 1
                cap[q] -= 1
            chosen.append(fi)
            ok = rec(budget - 1)
            if ok:
                found = True
            else:
                chosen.pop()
            for q in touched:
                need[q] += 1
                cap[q] += 1
            if found:
                break
            banned[fi] = 1
            done += 1
        for fi, _ in cands[:done]:
            banned[fi] = 0
        return found

    if rec(budget):
        return sorted(chosen)
    return None

"""Pure-Python kernels over canonical vector-clock entry sequences.

An entry sequence is a tuple of (actor, count, timestamp) triples sorted by
actor with no duplicate actors. These functions are the hot inner loops of
clock comparison; a compiled twin lives in ``_kernels.pyx`` with identical
behavior. Keep the two in sync.
"""

# compare_entries result codes
EQUAL = 0
DESCENDS = 1
DOMINATED = 2
CONCURRENT = 3


def compare_entries(a, b):
    """Four-way comparison of two canonical entry sequences.

    Timestamps are ignored: the comparison is over per-actor counts, with an
    absent actor counting as zero.
    """
    left_ge = True   # a >= b pointwise so far
    right_ge = True  # b >= a pointwise so far
    i = 0
    j = 0
    na = len(a)
    nb = len(b)
    while i < na and j < nb:
        ea = a[i]
        eb = b[j]
        actor_a = ea[0]
        actor_b = eb[0]
        if actor_a == actor_b:
            ca = ea[1]
            cb = eb[1]
            if ca < cb:
                left_ge = False
            elif cb < ca:
                right_ge = False
            i += 1
            j += 1
        elif actor_a < actor_b:
            # actor present only in a; counts are >= 1 so b misses it
            right_ge = False
            i += 1
        else:
            left_ge = False
            j += 1
        if not left_ge and not right_ge:
            return CONCURRENT
    if i < na:
        right_ge = False
    if j < nb:
        left_ge = False
    if left_ge:
        return EQUAL if right_ge else DESCENDS
    if right_ge:
        return DOMINATED
    return CONCURRENT


def descends_entries(a, b):
    """True iff every (actor, count) in b is covered by a (pointwise >=)."""
    i = 0
    na = len(a)
    for eb in b:
        actor = eb[0]
        while i < na and a[i][0] < actor:
            i += 1
        if i >= na or a[i][0] != actor or a[i][1] < eb[1]:
            return False
        i += 1
    return True


def equal_entries(a, b):
    """True iff a and b hold identical (actor, count) pairs."""
    if len(a) != len(b):
        return False
    for ea, eb in zip(a, b):
        if ea[0] != eb[0] or ea[1] != eb[1]:
            return False
    return True


def merge_entries(a, b):
    """Per-actor maximum of two canonical entry sequences.

    Counts and timestamps take their maxima independently; an actor present
    on one side only is kept as-is. Returns a tuple of plain
    (actor, count, timestamp) triples in canonical order.
    """
    out = []
    i = 0
    j = 0
    na = len(a)
    nb = len(b)
    while i < na and j < nb:
        ea = a[i]
        eb = b[j]
        actor_a = ea[0]
        actor_b = eb[0]
        if actor_a == actor_b:
            ca = ea[1]
            cb = eb[1]
            ta = ea[2]
            tb = eb[2]
            out.append((actor_a, ca if ca >= cb else cb, ta if ta >= tb else tb))
            i += 1
            j += 1
        elif actor_a < actor_b:
            out.append((actor_a, ea[1], ea[2]))
            i += 1
        else:
            out.append((actor_b, eb[1], eb[2]))
            j += 1
    while i < na:
        ea = a[i]
        out.append((ea[0], ea[1], ea[2]))
        i += 1
    while j < nb:
        eb = b[j]
        out.append((eb[0], eb[1], eb[2]))
        j += 1
    return tuple(out)

# cython: language_level=3
"""Compiled kernels over canonical vector-clock entry sequences.

Twin of ``_kernels_py``; same contract, same result codes. Entries are
(actor, count, timestamp) triples sorted by actor. Counts and timestamps
stay Python ints (unbounded width), so arithmetic goes through object
protocol; the win is the loop and call overhead.
"""

EQUAL = 0
DESCENDS = 1
DOMINATED = 2
CONCURRENT = 3


def compare_entries(tuple a, tuple b):
    """Four-way comparison of two canonical entry sequences (counts only)."""
    cdef bint left_ge = True
    cdef bint right_ge = True
    cdef Py_ssize_t i = 0, j = 0
    cdef Py_ssize_t na = len(a), nb = len(b)
    cdef object ea, eb, actor_a, actor_b, ca, cb
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


def descends_entries(tuple a, tuple b):
    """True iff every (actor, count) in b is covered by a (pointwise >=)."""
    cdef Py_ssize_t i = 0
    cdef Py_ssize_t na = len(a), nb = len(b)
    cdef Py_ssize_t k
    cdef object eb, actor
    for k in range(nb):
        eb = b[k]
        actor = eb[0]
        while i < na and a[i][0] < actor:
            i += 1
        if i >= na or a[i][0] != actor or a[i][1] < eb[1]:
            return False
        i += 1
    return True


def equal_entries(tuple a, tuple b):
    """True iff a and b hold identical (actor, count) pairs."""
    cdef Py_ssize_t na = len(a), nb = len(b)
    cdef Py_ssize_t k
    cdef object ea, eb
    if na != nb:
        return False
    for k in range(na):
        ea = a[k]
        eb = b[k]
        if ea[0] != eb[0] or ea[1] != eb[1]:
            return False
    return True


def merge_entries(tuple a, tuple b):
    """Per-actor maximum of two canonical entry sequences."""
    cdef list out = []
    cdef Py_ssize_t i = 0, j = 0
    cdef Py_ssize_t na = len(a), nb = len(b)
    cdef object ea, eb, actor_a, actor_b, ca, cb, ta, tb
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

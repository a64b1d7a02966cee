# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernel.

Same contract as ``riderpoly._pykernel.count_nonattacking_subsets``; the
recursion runs on C integer buffers with the GIL released, so series
drivers can spread board sizes across threads.  Callers must pre-check
that keys and the final count fit in 64 bits (``riderpoly.kernel`` does).
"""

from cpython.mem cimport PyMem_Free, PyMem_Malloc


cdef long long _extend(const long long* keys, long long* used,
                       int nmoves, int npts, int q,
                       int depth, int start) noexcept nogil:
    cdef long long total = 0
    cdef long long k
    cdef int idx, r, d, last
    cdef bint attacked
    last = npts - (q - depth)
    for idx in range(start, last + 1):
        attacked = False
        for r in range(nmoves):
            k = keys[r * npts + idx]
            for d in range(depth):
                if used[r * q + d] == k:
                    attacked = True
                    break
            if attacked:
                break
        if attacked:
            continue
        if depth + 1 == q:
            total += 1
        else:
            for r in range(nmoves):
                used[r * q + depth] = keys[r * npts + idx]
            total += _extend(keys, used, nmoves, npts, q, depth + 1, idx + 1)
    return total


def count_nonattacking_subsets(keys, int q):
    if q == 0:
        return 1
    cdef int nmoves = len(keys)
    cdef int npts = len(keys[0]) if nmoves else 0
    if q == 1:
        return npts
    if npts < q:
        return 0

    cdef long long* buf = <long long*> PyMem_Malloc(
        sizeof(long long) * (nmoves * npts + nmoves * q))
    if buf == NULL:
        raise MemoryError()
    cdef long long* used = buf + nmoves * npts
    cdef int r, p
    cdef long long total
    try:
        for r in range(nmoves):
            col = keys[r]
            for p in range(npts):
                buf[r * npts + p] = col[p]
        with nogil:
            total = _extend(buf, used, nmoves, npts, q, 0, 0)
    finally:
        PyMem_Free(buf)
    return total

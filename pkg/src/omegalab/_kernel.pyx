# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loop: prime-factor counts Omega(n) over a contiguous segment."""

import numpy as np


def omega_segment(long long lo, long long hi, long long[::1] primes):
    """Return a uint8 array c with c[i] = Omega(lo + i) for lo <= n < hi.

    ``primes`` must contain all primes p with p*p < hi, sorted ascending.
    """
    cdef Py_ssize_t n = hi - lo
    counts_arr = np.zeros(n, dtype=np.uint8)
    # product of the small prime powers found so far; n has one extra prime
    # factor (necessarily > sqrt(hi-1), hence single) iff found[i] < n
    found_arr = np.ones(n, dtype=np.int64)
    cdef unsigned char[::1] counts = counts_arr
    cdef long long[::1] found = found_arr
    cdef Py_ssize_t i, j, start
    cdef long long p, q, r
    for j in range(primes.shape[0]):
        p = primes[j]
        if p * p >= hi:
            break
        q = p
        while True:
            r = lo % q
            start = 0 if r == 0 else <Py_ssize_t>(q - r)
            for i in range(start, n, q):
                counts[i] += 1
                found[i] *= p
            if q > (hi - 1) // p:
                break
            q *= p
    for i in range(n):
        if found[i] < lo + i:
            counts[i] += 1
    return counts_arr

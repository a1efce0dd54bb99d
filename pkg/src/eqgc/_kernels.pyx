# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Strided amplitude-update kernels (compiled core).

Twin of ``eqgc._kernels_py``: identical signatures and in-place semantics.
Amplitude arrays are 1-D complex128 of length 2**nq; gate locations are bit
positions of the basis index (0 = least significant).
"""

from libc.stdlib cimport free, malloc

ctypedef double complex cplx

COMPILED = True


def apply_1q(cplx[::1] amps, cplx[:, ::1] u, int pos):
    cdef Py_ssize_t half = amps.shape[0] >> 1
    cdef Py_ssize_t low = ((<Py_ssize_t> 1) << pos) - 1
    cdef Py_ssize_t tk = (<Py_ssize_t> 1) << pos
    cdef Py_ssize_t g, i0, i1
    cdef cplx a, b
    cdef cplx u00 = u[0, 0], u01 = u[0, 1], u10 = u[1, 0], u11 = u[1, 1]
    with nogil:
        for g in range(half):
            i0 = ((g >> pos) << (pos + 1)) | (g & low)
            i1 = i0 | tk
            a = amps[i0]
            b = amps[i1]
            amps[i0] = u00 * a + u01 * b
            amps[i1] = u10 * a + u11 * b


def apply_diag2(cplx[::1] amps, cplx[::1] d, int pa, int pb):
    cdef Py_ssize_t i, n = amps.shape[0]
    cdef cplx d0 = d[0], d1 = d[1], d2 = d[2], d3 = d[3]
    cdef Py_ssize_t key
    with nogil:
        for i in range(n):
            key = (((i >> pa) & 1) << 1) | ((i >> pb) & 1)
            if key == 0:
                amps[i] = amps[i] * d0
            elif key == 1:
                amps[i] = amps[i] * d1
            elif key == 2:
                amps[i] = amps[i] * d2
            else:
                amps[i] = amps[i] * d3


def apply_2q(cplx[::1] amps, cplx[:, ::1] u, int pa, int pb):
    # pa is the more significant gate bit.
    cdef Py_ssize_t n = amps.shape[0]
    cdef Py_ssize_t quarter = n >> 2
    cdef int plo = pa if pa < pb else pb
    cdef int phi = pb if pa < pb else pa
    cdef Py_ssize_t mlo = ((<Py_ssize_t> 1) << plo) - 1
    cdef Py_ssize_t mhi = ((<Py_ssize_t> 1) << phi) - 1
    cdef Py_ssize_t ba = (<Py_ssize_t> 1) << pa
    cdef Py_ssize_t bb = (<Py_ssize_t> 1) << pb
    cdef Py_ssize_t g, r, i0, i1, i2, i3
    cdef cplx a0, a1, a2, a3
    with nogil:
        for g in range(quarter):
            # insert zero bits at plo then phi
            r = ((g >> plo) << (plo + 1)) | (g & mlo)
            r = ((r >> phi) << (phi + 1)) | (r & mhi)
            i0 = r
            i1 = r | bb
            i2 = r | ba
            i3 = r | ba | bb
            a0 = amps[i0]
            a1 = amps[i1]
            a2 = amps[i2]
            a3 = amps[i3]
            amps[i0] = u[0, 0] * a0 + u[0, 1] * a1 + u[0, 2] * a2 + u[0, 3] * a3
            amps[i1] = u[1, 0] * a0 + u[1, 1] * a1 + u[1, 2] * a2 + u[1, 3] * a3
            amps[i2] = u[2, 0] * a0 + u[2, 1] * a1 + u[2, 2] * a2 + u[2, 3] * a3
            amps[i3] = u[3, 0] * a0 + u[3, 1] * a1 + u[3, 2] * a2 + u[3, 3] * a3


def apply_kq(cplx[::1] amps, cplx[:, ::1] u, long[::1] positions):
    cdef int k = positions.shape[0]
    cdef Py_ssize_t dim = (<Py_ssize_t> 1) << k
    cdef Py_ssize_t ngroup = amps.shape[0] >> k
    if u.shape[0] != dim or u.shape[1] != dim:
        raise ValueError("gate dimension does not match number of positions")

    cdef Py_ssize_t* offs = <Py_ssize_t*> malloc(dim * sizeof(Py_ssize_t))
    cdef Py_ssize_t* sorted_pos = <Py_ssize_t*> malloc(k * sizeof(Py_ssize_t))
    cdef cplx* temp = <cplx*> malloc(dim * sizeof(cplx))
    if offs == NULL or sorted_pos == NULL or temp == NULL:
        free(offs); free(sorted_pos); free(temp)
        raise MemoryError()

    cdef Py_ssize_t i, j, m, g, r, base, tmp
    cdef cplx acc
    try:
        for m in range(dim):
            base = 0
            for j in range(k):
                if (m >> (k - 1 - j)) & 1:
                    base |= (<Py_ssize_t> 1) << positions[j]
            offs[m] = base
        for j in range(k):
            sorted_pos[j] = positions[j]
        # insertion sort ascending; k is tiny
        for i in range(1, k):
            tmp = sorted_pos[i]
            j = i - 1
            while j >= 0 and sorted_pos[j] > tmp:
                sorted_pos[j + 1] = sorted_pos[j]
                j -= 1
            sorted_pos[j + 1] = tmp
        with nogil:
            for g in range(ngroup):
                base = g
                for j in range(k):
                    base = ((base >> sorted_pos[j]) << (sorted_pos[j] + 1)) | (base & (((<Py_ssize_t> 1) << sorted_pos[j]) - 1))
                for m in range(dim):
                    temp[m] = amps[base + offs[m]]
                for m in range(dim):
                    acc = 0
                    for j in range(dim):
                        acc = acc + u[m, j] * temp[j]
                    amps[base + offs[m]] = acc
    finally:
        free(offs)
        free(sorted_pos)
        free(temp)

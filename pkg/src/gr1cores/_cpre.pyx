# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled controllable-predecessor kernel."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def cpre(rho_e, rho_s, target):
    """Same contract as ``_cpre_py.cpre``; early-exits per state."""
    cdef const cnp.uint8_t[:, ::1] re = np.ascontiguousarray(rho_e).view(np.uint8)
    cdef const cnp.uint8_t[:, :, ::1] rs = np.ascontiguousarray(rho_s).view(np.uint8)
    cdef const cnp.uint8_t[::1] t = np.ascontiguousarray(target).view(np.uint8)
    cdef Py_ssize_t rows = rs.shape[0], n_env = rs.shape[1], n_sys = rs.shape[2]
    out = np.empty(rows, dtype=np.uint8)
    cdef cnp.uint8_t[::1] o = out
    cdef Py_ssize_t s, x, y, base
    cdef bint ok, found
    with nogil:
        for s in range(rows):
            ok = True
            for x in range(n_env):
                if not re[s, x]:
                    continue
                found = False
                base = x * n_sys
                for y in range(n_sys):
                    if rs[s, x, y] and t[base + y]:
                        found = True
                        break
                if not found:
                    ok = False
                    break
            o[s] = ok
    return out.view(np.bool_)

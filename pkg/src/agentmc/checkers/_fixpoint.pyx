# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled fixpoint kernels; contracts match _fixpoint_py."""

import numpy as np

NAME = "cython"


cdef void _pre(const int[::1] gp, const int[::1] gs, const int[::1] gt,
               Py_ssize_t n_states, const unsigned char[::1] q,
               unsigned char[::1] out) noexcept:
    cdef Py_ssize_t g, t, a, b, ngroups
    cdef int ok
    for g in range(n_states):
        out[g] = 0
    ngroups = gp.shape[0] - 1
    for g in range(ngroups):
        a = gp[g]
        b = gp[g + 1]
        ok = 1
        for t in range(a, b):
            if q[gt[t]] == 0:
                ok = 0
                break
        if ok:
            out[gs[g]] = 1


def pre(group_ptr, group_state, group_target, n_states, q, out):
    """out[s] = 1 iff some group of s has every target inside q."""
    _pre(group_ptr, group_state, group_target, n_states, q, out)


def until_fixpoint(group_ptr, group_state, group_target, n_states, phi, psi, rank, dual):
    """Least fixpoint Z = psi | (phi & PRE(Z)); see the pure twin for details."""
    cdef const int[::1] gp = group_ptr
    cdef const int[::1] gs = group_state
    cdef const int[::1] gt = group_target
    cdef const unsigned char[::1] phi_v = phi
    cdef const unsigned char[::1] psi_v = psi
    cdef int[::1] rank_v = rank
    cdef Py_ssize_t n = n_states
    cdef int use_dual = dual
    cdef Py_ssize_t s
    cdef int iters = 0
    cdef int changed

    z_arr = np.zeros(n, dtype=np.uint8)
    base_arr = np.zeros(n, dtype=np.uint8)
    p_arr = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] z = z_arr
    cdef unsigned char[::1] base = base_arr
    cdef unsigned char[::1] p = p_arr

    for s in range(n):
        z[s] = psi_v[s]
        rank_v[s] = 0 if psi_v[s] else -1

    while True:
        iters += 1
        if use_dual:
            for s in range(n):
                base[s] = 1 - z[s]
            _pre(gp, gs, gt, n, base, p)
            for s in range(n):
                p[s] = 1 - p[s]
        else:
            _pre(gp, gs, gt, n, z, p)
        changed = 0
        for s in range(n):
            if z[s] == 0 and phi_v[s] != 0 and p[s] != 0:
                z[s] = 1
                rank_v[s] = iters
                changed = 1
        if changed == 0:
            break
    return iters


def globally_fixpoint(group_ptr, group_state, group_target, n_states, phi, z):
    """Greatest fixpoint Z = Z & pre(Z) from Z = phi; result written into z."""
    cdef const int[::1] gp = group_ptr
    cdef const int[::1] gs = group_state
    cdef const int[::1] gt = group_target
    cdef const unsigned char[::1] phi_v = phi
    cdef unsigned char[::1] z_v = z
    cdef Py_ssize_t n = n_states
    cdef Py_ssize_t s
    cdef int iters = 0
    cdef int changed

    p_arr = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] p = p_arr

    for s in range(n):
        z_v[s] = phi_v[s]

    while True:
        iters += 1
        _pre(gp, gs, gt, n, z_v, p)
        changed = 0
        for s in range(n):
            if z_v[s] != 0 and p[s] == 0:
                z_v[s] = 0
                changed = 1
        if changed == 0:
            break
    return iters

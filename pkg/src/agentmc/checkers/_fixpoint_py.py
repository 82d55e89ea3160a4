"""Pure-Python fixpoint kernels; same contracts as the compiled extension.

Arrays come in as numpy int32 / uint8; loops run over plain lists because
scalar indexing into numpy arrays is slower than list access.  Results are
written back into the caller's output arrays.
"""

from __future__ import annotations

NAME = "python"


def _pre_list(gp, gs, gt, n_states, q):
    out = [0] * n_states
    for g in range(len(gp) - 1):
        ok = 1
        for t in range(gp[g], gp[g + 1]):
            if not q[gt[t]]:
                ok = 0
                break
        if ok:
            out[gs[g]] = 1
    return out


def pre(group_ptr, group_state, group_target, n_states, q, out):
    """out[s] = 1 iff some group of s has every target inside q."""
    result = _pre_list(
        group_ptr.tolist(),
        group_state.tolist(),
        group_target.tolist(),
        n_states,
        q.tolist(),
    )
    for s in range(n_states):
        out[s] = result[s]


def until_fixpoint(group_ptr, group_state, group_target, n_states, phi, psi, rank, dual):
    """Least fixpoint Z = psi | (phi & PRE(Z)), rank[s] = join iteration.

    PRE is the controllable predecessor when dual == 0 and its complement
    dual (NOT pre(NOT Z)) when dual == 1.  Returns the number of operator
    applications until stabilization, final unchanged application included.
    """
    gp = group_ptr.tolist()
    gs = group_state.tolist()
    gt = group_target.tolist()
    phi_l = phi.tolist()
    z = psi.tolist()
    rank_l = [0 if z[s] else -1 for s in range(n_states)]
    iters = 0
    while True:
        iters += 1
        if dual:
            base = [1 - x for x in z]
            p = _pre_list(gp, gs, gt, n_states, base)
            p = [1 - x for x in p]
        else:
            p = _pre_list(gp, gs, gt, n_states, z)
        changed = False
        for s in range(n_states):
            if not z[s] and phi_l[s] and p[s]:
                z[s] = 1
                rank_l[s] = iters
                changed = True
        if not changed:
            break
    for s in range(n_states):
        rank[s] = rank_l[s]
    return iters


def globally_fixpoint(group_ptr, group_state, group_target, n_states, phi, z):
    """Greatest fixpoint Z = Z & pre(Z) from Z = phi; result written into z."""
    gp = group_ptr.tolist()
    gs = group_state.tolist()
    gt = group_target.tolist()
    z_l = phi.tolist()
    iters = 0
    while True:
        iters += 1
        p = _pre_list(gp, gs, gt, n_states, z_l)
        changed = False
        for s in range(n_states):
            if z_l[s] and not p[s]:
                z_l[s] = 0
                changed = True
        if not changed:
            break
    for s in range(n_states):
        z[s] = z_l[s]
    return iters

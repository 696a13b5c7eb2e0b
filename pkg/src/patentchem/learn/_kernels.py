"""Compiled decision-tree kernels.

``build_tree`` grows one tree depth-first with exact greedy splits.  Two
criteria share the code path:

* ``GINI``: targets are 0/1 labels with per-row weights; leaves hold the
  weighted positive fraction and split gain is the weighted Gini decrease.
* ``NEWTON``: targets are first/second-order gradients; leaves hold
  ``-G / (H + lam)`` and gain is the usual second-order score improvement.

Trees come back as flat arrays: ``feature`` (-1 marks a leaf), ``threshold``
(go left when ``x <= threshold``), ``left``, ``right`` and ``value``.
"""

import numpy as np
from numba import njit

GINI = 0
NEWTON = 1


@njit(cache=True, nogil=True)
def _node_stats(rows, a, b, start, end):
    sa = 0.0
    sb = 0.0
    for k in range(start, end):
        r = rows[k]
        sa += a[r]
        sb += b[r]
    return sa, sb


@njit(cache=True, nogil=True)
def _gini_term(w, p):
    # w * gini(p / w)
    if w <= 0.0:
        return 0.0
    q = p / w
    return w * 2.0 * q * (1.0 - q)


@njit(cache=True, nogil=True)
def build_tree(X, a, b, rows, criterion, max_depth, min_leaf, mtry, lam, seed):
    """Grow a tree on ``rows``.

    For GINI, ``a`` holds row weights and ``b`` weight * label.  For NEWTON,
    ``a`` holds hessians and ``b`` gradients.  ``max_depth < 0`` means no
    depth limit.  Returns node arrays and per-feature total split gain.
    """
    np.random.seed(seed)
    n_rows = rows.shape[0]
    n_feat = X.shape[1]
    cap = 2 * n_rows + 1
    feature = np.full(cap, -1, dtype=np.int64)
    threshold = np.zeros(cap, dtype=np.float64)
    left = np.full(cap, -1, dtype=np.int64)
    right = np.full(cap, -1, dtype=np.int64)
    value = np.zeros(cap, dtype=np.float64)
    importance = np.zeros(n_feat, dtype=np.float64)

    order = rows.copy()
    buf = np.empty(n_rows, dtype=np.int64)
    perm = np.arange(n_feat)
    vals = np.empty(n_rows, dtype=np.float64)

    stack_node = np.empty(cap, dtype=np.int64)
    stack_start = np.empty(cap, dtype=np.int64)
    stack_end = np.empty(cap, dtype=np.int64)
    stack_depth = np.empty(cap, dtype=np.int64)
    top = 0
    stack_node[0] = 0
    stack_start[0] = 0
    stack_end[0] = n_rows
    stack_depth[0] = 0
    top = 1
    n_nodes = 1

    while top > 0:
        top -= 1
        node = stack_node[top]
        start = stack_start[top]
        end = stack_end[top]
        depth = stack_depth[top]
        sa, sb = _node_stats(order, a, b, start, end)
        if criterion == GINI:
            value[node] = sb / sa if sa > 0.0 else 0.0
            parent_score = _gini_term(sa, sb)
            pure = sb <= 1e-12 * sa or sb >= sa * (1.0 - 1e-12)
        else:
            value[node] = -sb / (sa + lam)
            parent_score = sb * sb / (sa + lam)
            pure = False
        n = end - start
        if pure or n < 2 * min_leaf or (max_depth >= 0 and depth >= max_depth):
            continue

        # draw mtry candidate features (partial Fisher-Yates)
        for k in range(n_feat):
            perm[k] = k
        for k in range(mtry):
            j = k + np.random.randint(0, n_feat - k)
            t = perm[k]
            perm[k] = perm[j]
            perm[j] = t

        best_gain = -np.inf
        best_feat = -1
        best_thr = 0.0
        for c in range(mtry):
            f = perm[c]
            for k in range(n):
                vals[k] = X[order[start + k], f]
            idx = np.argsort(vals[:n], kind="mergesort")
            la = 0.0
            lb = 0.0
            for k in range(n - 1):
                r = order[start + idx[k]]
                la += a[r]
                lb += b[r]
                v0 = vals[idx[k]]
                v1 = vals[idx[k + 1]]
                if v1 <= v0:
                    continue
                if k + 1 < min_leaf or n - k - 1 < min_leaf:
                    continue
                ra = sa - la
                rb = sb - lb
                if criterion == GINI:
                    gain = parent_score - _gini_term(la, lb) - _gini_term(ra, rb)
                else:
                    gain = lb * lb / (la + lam) + rb * rb / (ra + lam) - parent_score
                if gain > best_gain + 1e-15:
                    best_gain = gain
                    best_feat = f
                    thr = 0.5 * (v0 + v1)
                    if thr >= v1:
                        thr = v0
                    best_thr = thr
        if best_feat < 0:
            continue
        if criterion == NEWTON and best_gain <= 0.0:
            continue

        # stable partition of order[start:end]
        nl = 0
        for k in range(start, end):
            if X[order[k], best_feat] <= best_thr:
                nl += 1
        li = 0
        ri = nl
        for k in range(start, end):
            r = order[k]
            if X[r, best_feat] <= best_thr:
                buf[li] = r
                li += 1
            else:
                buf[ri] = r
                ri += 1
        for k in range(n):
            order[start + k] = buf[k]

        feature[node] = best_feat
        threshold[node] = best_thr
        importance[best_feat] += max(best_gain, 0.0)
        lc = n_nodes
        rc = n_nodes + 1
        n_nodes += 2
        left[node] = lc
        right[node] = rc
        # push right first so the left subtree is numbered first
        stack_node[top] = rc
        stack_start[top] = start + nl
        stack_end[top] = end
        stack_depth[top] = depth + 1
        top += 1
        stack_node[top] = lc
        stack_start[top] = start
        stack_end[top] = start + nl
        stack_depth[top] = depth + 1
        top += 1

    return (
        feature[:n_nodes].copy(),
        threshold[:n_nodes].copy(),
        left[:n_nodes].copy(),
        right[:n_nodes].copy(),
        value[:n_nodes].copy(),
        importance,
    )


@njit(cache=True, nogil=True)
def predict_tree(feature, threshold, left, right, value, X):
    n = X.shape[0]
    out = np.empty(n, dtype=np.float64)
    for i in range(n):
        node = 0
        while feature[node] >= 0:
            if X[i, feature[node]] <= threshold[node]:
                node = left[node]
            else:
                node = right[node]
        out[i] = value[node]
    return out


@njit(cache=True, nogil=True)
def oob_importance(feature, threshold, left, right, X, y, rows, n_feat):
    """Gini decrease per feature, measured on ``rows`` (typically out-of-bag).

    Rows are pushed down the tree; each internal node credits its feature
    with the impurity decrease of the held-out rows that reach it.
    """
    n_nodes = feature.shape[0]
    cnt = np.zeros(n_nodes)
    pos = np.zeros(n_nodes)
    for k in range(rows.shape[0]):
        r = rows[k]
        node = 0
        while True:
            cnt[node] += 1.0
            pos[node] += y[r]
            if feature[node] < 0:
                break
            if X[r, feature[node]] <= threshold[node]:
                node = left[node]
            else:
                node = right[node]
    out = np.zeros(n_feat)
    for node in range(n_nodes):
        f = feature[node]
        if f < 0:
            continue
        out[f] += _gini_term(cnt[node], pos[node]) - _gini_term(cnt[left[node]], pos[left[node]]) \
            - _gini_term(cnt[right[node]], pos[right[node]])
    return out

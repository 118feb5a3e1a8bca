"""Exact maximum-weight matching on general graphs (blossom algorithm).

Array-based primal-dual implementation compiled with numba. The classic
O(n^3) scheme: grow alternating trees from free vertices, shrink odd
cycles into blossoms, adjust duals when no tight edge is available, stop
when every remaining free vertex has zero dual.

The matching maximizes total edge weight; it is not required to have
maximum cardinality. Negative-weight edges never help and may be passed;
they are simply never matched.

Input contract: vertices are 0..n-1, at most one edge per vertex pair,
no self-loops. Weights are float64.
"""

from __future__ import annotations

import numpy as np
from numba import njit

# label values for alternating-tree nodes
_FREE = 0
_S = 1
_T = 2


@njit(cache=True, inline="always")
def _leaves_into(b, n, childs, childs_len, buf, dfs):
    """Collect the vertices under blossom ``b`` into ``buf``; return count."""
    if b < n:
        buf[0] = b
        return 1
    cnt = 0
    top = 0
    dfs[top] = b
    top += 1
    while top > 0:
        top -= 1
        cur = dfs[top]
        if cur < n:
            buf[cnt] = cur
            cnt += 1
        else:
            for ci in range(childs_len[cur]):
                dfs[top] = childs[cur, ci]
                top += 1
    return cnt


@njit(cache=True)
def max_weight_matching_arrays(n, edge_i, edge_j, edge_w):  # noqa: C901
    """Return mate[v] = matched partner vertex of v, or -1."""
    m = edge_i.shape[0]
    mate_ep = np.full(n, -1, np.int64)  # mate as endpoint index
    if n == 0 or m == 0:
        return np.full(n, -1, np.int64)

    # endpoint[2k] = i_k, endpoint[2k+1] = j_k
    endpoint = np.empty(2 * m, np.int64)
    for k in range(m):
        endpoint[2 * k] = edge_i[k]
        endpoint[2 * k + 1] = edge_j[k]

    # CSR adjacency of endpoint indices pointing at the far vertex
    deg = np.zeros(n + 1, np.int64)
    for k in range(m):
        deg[edge_i[k] + 1] += 1
        deg[edge_j[k] + 1] += 1
    nb_off = np.cumsum(deg)
    fill = nb_off[:-1].copy()
    nb = np.empty(2 * m, np.int64)
    for k in range(m):
        i = edge_i[k]
        j = edge_j[k]
        nb[fill[i]] = 2 * k + 1
        fill[i] += 1
        nb[fill[j]] = 2 * k
        fill[j] += 1

    maxweight = edge_w[0]
    for k in range(1, m):
        if edge_w[k] > maxweight:
            maxweight = edge_w[k]
    if maxweight < 0.0:
        maxweight = 0.0

    nb2 = 2 * n
    dualvar = np.empty(nb2, np.float64)
    for v in range(n):
        dualvar[v] = maxweight
    for b in range(n, nb2):
        dualvar[b] = 0.0

    label = np.zeros(nb2, np.int64)
    labelend = np.full(nb2, -1, np.int64)
    inblossom = np.arange(n, dtype=np.int64)
    blossomparent = np.full(nb2, -1, np.int64)
    blossombase = np.full(nb2, -1, np.int64)
    for v in range(n):
        blossombase[v] = v
    bestedge = np.full(nb2, -1, np.int64)
    allowedge = np.zeros(m, np.bool_)

    childs = np.full((nb2, n + 1), -1, np.int64)
    childs_len = np.zeros(nb2, np.int64)
    endps = np.full((nb2, n + 1), -1, np.int64)

    # per-blossom list of least-slack edges to other S-blossoms
    bbe = np.full((nb2, nb2), -1, np.int64)
    bbe_len = np.full(nb2, -1, np.int64)  # -1 means "not maintained"

    unused = np.empty(n, np.int64)
    unused_top = 0
    for b in range(nb2 - 1, n - 1, -1):
        unused[unused_top] = b
        unused_top += 1

    queue = np.empty(n * (n + 2), np.int64)
    q_len = 0

    leaf_buf = np.empty(n, np.int64)
    dfs_buf = np.empty(2 * n + 2, np.int64)
    leaf_buf2 = np.empty(n, np.int64)
    path_buf = np.empty(nb2, np.int64)
    aug_stack = np.empty((4 * n + 4, 2), np.int64)
    exp_stack = np.empty(nb2, np.int64)

    for _stage in range(n):
        for b in range(nb2):
            label[b] = _FREE
            bestedge[b] = -1
        for b in range(n, nb2):
            bbe_len[b] = -1
        for k in range(m):
            allowedge[k] = False
        q_len = 0

        # every free top-level blossom becomes an S-tree root
        for v in range(n):
            if mate_ep[v] == -1 and label[inblossom[v]] == _FREE:
                # assignLabel(v, S, -1)
                bv = inblossom[v]
                label[v] = _S
                label[bv] = _S
                labelend[v] = -1
                labelend[bv] = -1
                bestedge[v] = -1
                bestedge[bv] = -1
                cnt = _leaves_into(bv, n, childs, childs_len, leaf_buf, dfs_buf)
                for li in range(cnt):
                    queue[q_len] = leaf_buf[li]
                    q_len += 1

        augmented = False
        while True:
            while q_len > 0 and not augmented:
                q_len -= 1
                v = queue[q_len]
                for pi in range(nb_off[v], nb_off[v + 1]):
                    p = nb[pi]
                    k = p // 2
                    w = endpoint[p]
                    if inblossom[v] == inblossom[w]:
                        continue
                    kslack = 0.0
                    if not allowedge[k]:
                        kslack = dualvar[edge_i[k]] + dualvar[edge_j[k]] - 2.0 * edge_w[k]
                        if kslack <= 0.0:
                            allowedge[k] = True
                    if allowedge[k]:
                        bw = inblossom[w]
                        if label[bw] == _FREE:
                            # assignLabel(w, T, p ^ 1), then label the base's
                            # mate S and queue its leaves
                            label[w] = _T
                            label[bw] = _T
                            labelend[w] = p ^ 1
                            labelend[bw] = p ^ 1
                            bestedge[w] = -1
                            bestedge[bw] = -1
                            base = blossombase[bw]
                            mb = mate_ep[base]
                            s2 = endpoint[mb]
                            bs2 = inblossom[s2]
                            label[s2] = _S
                            label[bs2] = _S
                            labelend[s2] = mb ^ 1
                            labelend[bs2] = mb ^ 1
                            bestedge[s2] = -1
                            bestedge[bs2] = -1
                            cnt = _leaves_into(bs2, n, childs, childs_len, leaf_buf, dfs_buf)
                            for li in range(cnt):
                                queue[q_len] = leaf_buf[li]
                                q_len += 1
                        elif label[bw] == _S:
                            # scanBlossom: find least common ancestor
                            path_len = 0
                            base = -1
                            vv = v
                            ww = w
                            while vv != -1 or ww != -1:
                                bvx = inblossom[vv]
                                if label[bvx] & 4:
                                    base = blossombase[bvx]
                                    break
                                path_buf[path_len] = bvx
                                path_len += 1
                                label[bvx] = 5
                                if labelend[bvx] == -1:
                                    vv = -1
                                else:
                                    vv = endpoint[labelend[bvx]]
                                    bvx = inblossom[vv]
                                    vv = endpoint[labelend[bvx]]
                                if ww != -1:
                                    tmp = vv
                                    vv = ww
                                    ww = tmp
                            for li in range(path_len):
                                label[path_buf[li]] = _S

                            if base >= 0:
                                # ---- addBlossom(base, k) ----
                                # endpoint indices 2k/2k+1 refer to the edge
                                # arrays, so trace in edge-array order
                                vE = edge_i[k]
                                wE = edge_j[k]
                                bb = inblossom[base]
                                bv_ = inblossom[vE]
                                bw_ = inblossom[wE]
                                unused_top -= 1
                                b = unused[unused_top]
                                blossombase[b] = base
                                blossomparent[b] = -1
                                blossomparent[bb] = b
                                # trace v's side back to the base
                                plen = 0
                                vx = vE
                                while bv_ != bb:
                                    blossomparent[bv_] = b
                                    childs[b, plen] = bv_
                                    endps[b, plen] = labelend[bv_]
                                    plen += 1
                                    vx = endpoint[labelend[bv_]]
                                    bv_ = inblossom[vx]
                                childs[b, plen] = bb
                                plen += 1
                                # reverse childs[0:plen] and endps[0:plen-1]
                                lo = 0
                                hi = plen - 1
                                while lo < hi:
                                    t1 = childs[b, lo]
                                    childs[b, lo] = childs[b, hi]
                                    childs[b, hi] = t1
                                    lo += 1
                                    hi -= 1
                                lo = 0
                                hi = plen - 2
                                while lo < hi:
                                    t1 = endps[b, lo]
                                    endps[b, lo] = endps[b, hi]
                                    endps[b, hi] = t1
                                    lo += 1
                                    hi -= 1
                                endps[b, plen - 1] = 2 * k
                                # trace w's side forward
                                wx = wE
                                elen = plen
                                while bw_ != bb:
                                    blossomparent[bw_] = b
                                    childs[b, elen] = bw_
                                    endps[b, elen] = labelend[bw_] ^ 1
                                    elen += 1
                                    wx = endpoint[labelend[bw_]]
                                    bw_ = inblossom[wx]
                                childs_len[b] = elen
                                label[b] = _S
                                labelend[b] = labelend[bb]
                                dualvar[b] = 0.0
                                cnt = _leaves_into(b, n, childs, childs_len, leaf_buf, dfs_buf)
                                for li in range(cnt):
                                    lv = leaf_buf[li]
                                    if label[inblossom[lv]] == _T:
                                        queue[q_len] = lv
                                        q_len += 1
                                    inblossom[lv] = b
                                # merge least-slack edges of the children
                                best_to = np.full(nb2, -1, np.int64)
                                for ci in range(elen):
                                    cb = childs[b, ci]
                                    if bbe_len[cb] < 0:
                                        lcnt = _leaves_into(cb, n, childs, childs_len, leaf_buf2, dfs_buf)
                                        for li in range(lcnt):
                                            lv = leaf_buf2[li]
                                            for pj in range(nb_off[lv], nb_off[lv + 1]):
                                                ek = nb[pj] // 2
                                                jv = edge_j[ek] if inblossom[edge_i[ek]] == b else edge_i[ek]
                                                bj = inblossom[jv]
                                                if bj != b and label[bj] == _S:
                                                    sk = dualvar[edge_i[ek]] + dualvar[edge_j[ek]] - 2.0 * edge_w[ek]
                                                    if best_to[bj] == -1:
                                                        best_to[bj] = ek
                                                    else:
                                                        bo = best_to[bj]
                                                        so = dualvar[edge_i[bo]] + dualvar[edge_j[bo]] - 2.0 * edge_w[bo]
                                                        if sk < so:
                                                            best_to[bj] = ek
                                    else:
                                        for li in range(bbe_len[cb]):
                                            ek = bbe[cb, li]
                                            jv = edge_j[ek] if inblossom[edge_i[ek]] == b else edge_i[ek]
                                            bj = inblossom[jv]
                                            if bj != b and label[bj] == _S:
                                                sk = dualvar[edge_i[ek]] + dualvar[edge_j[ek]] - 2.0 * edge_w[ek]
                                                if best_to[bj] == -1:
                                                    best_to[bj] = ek
                                                else:
                                                    bo = best_to[bj]
                                                    so = dualvar[edge_i[bo]] + dualvar[edge_j[bo]] - 2.0 * edge_w[bo]
                                                    if sk < so:
                                                        best_to[bj] = ek
                                    bbe_len[cb] = -1
                                    bestedge[cb] = -1
                                blen = 0
                                for bj in range(nb2):
                                    if best_to[bj] != -1:
                                        bbe[b, blen] = best_to[bj]
                                        blen += 1
                                bbe_len[b] = blen
                                bestedge[b] = -1
                                for li in range(blen):
                                    ek = bbe[b, li]
                                    if bestedge[b] == -1:
                                        bestedge[b] = ek
                                    else:
                                        bo = bestedge[b]
                                        sk = dualvar[edge_i[ek]] + dualvar[edge_j[ek]] - 2.0 * edge_w[ek]
                                        so = dualvar[edge_i[bo]] + dualvar[edge_j[bo]] - 2.0 * edge_w[bo]
                                        if sk < so:
                                            bestedge[b] = ek
                            else:
                                # ---- augmentMatching(k) ----
                                for side in range(2):
                                    if side == 0:
                                        s = edge_i[k]
                                        p_ = 2 * k + 1
                                    else:
                                        s = edge_j[k]
                                        p_ = 2 * k
                                    while True:
                                        bs = inblossom[s]
                                        if bs >= n:
                                            # augmentBlossom(bs, s) via worklist
                                            aug_top = 0
                                            aug_stack[aug_top, 0] = bs
                                            aug_stack[aug_top, 1] = s
                                            aug_top += 1
                                            while aug_top > 0:
                                                aug_top -= 1
                                                ab = aug_stack[aug_top, 0]
                                                av = aug_stack[aug_top, 1]
                                                t = av
                                                while blossomparent[t] != ab:
                                                    t = blossomparent[t]
                                                if t >= n:
                                                    aug_stack[aug_top, 0] = t
                                                    aug_stack[aug_top, 1] = av
                                                    aug_top += 1
                                                clen = childs_len[ab]
                                                ii = 0
                                                for ci in range(clen):
                                                    if childs[ab, ci] == t:
                                                        ii = ci
                                                        break
                                                jj = ii
                                                if ii & 1:
                                                    jj -= clen
                                                    jstep = 1
                                                    endptrick = 0
                                                else:
                                                    jstep = -1
                                                    endptrick = 1
                                                while jj != 0:
                                                    jj += jstep
                                                    tt = childs[ab, jj % clen]
                                                    pp = endps[ab, (jj - endptrick) % clen] ^ endptrick
                                                    if tt >= n:
                                                        aug_stack[aug_top, 0] = tt
                                                        aug_stack[aug_top, 1] = endpoint[pp]
                                                        aug_top += 1
                                                    jj += jstep
                                                    tt = childs[ab, jj % clen]
                                                    if tt >= n:
                                                        aug_stack[aug_top, 0] = tt
                                                        aug_stack[aug_top, 1] = endpoint[pp ^ 1]
                                                        aug_top += 1
                                                    mate_ep[endpoint[pp]] = pp ^ 1
                                                    mate_ep[endpoint[pp ^ 1]] = pp
                                                # rotate childs so the child
                                                # holding av comes first
                                                if ii > 0:
                                                    tmp_c = childs[ab, :clen].copy()
                                                    tmp_e = endps[ab, :clen].copy()
                                                    for ci in range(clen):
                                                        childs[ab, ci] = tmp_c[(ci + ii) % clen]
                                                        endps[ab, ci] = tmp_e[(ci + ii) % clen]
                                                blossombase[ab] = av
                                        mate_ep[s] = p_
                                        if labelend[bs] == -1:
                                            break
                                        t_ = endpoint[labelend[bs]]
                                        bt = inblossom[t_]
                                        s = endpoint[labelend[bt]]
                                        j_ = endpoint[labelend[bt] ^ 1]
                                        if bt >= n:
                                            aug_top = 0
                                            aug_stack[aug_top, 0] = bt
                                            aug_stack[aug_top, 1] = j_
                                            aug_top += 1
                                            while aug_top > 0:
                                                aug_top -= 1
                                                ab = aug_stack[aug_top, 0]
                                                av = aug_stack[aug_top, 1]
                                                t = av
                                                while blossomparent[t] != ab:
                                                    t = blossomparent[t]
                                                if t >= n:
                                                    aug_stack[aug_top, 0] = t
                                                    aug_stack[aug_top, 1] = av
                                                    aug_top += 1
                                                clen = childs_len[ab]
                                                ii = 0
                                                for ci in range(clen):
                                                    if childs[ab, ci] == t:
                                                        ii = ci
                                                        break
                                                jj = ii
                                                if ii & 1:
                                                    jj -= clen
                                                    jstep = 1
                                                    endptrick = 0
                                                else:
                                                    jstep = -1
                                                    endptrick = 1
                                                while jj != 0:
                                                    jj += jstep
                                                    tt = childs[ab, jj % clen]
                                                    pp = endps[ab, (jj - endptrick) % clen] ^ endptrick
                                                    if tt >= n:
                                                        aug_stack[aug_top, 0] = tt
                                                        aug_stack[aug_top, 1] = endpoint[pp]
                                                        aug_top += 1
                                                    jj += jstep
                                                    tt = childs[ab, jj % clen]
                                                    if tt >= n:
                                                        aug_stack[aug_top, 0] = tt
                                                        aug_stack[aug_top, 1] = endpoint[pp ^ 1]
                                                        aug_top += 1
                                                    mate_ep[endpoint[pp]] = pp ^ 1
                                                    mate_ep[endpoint[pp ^ 1]] = pp
                                                if ii > 0:
                                                    tmp_c = childs[ab, :clen].copy()
                                                    tmp_e = endps[ab, :clen].copy()
                                                    for ci in range(clen):
                                                        childs[ab, ci] = tmp_c[(ci + ii) % clen]
                                                        endps[ab, ci] = tmp_e[(ci + ii) % clen]
                                                blossombase[ab] = av
                                        mate_ep[j_] = labelend[bt]
                                        p_ = labelend[bt] ^ 1
                                augmented = True
                                break
                        elif label[w] == _FREE:
                            label[w] = _T
                            labelend[w] = p ^ 1
                    elif label[inblossom[w]] == _S:
                        bvx = inblossom[v]
                        if bestedge[bvx] == -1:
                            bestedge[bvx] = k
                        else:
                            bo = bestedge[bvx]
                            so = dualvar[edge_i[bo]] + dualvar[edge_j[bo]] - 2.0 * edge_w[bo]
                            if kslack < so:
                                bestedge[bvx] = k
                    elif label[w] == _FREE:
                        if bestedge[w] == -1:
                            bestedge[w] = k
                        else:
                            bo = bestedge[w]
                            so = dualvar[edge_i[bo]] + dualvar[edge_j[bo]] - 2.0 * edge_w[bo]
                            if kslack < so:
                                bestedge[w] = k

            if augmented:
                break

            # dual adjustment
            deltatype = 1
            delta = dualvar[0]
            for vv2 in range(1, n):
                if dualvar[vv2] < delta:
                    delta = dualvar[vv2]
            if delta < 0.0:
                delta = 0.0
            deltaedge = -1
            deltablossom = -1
            for vv2 in range(n):
                if label[inblossom[vv2]] == _FREE and bestedge[vv2] != -1:
                    ek = bestedge[vv2]
                    d = dualvar[edge_i[ek]] + dualvar[edge_j[ek]] - 2.0 * edge_w[ek]
                    if d < delta:
                        delta = d
                        deltatype = 2
                        deltaedge = ek
            for b2 in range(nb2):
                if blossomparent[b2] == -1 and label[b2] == _S and bestedge[b2] != -1:
                    ek = bestedge[b2]
                    d = (dualvar[edge_i[ek]] + dualvar[edge_j[ek]] - 2.0 * edge_w[ek]) / 2.0
                    if d < delta:
                        delta = d
                        deltatype = 3
                        deltaedge = ek
            for b2 in range(n, nb2):
                if (
                    blossombase[b2] >= 0
                    and blossomparent[b2] == -1
                    and label[b2] == _T
                    and dualvar[b2] < delta
                ):
                    delta = dualvar[b2]
                    deltatype = 4
                    deltablossom = b2

            for vv2 in range(n):
                lab = label[inblossom[vv2]]
                if lab == _S:
                    dualvar[vv2] -= delta
                elif lab == _T:
                    dualvar[vv2] += delta
            for b2 in range(n, nb2):
                if blossombase[b2] >= 0 and blossomparent[b2] == -1:
                    if label[b2] == _S:
                        dualvar[b2] += delta
                    elif label[b2] == _T:
                        dualvar[b2] -= delta

            if deltatype == 1:
                break
            elif deltatype == 2:
                allowedge[deltaedge] = True
                iv = edge_i[deltaedge]
                jv = edge_j[deltaedge]
                if label[inblossom[iv]] == _FREE:
                    iv = jv
                queue[q_len] = iv
                q_len += 1
            elif deltatype == 3:
                allowedge[deltaedge] = True
                queue[q_len] = edge_i[deltaedge]
                q_len += 1
            else:
                # ---- expandBlossom(deltablossom, endstage=False) ----
                b = deltablossom
                clen = childs_len[b]
                for ci in range(clen):
                    sb = childs[b, ci]
                    blossomparent[sb] = -1
                    if sb < n:
                        inblossom[sb] = sb
                    else:
                        cnt = _leaves_into(sb, n, childs, childs_len, leaf_buf, dfs_buf)
                        for li in range(cnt):
                            inblossom[leaf_buf[li]] = sb
                # relabel along the path from the entry child to the base
                entrychild = inblossom[endpoint[labelend[b] ^ 1]]
                jj = 0
                for ci in range(clen):
                    if childs[b, ci] == entrychild:
                        jj = ci
                        break
                if jj & 1:
                    jj -= clen
                    jstep = 1
                    endptrick = 0
                else:
                    jstep = -1
                    endptrick = 1
                p = labelend[b]
                while jj != 0:
                    label[endpoint[p ^ 1]] = _FREE
                    label[endpoint[endps[b, (jj - endptrick) % clen] ^ endptrick ^ 1]] = _FREE
                    # assignLabel(endpoint[p ^ 1], T, p)
                    wz = endpoint[p ^ 1]
                    bz = inblossom[wz]
                    label[wz] = _T
                    label[bz] = _T
                    labelend[wz] = p
                    labelend[bz] = p
                    bestedge[wz] = -1
                    bestedge[bz] = -1
                    base_z = blossombase[bz]
                    mb = mate_ep[base_z]
                    s2 = endpoint[mb]
                    bs2 = inblossom[s2]
                    label[s2] = _S
                    label[bs2] = _S
                    labelend[s2] = mb ^ 1
                    labelend[bs2] = mb ^ 1
                    bestedge[s2] = -1
                    bestedge[bs2] = -1
                    cnt = _leaves_into(bs2, n, childs, childs_len, leaf_buf, dfs_buf)
                    for li in range(cnt):
                        queue[q_len] = leaf_buf[li]
                        q_len += 1
                    allowedge[endps[b, (jj - endptrick) % clen] // 2] = True
                    jj += jstep
                    p = endps[b, (jj - endptrick) % clen] ^ endptrick
                    allowedge[p // 2] = True
                    jj += jstep
                bv2 = childs[b, jj % clen]
                label[endpoint[p ^ 1]] = _T
                label[bv2] = _T
                labelend[endpoint[p ^ 1]] = p
                labelend[bv2] = p
                bestedge[bv2] = -1
                jj += jstep
                while childs[b, jj % clen] != entrychild:
                    bv2 = childs[b, jj % clen]
                    if label[bv2] == _S:
                        jj += jstep
                        continue
                    cnt = _leaves_into(bv2, n, childs, childs_len, leaf_buf, dfs_buf)
                    lv = -1
                    for li in range(cnt):
                        lv = leaf_buf[li]
                        if label[lv] != _FREE:
                            break
                    if lv >= 0 and label[lv] != _FREE:
                        label[lv] = _FREE
                        label[endpoint[mate_ep[blossombase[bv2]]]] = _FREE
                        # assignLabel(lv, T, labelend[lv])
                        pz = labelend[lv]
                        wz = lv
                        bz = inblossom[wz]
                        label[wz] = _T
                        label[bz] = _T
                        labelend[wz] = pz
                        labelend[bz] = pz
                        bestedge[wz] = -1
                        bestedge[bz] = -1
                        base_z = blossombase[bz]
                        mb = mate_ep[base_z]
                        s2 = endpoint[mb]
                        bs2 = inblossom[s2]
                        label[s2] = _S
                        label[bs2] = _S
                        labelend[s2] = mb ^ 1
                        labelend[bs2] = mb ^ 1
                        bestedge[s2] = -1
                        bestedge[bs2] = -1
                        cnt2 = _leaves_into(bs2, n, childs, childs_len, leaf_buf2, dfs_buf)
                        for li in range(cnt2):
                            queue[q_len] = leaf_buf2[li]
                            q_len += 1
                    jj += jstep
                # retire the expanded blossom
                label[b] = -1
                labelend[b] = -1
                childs_len[b] = 0
                blossombase[b] = -1
                bbe_len[b] = -1
                bestedge[b] = -1
                unused[unused_top] = b
                unused_top += 1

        if not augmented:
            break

        # end of stage: expand S-blossoms whose dual hit zero
        for b in range(n, nb2):
            if (
                blossomparent[b] == -1
                and blossombase[b] >= 0
                and label[b] == _S
                and dualvar[b] == 0.0
            ):
                exp_top = 0
                exp_stack[exp_top] = b
                exp_top += 1
                while exp_top > 0:
                    exp_top -= 1
                    eb = exp_stack[exp_top]
                    clen = childs_len[eb]
                    for ci in range(clen):
                        sb = childs[eb, ci]
                        blossomparent[sb] = -1
                        if sb < n:
                            inblossom[sb] = sb
                        elif dualvar[sb] == 0.0:
                            exp_stack[exp_top] = sb
                            exp_top += 1
                        else:
                            cnt = _leaves_into(sb, n, childs, childs_len, leaf_buf, dfs_buf)
                            for li in range(cnt):
                                inblossom[leaf_buf[li]] = sb
                    label[eb] = -1
                    labelend[eb] = -1
                    childs_len[eb] = 0
                    blossombase[eb] = -1
                    bbe_len[eb] = -1
                    bestedge[eb] = -1
                    unused[unused_top] = eb
                    unused_top += 1

    mate = np.full(n, -1, np.int64)
    for v in range(n):
        if mate_ep[v] >= 0:
            mate[v] = endpoint[mate_ep[v]]
    return mate


def max_weight_matching(n: int, edges) -> np.ndarray:
    """Solve max-weight matching on vertices 0..n-1.

    ``edges`` is a sequence of (i, j, weight) with i != j and at most one
    edge per pair. Returns an int array mate of length n with the matched
    partner of each vertex, or -1.
    """
    if n < 0:
        raise ValueError("vertex count must be non-negative")
    m = len(edges)
    ei = np.empty(m, np.int64)
    ej = np.empty(m, np.int64)
    ew = np.empty(m, np.float64)
    for k, (i, j, w) in enumerate(edges):
        if i == j:
            raise ValueError(f"self-loop on vertex {i}")
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"edge ({i}, {j}) out of range for n={n}")
        ei[k] = i
        ej[k] = j
        ew[k] = w
    return max_weight_matching_arrays(n, ei, ej, ew)

"""numba kernels; same contracts as :mod:`imprimitive.kernels._numpy`.

Each kernel unpacks the table tuple once and hands plain arrays to the
inlined helpers; pulling arrays out of the tuple inside the loop costs a
reference-count round trip per access.
"""
import numpy as np
from numba import njit

E1, E2, E3, H2, H3, PM, PN, BETA0 = range(8)


@njit(cache=True, inline="always")
def _beta(x, y, add, mul, pw, bc):
    acc = 0
    for i in range(bc.shape[0]):
        acc = add[acc, mul[mul[pw[BETA0 + 2 * i, x], pw[BETA0 + 2 * i + 1, y]], bc[i]]]
    return acc


@njit(cache=True, inline="always")
def _psi2(x3, y3, mul, pw, nc):
    # branch-free: the PM, PN rows are zero when psi2 vanishes
    return mul[pw[PM, x3], pw[PN, y3]]


@njit(cache=True, inline="always")
def _umul(u1, u2, u3, v1, v2, v3, add, mul, pw, bc, nc):
    psi1 = add[mul[pw[H2, v2], pw[H3, u3]], _beta(u3, v3, add, mul, pw, bc)]
    return (add[add[u1, v1], psi1],
            add[add[u2, v2], _psi2(u3, v3, mul, pw, nc)],
            add[u3, v3])


@njit(cache=True, inline="always")
def _torus(a, u1, u2, u3, mul, pw):
    return (mul[pw[E1, a], u1], mul[pw[E2, a], u2], mul[pw[E3, a], u3])


@njit(cache=True, inline="always")
def _act(u1, u2, u3, a, x, y, add, mul, neg, pw, bc, nc):
    ax = mul[pw[E1, a], x]
    ay = mul[pw[E3, a], y]
    psi1 = add[mul[pw[H2, 0], pw[H3, u3]], _beta(u3, ay, add, mul, pw, bc)]
    z1 = add[add[u1, ax], psi1]
    z2 = add[u2, _psi2(u3, ay, mul, pw, nc)]
    z3 = add[u3, ay]
    return add[z1, mul[pw[H2, neg[z2]], pw[H3, z3]]], z3


@njit(cache=True)
def unip_mul(T, U, V):
    add, mul, pw, bc, nc = T[0], T[1], T[4], T[5], T[6]
    n = U.shape[0]
    out = np.empty((n, 3), dtype=np.int64)
    for i in range(n):
        w = _umul(U[i, 0], U[i, 1], U[i, 2], V[i, 0], V[i, 1], V[i, 2], add, mul, pw, bc, nc)
        out[i, 0], out[i, 1], out[i, 2] = w[0], w[1], w[2]
    return out


@njit(cache=True)
def unip_inv(T, U):
    add, mul, neg, pw, bc, nc = T[0], T[1], T[2], T[4], T[5], T[6]
    n = U.shape[0]
    out = np.empty((n, 3), dtype=np.int64)
    for i in range(n):
        v3 = neg[U[i, 2]]
        v2 = neg[add[U[i, 1], _psi2(U[i, 2], v3, mul, pw, nc)]]
        psi1 = add[mul[pw[H2, v2], pw[H3, U[i, 2]]], _beta(U[i, 2], v3, add, mul, pw, bc)]
        v1 = neg[add[U[i, 0], psi1]]
        out[i, 0], out[i, 1], out[i, 2] = v1, v2, v3
    return out


@njit(cache=True)
def torus(T, A, U):
    mul, pw = T[1], T[4]
    n = U.shape[0]
    out = np.empty((n, 3), dtype=np.int64)
    for i in range(n):
        w = _torus(A[i], U[i, 0], U[i, 1], U[i, 2], mul, pw)
        out[i, 0], out[i, 1], out[i, 2] = w[0], w[1], w[2]
    return out


@njit(cache=True)
def group_mul(T, G, H):
    add, mul, pw, bc, nc = T[0], T[1], T[4], T[5], T[6]
    n = G.shape[0]
    out = np.empty((n, 4), dtype=np.int64)
    for i in range(n):
        t = _torus(G[i, 3], H[i, 0], H[i, 1], H[i, 2], mul, pw)
        w = _umul(G[i, 0], G[i, 1], G[i, 2], t[0], t[1], t[2], add, mul, pw, bc, nc)
        out[i, 0], out[i, 1], out[i, 2] = w[0], w[1], w[2]
        out[i, 3] = mul[G[i, 3], H[i, 3]]
    return out


@njit(cache=True)
def group_inv(T, G):
    add, mul, neg, inv, pw, bc, nc = T
    n = G.shape[0]
    out = np.empty((n, 4), dtype=np.int64)
    for i in range(n):
        v3 = neg[G[i, 2]]
        v2 = neg[add[G[i, 1], _psi2(G[i, 2], v3, mul, pw, nc)]]
        psi1 = add[mul[pw[H2, v2], pw[H3, G[i, 2]]], _beta(G[i, 2], v3, add, mul, pw, bc)]
        v1 = neg[add[G[i, 0], psi1]]
        ai = inv[G[i, 3]]
        t = _torus(ai, v1, v2, v3, mul, pw)
        out[i, 0], out[i, 1], out[i, 2], out[i, 3] = t[0], t[1], t[2], ai
    return out


@njit(cache=True)
def canonical(T, Z):
    add, mul, neg, pw = T[0], T[1], T[2], T[4]
    n = Z.shape[0]
    out = np.empty((n, 2), dtype=np.int64)
    for i in range(n):
        out[i, 0] = add[Z[i, 0], mul[pw[H2, neg[Z[i, 1]]], pw[H3, Z[i, 2]]]]
        out[i, 1] = Z[i, 2]
    return out


@njit(cache=True)
def act(T, G, P):
    add, mul, neg, pw, bc, nc = T[0], T[1], T[2], T[4], T[5], T[6]
    n = G.shape[0]
    out = np.empty((n, 2), dtype=np.int64)
    for i in range(n):
        r = _act(G[i, 0], G[i, 1], G[i, 2], G[i, 3], P[i, 0], P[i, 1], add, mul, neg, pw, bc, nc)
        out[i, 0], out[i, 1] = r[0], r[1]
    return out


@njit(cache=True)
def act_all_pairs(T, G, P):
    add, mul, neg, pw, bc, nc = T[0], T[1], T[2], T[4], T[5], T[6]
    out = np.empty((G.shape[0], P.shape[0], 2), dtype=np.int64)
    for i in range(G.shape[0]):
        for j in range(P.shape[0]):
            r = _act(G[i, 0], G[i, 1], G[i, 2], G[i, 3], P[j, 0], P[j, 1], add, mul, neg, pw, bc, nc)
            out[i, j, 0], out[i, j, 1] = r[0], r[1]
    return out


@njit(cache=True)
def fixed_point_counts(T, G, P):
    add, mul, neg, pw, bc, nc = T[0], T[1], T[2], T[4], T[5], T[6]
    out = np.zeros(G.shape[0], dtype=np.int64)
    for i in range(G.shape[0]):
        c = 0
        for j in range(P.shape[0]):
            r = _act(G[i, 0], G[i, 1], G[i, 2], G[i, 3], P[j, 0], P[j, 1], add, mul, neg, pw, bc, nc)
            if r[0] == P[j, 0] and r[1] == P[j, 1]:
                c += 1
        out[i] = c
    return out


@njit(cache=True)
def central_mask(T, U, V):
    add, mul, pw, bc, nc = T[0], T[1], T[4], T[5], T[6]
    out = np.ones(U.shape[0], dtype=np.bool_)
    for i in range(U.shape[0]):
        for j in range(V.shape[0]):
            a = _umul(U[i, 0], U[i, 1], U[i, 2], V[j, 0], V[j, 1], V[j, 2], add, mul, pw, bc, nc)
            b = _umul(V[j, 0], V[j, 1], V[j, 2], U[i, 0], U[i, 1], U[i, 2], add, mul, pw, bc, nc)
            if a[0] != b[0] or a[1] != b[1] or a[2] != b[2]:
                out[i] = False
                break
    return out

"""Vectorised numpy kernels (fallback path).

Every function takes the law tuple from :meth:`LawTables.as_tuple`
``(add, mul, neg, inv, pw, beta_c, has_psi2)`` and int64 arrays of codes;
rows are group elements ``(u1, u2, u3, a)``, unipotent triples or points.
"""
import numpy as np

# power-table rows, see imprimitive.tables
E1, E2, E3, H2, H3, PM, PN, BETA0 = range(8)


def beta_eval(x, y, T):
    add, mul, pw, bc = T[0], T[1], T[4], T[5]
    acc = np.zeros(np.broadcast(x, y).shape, dtype=np.int64)
    for i in range(bc.shape[0]):
        term = mul[mul[pw[BETA0 + 2 * i][x], pw[BETA0 + 2 * i + 1][y]], bc[i]]
        acc = add[acc, term]
    return acc


def psi1(x3, y2, y3, T):
    add, mul, pw = T[0], T[1], T[4]
    return add[mul[pw[H2][y2], pw[H3][x3]], beta_eval(x3, y3, T)]


def psi2(x3, y3, T):
    if not T[6]:
        return np.zeros(np.broadcast(x3, y3).shape, dtype=np.int64)
    pw = T[4]
    return T[1][pw[PM][x3], pw[PN][y3]]


def unip_mul(T, U, V):
    add = T[0]
    u1, u2, u3 = U[:, 0], U[:, 1], U[:, 2]
    v1, v2, v3 = V[:, 0], V[:, 1], V[:, 2]
    w1 = add[add[u1, v1], psi1(u3, v2, v3, T)]
    w2 = add[add[u2, v2], psi2(u3, v3, T)]
    w3 = add[u3, v3]
    return np.stack([w1, w2, w3], axis=1)


def unip_inv(T, U):
    add, neg = T[0], T[2]
    u1, u2, u3 = U[:, 0], U[:, 1], U[:, 2]
    v3 = neg[u3]
    v2 = neg[add[u2, psi2(u3, v3, T)]]
    v1 = neg[add[u1, psi1(u3, v2, v3, T)]]
    return np.stack([v1, v2, v3], axis=1)


def torus(T, A, U):
    mul, pw = T[1], T[4]
    return np.stack([
        mul[pw[E1][A], U[:, 0]],
        mul[pw[E2][A], U[:, 1]],
        mul[pw[E3][A], U[:, 2]],
    ], axis=1)


def group_mul(T, G, H):
    mul = T[1]
    W = unip_mul(T, G[:, :3], torus(T, G[:, 3], H[:, :3]))
    return np.concatenate([W, mul[G[:, 3], H[:, 3]][:, None]], axis=1)


def group_inv(T, G):
    inv = T[3]
    ainv = inv[G[:, 3]]
    W = torus(T, ainv, unip_inv(T, G[:, :3]))
    return np.concatenate([W, ainv[:, None]], axis=1)


def canonical(T, Z):
    add, mul, neg, pw = T[0], T[1], T[2], T[4]
    corr = mul[pw[H2][neg[Z[:, 1]]], pw[H3][Z[:, 2]]]
    return np.stack([add[Z[:, 0], corr], Z[:, 2]], axis=1)


def act(T, G, P):
    add, mul, pw = T[0], T[1], T[4]
    u1, u2, u3, a = G[:, 0], G[:, 1], G[:, 2], G[:, 3]
    ax = mul[pw[E1][a], P[:, 0]]
    ay = mul[pw[E3][a], P[:, 1]]
    zero = np.zeros_like(u1)
    z1 = add[add[u1, ax], psi1(u3, zero, ay, T)]
    z2 = add[u2, psi2(u3, ay, T)]
    z3 = add[u3, ay]
    return canonical(T, np.stack([z1, z2, z3], axis=1))


def fixed_point_counts(T, G, P):
    """Number of points of ``P`` fixed by each row of ``G``."""
    nG, nP = G.shape[0], P.shape[0]
    out = np.zeros(nG, dtype=np.int64)
    chunk = max(1, 400_000 // max(nP, 1))
    for s in range(0, nG, chunk):
        g = G[s:s + chunk]
        GG = np.repeat(g, nP, axis=0)
        PP = np.tile(P, (g.shape[0], 1))
        img = act(T, GG, PP)
        fixed = np.all(img == PP, axis=1).reshape(g.shape[0], nP)
        out[s:s + chunk] = fixed.sum(axis=1)
    return out


def central_mask(T, U, V):
    """For each row of ``U``: does it commute with every row of ``V``?"""
    nU, nV = U.shape[0], V.shape[0]
    out = np.ones(nU, dtype=np.bool_)
    chunk = max(1, 400_000 // max(nV, 1))
    for s in range(0, nU, chunk):
        u = U[s:s + chunk]
        UU = np.repeat(u, nV, axis=0)
        VV = np.tile(V, (u.shape[0], 1))
        same = np.all(unip_mul(T, UU, VV) == unip_mul(T, VV, UU), axis=1)
        out[s:s + chunk] = same.reshape(u.shape[0], nV).all(axis=1)
    return out


def act_all_pairs(T, G, P):
    """Image of every (g, P) pair, shape (len(G), len(P), 2)."""
    GG = np.repeat(G, P.shape[0], axis=0)
    PP = np.tile(P, (G.shape[0], 1))
    return act(T, GG, PP).reshape(G.shape[0], P.shape[0], 2)

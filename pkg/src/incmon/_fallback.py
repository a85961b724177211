"""numpy implementations of the GF(q) kernels, used when the extension is not built.

Signatures and results are identical to the compiled ``_kernels`` module.
"""

import numpy as np

_CHUNK = 1 << 14


def _weights(q, f):
    return q ** np.arange(f - 1, -1, -1, dtype=np.int64)


def decode(codes, q, n, rows, cols, base):
    codes = np.asarray(codes, dtype=np.int64)
    rows = np.asarray(rows, dtype=np.int64)
    cols = np.asarray(cols, dtype=np.int64)
    out = np.broadcast_to(np.asarray(base, dtype=np.int64).reshape(n, n), (len(codes), n, n)).copy()
    if len(rows):
        digits = (codes[:, None] // _weights(q, len(rows))[None, :]) % q
        out[:, rows, cols] = digits
    return out


def encode(mats, q, rows, cols):
    mats = np.asarray(mats, dtype=np.int64)
    rows = np.asarray(rows, dtype=np.int64)
    cols = np.asarray(cols, dtype=np.int64)
    if not len(rows):
        return np.zeros(len(mats), dtype=np.int64)
    return mats[:, rows, cols] @ _weights(q, len(rows))


def products(A, B, q, rows, cols):
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    out = np.empty((len(A), len(B)), dtype=np.int64)
    step = max(1, _CHUNK // max(1, len(B)))
    for s in range(0, len(A), step):
        prod = np.einsum("aij,bjk->abik", A[s : s + step], B) % q
        blk = prod.reshape(-1, *prod.shape[2:])
        out[s : s + step] = encode(blk, q, rows, cols).reshape(-1, len(B))
    return out


def idempotent_mask(mats, q):
    mats = np.asarray(mats, dtype=np.int64)
    if not len(mats):
        return np.zeros(0, dtype=np.uint8)
    sq = np.einsum("aij,ajk->aik", mats, mats) % q
    return np.all(sq == mats, axis=(1, 2)).astype(np.uint8)


def idempotent_codes(total, q, n, rows, cols, base):
    found = []
    for s in range(0, total, _CHUNK):
        codes = np.arange(s, min(total, s + _CHUNK), dtype=np.int64)
        mask = idempotent_mask(decode(codes, q, n, rows, cols, base), q).astype(bool)
        found.append(codes[mask])
    return np.concatenate(found) if found else np.zeros(0, dtype=np.int64)


def conjugates(G, Ginv, x, q, rows, cols):
    G = np.asarray(G, dtype=np.int64)
    Ginv = np.asarray(Ginv, dtype=np.int64)
    x = np.asarray(x, dtype=np.int64)
    res = np.einsum("aij,jk,akl->ail", G, x, Ginv) % q
    return encode(res, q, rows, cols)

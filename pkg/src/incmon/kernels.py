"""Backend selection for the GF(q) kernels.

The compiled extension is used when it imports; set ``INCMON_PURE_PYTHON=1``
to force the numpy fallback.  ``BACKEND`` names the active one.
"""

import os

from incmon import _fallback

if os.environ.get("INCMON_PURE_PYTHON", "") not in ("", "0"):
    _impl = _fallback
else:
    try:
        from incmon import _kernels as _impl
    except ImportError:  # extension not built
        _impl = _fallback

BACKEND = "python" if _impl is _fallback else "cython"

decode = _impl.decode
encode = _impl.encode
products = _impl.products
idempotent_mask = _impl.idempotent_mask
idempotent_codes = _impl.idempotent_codes
conjugates = _impl.conjugates


def backend(name):
    """Module for ``name`` ("cython" or "python"); raises ImportError if unavailable."""
    if name == "python":
        return _fallback
    if name == "cython":
        from incmon import _kernels

        return _kernels
    raise ValueError(name)


DEFAULT_MAX_SEARCH = 10**7


def max_search(default=DEFAULT_MAX_SEARCH):
    """Enumeration cap, overridable through ``INCMON_MAX_SEARCH``."""
    return int(os.environ.get("INCMON_MAX_SEARCH", default))


class GFCodec:
    """Bijection between members of a monoid context over GF(q) and integer codes.

    Codes increase with the lexicographic order of the row-major entry vector,
    so ``range(total)`` enumerates the members in canonical order.
    """

    def __init__(self, ctx, q):
        import numpy as np

        from incmon.exact import Field

        self.ctx = ctx
        self.field = Field(q)
        self.q = q
        self.n = ctx.n
        pos = ctx.free_positions()
        self.positions = pos
        self.rows = np.array([i for i, _ in pos], dtype=np.int64)
        self.cols = np.array([j for _, j in pos], dtype=np.int64)
        base = np.zeros((self.n, self.n), dtype=np.int64)
        for i in ctx.fixed_one_diagonal():
            base[i, i] = 1
        self.base = base.reshape(-1)
        self.total = q ** len(pos)

    def decode(self, codes):
        import numpy as np

        return decode(np.asarray(codes, dtype=np.int64), self.q, self.n, self.rows, self.cols, self.base)

    def encode(self, mats):
        import numpy as np

        return encode(np.ascontiguousarray(mats, dtype=np.int64), self.q, self.rows, self.cols)

    def to_matrix(self, arr):
        from incmon.exact import ExactMatrix

        return ExactMatrix(self.n, self.n, tuple(tuple(int(v) for v in row) for row in arr), self.field)

    def from_matrix(self, x):
        import numpy as np

        return np.array([[int(v) for v in row] for row in x.entries], dtype=np.int64)

    def code_of(self, x):
        return int(self.encode(self.from_matrix(x)[None])[0])

    def matrix_of(self, code):
        return self.to_matrix(self.decode([code])[0])

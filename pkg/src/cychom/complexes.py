"""Chain complexes over a field: homology dimensions, bases, induced maps."""

from __future__ import annotations

from .linalg import Matrix, TrackedSpan, kernel_columns, rank


class ChainComplex:
    """A nonnegatively graded chain complex C_0 <- C_1 <- ... <- C_top.

    diffs[n] is the differential C_n -> C_{n-1} (indices 1..top); degrees
    above top are treated as zero, so homology at top itself is only
    meaningful when the complex genuinely stops there.
    """

    def __init__(self, field, dims, diffs, check=True):
        self.field = field
        self.dims = list(dims)
        self.top = len(self.dims) - 1
        self.diffs = dict(diffs)
        for n, d in self.diffs.items():
            if d.nrows != self.dims[n - 1] or d.ncols != self.dims[n]:
                raise ValueError(f"differential {n} has wrong shape")
        if check:
            self.check_complex()

    def differential(self, n):
        d = self.diffs.get(n)
        if d is not None:
            return d
        up = self.dims[n] if 0 <= n <= self.top else 0
        dn = self.dims[n - 1] if 1 <= n <= self.top + 1 else 0
        return Matrix.zero(self.field, dn, up)

    def check_complex(self):
        for n in range(2, self.top + 1):
            if not (self.differential(n - 1) * self.differential(n)).is_zero():
                raise ValueError(f"d_{n-1} o d_{n} != 0")

    def homology_dim(self, n):
        d_in = self.differential(n + 1)
        d_out = self.differential(n)
        return (self.dims[n] - rank(d_out)) - rank(d_in)

    def homology_dims(self, max_degree):
        return [self.homology_dim(n) for n in range(max_degree + 1)]

    def homology(self, n):
        return Homology(self, n)


class Homology:
    """Homology of a complex in one degree, with explicit representatives.

    Internally a single tracked span holds the boundaries (untagged) and a
    maximal independent family of cycles (tagged); the tags are the
    homology coordinates.
    """

    def __init__(self, complex: ChainComplex, n):
        self.field = complex.field
        self.degree = n
        self.chain_dim = complex.dims[n]
        self._span = TrackedSpan(self.field, self.chain_dim)
        for col in complex.differential(n + 1).columns():
            self._span.add(col)
        self.reps = []
        for z in kernel_columns(complex.differential(n)):
            if self._span.add(z, tag=len(self.reps)):
                self.reps.append(z)
        self.dim = len(self.reps)

    def class_of(self, vec):
        """Homology coordinates of a cycle (sparse chain vector)."""
        got = self._span.class_of(vec)
        if got is None:
            raise ValueError("vector is not a cycle")
        return got

    def representative(self, hvec):
        """A chain representing the class with the given coordinates."""
        F = self.field
        out = {}
        for t, c in hvec.items():
            for r, v in self.reps[t].items():
                nv = F.add(out.get(r, F.zero), F.mul(c, v))
                if nv == F.zero:
                    out.pop(r, None)
                else:
                    out[r] = nv
        return out

    def representatives(self):
        return [dict(rep) for rep in self.reps]


def induced_map(phi: Matrix, h_src: Homology, h_tgt: Homology) -> Matrix:
    """Map on homology induced by a chain-level map in one degree."""
    cols = []
    for i in range(h_src.dim):
        rep = h_src.representative({i: h_src.field.one})
        cols.append(h_tgt.class_of(phi.apply(rep)))
    return Matrix.from_columns(h_src.field, h_tgt.dim, cols)


def is_exact_at(d_in: Matrix, d_out: Matrix) -> bool:
    """Exactness of  . --d_in--> . --d_out--> .  at the middle term."""
    if not (d_out * d_in).is_zero():
        return False
    return (d_out.ncols - rank(d_out)) == rank(d_in)

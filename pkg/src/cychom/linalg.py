"""Exact sparse linear algebra over Q and over prime fields F_p.

Scalars are gmpy2.mpq for the rationals and plain ints in [0, p) for F_p;
both representations are canonical, so equality of matrices is bit-exact.
Everything here is immutable-by-convention: operations return new objects
and never mutate their arguments.
"""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq


class LinalgError(Exception):
    pass


def _is_prime(p):
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Field:
    """The base field: Q (p is None) or F_p with p prime."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def is_rationals(self):
        return self.p is None

    def __call__(self, x):
        """Coerce an int, string or scalar into canonical form."""
        if self.p is None:
            return mpq(x)
        return int(x) % self.p

    @property
    def zero(self):
        return mpq(0) if self.p is None else 0

    @property
    def one(self):
        return mpq(1) if self.p is None else 1

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p is None else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p is None else (a * b) % self.p

    def neg(self, a):
        return -a if self.p is None else (-a) % self.p

    def inv(self, a):
        if self.p is None:
            if a == 0:
                raise ZeroDivisionError
            return 1 / a
        return pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def describe(self):
        return "Q" if self.p is None else f"F{self.p}"


QQ = Field()


def GF(p):
    return Field(p)


class Matrix:
    """Sparse matrix with dict-of-rows storage; no stored zeros."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field, nrows, ncols, rows=None):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows if rows is not None else {}

    # -- construction -------------------------------------------------

    @classmethod
    def zero(cls, field, nrows, ncols):
        return cls(field, nrows, ncols)

    @classmethod
    def identity(cls, field, n):
        one = field.one
        return cls(field, n, n, {i: {i: one} for i in range(n)})

    @classmethod
    def from_entries(cls, field, nrows, ncols, entries):
        """entries: iterable of (row, col, value); duplicates accumulate."""
        m = cls(field, nrows, ncols)
        for r, c, v in entries:
            if not (0 <= r < nrows and 0 <= c < ncols):
                raise LinalgError(f"index ({r},{c}) out of range")
            v = field(v)
            row = m.rows.setdefault(r, {})
            v = field.add(row.get(c, field.zero), v)
            if v == field.zero:
                row.pop(c, None)
                if not row:
                    del m.rows[r]
            else:
                row[c] = v
        return m

    @classmethod
    def from_dense(cls, field, data):
        nrows = len(data)
        ncols = len(data[0]) if data else 0
        return cls.from_entries(
            field, nrows, ncols,
            ((r, c, v) for r, row in enumerate(data) for c, v in enumerate(row)),
        )

    @classmethod
    def from_columns(cls, field, nrows, cols):
        """cols: list of sparse columns, each a dict row -> value."""
        m = cls(field, nrows, len(cols))
        for c, col in enumerate(cols):
            for r, v in col.items():
                if v != field.zero:
                    m.rows.setdefault(r, {})[c] = v
        return m

    def copy(self):
        return Matrix(self.field, self.nrows, self.ncols,
                      {r: dict(row) for r, row in self.rows.items()})

    # -- inspection ---------------------------------------------------

    def __getitem__(self, rc):
        r, c = rc
        return self.rows.get(r, {}).get(c, self.field.zero)

    def entries(self):
        for r, row in self.rows.items():
            for c, v in row.items():
                yield r, c, v

    def nnz(self):
        return sum(len(row) for row in self.rows.values())

    def column(self, c):
        return {r: row[c] for r, row in self.rows.items() if c in row}

    def columns(self):
        cols = [dict() for _ in range(self.ncols)]
        for r, row in self.rows.items():
            for c, v in row.items():
                cols[c][r] = v
        return cols

    def is_zero(self):
        return not self.rows

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field == other.field
                and self.nrows == other.nrows and self.ncols == other.ncols
                and self.rows == other.rows)

    def __hash__(self):
        raise TypeError("Matrix is not hashable")

    def to_dense(self):
        z = self.field.zero
        out = [[z] * self.ncols for _ in range(self.nrows)]
        for r, c, v in self.entries():
            out[r][c] = v
        return out

    def __repr__(self):
        return f"Matrix({self.field.describe()}, {self.nrows}x{self.ncols}, nnz={self.nnz()})"

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        self._check_same_shape(other)
        F = self.field
        out = {r: dict(row) for r, row in self.rows.items()}
        for r, row in other.rows.items():
            dst = out.setdefault(r, {})
            for c, v in row.items():
                s = F.add(dst.get(c, F.zero), v)
                if s == F.zero:
                    dst.pop(c, None)
                else:
                    dst[c] = s
            if not dst:
                del out[r]
        return Matrix(F, self.nrows, self.ncols, out)

    def __neg__(self):
        F = self.field
        return Matrix(F, self.nrows, self.ncols,
                      {r: {c: F.neg(v) for c, v in row.items()}
                       for r, row in self.rows.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, a):
        F = self.field
        a = F(a)
        if a == F.zero:
            return Matrix.zero(F, self.nrows, self.ncols)
        return Matrix(F, self.nrows, self.ncols,
                      {r: {c: F.mul(a, v) for c, v in row.items()}
                       for r, row in self.rows.items()})

    def __mul__(self, other):
        """Matrix product self @ other."""
        if self.ncols != other.nrows:
            raise LinalgError(
                f"shape mismatch: {self.nrows}x{self.ncols} @ {other.nrows}x{other.ncols}")
        F = self.field
        zero = F.zero
        out = {}
        brows = other.rows
        for r, row in self.rows.items():
            acc = {}
            for k, v in row.items():
                brow = brows.get(k)
                if not brow:
                    continue
                if F.p is None:
                    for c, w in brow.items():
                        acc[c] = acc.get(c, zero) + v * w
                else:
                    for c, w in brow.items():
                        acc[c] = (acc.get(c, 0) + v * w) % F.p
            acc = {c: v for c, v in acc.items() if v != zero}
            if acc:
                out[r] = acc
        return Matrix(F, self.nrows, other.ncols, out)

    def apply(self, vec):
        """Apply to a sparse column vector (dict row -> value)."""
        F = self.field
        zero = F.zero
        acc = {}
        for r, row in self.rows.items():
            s = zero
            for c, w in row.items():
                x = vec.get(c)
                if x is not None:
                    s = F.add(s, F.mul(w, x))
            if s != zero:
                acc[r] = s
        return acc

    def transpose(self):
        out = {}
        for r, row in self.rows.items():
            for c, v in row.items():
                out.setdefault(c, {})[r] = v
        return Matrix(self.field, self.ncols, self.nrows, out)

    # -- structural combinators --------------------------------------

    def hstack(self, other):
        self._check_field(other)
        if self.nrows != other.nrows:
            raise LinalgError("hstack: row mismatch")
        out = {r: dict(row) for r, row in self.rows.items()}
        for r, row in other.rows.items():
            dst = out.setdefault(r, {})
            for c, v in row.items():
                dst[c + self.ncols] = v
        return Matrix(self.field, self.nrows, self.ncols + other.ncols, out)

    def vstack(self, other):
        self._check_field(other)
        if self.ncols != other.ncols:
            raise LinalgError("vstack: column mismatch")
        out = {r: dict(row) for r, row in self.rows.items()}
        for r, row in other.rows.items():
            out[r + self.nrows] = dict(row)
        return Matrix(self.field, self.nrows + other.nrows, self.ncols, out)

    def direct_sum(self, other):
        self._check_field(other)
        out = {r: dict(row) for r, row in self.rows.items()}
        for r, row in other.rows.items():
            out[r + self.nrows] = {c + self.ncols: v for c, v in row.items()}
        return Matrix(self.field, self.nrows + other.nrows,
                      self.ncols + other.ncols, out)

    def kron(self, other):
        """Kronecker product, row-major slot order (self is the outer slot)."""
        self._check_field(other)
        F = self.field
        out = {}
        for r1, row1 in self.rows.items():
            for r2, row2 in other.rows.items():
                dst = {}
                for c1, v1 in row1.items():
                    for c2, v2 in row2.items():
                        w = F.mul(v1, v2)
                        if w != F.zero:
                            dst[c1 * other.ncols + c2] = w
                if dst:
                    out[r1 * other.nrows + r2] = dst
        return Matrix(F, self.nrows * other.nrows, self.ncols * other.ncols, out)

    def submatrix_columns(self, cols):
        """Select the given columns, reindexed 0..len(cols)-1."""
        pos = {c: i for i, c in enumerate(cols)}
        out = {}
        for r, row in self.rows.items():
            dst = {pos[c]: v for c, v in row.items() if c in pos}
            if dst:
                out[r] = dst
        return Matrix(self.field, self.nrows, len(cols), out)

    def _check_same_shape(self, other):
        self._check_field(other)
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise LinalgError("shape mismatch")

    def _check_field(self, other):
        if self.field != other.field:
            raise LinalgError("field mismatch")


def kron_list(field, mats):
    out = Matrix.identity(field, 1)
    for m in mats:
        out = out.kron(m)
    return out


# ---------------------------------------------------------------------------
# Elimination


def _eliminate(field, rows, pivot_limit=None):
    """In-place sparse Gaussian elimination on a list of row dicts.

    Returns (pivots, pivot_rows): pivots is a list of column indices in the
    order pivoting happened, pivot_rows the corresponding (normalized) rows.
    Pivot choice favours short rows and short columns to limit fill-in.
    If pivot_limit is given, only columns < pivot_limit are eligible pivots
    (columns past the limit ride along, e.g. an augmented identity block).
    """
    import heapq

    F = field
    zero = F.zero
    # column -> set of active row ids containing it
    colmap = {}
    active = {}
    for i, row in enumerate(rows):
        if row:
            active[i] = row
            for c in row:
                colmap.setdefault(c, set()).add(i)

    # lazy heap over (column occupancy, column): stale entries are skipped
    heap = []
    for c, rset in colmap.items():
        if pivot_limit is None or c < pivot_limit:
            heap.append((len(rset), c))
    heapq.heapify(heap)

    def push(c):
        if pivot_limit is None or c < pivot_limit:
            heapq.heappush(heap, (len(colmap[c]), c))

    pivots = []
    pivot_rows = []
    while active:
        # pick the sparsest eligible column, then its shortest row
        best = None
        while heap:
            cnt, c = heapq.heappop(heap)
            rset = colmap.get(c)
            if not rset:
                continue
            if len(rset) > cnt:
                # stale: occupancy grew since this entry was pushed
                heapq.heappush(heap, (len(rset), c))
                continue
            best = c
            break
        if best is None:
            break
        pc = best
        pi = min(colmap[pc], key=lambda i: len(active[i]))
        prow = active.pop(pi)
        for c in prow:
            colmap[c].discard(pi)
        # normalize pivot row
        pv = prow[pc]
        if pv != F.one:
            inv = F.inv(pv)
            prow = {c: F.mul(inv, v) for c, v in prow.items()}
        pivots.append(pc)
        pivot_rows.append(prow)
        # eliminate pc from all remaining rows containing it
        hit = list(colmap.get(pc, ()))
        for i in hit:
            row = active[i]
            f = row.pop(pc)
            colmap[pc].discard(i)
            if F.p is None:
                for c, v in prow.items():
                    if c == pc:
                        continue
                    nv = row.get(c, zero) - f * v
                    if nv == zero:
                        if c in row:
                            del row[c]
                            colmap[c].discard(i)
                    else:
                        if c not in row:
                            colmap.setdefault(c, set()).add(i)
                            push(c)
                        row[c] = nv
            else:
                p = F.p
                for c, v in prow.items():
                    if c == pc:
                        continue
                    nv = (row.get(c, 0) - f * v) % p
                    if nv == 0:
                        if c in row:
                            del row[c]
                            colmap[c].discard(i)
                    else:
                        if c not in row:
                            colmap.setdefault(c, set()).add(i)
                            push(c)
                        row[c] = nv
            if not row:
                del active[i]
        colmap.pop(pc, None)
    return pivots, pivot_rows


def _eliminate_ordered(field, rows, ncols):
    """Gaussian elimination pivoting on columns strictly left to right.

    Slower than _eliminate but produces the standard pivot set, which makes
    the reduced rows canonical for a given row space.
    """
    F = field
    zero = F.zero
    colmap = {}
    active = {}
    for i, row in enumerate(rows):
        if row:
            active[i] = row
            for c in row:
                colmap.setdefault(c, set()).add(i)
    pivots = []
    pivot_rows = []
    for pc in range(ncols):
        rset = colmap.get(pc)
        if not rset:
            continue
        pi = min(rset, key=lambda i: len(active[i]))
        prow = active.pop(pi)
        for c in prow:
            colmap[c].discard(pi)
        pv = prow[pc]
        if pv != F.one:
            inv = F.inv(pv)
            prow = {c: F.mul(inv, v) for c, v in prow.items()}
        pivots.append(pc)
        pivot_rows.append(prow)
        for i in list(colmap.get(pc, ())):
            row = active[i]
            f = row.pop(pc)
            colmap[pc].discard(i)
            for c, v in prow.items():
                if c == pc:
                    continue
                nv = F.sub(row.get(c, zero), F.mul(f, v))
                if nv == zero:
                    if c in row:
                        del row[c]
                        colmap[c].discard(i)
                else:
                    if c not in row:
                        colmap.setdefault(c, set()).add(i)
                    row[c] = nv
            if not row:
                del active[i]
        colmap.pop(pc, None)
    return pivots, pivot_rows


def _back_substitute(field, pivots, pivot_rows):
    """Turn an echelon set of rows into fully reduced (RREF) rows, in place."""
    F = field
    zero = F.zero
    where = {c: k for k, c in enumerate(pivots)}
    # reduce in reverse pivot order
    order = sorted(range(len(pivots)), key=lambda k: pivots[k], reverse=True)
    for k in order:
        prow = pivot_rows[k]
        pc = pivots[k]
        for j in range(len(pivots)):
            if j == k:
                continue
            row = pivot_rows[j]
            f = row.get(pc)
            if f is None:
                continue
            for c, v in prow.items():
                nv = F.sub(row.get(c, zero), F.mul(f, v))
                if nv == zero:
                    row.pop(c, None)
                else:
                    row[c] = nv
    return pivots, pivot_rows


class Echelon:
    """Reduced row echelon data for a matrix; reusable for many solves."""

    def __init__(self, m: Matrix):
        self.field = m.field
        self.nrows = m.nrows
        self.ncols = m.ncols
        # carry an identity block to record the row transform: [M | I]
        F = m.field
        rows = []
        for i in range(m.nrows):
            row = dict(m.rows.get(i, {}))
            row[m.ncols + i] = F.one
            rows.append(row)
        pivots, prows = _eliminate(F, rows, pivot_limit=m.ncols)
        _back_substitute(F, pivots, prows)
        order = sorted(range(len(pivots)), key=lambda k: pivots[k])
        self.pivots = [pivots[k] for k in order]
        self.pivot_rows = [prows[k] for k in order]
        self.rank = len(self.pivots)
        self._pivot_set = set(self.pivots)

    def free_columns(self):
        return [c for c in range(self.ncols) if c not in self._pivot_set]

    def solve(self, b):
        """Candidate solution of M x = b with free variables set to zero.

        Does not check consistency; callers verify via solve_with.
        """
        F = self.field
        zero = F.zero
        # apply the recorded row transform to b: each reduced row carries
        # its combination of original rows in the columns >= ncols.
        x = {}
        for pc, row in zip(self.pivots, self.pivot_rows):
            s = zero
            for c, v in row.items():
                if c >= self.ncols:
                    bv = b.get(c - self.ncols)
                    if bv is not None:
                        s = F.add(s, F.mul(v, bv))
            if s != zero:
                x[pc] = s
        return x

    def kernel_columns(self):
        """Basis of ker M as sparse columns (one per free column)."""
        F = self.field
        cols = []
        for f in self.free_columns():
            col = {f: F.one}
            for pc, row in zip(self.pivots, self.pivot_rows):
                v = row.get(f)
                if v is not None:
                    col[pc] = F.neg(v)
            cols.append(col)
        return cols


def row_space_rref(m: Matrix):
    """Canonical RREF rows of m, sorted by pivot. Returns (pivots, rows)."""
    rows = [dict(m.rows.get(i, {})) for i in range(m.nrows)]
    pivots, prows = _eliminate_ordered(m.field, rows, m.ncols)
    _back_substitute(m.field, pivots, prows)
    return pivots, prows


def rank(m: Matrix) -> int:
    rows = [dict(row) for row in m.rows.values()]
    pivots, _ = _eliminate(m.field, rows)
    return len(pivots)


@dataclass
class Subspace:
    """A subspace of k^ambient_dim with an RREF basis (as matrix columns).

    Basis columns have strictly increasing pivot rows; this makes the
    representation canonical, so equality of subspaces is matrix equality.
    """

    ambient_dim: int
    basis: Matrix  # ambient_dim x dim

    @property
    def dim(self):
        return self.basis.ncols

    def contains(self, vec):
        aug = self.basis.hstack(Matrix.from_columns(self.basis.field,
                                                    self.ambient_dim, [vec]))
        return rank(aug) == self.dim

    def __eq__(self, other):
        return (isinstance(other, Subspace)
                and self.ambient_dim == other.ambient_dim
                and self.basis == other.basis)


def _columns_to_subspace(field, ambient_dim, cols):
    """Canonicalize a spanning set of sparse columns into an RREF Subspace."""
    m = Matrix.from_columns(field, ambient_dim, cols)
    pivots, rows = row_space_rref(m.transpose())
    basis_cols = []
    for pc, row in zip(pivots, rows):
        basis_cols.append(dict(row))
    # rows of the transposed RREF are vectors in the ambient space
    return Subspace(ambient_dim, Matrix.from_columns(field, ambient_dim, basis_cols))


def kernel_columns(m: Matrix):
    """A (non-canonical) basis of ker m as a list of sparse columns."""
    F = m.field
    rows = [dict(row) for row in m.rows.values()]
    pivots, prows = _eliminate(F, rows)
    _back_substitute(F, pivots, prows)
    pset = set(pivots)
    out = []
    for f in range(m.ncols):
        if f in pset:
            continue
        col = {f: F.one}
        for pc, row in zip(pivots, prows):
            v = row.get(f)
            if v is not None:
                col[pc] = F.neg(v)
        out.append(col)
    return out


def kernel_basis(m: Matrix) -> Subspace:
    return _columns_to_subspace(m.field, m.ncols, kernel_columns(m))


def image_basis(m: Matrix) -> Subspace:
    return _columns_to_subspace(m.field, m.nrows, m.columns())


def solve(m: Matrix, b) -> dict | None:
    """Return some sparse x with m x = b, or None if b is not in the image.

    b is a sparse dict (row -> value) of length m.nrows.
    """
    if any(r >= m.nrows for r in b):
        raise LinalgError("rhs dimension mismatch")
    ech = Echelon(m)
    return solve_with(m, ech, b)


def solve_with(m: Matrix, ech: Echelon, b) -> dict | None:
    x = ech.solve(b)
    # verify (also the consistency check)
    F = m.field
    mx = m.apply(x)
    if mx != {r: v for r, v in b.items() if v != F.zero}:
        return None
    return x


def homology_dims(d_in: Matrix, d_out: Matrix) -> int:
    """dim ker(d_out) - dim im(d_in) for composable d_in, d_out."""
    if d_in.nrows != d_out.ncols:
        raise LinalgError("middle-term dimension mismatch")
    if not (d_out * d_in).is_zero():
        raise LinalgError("d_out o d_in != 0")
    return (d_out.ncols - rank(d_out)) - rank(d_in)


class IncrementalSpan:
    """Growable span of sparse vectors with fast membership tests.

    Maintains an echelon set of rows (one pivot per row); add() reduces the
    incoming vector and absorbs any nonzero remainder.
    """

    def __init__(self, field, dim):
        self.field = field
        self.dim = dim
        self.rows = {}  # pivot -> row dict (normalized: row[pivot] == 1)

    @property
    def rank(self):
        return len(self.rows)

    def _reduce(self, vec):
        F = self.field
        zero = F.zero
        v = {c: x for c, x in vec.items() if x != zero}
        while v:
            p = min(v)
            row = self.rows.get(p)
            if row is None:
                return v, p
            f = v[p]
            for c, w in row.items():
                nv = F.sub(v.get(c, zero), F.mul(f, w))
                if nv == zero:
                    v.pop(c, None)
                else:
                    v[c] = nv
        return v, None

    def contains(self, vec):
        v, _ = self._reduce(vec)
        return not v

    def add(self, vec):
        """Add vec to the span; returns True if the span grew."""
        v, p = self._reduce(vec)
        if not v:
            return False
        F = self.field
        inv = F.inv(v[p])
        self.rows[p] = {c: F.mul(inv, x) for c, x in v.items()}
        return True


class TrackedSpan:
    """Incremental span that tracks coefficients over tagged generators.

    Every stored row knows its class as a combination of the tagged vectors
    modulo the untagged ones, so `class_of` expresses any member of the
    span in terms of the tagged generators.  Used to compute quotients
    (homology: boundaries untagged, representatives tagged) in one sweep.
    """

    def __init__(self, field, dim):
        self.field = field
        self.dim = dim
        self.rows = {}  # pivot -> (row dict, tag-coefficient dict)

    def _reduce(self, vec):
        F = self.field
        zero = F.zero
        v = {c: x for c, x in vec.items() if x != zero}
        acc = {}
        while v:
            p = min(v)
            entry = self.rows.get(p)
            if entry is None:
                return v, p, acc
            row, rc = entry
            f = v[p]
            for c, w in row.items():
                nv = F.sub(v.get(c, zero), F.mul(f, w))
                if nv == zero:
                    v.pop(c, None)
                else:
                    v[c] = nv
            for t, w in rc.items():
                nv = F.sub(acc.get(t, zero), F.mul(f, w))
                if nv == zero:
                    acc.pop(t, None)
                else:
                    acc[t] = nv
        return v, None, acc

    def add(self, vec, tag=None):
        """Add vec to the span; returns True if the span grew."""
        F = self.field
        v, p, acc = self._reduce(vec)
        if tag is not None:
            acc[tag] = F.add(acc.get(tag, F.zero), F.one)
        if not v:
            return False
        inv = F.inv(v[p])
        row = {c: F.mul(inv, x) for c, x in v.items()}
        rc = {t: F.mul(inv, x) for t, x in acc.items() if x != F.zero}
        self.rows[p] = (row, rc)
        return True

    def contains(self, vec):
        v, _, _ = self._reduce(vec)
        return not v

    def class_of(self, vec):
        """Coefficients of vec over the tagged generators; None if outside."""
        v, _, acc = self._reduce(vec)
        if v:
            return None
        F = self.field
        return {t: F.neg(x) for t, x in acc.items() if x != F.zero}


# ---------------------------------------------------------------------------
# Quotients


class QuotientSpace:
    """k^n modulo the column span of a matrix, with projection and section.

    The quotient basis is indexed by the non-pivot coordinates of the RREF
    of the subspace; `projection` maps ambient coordinates to quotient
    coordinates and `section` picks the canonical coset representative.
    """

    def __init__(self, field, ambient_dim, span_columns):
        self.field = field
        self.ambient_dim = ambient_dim
        m = Matrix.from_columns(field, ambient_dim, span_columns)
        pivots, rows = row_space_rref(m.transpose())
        self.sub_pivots = pivots
        self.sub_rows = rows  # RREF vectors spanning the subspace
        pset = set(pivots)
        self.coords = [i for i in range(ambient_dim) if i not in pset]
        self.dim = len(self.coords)
        pos = {c: i for i, c in enumerate(self.coords)}
        # projection: reduce v modulo the subspace, read off free coords.
        # reducing a basis vector e_i: if i is free, e_i itself; if i = pivot
        # of row k, e_i - row_k has support on free coords only.
        proj = {}
        F = field
        for i, c in enumerate(self.coords):
            proj.setdefault(i, {})[c] = F.one
        for pc, row in zip(pivots, rows):
            for c, v in row.items():
                if c == pc:
                    continue
                # e_pc reduces to -sum_{free c} v * e_c
                proj.setdefault(pos[c], {})[pc] = F.neg(v)
        self.projection = Matrix(field, self.dim, ambient_dim, proj)
        sec = {}
        for i, c in enumerate(self.coords):
            sec.setdefault(c, {})[i] = F.one
        self.section = Matrix(field, ambient_dim, self.dim, sec)

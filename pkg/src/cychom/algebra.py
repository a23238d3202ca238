"""Finite-dimensional associative unital algebras and their bimodules.

Conventions used throughout: algebras come with a distinguished basis whose
first element is the unit (constructors guarantee this; `FinAlgebra.audit`
checks it).  Vectors are sparse columns (dict index -> scalar); the basis
tensor m ⊗ a_1 ⊗ ... ⊗ a_n is flattened row-major, leftmost factor most
significant.
"""

from __future__ import annotations

import itertools

from .complexes import ChainComplex
from .linalg import Matrix, QuotientSpace, kron_list


class FinAlgebra:
    """An associative unital algebra given by structure constants.

    mult[i][j] is the product e_i * e_j as a sparse column.
    """

    def __init__(self, field, names, mult, unit=None, check=True):
        self.field = field
        self.names = list(names)
        self.dim = len(names)
        self.mult = mult
        self.unit = unit if unit is not None else {0: field.one}
        self._left = [self._action_matrix(i, left=True) for i in range(self.dim)]
        self._right = [self._action_matrix(i, left=False) for i in range(self.dim)]
        if check:
            self.audit()

    def _action_matrix(self, i, left):
        cols = [self.mult[i][j] if left else self.mult[j][i]
                for j in range(self.dim)]
        return Matrix.from_columns(self.field, self.dim, cols)

    def left_mult(self, vec):
        """Matrix of x -> v x for a sparse element v."""
        out = Matrix.zero(self.field, self.dim, self.dim)
        for i, c in vec.items():
            out = out + self._left[i].scale(c)
        return out

    def right_mult(self, vec):
        out = Matrix.zero(self.field, self.dim, self.dim)
        for i, c in vec.items():
            out = out + self._right[i].scale(c)
        return out

    def multiply(self, u, v):
        return self.left_mult(u).apply(v)

    def basis_product(self, i, j):
        return self.mult[i][j]

    @property
    def unit_is_first_basis_vector(self):
        return self.unit == {0: self.field.one}

    def audit(self):
        F = self.field
        lm = self.left_mult(self.unit)
        rm = self.right_mult(self.unit)
        ident = Matrix.identity(F, self.dim)
        assert lm == ident, "unit fails on the left"
        assert rm == ident, "unit fails on the right"
        for i, j, k in itertools.product(range(self.dim), repeat=3):
            lhs = self.multiply(self.basis_product(i, j), {k: F.one})
            rhs = self.multiply({i: F.one}, self.basis_product(j, k))
            assert lhs == rhs, f"associativity fails at ({i},{j},{k})"

    def element(self, name_coeffs):
        """Build a sparse element from {basis name: coefficient}."""
        pos = {n: i for i, n in enumerate(self.names)}
        return {pos[n]: self.field(c) for n, c in name_coeffs.items()
                if self.field(c) != self.field.zero}


def algebra_from_table(field, names, table, check=True):
    """table[(i, j)] = {k: coeff} giving e_i e_j; missing entries are zero."""
    d = len(names)
    mult = [[{k: field(c) for k, c in table.get((i, j), {}).items()
              if field(c) != field.zero}
             for j in range(d)] for i in range(d)]
    return FinAlgebra(field, names, mult, check=check)


def dual_numbers(field):
    """k[x] / x^2, basis {1, x}."""
    table = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (1, 1): {}}
    return algebra_from_table(field, ["1", "x"], table)


def group_algebra_c2(field):
    """k[C_2], basis {1, g} with g^2 = 1."""
    table = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (1, 1): {0: 1}}
    return algebra_from_table(field, ["1", "g"], table)


def matrix_algebra_2(field):
    """2x2 matrices over k, in the unit-first basis {1, e12, e21, e22}."""
    one = {0: 1}
    a, b, c = {1: 1}, {2: 1}, {3: 1}
    e11 = {0: 1, 3: -1}
    table = {
        (0, 0): one, (0, 1): a, (0, 2): b, (0, 3): c,
        (1, 0): a, (1, 1): {}, (1, 2): e11, (1, 3): a,
        (2, 0): b, (2, 1): c, (2, 2): {}, (2, 3): {},
        (3, 0): c, (3, 1): {}, (3, 2): b, (3, 3): c,
    }
    return algebra_from_table(field, ["1", "e12", "e21", "e22"], table)


def base_field_algebra(field):
    """k itself as a one-dimensional algebra."""
    return algebra_from_table(field, ["1"], {(0, 0): {0: 1}})


# ---------------------------------------------------------------------------
# Bimodules


class Bimodule:
    """An (A, A)-bimodule: matrices for the actions of each basis element."""

    def __init__(self, algebra, dim, left, right, check=True):
        self.algebra = algebra
        self.field = algebra.field
        self.dim = dim
        self._L = left    # list over algebra basis
        self._R = right
        if check:
            self.audit()

    def left(self, vec):
        out = Matrix.zero(self.field, self.dim, self.dim)
        for i, c in vec.items():
            out = out + self._L[i].scale(c)
        return out

    def right(self, vec):
        out = Matrix.zero(self.field, self.dim, self.dim)
        for i, c in vec.items():
            out = out + self._R[i].scale(c)
        return out

    def left_basis(self, i):
        return self._L[i]

    def right_basis(self, i):
        return self._R[i]

    def audit(self):
        A = self.algebra
        ident = Matrix.identity(self.field, self.dim)
        assert self.left(A.unit) == ident
        assert self.right(A.unit) == ident
        for i in range(A.dim):
            for j in range(A.dim):
                prod = A.basis_product(i, j)
                assert self.left(prod) == self._L[i] * self._L[j], \
                    "left action not multiplicative"
                assert self.right(prod) == self._R[j] * self._R[i], \
                    "right action not multiplicative"
                assert self._L[i] * self._R[j] == self._R[j] * self._L[i], \
                    "left and right actions do not commute"


def diagonal_bimodule(A: FinAlgebra) -> Bimodule:
    """A as a bimodule over itself."""
    return Bimodule(A, A.dim, list(A._left), list(A._right))


def free_bimodule(A: FinAlgebra) -> Bimodule:
    """A ⊗ A with the outer actions a·(x ⊗ y)·b = ax ⊗ yb."""
    ident = Matrix.identity(A.field, A.dim)
    left = [A._left[i].kron(ident) for i in range(A.dim)]
    right = [ident.kron(A._right[i]) for i in range(A.dim)]
    return Bimodule(A, A.dim * A.dim, left, right)


def trace_space(M: Bimodule) -> QuotientSpace:
    """M / [A, M]: the quotient by all commutators a m - m a."""
    cols = []
    for i in range(M.algebra.dim):
        cols.extend((M.left_basis(i) - M.right_basis(i)).columns())
    return QuotientSpace(M.field, M.dim, cols)


# ---------------------------------------------------------------------------
# Hochschild chains


def _flatten(indices, sizes):
    out = 0
    for i, s in zip(indices, sizes):
        out = out * s + i
    return out


def hochschild_complex(A: FinAlgebra, M: Bimodule, n_max, normalized=True):
    """The Hochschild chain complex C_n = M ⊗ A^{⊗n} up to degree n_max.

    With normalized=True (requires the unit-first basis) the bar degeneracies
    are divided out: A-slots run over the non-unit basis elements and any
    unit component produced by a face map is dropped.
    """
    F = A.field
    d = A.dim
    if normalized and not A.unit_is_first_basis_vector:
        raise ValueError("normalized chains need the unit-first basis")
    slot = list(range(1, d)) if normalized else list(range(d))
    sd = len(slot)
    spos = {s: i for i, s in enumerate(slot)}

    dims = [M.dim * sd ** n for n in range(n_max + 1)]
    diffs = {n: _hochschild_differential(A, M, n, slot, spos, dims)
             for n in range(1, n_max + 1)}
    return ChainComplex(F, dims, diffs)


def _hochschild_differential(A, M, n, slot, spos, dims):
    F = A.field
    sd = len(slot)
    entries = {}
    for col, key in enumerate(itertools.product(range(M.dim), *([slot] * n))):
        m, a = key[0], list(key[1:])
        sign = F.one
        for i in range(n + 1):
            img = _face_image(A, M, m, a, i, n, spos, sd)
            for row, v in img.items():
                cur = entries.get((row, col), F.zero)
                nv = F.add(cur, F.mul(sign, v))
                if nv == F.zero:
                    entries.pop((row, col), None)
                else:
                    entries[(row, col)] = nv
            sign = F.neg(sign)
    return Matrix.from_entries(F, dims[n - 1], dims[n],
                               ((r, c, v) for (r, c), v in entries.items()))


def _face_image(A, M, m, a, i, n, spos, sd):
    """Sparse image of the i-th face on the basis tensor m ⊗ a_1..a_n.

    Returns a dict flat-row -> coeff in degree n-1.  Face 0 is the right
    action of a_1 on m, face n the left action of a_n, inner faces multiply
    adjacent slots.  Components outside the allowed slot set (the unit, in
    the normalized complex) are dropped.
    """
    F = A.field
    out = {}
    if i == 0:
        mvec = M.right_basis(a[0]).apply({m: F.one})
        for mi, c in mvec.items():
            out[_flat_chain(mi, a[1:], spos, sd)] = c
    elif i == n:
        mvec = M.left_basis(a[n - 1]).apply({m: F.one})
        for mi, c in mvec.items():
            out[_flat_chain(mi, a[:n - 1], spos, sd)] = c
    else:
        prod = A.basis_product(a[i - 1], a[i])
        for k, c in prod.items():
            if k in spos:
                new = a[:i - 1] + [k] + a[i + 1:]
                out[_flat_chain(m, new, spos, sd)] = c
    return out


def _flat_chain(m, slots, spos, sd):
    out = m
    for s in slots:
        out = out * sd + spos[s]
    return out


def hh(A: FinAlgebra, M: Bimodule, max_degree, normalized=True):
    """Hochschild homology dimensions HH_0..HH_max of A with coefficients."""
    cx = hochschild_complex(A, M, max_degree + 1, normalized=normalized)
    return cx.homology_dims(max_degree)


# ---------------------------------------------------------------------------
# Hochschild cochains (low degrees, for deformations)


def hochschild_cochain_differential(A: FinAlgebra, M: Bimodule, n):
    """The differential C^n(A, M) -> C^{n+1}(A, M).

    C^n = Hom(A^{⊗n}, M), flattened as dim M x dim A^n matrices read
    column-major into a single vector: entry (m_index, input tensor index).
    """
    F = A.field
    d = A.dim
    src_dim = M.dim * d ** n
    tgt_dim = M.dim * d ** (n + 1)

    def cvar(mi, tensor):
        return _flatten([mi] + list(tensor), [M.dim] + [d] * len(tensor))

    entries = {}

    def add(row, col, v):
        cur = entries.get((row, col), F.zero)
        nv = F.add(cur, v)
        if nv == F.zero:
            entries.pop((row, col), None)
        else:
            entries[(row, col)] = nv

    for tensor in itertools.product(range(d), repeat=n + 1):
        a = list(tensor)
        sign = F.one
        # term 0: a_0 . c(a_1, ..., a_n)
        L = M.left_basis(a[0])
        for mi in range(M.dim):
            for mo, v in L.column(mi).items():
                add(cvar(mo, a), cvar(mi, a[1:]), v)
        # inner terms
        for i in range(1, n + 1):
            sign = F.neg(sign)
            prod = A.basis_product(a[i - 1], a[i])
            for k, c in prod.items():
                merged = a[:i - 1] + [k] + a[i + 1:]
                for mi in range(M.dim):
                    add(cvar(mi, a), cvar(mi, merged), F.mul(sign, c))
        # last term: c(a_0, ..., a_{n-1}) . a_n
        sign = F.neg(sign)
        R = M.right_basis(a[n])
        for mi in range(M.dim):
            for mo, v in R.column(mi).items():
                add(cvar(mo, a), cvar(mi, a[:n]), F.mul(sign, v))
    return Matrix.from_entries(F, tgt_dim, src_dim,
                               ((r, c, v) for (r, c), v in entries.items()))


def hh_cohomology_dims(A, M, max_degree):
    """Hochschild cohomology dimensions HH^0..HH^max."""
    from .linalg import rank
    out = []
    ranks = {}
    for n in range(max_degree + 1):
        d_out = hochschild_cochain_differential(A, M, n)
        ranks[n] = rank(d_out)
        prev = ranks.get(n - 1, 0)
        out.append(d_out.ncols - ranks[n] - prev)
    return out


def hh2_cocycle_basis(A, M):
    """Representatives of a basis of HH^2(A, M), as cocycle matrices.

    Each representative is a dim M x (dim A)^2 matrix whose column i*d + j
    is the value c(e_i, e_j); together they span the 2-cocycles modulo the
    2-coboundaries.
    """
    from .linalg import TrackedSpan, kernel_columns
    F = A.field
    d = A.dim
    d1 = hochschild_cochain_differential(A, M, 1)
    d2 = hochschild_cochain_differential(A, M, 2)
    span = TrackedSpan(F, d2.ncols)
    for col in d1.columns():
        span.add(col)
    reps = []
    for z in kernel_columns(d2):
        if span.add(z, tag=len(reps)):
            reps.append(z)
    out = []
    for rep in reps:
        # cochain index (mi * d + i) * d + j  ->  entry (mi, i * d + j)
        entries = []
        for flat, v in rep.items():
            rest, j = divmod(flat, d)
            mi, i = divmod(rest, d)
            entries.append((mi, i * d + j, v))
        out.append(Matrix.from_entries(F, M.dim, d * d, entries))
    return out


def truncated_polynomial_algebra(field, n):
    """k[x] / x^n with the basis {1, x, ..., x^{n-1}}."""
    table = {(i, j): ({i + j: 1} if i + j < n else {})
             for i in range(n) for j in range(n)}
    return algebra_from_table(field, [f"x^{i}" if i else "1" for i in range(n)],
                              table)

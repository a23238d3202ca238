"""Cyclic bimodules: coefficient systems for cyclic homology.

A cyclic bimodule over an algebra A is an A-bimodule M together with an
exchange map tau: A ⊗ M -> M ⊗ A that intertwines both actions on both
factors and satisfies a triple identity on A ⊗ A ⊗ M.  Such data extends
the simplicial vector space [n] -> M ⊗ A^{⊗(n-1)} (with M pinned at the
marked point) to the whole cyclic category: the rotation acts by moving
the last tensor slot to the front and exchanging it past M with tau.

Flattening conventions follow the rest of the package: tensor factors are
row-major with the leftmost factor most significant, and A ⊗ M is indexed
by a * dim(M) + m while M ⊗ A is indexed by m * dim(A) + a.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebra import Bimodule, FinAlgebra, diagonal_bimodule
from .lambda_cat import CycMor, compose, decompose, fiber, rotation
from .linalg import Matrix


def tensor_permutation(field, dims, perm):
    """Permutation matrix reordering tensor slots: output slot j carries
    input slot perm[j].  `dims` are the input slot dimensions."""
    out_dims = [dims[p] for p in perm]
    total = 1
    for d in dims:
        total *= d
    entries = []
    for col, key in enumerate(itertools.product(*(range(d) for d in dims))):
        row = 0
        for j, p in enumerate(perm):
            row = row * out_dims[j] + key[p]
        entries.append((row, col, field.one))
    return Matrix.from_entries(field, total, total, entries)


@dataclass
class CyclicBimodule:
    """An A-bimodule M with an exchange map tau: A ⊗ M -> M ⊗ A."""

    algebra: FinAlgebra
    module: Bimodule
    tau: Matrix

    def __post_init__(self):
        n = self.algebra.dim * self.module.dim
        if self.tau.nrows != n or self.tau.ncols != n:
            raise ValueError("tau has the wrong shape for A ⊗ M -> M ⊗ A")


def tautological_tau(A: FinAlgebra) -> CyclicBimodule:
    """A itself as a cyclic bimodule, with the identity exchange map."""
    return CyclicBimodule(A, diagonal_bimodule(A),
                          Matrix.identity(A.field, A.dim * A.dim))


def check_cyclic_structure(cb: CyclicBimodule):
    """Audit the cyclic-bimodule axioms; returns a list of (label, ok).

    The four intertwining families say tau carries each action on a tensor
    factor of A ⊗ M to the matching action on the same factor of M ⊗ A;
    the triple identity says the three slot-exchanges on A ⊗ A ⊗ M compose
    to the identity.
    """
    A, M, tau = cb.algebra, cb.module, cb.tau
    F = A.field
    iA = Matrix.identity(F, A.dim)
    iM = Matrix.identity(F, M.dim)
    results = []
    for i in range(A.dim):
        e = A.names[i]
        ok = tau * A._left[i].kron(iM) == M.left_basis(i).kron(iA) * tau
        results.append((f"left action on factor 1 ({e})", ok))
        ok = tau * A._right[i].kron(iM) == M.right_basis(i).kron(iA) * tau
        results.append((f"right action on factor 1 ({e})", ok))
        ok = tau * iA.kron(M.left_basis(i)) == iM.kron(A._left[i]) * tau
        results.append((f"left action on factor 2 ({e})", ok))
        ok = tau * iA.kron(M.right_basis(i)) == iM.kron(A._right[i]) * tau
        results.append((f"right action on factor 2 ({e})", ok))
    # triple identity tau_31 o tau_12 o tau_23 = id on A ⊗ A ⊗ M
    tau23 = iA.kron(tau)
    tau12 = tau.kron(iA)
    P = tensor_permutation(F, (M.dim, A.dim, A.dim), (2, 0, 1))
    Q = tensor_permutation(F, (M.dim, A.dim, A.dim), (1, 2, 0))
    tau31 = Q * (tau.kron(iA) * P)
    ident = Matrix.identity(F, A.dim * A.dim * M.dim)
    results.append(("triple identity", tau31 * tau12 * tau23 == ident))
    return results


def is_cyclic(cb: CyclicBimodule) -> bool:
    return all(ok for _, ok in check_cyclic_structure(cb))


# ---------------------------------------------------------------------------
# The simplicial vector space M ⊗ A^{⊗(n-1)}


class SimplicialVectorSpace:
    """Functor on the based morphisms only: dims plus matrices."""

    def __init__(self, field, n_max):
        self.field = field
        self.n_max = n_max
        self._cache = {}

    def dim(self, n):
        raise NotImplementedError

    def _matrix(self, f):
        raise NotImplementedError

    def based_matrix(self, f: CycMor):
        if not f.is_based:
            raise ValueError("not a based morphism")
        got = self._cache.get(f)
        if got is None:
            got = self._cache[f] = self._matrix(f)
            if got.nrows != self.dim(f.target) or got.ncols != self.dim(f.source):
                raise ValueError(f"matrix for {f} has wrong shape")
        return got

    def apply(self, f: CycMor, vec):
        return self.based_matrix(f).apply(vec)


class _RestrictedCyclic(SimplicialVectorSpace):
    """A cyclic vector space seen only through its based morphisms."""

    def __init__(self, E):
        super().__init__(E.field, E.n_max)
        self.E = E

    def dim(self, n):
        return self.E.dim(n)

    def _matrix(self, f):
        return self.E.matrix(f)

    def apply(self, f, vec):
        if not f.is_based:
            raise ValueError("not a based morphism")
        return self.E.apply(f, vec)


def restrict_to_based(E) -> SimplicialVectorSpace:
    return _RestrictedCyclic(E)


class _SimplicialM(SimplicialVectorSpace):
    """[n] -> M ⊗ A^{⊗(n-1)} with M at the marked point.

    A based morphism multiplies each nonzero fiber into its output slot in
    the canonical order; the fiber over the marked point contains it, and
    the factors before / after it act on M from the left / right.
    """

    def __init__(self, A, M, n_max):
        super().__init__(A.field, n_max)
        self.algebra = A
        self.module = M

    def dim(self, n):
        return self.module.dim * self.algebra.dim ** (n - 1)

    def _sizes(self, n):
        return [self.module.dim] + [self.algebra.dim] * (n - 1)

    def _fibers(self, f):
        key = ("fibers", f)
        got = self._cache.get(key)
        if got is None:
            got = self._cache[key] = [fiber(f, v) for v in range(f.target)]
        return got

    def _column(self, f, key):
        A, M, F = self.algebra, self.module, self.field
        fibers = self._fibers(f)
        # the marked-point fiber: left product, the M element, right product
        cut = fibers[0].index(0)
        pre = dict(A.unit)
        for x in fibers[0][:cut]:
            pre = A.multiply(pre, {key[x]: F.one})
        suf = dict(A.unit)
        for x in fibers[0][cut + 1:]:
            suf = A.multiply(suf, {key[x]: F.one})
        mvec = M.right(suf).apply(M.left(pre).apply({key[0]: F.one}))
        parts = [mvec]
        for v in range(1, f.target):
            part = dict(A.unit)
            for x in fibers[v]:
                part = A.multiply(part, {key[x]: F.one})
            parts.append(part)
        col = {0: F.one}
        for part, size in zip(parts, self._sizes(f.target)):
            new = {}
            for i, c in col.items():
                for j, v in part.items():
                    idx = i * size + j
                    w = F.add(new.get(idx, F.zero), F.mul(c, v))
                    if w == F.zero:
                        new.pop(idx, None)
                    else:
                        new[idx] = w
            col = new
        return col

    def _decode(self, n, idx):
        sizes = self._sizes(n)
        key = []
        for s in reversed(sizes):
            idx, r = divmod(idx, s)
            key.append(r)
        key.reverse()
        return tuple(key)

    def _matrix(self, f):
        cols = [self._column(f, self._decode(f.source, i))
                for i in range(self.dim(f.source))]
        return Matrix.from_columns(self.field, self.dim(f.target), cols)

    def apply(self, f, vec):
        if not f.is_based:
            raise ValueError("not a based morphism")
        if f in self._cache:
            return self._cache[f].apply(vec)
        F = self.field
        out = {}
        for idx, coeff in vec.items():
            for r, v in self._column(f, self._decode(f.source, idx)).items():
                w = F.add(out.get(r, F.zero), F.mul(coeff, v))
                if w == F.zero:
                    out.pop(r, None)
                else:
                    out[r] = w
        return out


def simplicial_M(A, M, n_max=12) -> SimplicialVectorSpace:
    if not A.unit_is_first_basis_vector:
        raise ValueError("algebra must have the unit-first basis")
    return _SimplicialM(A, M, n_max)


# ---------------------------------------------------------------------------
# Induction along the based subcategory, and the cyclic extension M_#

from .cyclic_space import CyclicVectorSpace  # noqa: E402  (avoids a cycle)


class _JShriek(CyclicVectorSpace):
    """Induction j_!F: [n] -> ⊕_{v in Z/n} F([n]).

    A morphism f routes block v to block f(v), acting by F of the based
    conjugate t^{-f(v)} o f o t^{v}.
    """

    def __init__(self, F_simp):
        super().__init__(F_simp.field, F_simp.n_max)
        self.base = F_simp

    def dim(self, n):
        return n * self.base.dim(n)

    def apply(self, f, vec):
        F = self.field
        a, b = f.source, f.target
        da, db = self.base.dim(a), self.base.dim(b)
        blocks = {}
        for idx, c in vec.items():
            v, k = divmod(idx, da)
            blocks.setdefault(v, {})[k] = c
        out = {}
        for v, sub in blocks.items():
            lift_v = f.lift_at(v)
            conj = compose(rotation(b, -lift_v), compose(f, rotation(a, v)))
            assert conj.is_based
            off = (lift_v % b) * db
            for r, val in self.base.apply(conj, sub).items():
                w = F.add(out.get(off + r, F.zero), val)
                if w == F.zero:
                    out.pop(off + r, None)
                else:
                    out[off + r] = w
        return out

    def _matrix(self, f):
        cols = [self.apply(f, {i: self.field.one})
                for i in range(self.dim(f.source))]
        return Matrix.from_columns(self.field, self.dim(f.target), cols)


def j_shriek(F_simp: SimplicialVectorSpace) -> CyclicVectorSpace:
    return _JShriek(F_simp)


class _MSharp(CyclicVectorSpace):
    """The cyclic extension of M ⊗ A^{⊗(n-1)} determined by tau.

    A morphism f factors as t^k o f0 with f0 based; f0 acts through the
    simplicial structure and t acts by rotating the storage right by one
    slot and exchanging the wrapped A factor past M with tau.
    """

    def __init__(self, cb: CyclicBimodule, n_max):
        super().__init__(cb.algebra.field, n_max)
        self.cb = cb
        self.simp = _SimplicialM(cb.algebra, cb.module, n_max)

    def dim(self, n):
        return self.simp.dim(n)

    def t_matrix(self, n):
        """The action of the rotation generator t on M ⊗ A^{⊗(n-1)}."""
        key = ("t", n)
        got = self._cache.get(key)
        if got is None:
            F = self.field
            dA, dM = self.cb.algebra.dim, self.cb.module.dim
            if n == 1:
                got = Matrix.identity(F, dM)
            else:
                dims = [dM] + [dA] * (n - 1)
                R = tensor_permutation(F, dims, (n - 1,) + tuple(range(n - 1)))
                rest = Matrix.identity(F, dA ** (n - 2))
                got = self.cb.tau.kron(rest) * R
            self._cache[key] = got
        return got

    def apply(self, f, vec):
        if f in self._cache:
            return self._cache[f].apply(vec)
        k, f0 = decompose(f)
        out = self.simp.apply(f0, vec)
        if k:
            t = self.t_matrix(f.target)
            for _ in range(k):
                out = t.apply(out)
        return out

    def _matrix(self, f):
        k, f0 = decompose(f)
        out = self.simp.based_matrix(f0)
        if k:
            t = self.t_matrix(f.target)
            for _ in range(k):
                out = t * out
        return out


def build_M_sharp(cb: CyclicBimodule, n_max=12) -> CyclicVectorSpace:
    """The cyclic vector space of a cyclic bimodule.

    Rejects exchange maps that fail the cyclic-bimodule axioms.
    """
    bad = [label for label, ok in check_cyclic_structure(cb) if not ok]
    if bad:
        raise ValueError("not a cyclic bimodule: " + "; ".join(bad))
    if not cb.algebra.unit_is_first_basis_vector:
        raise ValueError("algebra must have the unit-first basis")
    return _MSharp(cb, n_max)


def tau_sharp(E: CyclicVectorSpace, n) -> Matrix:
    """The counit j_! j* E -> E at [n]: block v acts by E(t^v).

    Block 0 is the identity; naturality against the induced structure on
    j_! j* E holds by construction and is audited in the tests.
    """
    out = E.matrix(rotation(n, 0))
    for v in range(1, n):
        out = out.hstack(E.matrix(rotation(n, v)))
    return out


def hc_with_coefficients(cb: CyclicBimodule, max_degree, n_max=None):
    """Cyclic homology of A with coefficients in the cyclic bimodule M."""
    from .cyclic_space import hc
    if n_max is None:
        n_max = max_degree + 4
    return hc(build_M_sharp(cb, n_max=n_max), max_degree)

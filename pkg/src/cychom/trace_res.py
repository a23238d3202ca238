"""The degree-raising operator on Hochschild homology via resolutions.

Fix a free bimodule resolution P of the diagonal bimodule.  The tensor
square P ⊗_A P is again a resolution, with two collapse quasi-isomorphisms
τ₁ = (ε ⊗ id) and τ₂ = (id ⊗ ε) onto P; a chain homotopy ι between them
exists by freeness and is found degreewise by exact solving.  Applying the
trace functor tr(M) = M/[A, M] yields an involution σ that swaps the two
factors and exchanges τ₁ with τ₂; conjugating ι by σ gives a second
homotopy ι′, and the difference ι′ − ι is a chain map which, on homology,
induces the degree-raising operator B — computed here exactly and
cross-validated against the mixed-complex construction.

All bimodules in sight are free: P_n = A ⊗ V_n ⊗ A with a chosen basis of
V_n, flattened row-major (left A factor most significant).  Bimodule maps
out of a free module are solved for and stored on the generators
1 ⊗ v ⊗ 1 and extended by bilinearity.
"""

from __future__ import annotations

import itertools

from .algebra import Bimodule, FinAlgebra, trace_space
from .complexes import ChainComplex, Homology, induced_map
from .linalg import Echelon, Matrix, rank, solve_with


class FreeBimodule(Bimodule):
    """A ⊗ V ⊗ A for a rank-r space V; index ((a * r + v) * d + b)."""

    def __init__(self, A, r):
        d = A.dim
        ident_mid = Matrix.identity(A.field, r * d)
        ident_out = Matrix.identity(A.field, d * r)
        left = [A._left[i].kron(ident_mid) for i in range(d)]
        right = [ident_out.kron(A._right[i]) for i in range(d)]
        super().__init__(A, d * r * d, left, right, check=False)
        self.rank = r

    def gen_index(self, v):
        return v * self.algebra.dim

    def extend(self, target: Bimodule, gen_cols):
        """The bimodule map with the given generator images, as a matrix."""
        A = self.algebra
        F = A.field
        d = A.dim
        cols = []
        for a in range(d):
            la = [target.left_basis(a).apply(g) for g in gen_cols]
            for v in range(self.rank):
                for b in range(d):
                    cols.append(target.right_basis(b).apply(la[v]))
        return Matrix.from_columns(F, target.dim, cols)


class BimoduleResolution:
    """A free bimodule resolution of the diagonal bimodule.

    modules[n] are free; diffs[n]: P_n -> P_{n-1} for n = 1..length; aug
    maps P_0 onto A.  `audit` checks bimodule-linearity, d² = 0, and
    exactness of the augmented complex in degrees < length.
    """

    def __init__(self, A, modules, diffs, aug, check=True):
        self.algebra = A
        self.field = A.field
        self.modules = list(modules)
        self.length = len(modules) - 1
        self.diffs = dict(diffs)
        self.aug = aug
        if check:
            self.audit()

    def dims(self):
        return [m.dim for m in self.modules]

    def _check_bimodule_map(self, m, src, tgt, what):
        A = self.algebra
        for i in range(A.dim):
            assert m * src.left_basis(i) == tgt.left_basis(i) * m, \
                f"{what} is not left-linear at basis {i}"
            assert m * src.right_basis(i) == tgt.right_basis(i) * m, \
                f"{what} is not right-linear at basis {i}"

    def audit(self):
        from .algebra import diagonal_bimodule
        A = self.algebra
        diag = diagonal_bimodule(A)
        self._check_bimodule_map(self.aug, self.modules[0], diag, "augmentation")
        for n in range(1, self.length + 1):
            d = self.diffs[n]
            if d.nrows != self.modules[n - 1].dim or d.ncols != self.modules[n].dim:
                raise ValueError(f"differential {n} has wrong shape")
            self._check_bimodule_map(d, self.modules[n], self.modules[n - 1],
                                     f"differential {n}")
        for n in range(2, self.length + 1):
            assert (self.diffs[n - 1] * self.diffs[n]).is_zero(), \
                f"d_{n-1} o d_{n} != 0"
        assert (self.aug * self.diffs[1]).is_zero(), "aug o d_1 != 0"
        # exactness of  A <- P_0 <- ... <- P_N  below the top degree
        assert rank(self.aug) == self.algebra.dim, "augmentation not onto"
        prev = self.aug
        for n in range(1, self.length + 1):
            d = self.diffs[n]
            assert prev.ncols - rank(prev) == rank(d), \
                f"augmented complex not exact under degree {n}"
            prev = d


def bar_resolution(A: FinAlgebra, N) -> BimoduleResolution:
    """P_n = A ⊗ A^{⊗n} ⊗ A with the standard merging differential."""
    F = A.field
    d = A.dim
    modules = [FreeBimodule(A, d ** n) for n in range(N + 1)]
    diffs = {}
    for n in range(1, N + 1):
        entries = []
        for col, key in enumerate(itertools.product(range(d), repeat=n + 2)):
            sign = F.one
            for i in range(n + 1):
                prod = A.basis_product(key[i], key[i + 1])
                merged = list(key[:i]) + [0] + list(key[i + 2:])
                for k, c in prod.items():
                    merged[i] = k
                    row = 0
                    for s in merged:
                        row = row * d + s
                    entries.append((row, col, F.mul(sign, c)))
                sign = F.neg(sign)
        diffs[n] = Matrix.from_entries(F, d ** (n + 1), d ** (n + 2), entries)
    aug = Matrix.from_columns(
        F, d, [A.basis_product(i, j)
               for i in range(d) for j in range(d)])
    return BimoduleResolution(A, modules, diffs, aug)


def small_resolution_ingest(A, ranks, gen_images, aug_gens) -> BimoduleResolution:
    """Build and validate a resolution from generator-level data.

    ranks[n] is the free rank of P_n; gen_images[n] (n = 1..N) is a
    dim P_{n-1} x ranks[n] matrix of generator images; aug_gens is
    dim A x ranks[0].  Every audit failure raises with a witness.
    """
    from .algebra import diagonal_bimodule
    modules = [FreeBimodule(A, r) for r in ranks]
    diffs = {}
    for n in range(1, len(ranks)):
        gcols = [gen_images[n].column(v) for v in range(ranks[n])]
        diffs[n] = modules[n].extend(modules[n - 1], gcols)
    aug = modules[0].extend(diagonal_bimodule(A),
                            [aug_gens.column(v) for v in range(ranks[0])])
    return BimoduleResolution(A, modules, diffs, aug)


def two_periodic_resolution(A, N) -> BimoduleResolution:
    """The rank-one 2-periodic resolution for k[x]/x² (basis {1, x}).

    Alternating differentials send the generator to x⊗1 - 1⊗x and
    x⊗1 + 1⊗x; valid whenever A is the dual numbers.
    """
    F = A.field
    d = A.dim
    if d != 2 or A.basis_product(1, 1) != {}:
        raise ValueError("2-periodic resolution requires the dual numbers")
    # in P = A ⊗ A: x⊗1 is index 1*2+0 = 2, 1⊗x is index 0*2+1 = 1
    minus = Matrix.from_entries(F, 4, 1, [(2, 0, F.one), (1, 0, F.neg(F.one))])
    plus = Matrix.from_entries(F, 4, 1, [(2, 0, F.one), (1, 0, F.one)])
    gen_images = {n: (minus if n % 2 == 1 else plus) for n in range(1, N + 1)}
    aug_gens = Matrix.from_entries(F, 2, 1, [(0, 0, F.one)])
    return small_resolution_ingest(A, [1] * (N + 1), gen_images, aug_gens)


class _FreeTrace:
    """Explicit trace data for a free bimodule; same interface as
    QuotientSpace where it matters (dim / projection / section)."""

    def __init__(self, dim, projection, section):
        self.dim = dim
        self.projection = projection
        self.section = section


def free_bimodule_trace(A, r) -> _FreeTrace:
    """tr(A ⊗ V ⊗ A) ≅ V ⊗ A by folding: class(a ⊗ v ⊗ b) = v ⊗ ba.

    Exact closed form, no elimination; valid because every commutator
    relation moves the outer factors across, and folding is inverse to
    the section v ⊗ c ↦ 1 ⊗ v ⊗ c.
    """
    F = A.field
    d = A.dim
    if not A.unit_is_first_basis_vector:
        raise ValueError("closed-form trace needs the unit as basis 0")
    proj = []
    for a in range(d):
        for v in range(r):
            for b in range(d):
                col = (a * r + v) * d + b
                for k, c in A.basis_product(b, a).items():
                    proj.append((v * d + k, col, c))
    sec = [((0 * r + v) * d + c, v * d + c, F.one)
           for v in range(r) for c in range(d)]
    return _FreeTrace(r * d,
                      Matrix.from_entries(F, r * d, d * r * d, proj),
                      Matrix.from_entries(F, d * r * d, r * d, sec))


class TensorSquare:
    """The total complex of P ⊗_A P with its collapse maps.

    The bidegree-(i, j) term is A ⊗ V_i ⊗ A ⊗ V_j ⊗ A (the middle A is
    the ⊗_A gluing); the vertical/horizontal differentials are d ⊗ id and
    id ⊗ d with the sign (-1)^i on the latter.
    """

    def __init__(self, P: BimoduleResolution):
        self.P = P
        self.A = P.algebra
        self.field = P.field
        self._blocks = {}

    def bidegrees(self, n):
        return [(i, n - i) for i in range(n + 1)]

    def block_dim(self, i, j):
        d = self.A.dim
        return d * self.P.modules[i].rank * d * self.P.modules[j].rank * d

    def dim(self, n):
        return sum(self.block_dim(i, j) for i, j in self.bidegrees(n))

    def offsets(self, n):
        out = [0]
        for i, j in self.bidegrees(n):
            out.append(out[-1] + self.block_dim(i, j))
        return out

    def bimodule(self, n):
        """The outer A-bimodule structure of the degree-n total term."""
        key = ("bim", n)
        got = self._blocks.get(key)
        if got is None:
            F, d = self.field, self.A.dim
            dim = self.dim(n)
            left, right = [], []
            for a in range(d):
                lb = [self.A._left[a].kron(
                        Matrix.identity(F, self.block_dim(i, j) // d))
                      for i, j in self.bidegrees(n)]
                rb = [Matrix.identity(F, self.block_dim(i, j) // d).kron(
                        self.A._right[a])
                      for i, j in self.bidegrees(n)]
                L = lb[0]
                R = rb[0]
                for m in lb[1:]:
                    L = L.direct_sum(m)
                for m in rb[1:]:
                    R = R.direct_sum(m)
                left.append(L)
                right.append(R)
            got = self._blocks[key] = Bimodule(self.A, dim, left, right,
                                               check=False)
        return got

    def generator_indices(self, n):
        """Flat indices of the free generators 1 ⊗ (v, b, w) ⊗ 1."""
        d = self.A.dim
        out = []
        off = self.offsets(n)
        for t, (i, j) in enumerate(self.bidegrees(n)):
            ri, rj = self.P.modules[i].rank, self.P.modules[j].rank
            for v in range(ri):
                for b in range(d):
                    for w in range(rj):
                        out.append(off[t] + ((v * d + b) * rj + w) * d)
        return out

    def extend_from_generators(self, n, target: Bimodule, gen_cols):
        """Bimodule map out of the degree-n term, from generator images."""
        A, F, d = self.A, self.field, self.A.dim
        cols = [None] * self.dim(n)
        off = self.offsets(n)
        pos = 0
        for t, (i, j) in enumerate(self.bidegrees(n)):
            ri, rj = self.P.modules[i].rank, self.P.modules[j].rank
            for v in range(ri):
                for b in range(d):
                    for w in range(rj):
                        g = gen_cols[pos]
                        pos += 1
                        la = [target.left_basis(a).apply(g) for a in range(d)]
                        for a in range(d):
                            for e in range(d):
                                col = target.right_basis(e).apply(la[a])
                                idx = off[t] + (((a * ri + v) * d + b)
                                                * rj + w) * d + e
                                cols[idx] = col
        return Matrix.from_columns(F, target.dim, cols)

    def differential(self, n):
        key = ("D", n)
        got = self._blocks.get(key)
        if got is None:
            F, d = self.field, self.A.dim
            out = Matrix.zero(F, self.dim(n - 1), self.dim(n))
            soff = self.offsets(n)
            toff = self.offsets(n - 1)
            src = self.bidegrees(n)
            tpos = {ij: t for t, ij in enumerate(self.bidegrees(n - 1))}
            for s, (i, j) in enumerate(src):
                ri, rj = self.P.modules[i].rank, self.P.modules[j].rank
                if i >= 1:
                    # d ⊗ id on the grouping ((a, v, b), (w, e))
                    m = self.P.diffs[i].kron(Matrix.identity(F, rj * d))
                    t = tpos[(i - 1, j)]
                    for r, c, val in m.entries():
                        out.rows.setdefault(toff[t] + r, {})[soff[s] + c] = val
                if j >= 1:
                    # (-1)^i id ⊗ d on the grouping ((a, v), (b, w, e))
                    m = Matrix.identity(F, d * ri).kron(self.P.diffs[j])
                    if i % 2 == 1:
                        m = -m
                    t = tpos[(i, j - 1)]
                    for r, c, val in m.entries():
                        cur = out.rows.setdefault(toff[t] + r, {})
                        w = F.add(cur.get(soff[s] + c, F.zero), val)
                        if w == F.zero:
                            cur.pop(soff[s] + c, None)
                        else:
                            cur[soff[s] + c] = w
            got = self._blocks[key] = out
        return got

    def tau1(self, n):
        """Collapse (ε ⊗ id): the (0, n) block onto P_n."""
        F, d = self.field, self.A.dim
        rn = self.P.modules[n].rank
        m = self.P.aug.kron(Matrix.identity(F, rn * d))
        out = Matrix.zero(F, self.P.modules[n].dim, self.dim(n))
        off = self.offsets(n)[self.bidegrees(n).index((0, n))]
        for r, c, v in m.entries():
            out.rows.setdefault(r, {})[off + c] = v
        return out

    def tau2(self, n):
        """Collapse (id ⊗ ε): the (n, 0) block onto P_n."""
        F, d = self.field, self.A.dim
        rn = self.P.modules[n].rank
        m = Matrix.identity(F, d * rn).kron(self.P.aug)
        out = Matrix.zero(F, self.P.modules[n].dim, self.dim(n))
        off = self.offsets(n)[self.bidegrees(n).index((n, 0))]
        for r, c, v in m.entries():
            out.rows.setdefault(r, {})[off + c] = v
        return out

    def swap(self, n):
        """The factor exchange on the degree-n term, with Koszul signs.

        Block (i, j) maps to block (j, i): the class of (a v b) ⊗ (1 w e)
        equals, after the exchange, (1 w (e·a) v b), scaled by (-1)^{ij}.
        Well defined only after passing to traces.
        """
        key = ("swap", n)
        got = self._blocks.get(key)
        if got is None:
            F, d, A = self.field, self.A.dim, self.A
            out = Matrix.zero(F, self.dim(n), self.dim(n))
            soff = self.offsets(n)
            tpos = {ij: t for t, ij in enumerate(self.bidegrees(n))}
            toff = soff
            for s, (i, j) in enumerate(self.bidegrees(n)):
                ri, rj = self.P.modules[i].rank, self.P.modules[j].rank
                t = tpos[(j, i)]
                sign = F.one if (i * j) % 2 == 0 else F.neg(F.one)
                for a in range(d):
                    for e in range(d):
                        prod = A.basis_product(e, a)
                        for v in range(ri):
                            for b in range(d):
                                for w in range(rj):
                                    col = (((a * ri + v) * d + b)
                                           * rj + w) * d + e
                                    for k, c in prod.items():
                                        row = (((0 * rj + w) * d + k)
                                               * ri + v) * d + b
                                        out.rows.setdefault(
                                            toff[t] + row, {})[soff[s] + col] \
                                            = F.mul(sign, c)
            got = self._blocks[key] = out
        return got


def tensor_square_trace(ts: TensorSquare, n) -> _FreeTrace:
    """The closed-form trace of the degree-n tensor-square term.

    Each bidegree block is free on V_i ⊗ A ⊗ V_j, so the trace folds the
    outer factors blockwise: class(a, v, b, w, e) = (v, b, w) ⊗ ea.
    """
    A = ts.A
    F = ts.field
    d = A.dim
    if not A.unit_is_first_basis_vector:
        raise ValueError("closed-form trace needs the unit as basis 0")
    proj, sec = [], []
    src_off = ts.offsets(n)
    tgt = 0
    for s, (i, j) in enumerate(ts.bidegrees(n)):
        ri, rj = ts.P.modules[i].rank, ts.P.modules[j].rank
        for a in range(d):
            for v in range(ri):
                for b in range(d):
                    for w in range(rj):
                        for e in range(d):
                            col = (((a * ri + v) * d + b) * rj + w) * d + e
                            for k, c in A.basis_product(e, a).items():
                                row = ((v * d + b) * rj + w) * d + k
                                proj.append((tgt + row, src_off[s] + col, c))
        for v in range(ri):
            for b in range(d):
                for w in range(rj):
                    for c in range(d):
                        row = ((v * d + b) * rj + w) * d + c
                        amb = (((0 * ri + v) * d + b) * rj + w) * d + c
                        sec.append((src_off[s] + amb, tgt + row, F.one))
        tgt += ri * d * rj * d
    return _FreeTrace(tgt,
                      Matrix.from_entries(F, tgt, ts.dim(n), proj),
                      Matrix.from_entries(F, ts.dim(n), tgt, sec))


def find_homotopy(ts: TensorSquare, top, tweak=None):
    """Degreewise homotopy h with d h + h D = τ₁ - τ₂, solved on generators.

    Returns {n: matrix T_n -> P_{n+1}} for n = 0..top; requires the
    resolution to reach degree top + 1.  `tweak(n, pos, x)` may replace
    each solved generator image by another solution (the identity still
    gets audited), to probe independence of the choice.
    """
    P = ts.P
    F = P.field
    h = {}
    prev = None
    for n in range(top + 1):
        rhs = ts.tau1(n) - ts.tau2(n)
        if prev is not None:
            rhs = rhs - prev * ts.differential(n)
        d_next = P.diffs[n + 1]
        ech = Echelon(d_next)
        gen_cols = []
        for pos, g in enumerate(ts.generator_indices(n)):
            x = solve_with(d_next, ech, rhs.column(g))
            if x is None:
                raise ValueError(f"homotopy obstruction in degree {n}")
            if tweak is not None:
                x = tweak(n, pos, x)
            gen_cols.append(x)
        h[n] = ts.extend_from_generators(n, P.modules[n + 1], gen_cols)
        # exact homotopy identity audit
        check = d_next * h[n]
        if prev is not None:
            check = check + prev * ts.differential(n)
        assert check == ts.tau1(n) - ts.tau2(n), \
            f"homotopy identity fails in degree {n}"
        prev = h[n]
    return h


class TraceData:
    """Everything after applying tr(M) = M/[A, M] degreewise."""

    def __init__(self, P: BimoduleResolution, top, tweak=None):
        self.P = P
        self.field = P.field
        self.top = top
        self.ts = TensorSquare(P)
        if P.algebra.unit_is_first_basis_vector:
            self.trP = [free_bimodule_trace(P.algebra, P.modules[n].rank)
                        for n in range(top + 3)]
            self.trT = [tensor_square_trace(self.ts, n)
                        for n in range(top + 2)]
        else:
            self.trP = [trace_space(P.modules[n]) for n in range(top + 3)]
            self.trT = [trace_space(self.ts.bimodule(n))
                        for n in range(top + 2)]
        self.h = find_homotopy(self.ts, top, tweak=tweak)
        # the complexes tr(P) and tr(P ⊗_A P), one degree past the homotopy
        pdims = [q.dim for q in self.trP]
        pdiffs = {n: self.trP[n - 1].projection
                  * (P.diffs[n] * self.trP[n].section)
                  for n in range(1, top + 3)}
        self.trP_complex = ChainComplex(self.field, pdims, pdiffs)
        tdims = [q.dim for q in self.trT]
        tdiffs = {n: self.trT[n - 1].projection
                  * (self.ts.differential(n) * self.trT[n].section)
                  for n in range(1, top + 2)}
        self.trT_complex = ChainComplex(self.field, tdims, tdiffs)

    def tr_tau1(self, n):
        return self.trP[n].projection * (self.ts.tau1(n) * self.trT[n].section)

    def tr_tau2(self, n):
        return self.trP[n].projection * (self.ts.tau2(n) * self.trT[n].section)

    def sigma(self, n):
        return self.trT[n].projection * (self.ts.swap(n) * self.trT[n].section)

    def iota(self, n):
        return self.trP[n + 1].projection * (self.h[n] * self.trT[n].section)

    def iota_prime(self, n):
        # conjugating the degree-one map ι by the involution picks up a
        # sign; with it, ι′ is again a homotopy from τ₁ to τ₂ and the
        # difference ι′ - ι anticommutes with the differentials
        return -(self.iota(n) * self.sigma(n))

    def audit(self):
        for n in range(self.top + 2):
            s = self.sigma(n)
            assert s * s == Matrix.identity(self.field, s.nrows), \
                f"sigma^2 != id in degree {n}"
            assert self.tr_tau1(n) * s == self.tr_tau2(n), \
                f"sigma does not exchange the collapses in degree {n}"
            if n >= 1:
                assert (self.trT_complex.diffs[n] * self.sigma(n)
                        == self.sigma(n - 1) * self.trT_complex.diffs[n]), \
                    f"sigma is not a chain map in degree {n}"
        for n in range(1, self.top + 1):
            # degree-one chain map identity: d(ι' - ι) + (ι' - ι)D = 0
            diff = self.iota_prime(n) - self.iota(n)
            prev = self.iota_prime(n - 1) - self.iota(n - 1)
            lhs = self.trP_complex.diffs[n + 1] * diff
            rhs = prev * self.trT_complex.diffs[n]
            assert (lhs + rhs).is_zero(), \
                f"iota' - iota is not a chain map in degree {n}"


def connes_B_matrices(A, P: BimoduleResolution, max_degree, tweak=None):
    """The maps on homology induced by ι′ − ι, degrees 0..max_degree.

    Returns (matrices, trace_data, homologies): matrices[n] is expressed
    in the homology bases of the tr(P) complex, via the isomorphism
    induced by tr(τ₁).  Requires P of length >= max_degree + 2.
    """
    td = TraceData(P, max_degree, tweak=tweak)
    td.audit()
    HP = {n: Homology(td.trP_complex, n) for n in range(max_degree + 2)}
    HT = {n: Homology(td.trT_complex, n) for n in range(max_degree + 1)}
    mats = {}
    for n in range(max_degree + 1):
        tau = induced_map(td.tr_tau1(n), HT[n], HP[n])
        diff = induced_map(td.iota_prime(n) - td.iota(n), HT[n], HP[n + 1])
        mats[n] = diff * _invert(tau)
    return mats, td, HP


def _invert(m: Matrix) -> Matrix:
    if m.nrows != m.ncols:
        raise ValueError("not square")
    ech = Echelon(m)
    cols = []
    for i in range(m.nrows):
        x = solve_with(m, ech, {i: m.field.one})
        if x is None:
            raise ValueError("matrix not invertible")
        cols.append(x)
    return Matrix.from_columns(m.field, m.nrows, cols)


# ---------------------------------------------------------------------------
# Transport to Hochschild-chain coordinates, for cross-validation


def bar_comparison(P: BimoduleResolution, top):
    """A chain map P -> (bar resolution) lifting the identity of A.

    Solved degreewise on generators; exists because the bar resolution is
    exact in every degree.
    """
    A = P.algebra
    bar = bar_resolution(A, top + 1)
    if (all(P.modules[n].rank == A.dim ** n for n in range(top + 1))
            and P.aug == bar.aug
            and all(P.diffs[n] == bar.diffs[n] for n in range(1, top + 1))):
        return bar, {n: Matrix.identity(A.field, bar.modules[n].dim)
                     for n in range(top + 1)}
    phi = {}
    # degree 0: aug_bar o phi_0 = aug_P on generators
    ech = Echelon(bar.aug)
    gen_cols = [solve_with(bar.aug, ech, P.aug.column(P.modules[0].gen_index(v)))
                for v in range(P.modules[0].rank)]
    phi[0] = P.modules[0].extend(bar.modules[0], gen_cols)
    for n in range(1, top + 1):
        rhs = phi[n - 1] * P.diffs[n]
        d_bar = bar.diffs[n]
        ech = Echelon(d_bar)
        gen_cols = []
        for v in range(P.modules[n].rank):
            x = solve_with(d_bar, ech, rhs.column(P.modules[n].gen_index(v)))
            if x is None:
                raise ValueError(f"comparison obstruction in degree {n}")
            gen_cols.append(x)
        phi[n] = P.modules[n].extend(bar.modules[n], gen_cols)
        assert d_bar * phi[n] == rhs, "comparison is not a chain map"
    return bar, phi


def bar_trace_to_chains(A, n):
    """tr(A ⊗ A^{⊗n} ⊗ A) ≅ A ⊗ A^{⊗n}: fold the outer factors.

    The class of a₀ ⊗ v ⊗ a_{n+1} maps to (a_{n+1} a₀) ⊗ v; the matrix
    below realizes this on the ambient free module and factors through
    the trace quotient.
    """
    F = A.field
    d = A.dim
    entries = []
    for col, key in enumerate(itertools.product(range(d), repeat=n + 2)):
        a0, mid, a1 = key[0], key[1:-1], key[-1]
        for k, c in A.basis_product(a1, a0).items():
            row = k
            for s in mid:
                row = row * d + s
            entries.append((row, col, c))
    return Matrix.from_entries(F, d ** (n + 1), d ** (n + 2), entries)


class Lambda2Section:
    """The traced cone of (τ₁, τ₂): tr(P ⊗_A P) → tr P ⊕ tr P.

    Degree-n term: trP_n ⊕ trP_n ⊕ trT_{n-1}, with differential
    d(p, q, x) = (dp + τ₁x, dq + τ₂x, -Dx).  The two embeddings ι_d,
    ι_{d'} split the two copies of tr P into the cone; the difference
    section ι_s(p, q, x) = p - q + ι(x) is a chain map down to tr P and
    retracts ι_d.  Conjugating by the swap involution gives ι_{s'}; the
    restriction of ι_{s'} - ι_s to the trT summand is exactly ι′ - ι,
    exhibiting the degree-raising operator as the first difference of the
    two sections.
    """

    def __init__(self, td: TraceData):
        self.td = td
        self.field = td.field
        top = td.top

        def block(n):
            pdim = td.trP[n].dim
            tdim = td.trT[n - 1].dim if n >= 1 else 0
            return [pdim, pdim, tdim]

        self.dims = [sum(block(n)) for n in range(top + 2)]
        self._blocks = [block(n) for n in range(top + 2)]
        diffs = {}
        for n in range(1, top + 2):
            dP = td.trP_complex.diffs[n]
            d = Matrix.zero(self.field, self.dims[n - 1], self.dims[n])
            p_src, p_tgt = self._blocks[n][0], self._blocks[n - 1][0]
            for copy in range(2):
                for r, c, v in dP.entries():
                    d.rows.setdefault(copy * p_tgt + r,
                                      {})[copy * p_src + c] = v
            if self._blocks[n][2]:
                toff = 2 * p_src
                for r, c, v in td.tr_tau1(n - 1).entries():
                    d.rows.setdefault(r, {})[toff + c] = v
                for r, c, v in td.tr_tau2(n - 1).entries():
                    d.rows.setdefault(p_tgt + r, {})[toff + c] = v
                if n >= 2:
                    for r, c, v in td.trT_complex.diffs[n - 1].entries():
                        d.rows.setdefault(2 * p_tgt + r,
                                          {})[toff + c] = self.field.neg(v)
            diffs[n] = d
        self.complex = ChainComplex(self.field, self.dims, diffs)

    def _embed(self, n, slot):
        F = self.field
        pdim = self._blocks[n][0]
        off = slot * pdim
        return Matrix.from_entries(F, self.dims[n], pdim,
                                   ((off + i, i, F.one) for i in range(pdim)))

    def iota_d(self, n):
        return self._embed(n, 0)

    def iota_d_prime(self, n):
        return self._embed(n, 1)

    def sigma(self, n):
        """The cone involution (p, q, x) ↦ (-q, -p, -σx).

        The shift in the cone puts a global sign on the flip; this is the
        unique sign placement making the involution a chain map here.
        """
        pdim = self._blocks[n][0]
        swap = self._embed(n, 1) * self._embed(n, 0).transpose() \
            + self._embed(n, 0) * self._embed(n, 1).transpose()
        if self._blocks[n][2]:
            s = self.td.sigma(n - 1)
            emb = Matrix.from_entries(
                self.field, self.dims[n], self._blocks[n][2],
                ((2 * pdim + i, i, self.field.one)
                 for i in range(self._blocks[n][2])))
            swap = swap + emb * (s * emb.transpose())
        return -swap

    def iota_s(self, n):
        """The difference section (p, q, x) ↦ p - q + ι(x)."""
        m = self.iota_d(n).transpose() - self.iota_d_prime(n).transpose()
        if self._blocks[n][2]:
            pdim = self._blocks[n][0]
            emb = Matrix.from_entries(
                self.field, self.dims[n], self._blocks[n][2],
                ((2 * pdim + i, i, self.field.one)
                 for i in range(self._blocks[n][2])))
            m = m + self.td.iota(n - 1) * emb.transpose()
        return m

    def iota_s_prime(self, n):
        return self.iota_s(n) * self.sigma(n)

    def audit(self):
        td = self.td
        top = td.top
        for n in range(1, top + 2):
            d = self.complex.diffs[n]
            # the embeddings and both sections are chain maps
            assert d * self.iota_d(n) == self.iota_d(n - 1) \
                * td.trP_complex.diffs[n]
            assert d * self.iota_d_prime(n) == self.iota_d_prime(n - 1) \
                * td.trP_complex.diffs[n]
            for sec in (self.iota_s, self.iota_s_prime):
                assert td.trP_complex.diffs[n] * sec(n) == sec(n - 1) * d
            assert self.sigma(n - 1) * d == d * self.sigma(n)
        for n in range(top + 2):
            s = self.sigma(n)
            assert s * s == Matrix.identity(self.field, self.dims[n])
            assert self.iota_s(n) * self.iota_d(n) \
                == Matrix.identity(self.field, self._blocks[n][0])
            assert self.iota_s_prime(n) * self.iota_d_prime(n) \
                == -Matrix.identity(self.field, self._blocks[n][0])
            if self._blocks[n][2]:
                pdim = self._blocks[n][0]
                emb = Matrix.from_entries(
                    self.field, self.dims[n], self._blocks[n][2],
                    ((2 * pdim + i, i, self.field.one)
                     for i in range(self._blocks[n][2])))
                diff = (self.iota_s_prime(n) - self.iota_s(n)) * emb
                assert diff == td.iota_prime(n - 1) - td.iota(n - 1), \
                    "section difference does not restrict to iota' - iota"


def hochschild_via_resolution(A, P, max_degree, sections=None):
    """The tr(P) homology transported to Hochschild-chain coordinates.

    Returns {n: matrix} sending tr(P_n) to the unnormalized chain space
    A ⊗ A^{⊗n}; each is a chain map inducing an isomorphism on homology.
    """
    bar, phi = bar_comparison(P, max_degree + 1)
    if sections is None:
        sections = [trace_space(P.modules[n]).section
                    for n in range(max_degree + 2)]
    out = {}
    for n in range(max_degree + 2):
        out[n] = bar_trace_to_chains(A, n) * (phi[n] * sections[n])
    return out


def connes_B_via_trace(A, P, max_degree, tweak=None):
    """The resolution-based degree-raising operator, in the homology
    coordinates of the normalized Hochschild chain complex.

    Directly comparable (up to one global sign from the homotopy and
    involution conventions) with the mixed-complex construction.
    """
    from .cyclic_space import tensor_mixed_complex

    mats, td, HPh = connes_B_matrices(A, P, max_degree, tweak=tweak)
    data = tensor_mixed_complex(A, max_degree + 2, check=False)
    hoch = data.hochschild_chain()
    psi = hochschild_via_resolution(
        A, P, max_degree, sections=[td.trP[n].section
                                    for n in range(max_degree + 2)])
    trans = {n: data.projection(n) * psi[n] for n in range(max_degree + 2)}
    for n in range(1, max_degree + 2):
        assert hoch.diffs[n] * trans[n] == trans[n - 1] * td.trP_complex.diffs[n], \
            f"transport is not a chain map in degree {n}"
    Hn = {n: Homology(hoch, n) for n in range(max_degree + 2)}
    iso = {n: induced_map(trans[n], HPh[n], Hn[n])
           for n in range(max_degree + 2)}
    return {n: iso[n + 1] * (mats[n] * _invert(iso[n]))
            for n in range(max_degree + 1)}

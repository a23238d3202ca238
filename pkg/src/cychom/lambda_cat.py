"""The cyclic category: objects [n] of marked points on the circle.

A morphism [a] -> [b] is (the homotopy class of) a degree-1 monotone map of
circles sending marked points to marked points.  We encode it by the integer
lift of its restriction to marked points: a nondecreasing tuple
G = (G(0), ..., G(a-1)) with 0 <= G(0) < b and G(a-1) <= G(0) + b, extended
to all of Z by G(x + a) = G(x) + b.  The underlying map on points is
x -> G(x) mod b.  This normalization makes the encoding unique, so morphism
equality is tuple equality.

The fiber of a morphism over a target point carries a canonical linear
order (the circle order cut at the point's preimage interval); `fiber`
returns it.  That order is what tensor-slot merging uses downstream.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .linalg import (IncrementalSpan, Matrix, Echelon, kernel_basis,
                     homology_dims, solve_with)


@dataclass(frozen=True)
class CycMor:
    """Morphism [source] -> [target], encoded by its normalized lift."""

    source: int
    target: int
    lift: tuple

    def __post_init__(self):
        a, b, G = self.source, self.target, self.lift
        if a < 1 or b < 1 or len(G) != a:
            raise ValueError("malformed morphism")
        if not (0 <= G[0] < b):
            raise ValueError(f"lift not normalized: G(0)={G[0]}, target={b}")
        for x in range(a - 1):
            if G[x] > G[x + 1]:
                raise ValueError("lift not monotone")
        if G[a - 1] > G[0] + b:
            raise ValueError("lift exceeds one full turn")

    def lift_at(self, x):
        """The lift extended periodically to all integers."""
        q, r = divmod(x, self.source)
        return self.lift[r] + q * self.target

    def __call__(self, x):
        """Underlying map on marked points."""
        return self.lift[x % self.source] % self.target

    @property
    def is_identity(self):
        return (self.source == self.target
                and self.lift == tuple(range(self.source)))

    @property
    def is_based(self):
        """Does the lift fix the marked point 0 at level zero?"""
        return self.lift[0] == 0

    def __repr__(self):
        return f"CycMor([{self.source}]->[{self.target}], {self.lift})"


def identity_mor(n):
    return CycMor(n, n, tuple(range(n)))


def rotation(n, k=1):
    """The cyclic generator t^k on [n]: x -> x + k."""
    k %= n
    return CycMor(n, n, tuple(x + k for x in range(n)))


def compose(f: CycMor, g: CycMor) -> CycMor:
    """The composite f o g for g: [a]->[b], f: [b]->[c]."""
    if g.target != f.source:
        raise ValueError("morphisms not composable")
    a, c = g.source, f.target
    K = [f.lift_at(g.lift[x]) for x in range(a)]
    shift = (K[0] // c) * c
    return CycMor(a, c, tuple(k - shift for k in K))


def hom_set(a, b):
    """All morphisms [a] -> [b], as a list (deterministic order)."""
    out = []
    for g0 in range(b):
        # nondecreasing tails in [g0, g0 + b]
        for tail in itertools.combinations_with_replacement(
                range(g0, g0 + b + 1), a - 1):
            out.append(CycMor(a, b, (g0,) + tail))
    return out


def hom_size(a, b):
    """|Hom([a],[b])| by direct count of normalized lifts."""
    return b * _binom(a + b - 1, a - 1)


def _binom(n, k):
    import math
    return math.comb(n, k)


def fiber(f: CycMor, v):
    """Preimage of target point v, in its canonical linear order.

    Returns a tuple of source points.  The order is ascending along the
    unique lift of v into the window [G(0), G(0) + target).
    """
    a, b, G = f.source, f.target, f.lift
    vt = G[0] + (v - G[0]) % b
    run = [x for x in range(-a, a) if f.lift_at(x) == vt]
    return tuple(x % a for x in run)


def decompose(f: CycMor):
    """Write f = t^k o f0 with f0 based; returns (k, f0)."""
    k = f.lift[0]
    f0 = CycMor(f.source, f.target, tuple(x - k for x in f.lift))
    return k, f0


# ---------------------------------------------------------------------------
# Finite truncations as explicit categories


class FiniteCategory:
    """A finite category of CycMor-encoded morphisms, with audits."""

    def __init__(self, objects, morphisms):
        self.objects = list(objects)
        self.mors = list(morphisms)
        self.index = {m: i for i, m in enumerate(self.mors)}
        self.hom = {}
        for i, m in enumerate(self.mors):
            self.hom.setdefault((m.source, m.target), []).append(i)
        self.identity = {n: self.index[identity_mor(n)] for n in self.objects}
        self._comp = {}

    def compose_ids(self, i, j):
        """Index of mors[i] o mors[j]."""
        key = (i, j)
        got = self._comp.get(key)
        if got is None:
            got = self._comp[key] = self.index[compose(self.mors[i], self.mors[j])]
        return got

    def audit(self):
        """Check identity laws and full associativity; raises on failure."""
        for i, m in enumerate(self.mors):
            assert self.compose_ids(self.identity[m.target], i) == i
            assert self.compose_ids(i, self.identity[m.source]) == i
        for i, f in enumerate(self.mors):
            for j in self.hom_into(f.source):
                g = self.mors[j]
                fg = self.compose_ids(i, j)
                for k in self.hom_into(g.source):
                    assert (self.compose_ids(fg, k)
                            == self.compose_ids(i, self.compose_ids(j, k)))

    def hom_into(self, a):
        """All morphism ids with target a."""
        return [i for (s, t), ids in self.hom.items() if t == a for i in ids]

    def hom_out_of(self, a):
        return [i for (s, t), ids in self.hom.items() if s == a for i in ids]


def lambda_leq(n_max):
    """The full subcategory on objects [1], ..., [n_max]."""
    objects = range(1, n_max + 1)
    mors = []
    for a in objects:
        for b in objects:
            mors.extend(hom_set(a, b))
    return FiniteCategory(objects, mors)


# ---------------------------------------------------------------------------
# Functor coefficients and category homology


class ConstantFunctor:
    """The constant coefficient system k."""

    def __init__(self, field):
        self.field = field

    def dim(self, obj):
        return 1

    def matrix(self, f: CycMor):
        return Matrix.identity(self.field, 1)


class _FreeModule:
    """Free right module ⊕_j k Hom(-, a_j) over a finite category.

    Basis of F(c): pairs (j, g) with g in Hom(c, a_j), flattened in order.
    Contravariant structure: for f: c -> c', composition g -> g o f maps
    F(c') into F(c).
    """

    def __init__(self, cat, field, gen_objs):
        self.cat = cat
        self.field = field
        self.gen_objs = list(gen_objs)
        self.basis = {}   # obj -> list of (j, mor_id)
        self.pos = {}     # obj -> {(j, mor_id): flat index}
        for c in cat.objects:
            bas = []
            for j, a in enumerate(self.gen_objs):
                for mid in cat.hom.get((c, a), []):
                    bas.append((j, mid))
            self.basis[c] = bas
            self.pos[c] = {bg: i for i, bg in enumerate(bas)}
        self._act_cache = {}

    def dim(self, obj):
        return len(self.basis[obj])

    def act(self, fid):
        """Matrix of precomposition with f: F(f.target) -> F(f.source)."""
        got = self._act_cache.get(fid)
        if got is not None:
            return got
        f = self.cat.mors[fid]
        src, tgt = f.source, f.target
        entries = []
        one = self.field.one
        for col, (j, gid) in enumerate(self.basis[tgt]):
            hid = self.cat.compose_ids(gid, fid)
            entries.append((self.pos[src][(j, hid)], col, one))
        out = Matrix.from_entries(self.field, self.dim(src), self.dim(tgt),
                                  entries)
        self._act_cache[fid] = out
        return out


class _SubModule:
    """A submodule of a free module, given by subspace bases per object."""

    def __init__(self, free, bases):
        self.free = free
        self.bases = bases  # obj -> Matrix whose columns span the subspace
        self._ech = {c: Echelon(m) for c, m in bases.items()}

    def dim(self, obj):
        return self.bases[obj].ncols

    def act(self, fid):
        f = self.free.cat.mors[fid]
        big = self.free.act(fid) * self.bases[f.target]
        cols = []
        bm = self.bases[f.source]
        ech = self._ech[f.source]
        for col in big.columns():
            x = solve_with(bm, ech, col)
            if x is None:
                raise RuntimeError("submodule not closed under the action")
            cols.append(x)
        return Matrix.from_columns(self.free.field, bm.ncols, cols)


def _minimal_generators(cat, field, module):
    """Greedy small generating set [(obj, sparse column), ...] of a module."""
    spans = {c: IncrementalSpan(field, module.dim(c)) for c in cat.objects}
    act_cache = {}
    gens = []
    total = sum(module.dim(c) for c in cat.objects)
    covered = 0
    for a in sorted(cat.objects):
        for idx in range(module.dim(a)):
            if covered == total:
                return gens
            vec = {idx: field.one}
            if spans[a].contains(vec):
                continue
            gens.append((a, vec))
            # close the generated submodule under every incoming morphism
            for fid in cat.hom_into(a):
                f = cat.mors[fid]
                m = act_cache.get(fid)
                if m is None:
                    m = act_cache[fid] = module.act(fid)
                spans[f.source].add(m.apply(vec))
            covered = sum(s.rank for s in spans.values())
    return gens


class Resolution:
    """A free right-module resolution of the constant module.

    steps[i] holds the generator objects of the i-th free term and, for
    i >= 1, each generator's image in the previous free term as a sparse
    vector over that term's (summand, morphism) basis.
    """

    def __init__(self, cat, field, length):
        self.cat = cat
        self.field = field
        self.gen_objs = []     # per degree: list of objects
        self.gen_images = []   # per degree >= 1: list of sparse vecs in F_{i-1}
        self.free_terms = []

        # augmentation: the constant module, generated at the smallest object
        a0 = min(cat.objects)
        self.gen_objs.append([a0])
        F0 = _FreeModule(cat, field, [a0])
        self.free_terms.append(F0)
        # kernel of F0 -> T: spanned per object by differences g - g'
        current = self._augmentation_kernel(F0)
        for i in range(1, length + 1):
            gens = _minimal_generators(cat, field, current)
            objs = [a for a, _ in gens]
            self.gen_objs.append(objs)
            # images in the underlying free term F_{i-1}
            images = []
            for a, vec in gens:
                emb = current.bases[a]
                images.append(emb.apply(vec))
            self.gen_images.append(images)
            Fi = _FreeModule(cat, field, objs)
            self.free_terms.append(Fi)
            current = self._map_kernel(Fi, self.free_terms[i - 1], images)

    def _augmentation_kernel(self, F0):
        field = self.field
        bases = {}
        for c in self.cat.objects:
            d = F0.dim(c)
            # augmentation sends every basis morphism to 1 in k
            m = Matrix.from_entries(field, 1, d,
                                    ((0, j, field.one) for j in range(d)))
            bases[c] = kernel_basis(m).basis
        return _SubModule(F0, bases)

    def _map_kernel(self, Fi, Fprev, images):
        """Kernel of the module map Fi -> Fprev sending gen j to images[j]."""
        field = self.field
        bases = {}
        for c in self.cat.objects:
            cols = []
            for (j, gid) in Fi.basis[c]:
                # basis element g in Hom(c, a_j) maps to images[j] . g
                act = Fprev.act(gid)
                cols.append(act.apply(images[j]))
            m = Matrix.from_columns(field, Fprev.dim(c), cols)
            bases[c] = kernel_basis(m).basis
        return _SubModule(Fi, bases)

    def differential_on(self, functor, i):
        """The i-th differential of the resolution tensored with a functor.

        Maps ⊕_j E(a_j^{(i)}) -> ⊕_j' E(a_j'^{(i-1)}).
        """
        field = self.field
        src_objs = self.gen_objs[i]
        tgt_objs = self.gen_objs[i - 1]
        tgt_offsets = _offsets([functor.dim(a) for a in tgt_objs])
        src_offsets = _offsets([functor.dim(a) for a in src_objs])
        total_t = tgt_offsets[-1]
        total_s = src_offsets[-1]
        out = Matrix.zero(field, total_t, total_s)
        Fprev = self.free_terms[i - 1]
        for j, (a, img) in enumerate(zip(src_objs, self.gen_images[i - 1])):
            blocks = {}
            for flat, coeff in img.items():
                jp, gid = Fprev.basis[a][flat]
                g = self.cat.mors[gid]
                blocks.setdefault(jp, []).append((g, coeff))
            for jp, terms in blocks.items():
                b = tgt_objs[jp]
                acc = Matrix.zero(field, functor.dim(b), functor.dim(a))
                for g, coeff in terms:
                    acc = acc + functor.matrix(g).scale(coeff)
                for r, c, v in acc.entries():
                    out.rows.setdefault(tgt_offsets[jp] + r, {})[
                        src_offsets[j] + c] = v
        return out

    def chain_dims(self, functor):
        return [sum(functor.dim(a) for a in objs) for objs in self.gen_objs]


def _offsets(dims):
    out = [0]
    for d in dims:
        out.append(out[-1] + d)
    return out


def category_homology(cat, functor, max_degree, field, method="resolution"):
    """Homology of a finite category with functor coefficients.

    Returns the list of dimensions in degrees 0..max_degree.  The default
    method tensors a small free resolution of the constant module with the
    coefficients; method="bar" uses the (normalized) simplicial-replacement
    complex instead, which is only viable for small inputs.
    """
    if method == "bar":
        return _bar_homology(cat, functor, max_degree, field)
    res = Resolution(cat, field, max_degree + 1)
    diffs = [res.differential_on(functor, i)
             for i in range(1, max_degree + 2)]
    dims = res.chain_dims(functor)
    out = []
    for i in range(max_degree + 1):
        d_out = diffs[i - 1] if i >= 1 else Matrix.zero(field, 0, dims[0])
        d_in = diffs[i]
        out.append(homology_dims(d_in, d_out))
    return out


def _bar_homology(cat, functor, max_degree, field):
    """Homology via the normalized simplicial replacement.

    Chains in degree k: strings a_0 <- a_1 <- ... <- a_k of non-identity
    morphisms, with coefficients functor(a_k).  Face 0 forgets the first
    morphism, inner faces compose, face k pushes coefficients forward;
    strings containing an identity after composing are dropped (they are
    degenerate).
    """
    nonid = [i for i, m in enumerate(cat.mors) if not m.is_identity]
    # strings[k] = list of (ids, last): ids is a tuple of k composable
    # non-identity morphism ids (f_1, ..., f_k) with f_i: a_i -> a_{i-1},
    # and last = a_k.  Degree 0 has one empty string per object.
    strings = [[((), a) for a in cat.objects]]
    for k in range(1, max_degree + 2):
        prev = strings[-1]
        nxt = []
        for ids, last in prev:
            for fid in nonid:
                f = cat.mors[fid]
                if f.target == last:
                    nxt.append((ids + (fid,), f.source))
        strings.append(nxt)

    def chain_dim(k):
        return sum(functor.dim(last) for _, last in strings[k])

    def offsets(k):
        return _offsets([functor.dim(last) for _, last in strings[k]])

    diffs = []
    for k in range(1, max_degree + 2):
        src = strings[k]
        tgt = strings[k - 1]
        tpos = {s: i for i, s in enumerate(tgt)}
        toff = offsets(k - 1)
        soff = offsets(k)
        out = Matrix.zero(field, chain_dim(k - 1), chain_dim(k))
        for si, (ids, last) in enumerate(src):
            d = functor.dim(last)
            sign = field.one
            for i in range(k + 1):
                if i == 0:
                    new = (ids[1:], last)
                    block = Matrix.identity(field, d)
                elif i < k:
                    comp = cat.compose_ids(ids[i - 1], ids[i])
                    if cat.mors[comp].is_identity:
                        block = None
                    else:
                        new = (ids[:i - 1] + (comp,) + ids[i + 1:], last)
                        block = Matrix.identity(field, d)
                else:
                    f = cat.mors[ids[-1]]
                    new = (ids[:-1], f.target)
                    block = functor.matrix(f)
                if block is not None:
                    ti = tpos[new]
                    for r, c, v in block.scale(sign).entries():
                        dst = out.rows.setdefault(toff[ti] + r, {})
                        cc = soff[si] + c
                        nv = field.add(dst.get(cc, field.zero), v)
                        if nv == field.zero:
                            dst.pop(cc, None)
                        else:
                            dst[cc] = nv
                sign = field.neg(sign)
        diffs.append(out)

    out = []
    for i in range(max_degree + 1):
        d_out = diffs[i - 1] if i >= 1 else Matrix.zero(field, 0, chain_dim(0))
        d_in = diffs[i]
        out.append(homology_dims(d_in, d_out))
    return out

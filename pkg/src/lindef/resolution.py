"""Minimal free resolutions over a finite local algebra.

The resolution of a module M is built stage by stage: minimal
generators of the current syzygy module are chosen by Nakayama (an
adapted basis of W/mW), the differential entries are read off from the
generator rows, and the next syzygy module is the left kernel of the
expanded differential. Everything is exact linear algebra over the base
field; all structural facts (complex property, minimality, exactness)
are recomputed and enforced, not assumed.

A free module R^b is the row space k^(b*d); coordinate (c, j) with
j < d = dim R is basis element e_j of generator c, flattened as c*d+j.
"""

from __future__ import annotations

import numpy as np

from .algebra import FiniteLocalAlgebra, RModule
from .errors import LindefError, ResourceLimitError
from .linalg import Subspace, kernel_structured

__all__ = ["AlgebraMatrix", "MinimalResolution", "resolve", "minimal_generators"]


def _block_right_mult(field, rows, blocks: int, op):
    """Apply an operator to each length-d block of the given rows."""
    z = rows.shape[0]
    d = op.shape[0]
    if z == 0 or blocks == 0:
        return field.zeros((z, blocks * d))
    out = field.matmul(np.ascontiguousarray(rows).reshape(z * blocks, d), op)
    return out.reshape(z, blocks * d)


class AlgebraMatrix:
    """Matrix of ring elements, a map of free modules R^src -> R^dst.

    entries has shape (src, dst, dim R): entries[c, c'] is the
    coordinate vector of the coefficient on target generator c' in the
    image of source generator c.
    """

    __slots__ = ("algebra", "entries")

    def __init__(self, algebra: FiniteLocalAlgebra, entries):
        self.algebra = algebra
        self.entries = algebra.field.asarray(entries)
        if self.entries.ndim != 3 or self.entries.shape[2] != algebra.dim:
            raise LindefError(
                f"entry array has shape {self.entries.shape}, expected "
                f"(src, dst, {algebra.dim})"
            )

    @property
    def src_rank(self) -> int:
        return self.entries.shape[0]

    @property
    def dst_rank(self) -> int:
        return self.entries.shape[1]

    def expand(self):
        """Scalar matrix of the map on row vectors k^(src*d) -> k^(dst*d)."""
        field = self.algebra.field
        d = self.algebra.dim
        r, c, _ = self.entries.shape
        if r == 0 or c == 0:
            return field.zeros((r * d, c * d))
        # out[(g, j), (g', f)] = sum_e entries[g, g', e] * table[j, e, f]
        t2 = np.ascontiguousarray(
            self.algebra.table.transpose(1, 0, 2)
        ).reshape(d, d * d)
        out = field.matmul(self.entries.reshape(r * c, d), t2)
        out = out.reshape(r, c, d, d).transpose(0, 2, 1, 3)
        return np.ascontiguousarray(out).reshape(r * d, c * d)

    def is_minimal(self) -> bool:
        """True when every entry lies in the maximal ideal."""
        r, c, d = self.entries.shape
        if r == 0 or c == 0:
            return True
        m = self.algebra.filtration[1]
        return m.contains_rows(self.entries.reshape(r * c, d))

    def entry_string(self, src: int, dst: int) -> str:
        return self.algebra.format_element(self.entries[src, dst])

    def __repr__(self):
        return f"AlgebraMatrix({self.src_rank}x{self.dst_rank} over dim {self.algebra.dim})"


def minimal_generators(module_space: Subspace, algebra: FiniteLocalAlgebra,
                       free_rank: int):
    """Adapted representatives of a basis of W/mW for W ⊆ R^free_rank.

    W must be closed under the R-action (callers pass kernels of
    R-linear maps, which are). Representatives are the rref basis rows
    of W whose pivots survive in W/mW; they generate W over R by
    Nakayama. Returns (rows, mW subspace).
    """
    field = algebra.field
    ambient = module_space.ambient_dim
    if module_space.dim == 0:
        return field.zeros((0, ambient)), Subspace.zero(field, ambient)
    mw = None
    for op in algebra.generator_ops:
        rows = _block_right_mult(field, module_space.basis, free_rank, op)
        part = Subspace.from_rows(field, rows, ambient)
        mw = part if mw is None else mw.sum(part)
    reps, _ = module_space.adapted_reps(mw)
    return reps, mw


class MinimalResolution:
    """Truncated minimal free resolution of an R-module.

    betti[i] for 0 <= i <= horizon; diff[i] (1 <= i) the differential
    R^{b_i} -> R^{b_{i-1}} as an AlgebraMatrix; expands[i] its scalar
    expansion; kernels[i] the canonical syzygy subspace inside
    k^{b_i * d}; aug the lifted generator rows F_0 -> M.

    max_expand_entries caps the size of any single expanded
    differential; Betti numbers of Artinian algebras grow
    exponentially, and the cap turns a would-be out-of-memory kill
    into a ResourceLimitError naming the stage.
    """

    def __init__(self, module: RModule, horizon: int,
                 max_expand_entries: int = 250_000_000):
        if horizon < 0:
            raise LindefError(f"horizon must be >= 0, got {horizon}")
        self.module = module
        self.algebra = module.algebra
        self.horizon = horizon
        self.max_expand_entries = max_expand_entries
        self.betti = []
        self.diff = [None]
        self.expands = [None]
        self.kernels = []
        self._build()

    # -- construction --------------------------------------------------

    def _build(self):
        field = self.algebra.field
        d = self.algebra.dim
        mod = self.module
        mdim = mod.dim

        # stage 0: minimal generators of M itself
        if mdim:
            mM = None
            for g in range(len(self.algebra.mgens)):
                part = Subspace.from_rows(field, mod.act_of_gen(g), mdim)
                mM = part if mM is None else mM.sum(part)
            gens, _ = Subspace.full(field, mdim).adapted_reps(mM)
        else:
            gens = field.zeros((0, 0))
        b0 = gens.shape[0]
        self.betti.append(b0)
        self.aug = gens
        aug_expand = self._expand_augmentation(gens)
        self.aug_expand = aug_expand
        kernel_rows, _ = kernel_structured(
            field, np.ascontiguousarray(aug_expand.T)
        )
        rank = b0 * d - kernel_rows.shape[0]
        if rank != mdim:
            raise AssertionError(
                "augmentation is not surjective: generators do not span M"
            )
        self.kernels.append(Subspace.from_rows(field, kernel_rows, b0 * d))
        prev_expand = aug_expand

        for i in range(1, self.horizon + 1):
            w = self.kernels[i - 1]
            b_prev = self.betti[i - 1]
            reps, _ = minimal_generators(w, self.algebra, b_prev)
            b_i = reps.shape[0]
            if b_i * d * b_prev * d > self.max_expand_entries:
                raise ResourceLimitError(
                    f"differential {i} would expand to a {b_i * d} x "
                    f"{b_prev * d} matrix, over the cap of "
                    f"{self.max_expand_entries} entries"
                )
            entries = reps.reshape(b_i, b_prev, d)
            dmat = AlgebraMatrix(self.algebra, entries)
            if not dmat.is_minimal():
                raise AssertionError(
                    f"differential {i} has an entry outside the maximal ideal"
                )
            expand = dmat.expand()
            comp = field.matmul(expand, prev_expand)
            if not field.is_zero(comp):
                raise AssertionError(f"differential {i} does not compose to zero")
            kernel_rows, _ = kernel_structured(
                field, np.ascontiguousarray(expand.T)
            )
            rank = b_i * d - kernel_rows.shape[0]
            if rank != w.dim:
                raise AssertionError(
                    f"resolution not exact at stage {i - 1}: image rank {rank}"
                    f" != syzygy dimension {w.dim}"
                )
            self.betti.append(b_i)
            self.diff.append(dmat)
            self.expands.append(expand)
            self.kernels.append(Subspace.from_rows(field, kernel_rows, b_i * d))
            prev_expand = expand

    def _expand_augmentation(self, gens):
        """Rows (c, j) -> coords of e_j . gen_c in M."""
        field = self.algebra.field
        d = self.algebra.dim
        mdim = self.module.dim
        b0 = gens.shape[0]
        if b0 == 0 or mdim == 0:
            return field.zeros((b0 * d, mdim))
        actT = np.ascontiguousarray(
            self.module.act.transpose(1, 0, 2)
        ).reshape(mdim, d * mdim)
        out = field.matmul(gens, actT)
        return out.reshape(b0 * d, mdim)

    # -- accessors -----------------------------------------------------

    def syzygy(self, index: int) -> RModule:
        """Syzygy module at the given stage (index 0 returns M itself)."""
        if index == 0:
            return self.module
        if index > self.horizon:
            raise LindefError(
                f"syzygy index {index} exceeds computed horizon {self.horizon}"
            )
        field = self.algebra.field
        d = self.algebra.dim
        w = self.kernels[index]
        b = self.betti[index]
        z = w.dim
        act = field.zeros((d, z, z))
        for j in range(d):
            rows = _block_right_mult(field, w.basis, b, self.algebra.table[j])
            act[j] = w.coords(rows)
        return RModule(
            self.algebra, z, act,
            embedding=(b, w), validate=False,
        )

    def betti_table(self) -> str:
        cells = "  ".join(f"b{i}={b}" for i, b in enumerate(self.betti))
        return cells


def resolve(module: RModule, horizon: int, **kw) -> MinimalResolution:
    """Minimal free resolution of the module up to the horizon."""
    return MinimalResolution(module, horizon, **kw)

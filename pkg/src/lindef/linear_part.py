"""Linear part of a minimal resolution and the linearity defect.

The linear part is the associated graded complex of the standard
filtration of a minimal free resolution: homological stage n becomes
the graded free module gr(R)^{b_n} generated in internal degree n, and
each differential entry is replaced by its class in F_1/F_2. Per
internal degree this yields honest scalar matrices (slices), whose
kernels and images give the graded homology and the defect profile.

Slice coordinates: stage n, internal degree j has one block of length
dim gr_{j-n} per generator, flattened as c * dim + u.
"""

from __future__ import annotations

import numpy as np

from .errors import LindefError
from .linalg import Subspace, kernel, row_space
from .resolution import MinimalResolution, resolve

__all__ = [
    "GradedComplex",
    "linear_part",
    "graded_homology",
    "defect_profile",
    "linearity_defect_profile",
    "mstar_annihilation_check",
    "mstar_cycle_boundary_equality",
]

CLASSIFICATION_CLEAN = "ld=0 up to horizon"


class HomologySlice:
    """Cycle and boundary data of the linear part at one bidegree."""

    __slots__ = ("cycles", "boundaries")

    def __init__(self, cycles: Subspace, boundaries: Subspace):
        self.cycles = cycles
        self.boundaries = boundaries

    @property
    def dim(self) -> int:
        return self.cycles.dim - self.boundaries.dim


class GradedComplex:
    """lin(F) for a minimal resolution F, with per-degree slices."""

    def __init__(self, res: MinimalResolution):
        self.res = res
        self.algebra = res.algebra
        self.field = res.algebra.field
        self.gr = res.algebra.graded()
        d = self.algebra.dim
        d1 = self.gr.component_dim(1)
        self.classes = [None]
        for i in range(1, res.horizon + 1):
            dmat = res.diff[i]
            b_i, b_prev = dmat.src_rank, dmat.dst_rank
            if d1 == 0 or b_i == 0 or b_prev == 0:
                self.classes.append(self.field.zeros((b_i, b_prev, d1)))
                continue
            if not dmat.is_minimal():
                raise LindefError(
                    f"linear part undefined: differential {i} has an entry "
                    "outside the maximal ideal"
                )
            flat = dmat.entries.reshape(b_i * b_prev, d)
            cls = self.gr.qcs[1].coords(flat)
            self.classes.append(cls.reshape(b_i, b_prev, d1))
        self._slices = {}
        self._homology = {}

    # -- bookkeeping ----------------------------------------------------

    @property
    def horizon(self) -> int:
        return self.res.horizon

    def stage_rank(self, i: int) -> int:
        if 0 <= i <= self.res.horizon:
            return self.res.betti[i]
        return 0

    def component_dim(self, i: int, j: int) -> int:
        """Dimension of the degree-j slice of stage i."""
        return self.stage_rank(i) * self.gr.component_dim(j - i)

    def degree_range(self, i: int):
        return range(i, i + len(self.gr.dims))

    # -- slices ---------------------------------------------------------

    def slice_matrix(self, i: int, j: int):
        """Scalar matrix of the degree-j part of the differential at i.

        Maps the degree-j slice of stage i into the degree-j slice of
        stage i-1 (row-vector convention).
        """
        key = (i, j)
        if key in self._slices:
            return self._slices[key]
        field = self.field
        q = j - i
        b_i = self.stage_rank(i)
        b_prev = self.stage_rank(i - 1)
        dq = self.gr.component_dim(q)
        dq1 = self.gr.component_dim(q + 1)
        rows, cols = b_i * dq, b_prev * dq1
        if rows == 0 or cols == 0 or i < 1 or i > self.res.horizon:
            out = field.zeros((rows, cols))
        else:
            tensor = self.gr.component_product(1, q)
            d1 = tensor.shape[0]
            c2 = self.classes[i].reshape(b_i * b_prev, d1)
            out = field.matmul(c2, tensor.reshape(d1, dq * dq1))
            out = out.reshape(b_i, b_prev, dq, dq1).transpose(0, 2, 1, 3)
            out = np.ascontiguousarray(out).reshape(rows, cols)
        self._slices[key] = out
        return out

    # -- homology ---------------------------------------------------------

    def homology(self, i: int) -> dict:
        """HomologySlice per internal degree (needs stage i+1 incoming)."""
        if i < 0 or i + 1 > self.res.horizon:
            raise LindefError(
                f"homology at {i} needs the resolution through {i + 1}, "
                f"horizon is {self.res.horizon}"
            )
        if i in self._homology:
            return self._homology[i]
        field = self.field
        out = {}
        for j in self.degree_range(i):
            ambient = self.component_dim(i, j)
            if i == 0:
                cycles = Subspace.full(field, ambient)
            else:
                mat = self.slice_matrix(i, j)
                cycles = kernel(field, np.ascontiguousarray(mat.T))
            boundaries = row_space_of(field, self.slice_matrix(i + 1, j), ambient)
            if not cycles.contains(boundaries):
                raise AssertionError(
                    f"boundaries escape cycles at stage {i}, degree {j}"
                )
            out[j] = HomologySlice(cycles, boundaries)
        self._homology[i] = out
        return out

    def homology_dims(self, i: int) -> dict:
        return {j: s.dim for j, s in self.homology(i).items()}

    def total_homology(self, i: int) -> int:
        return sum(s.dim for s in self.homology(i).values())


def row_space_of(field, mat, ambient: int) -> Subspace:
    if mat.shape[0] == 0:
        return Subspace.zero(field, ambient)
    return row_space(field, mat)


def linear_part(res: MinimalResolution) -> GradedComplex:
    """The associated graded complex of a minimal resolution."""
    return GradedComplex(res)


def graded_homology(complex_: GradedComplex, i: int) -> dict:
    """Per-internal-degree homology dimensions at stage i."""
    return complex_.homology_dims(i)


def defect_profile(complex_: GradedComplex, horizon: int) -> dict:
    """Homology totals h_1..h_horizon with defect classification.

    Requires the underlying resolution to reach horizon + 1. The
    silence-tail flag marks h_d != 0 followed by >= 2 silent stages up
    to the horizon: the finite shadow of 0 < ld < infinity.
    """
    if horizon < 1:
        raise LindefError(f"profile horizon must be >= 1, got {horizon}")
    if horizon + 1 > complex_.res.horizon:
        raise LindefError(
            f"profile to {horizon} needs resolution horizon {horizon + 1}, "
            f"have {complex_.res.horizon}"
        )
    h = [complex_.total_homology(i) for i in range(1, horizon + 1)]
    by_degree = {}
    for i in range(1, horizon + 1):
        dims = {j: s for j, s in complex_.homology_dims(i).items() if s}
        if dims:
            by_degree[i] = dims
    nonzero = [i for i, v in zip(range(1, horizon + 1), h) if v]
    dmax = max(nonzero) if nonzero else 0
    if dmax == 0:
        classification = CLASSIFICATION_CLEAN
    else:
        classification = f"defect >= {dmax}"
    silence_tail = dmax >= 1 and horizon - dmax >= 2
    return {
        "horizon": horizon,
        "h": h,
        "by_degree": by_degree,
        "nonzero_indices": nonzero,
        "dmax": dmax,
        "classification": classification,
        "silence_tail": silence_tail,
    }


def linearity_defect_profile(algebra, module, horizon: int) -> dict:
    """Resolve the module to horizon + 1 and report its defect profile."""
    res = resolve(module, horizon + 1)
    return defect_profile(linear_part(res), horizon)


def mstar_annihilation_check(complex_: GradedComplex, n: int):
    """Check that every degree-1 element annihilates H_n of the linear part.

    Degreewise sufficient: gr is standard graded and cycles/boundaries
    are graded submodules, so (m* Z)_{j+1} equals gr_1 * Z_j. Returns
    (True, None) or (False, certificate) with the violating cycle.
    """
    field = complex_.field
    gr = complex_.gr
    d1 = gr.component_dim(1)
    hom = complex_.homology(n)
    b_n = complex_.stage_rank(n)
    for j in sorted(hom):
        sl = hom[j]
        if sl.cycles.dim == 0:
            continue
        q = j - n
        dq1 = gr.component_dim(q + 1)
        nxt = hom.get(j + 1)
        target = nxt.boundaries if nxt else Subspace.zero(field, b_n * dq1)
        tensor = gr.component_product(1, q)
        z = sl.cycles.basis
        m = z.shape[0]
        for s in range(d1):
            if dq1 == 0:
                continue
            imgs = field.matmul(
                np.ascontiguousarray(z).reshape(m * b_n, tensor.shape[1]),
                tensor[s],
            ).reshape(m, b_n * dq1)
            if target.contains_rows(imgs):
                continue
            for r in range(m):
                if not target.contains_rows(imgs[r : r + 1]):
                    return False, {
                        "stage": n,
                        "internal_degree": j,
                        "gr1_index": s,
                        "cycle": z[r].tolist(),
                        "image": imgs[r].tolist(),
                    }
    return True, None


def mstar_cycle_boundary_equality(complex_: GradedComplex, d: int) -> bool:
    """Whether m* Ker d*_d and m* Im d*_{d+1} agree in every internal degree.

    Offered for d >= 1 only: there is no outgoing differential at 0.
    Same degreewise reduction as the annihilation check.
    """
    if d < 1:
        raise LindefError(f"cycle/boundary equality is defined for d >= 1, got {d}")
    field = complex_.field
    gr = complex_.gr
    d1 = gr.component_dim(1)
    hom = complex_.homology(d)
    b_d = complex_.stage_rank(d)
    for j in sorted(hom):
        sl = hom[j]
        q = j - d
        dq = gr.component_dim(q)
        dq1 = gr.component_dim(q + 1)
        ambient = b_d * dq1
        if ambient == 0:
            continue
        tensor = gr.component_product(1, q)

        def span_of_products(basis_rows):
            if basis_rows.shape[0] == 0 or d1 == 0 or dq == 0:
                return Subspace.zero(field, ambient)
            m = basis_rows.shape[0]
            stacked = [
                field.matmul(
                    np.ascontiguousarray(basis_rows).reshape(m * b_d, dq),
                    tensor[s],
                ).reshape(m, ambient)
                for s in range(d1)
            ]
            return Subspace.from_rows(field, np.vstack(stacked), ambient)

        if span_of_products(sl.cycles.basis) != span_of_products(sl.boundaries.basis):
            return False
    return True

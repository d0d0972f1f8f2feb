"""Canonical exact linear algebra: subspaces, kernels, images, quotients.

Every Subspace keeps its basis in reduced row echelon form, so equal
subspaces compare equal array-wise and everything built from them is
deterministic. Two facts about RREF bases are used throughout:

* if W ⊆ V then pivots(W) ⊆ pivots(V), and the rows of V's basis whose
  pivots are not pivots of W represent a basis of V/W;
* those representative rows are already reduced against W's basis, and
  the V/W-coordinates of a vector reduced against W can be read off at
  the representative pivot columns.
"""

from __future__ import annotations

import numpy as np

from .errors import LindefError
from .fields import Field


class Subspace:
    """A linear subspace of k^n with a canonical (RREF) basis."""

    __slots__ = ("field", "ambient_dim", "basis", "pivots")

    def __init__(self, field: Field, ambient_dim: int, basis, pivots):
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.pivots = tuple(pivots)

    @classmethod
    def from_rows(cls, field: Field, rows, ambient_dim: int | None = None):
        rows = field.asarray(rows)
        if rows.ndim != 2:
            raise LindefError("expected a 2-d array of row vectors")
        if ambient_dim is None:
            ambient_dim = rows.shape[1]
        elif ambient_dim != rows.shape[1]:
            raise LindefError("row length does not match ambient dimension")
        r, piv = field.rref(rows)
        return cls(field, ambient_dim, np.ascontiguousarray(r[: len(piv)]), piv)

    @classmethod
    def zero(cls, field: Field, ambient_dim: int):
        return cls(field, ambient_dim, field.zeros((0, ambient_dim)), ())

    @classmethod
    def full(cls, field: Field, ambient_dim: int):
        return cls(field, ambient_dim, field.eye(ambient_dim), range(ambient_dim))

    @classmethod
    def block_sum(cls, sub: "Subspace", blocks: int):
        """W^(+b) inside (k^n)^b, basis laid out block by block.

        The Kronecker layout of an RREF basis is again an RREF basis, so
        no elimination is needed.
        """
        n = sub.ambient_dim
        if sub.field.p:
            basis = np.kron(np.eye(blocks, dtype=np.int64), sub.basis)
        else:
            basis = sub.field.zeros((blocks * sub.dim, blocks * n))
            for b in range(blocks):
                basis[
                    b * sub.dim : (b + 1) * sub.dim, b * n : (b + 1) * n
                ] = sub.basis
        pivots = [b * n + c for b in range(blocks) for c in sub.pivots]
        return cls(sub.field, blocks * n, basis, pivots)

    # ------------------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @property
    def is_zero(self) -> bool:
        return not self.pivots

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.pivots == other.pivots
            and self.field == other.field
            and self.field.is_zero(self.field.sub(self.basis, other.basis))
        )

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    # ------------------------------------------------------------------

    def reduce(self, rows):
        """Residues of row vectors after reduction against the basis.

        The residue is zero exactly for vectors in the subspace, and the
        map rows -> residues is linear with kernel the subspace.
        """
        if self.dim == 0:
            return rows
        coef = np.ascontiguousarray(rows[:, list(self.pivots)])
        return self.field.sub(rows, self.field.matmul(coef, self.basis))

    def contains_rows(self, rows) -> bool:
        if rows.shape[0] == 0:
            return True
        return self.field.is_zero(self.reduce(rows))

    def contains_vector(self, v) -> bool:
        return self.contains_rows(v.reshape(1, -1))

    def contains(self, other: "Subspace") -> bool:
        if other.ambient_dim != self.ambient_dim:
            raise LindefError("ambient dimensions differ")
        return self.contains_rows(other.basis)

    def coords(self, rows, check: bool = True):
        """Coordinates of row vectors with respect to the basis."""
        coef = np.ascontiguousarray(rows[:, list(self.pivots)]) if self.dim else (
            self.field.zeros((rows.shape[0], 0))
        )
        if check and rows.shape[0]:
            recon = self.field.matmul(coef, self.basis) if self.dim else (
                self.field.zeros(rows.shape)
            )
            if not self.field.is_zero(self.field.sub(rows, recon)):
                raise LindefError("vector not in subspace")
        return coef

    # ------------------------------------------------------------------

    def sum(self, other: "Subspace") -> "Subspace":
        self._same_ambient(other)
        stacked = np.concatenate([self.basis, other.basis], axis=0)
        return Subspace.from_rows(self.field, stacked, self.ambient_dim)

    def intersect(self, other: "Subspace") -> "Subspace":
        """Zassenhaus: row-reduce [[A A],[B 0]]; rows supported entirely
        on the right half span the intersection."""
        self._same_ambient(other)
        n = self.ambient_dim
        f = self.field
        stacked = f.zeros((self.dim + other.dim, 2 * n))
        stacked[: self.dim, :n] = self.basis
        stacked[: self.dim, n:] = self.basis
        stacked[self.dim :, :n] = other.basis
        r, piv = f.rref(stacked)
        keep = [i for i, c in enumerate(piv) if c >= n]
        return Subspace.from_rows(f, r[keep][:, n:], n)

    def quotient_dim(self, sub: "Subspace") -> int:
        self._same_ambient(sub)
        if not self.contains(sub):
            raise LindefError("quotient by a non-subspace")
        return self.dim - sub.dim

    def adapted_reps(self, sub: "Subspace", check: bool = True):
        """Rows of this basis representing a basis of self/sub.

        Returns (reps, cols): reps are the basis rows whose pivots are not
        pivots of sub; cols are those pivot columns, where quotient
        coordinates of reduced vectors can be read off directly.
        """
        self._same_ambient(sub)
        sub_piv = set(sub.pivots)
        if check and not (sub_piv <= set(self.pivots) and self.contains(sub)):
            raise LindefError("adapted_reps requires sub ⊆ self")
        keep = [i for i, c in enumerate(self.pivots) if c not in sub_piv]
        cols = [self.pivots[i] for i in keep]
        return np.ascontiguousarray(self.basis[keep]), cols

    def _same_ambient(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim or self.field != other.field:
            raise LindefError("subspaces live in different ambient spaces")


class QuotientCoords:
    """Coordinates on sup/sub for a nested pair of subspaces."""

    __slots__ = ("field", "sub", "reps", "cols")

    def __init__(self, field: Field, sup: Subspace, sub: Subspace, check: bool = True):
        self.field = field
        self.sub = sub
        self.reps, self.cols = sup.adapted_reps(sub, check=check)

    @property
    def dim(self) -> int:
        return len(self.cols)

    def coords(self, rows, check: bool = True):
        """Quotient coordinates of row vectors lying in sup."""
        reduced = self.sub.reduce(rows)
        if self.dim == 0:
            out = self.field.zeros((rows.shape[0], 0))
            if check and not self.field.is_zero(reduced):
                raise LindefError("vector not in the subspace pair")
            return out
        out = np.ascontiguousarray(reduced[:, self.cols])
        if check:
            recon = self.field.matmul(out, self.reps)
            if not self.field.is_zero(self.field.sub(reduced, recon)):
                raise LindefError("vector not in the subspace pair")
        return out

    def lift(self, coords):
        if self.dim == 0:
            return self.field.zeros((coords.shape[0], self.reps.shape[1]))
        return self.field.matmul(coords, self.reps)


# ----------------------------------------------------------------------


def kernel_structured(field: Field, a):
    """Kernel basis with identity at the free columns.

    Returns (basis, free_cols). Row t has a 1 at free_cols[t], zeros at
    the other free columns, so coordinates of any kernel vector v in this
    basis are just v[free_cols]. Not canonical; see `kernel`.
    """
    a = field.asarray(a)
    m, n = a.shape
    r, piv = field.rref(a)
    piv_set = set(piv)
    free = [j for j in range(n) if j not in piv_set]
    basis = field.zeros((len(free), n))
    for t, fcol in enumerate(free):
        basis[t, fcol] = field.scalar(1)
    if piv:
        block = np.ascontiguousarray(r[: len(piv)][:, free])
        basis[:, list(piv)] = field.neg(block).T
    return basis, free


def kernel(field: Field, a) -> Subspace:
    """Canonical kernel of the linear map x -> a @ x (right null space)."""
    basis, _ = kernel_structured(field, a)
    return Subspace.from_rows(field, basis, a.shape[1])


def row_space(field: Field, a) -> Subspace:
    return Subspace.from_rows(field, a)


def image(field: Field, a) -> Subspace:
    """Canonical column space of a, as row vectors of length a.shape[0]."""
    a = field.asarray(a)
    return Subspace.from_rows(field, a.T.copy(), a.shape[0])


def induced_map_on_quotients(field: Field, m, src, dst, check: bool = True):
    """Matrix of the map src_Z/src_B -> dst_Z/dst_B induced by m.

    m is either a matrix, acting on column vectors as x -> m @ x, or a
    callable taking a stack of basis rows and returning their images as
    rows (for block-structured maps too large to materialize). src and
    dst are (Z, B) pairs of Subspaces with B ⊆ Z. Returns (matrix, rank)
    with matrix columns indexed by source quotient coordinates. Raises
    LindefError when the map fails to send src_Z into dst_Z or src_B
    into dst_B: callers are expected to pass filtered maps.
    """
    z_src, b_src = src
    z_dst, b_dst = dst
    if callable(m):
        apply_rows = m
    else:
        mt = field.asarray(m).T.copy()

        def apply_rows(rows):
            return field.matmul(rows, mt)

    q_src = QuotientCoords(field, z_src, b_src, check=check)
    q_dst = QuotientCoords(field, z_dst, b_dst, check=check)
    if check:
        if z_src.dim and not z_dst.contains_rows(apply_rows(z_src.basis)):
            raise LindefError("map does not send source cycles into target cycles")
        if b_src.dim and not b_dst.contains_rows(apply_rows(b_src.basis)):
            raise LindefError("map does not send source boundaries into target")
    if q_src.dim == 0 or q_dst.dim == 0:
        return field.zeros((q_dst.dim, q_src.dim)), 0
    images = apply_rows(q_src.reps)
    mat = q_dst.coords(images, check=check).T.copy()
    return mat, field.rank(mat)

"""Finite-dimensional commutative local algebras over a field.

An algebra is given by a structure-constant table on a distinguished
basis, a unit vector, and designated generators of the maximal ideal.
Construction validates the ring laws, computes the power filtration
R = F_0 ⊇ F_1 ⊇ ... ⊇ F_t = 0 of the maximal ideal, and checks
locality (codimension-one nilpotent maximal ideal). The associated
graded algebra and the quotient modules R/F_n are derived here too.

Row-vector convention throughout: elements are coordinate rows, and an
operator matrix acts on the right (x -> x @ op).
"""

from __future__ import annotations

import numpy as np

from .errors import AlgebraError
from .fields import Field
from .linalg import QuotientCoords, Subspace

__all__ = [
    "FiniteLocalAlgebra",
    "GradedAlgebra",
    "RModule",
    "compute_filtration",
    "associated_graded",
    "quotient_module",
]


def _mult_operator(field: Field, table, v):
    """Matrix of multiplication by v: row j holds coords of v * e_j."""
    d = table.shape[0]
    flat = table.reshape(d, d * d)
    return field.matmul(field.asarray(v).reshape(1, d), flat).reshape(d, d)


def compute_filtration(field: Field, table, mgens):
    """Powers of the ideal generated by mgens, as subspaces of R.

    Returns [F_0 = R, F_1, ..., F_t = 0] with strictly decreasing
    dimensions. F_1 is the span of all products generator * basis
    element (an ideal since R is unital); each later term multiplies
    the previous term's basis by the generators again, which spans the
    ideal product because F_n is closed under the R-action.
    """
    d = table.shape[0]
    gen_ops = [_mult_operator(field, table, g) for g in mgens]
    chain = [Subspace.full(field, d)]
    current = Subspace.from_rows(field, np.vstack([op for op in gen_ops]), d)
    chain.append(current)
    while current.dim > 0:
        rows = np.vstack([field.matmul(current.basis, op) for op in gen_ops])
        nxt = Subspace.from_rows(field, rows, d)
        if nxt.dim >= current.dim:
            raise AlgebraError(
                "generated ideal is not nilpotent: dimension stalled at "
                f"{current.dim}; the table does not define a local ring "
                "with the designated maximal ideal"
            )
        chain.append(nxt)
        current = nxt
    return chain


class FiniteLocalAlgebra:
    """Commutative local k-algebra of finite dimension.

    table[i, j] holds the coordinates of e_i * e_j. All ring laws are
    verified exhaustively on the basis at construction, then the power
    filtration of the designated maximal ideal is computed and locality
    is enforced: the unit lies outside F_1 and dim F_1 = dim R - 1.
    """

    def __init__(self, field: Field, table, unit, mgens, labels=None,
                 presentation=None):
        self.field = field
        self.table = field.asarray(table)
        self.unit = field.asarray(unit)
        self.mgens = field.asarray(mgens)
        if self.table.ndim != 3 or len(set(self.table.shape)) != 1:
            raise AlgebraError(f"table must be cubic, got shape {self.table.shape}")
        d = self.table.shape[0]
        self.dim = d
        if self.unit.shape != (d,):
            raise AlgebraError("unit vector length does not match the table")
        if self.mgens.ndim != 2 or self.mgens.shape[1] != d or not len(self.mgens):
            raise AlgebraError("m_generators must be nonempty rows of length dim")
        self.labels = list(labels) if labels else [f"e{i}" for i in range(d)]
        if len(self.labels) != d:
            raise AlgebraError(f"expected {d} labels, got {len(self.labels)}")
        self.presentation = presentation
        self._validate_laws()
        self.filtration = compute_filtration(field, self.table, self.mgens)
        self.nilpotency_index = len(self.filtration) - 1
        m = self.filtration[1]
        if m.contains_vector(self.unit):
            raise AlgebraError("unit lies in the designated maximal ideal")
        if m.dim != d - 1:
            raise AlgebraError(
                f"maximal ideal has dimension {m.dim}, expected {d - 1}: "
                "the quotient by it is not the base field"
            )
        self._graded = None
        self._quotients = {}
        self._gen_ops = None

    # -- laws ---------------------------------------------------------

    def _validate_laws(self):
        field = self.field
        d = self.dim
        t = self.table
        sym = t.transpose(1, 0, 2)
        if not field.is_zero(field.sub(t, np.ascontiguousarray(sym))):
            i, j = np.argwhere(
                np.any(np.asarray(t != sym), axis=2)
            )[0][:2]
            raise AlgebraError(f"table is not commutative at e{i}*e{j}")
        unit_op = _mult_operator(field, t, self.unit)
        if not field.is_zero(field.sub(unit_op, field.eye(d))):
            raise AlgebraError("designated unit does not act as identity")
        # (e_i e_j) e_k vs e_i (e_j e_k), all triples via two contractions
        flat = t.reshape(d * d, d)
        left = field.matmul(flat, t.reshape(d, d * d)).reshape(d, d, d, d)
        tt = np.ascontiguousarray(t.transpose(1, 0, 2)).reshape(d, d * d)
        right = field.matmul(flat, tt).reshape(d, d, d, d)
        # right[j, k, i, l] = sum_u t[j,k,u] t[i,u,l]
        right = np.ascontiguousarray(right.transpose(2, 0, 1, 3))
        if not field.is_zero(field.sub(left, right)):
            bad = np.argwhere(np.any(np.asarray(left != right), axis=3))[0]
            i, j, k = bad
            raise AlgebraError(f"table is not associative at (e{i}*e{j})*e{k}")

    # -- arithmetic ---------------------------------------------------

    def mult_op(self, v):
        return _mult_operator(self.field, self.table, v)

    def mult(self, u, v):
        return self.field.matmul(
            self.field.asarray(v).reshape(1, self.dim), self.mult_op(u)
        )[0]

    @property
    def generator_ops(self):
        if self._gen_ops is None:
            self._gen_ops = [self.mult_op(g) for g in self.mgens]
        return self._gen_ops

    def power(self, n: int) -> Subspace:
        """The subspace F_n (= R for n <= 0, = 0 for n >= index)."""
        if n <= 0:
            return self.filtration[0]
        if n >= self.nilpotency_index:
            return self.filtration[-1]
        return self.filtration[n]

    def format_element(self, v) -> str:
        parts = []
        for c, label in zip(v, self.labels):
            if c == self.field.scalar(0):
                continue
            cs = self.field.format_scalar(c)
            if cs == "1":
                parts.append(label)
            else:
                parts.append(f"{cs}*{label}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"FiniteLocalAlgebra(dim={self.dim}, index={self.nilpotency_index}, {self.field!r})"

    # -- derived structures -------------------------------------------

    def graded(self) -> "GradedAlgebra":
        if self._graded is None:
            self._graded = GradedAlgebra(self)
        return self._graded

    def quotient_module(self, n: int) -> "RModule":
        if n not in self._quotients:
            self._quotients[n] = quotient_module(self, n)
        return self._quotients[n]

    def residue_field(self) -> "RModule":
        return self.quotient_module(1)


def associated_graded(algebra: FiniteLocalAlgebra) -> "GradedAlgebra":
    return algebra.graded()


class GradedAlgebra:
    """Associated graded algebra of the power filtration.

    Component q is F_q/F_{q+1} with the deterministic adapted basis
    from rref pivots; products are stored as contraction tensors
    T[i, j] = coordinates of (rep_a[i] * rep_b[j]) in component a+b.
    Always standard graded: F_q is spanned by q-fold products, so
    component 1 generates.
    """

    def __init__(self, algebra: FiniteLocalAlgebra):
        self.algebra = algebra
        self.field = algebra.field
        t = algebra.nilpotency_index
        self.qcs = [
            QuotientCoords(self.field, algebra.filtration[q], algebra.power(q + 1))
            for q in range(t)
        ]
        self.dims = [qc.dim for qc in self.qcs]
        self._tensors = {}

    @property
    def top_degree(self) -> int:
        return len(self.dims) - 1

    def component_dim(self, q: int) -> int:
        if 0 <= q < len(self.dims):
            return self.dims[q]
        return 0

    def representatives(self, q: int):
        return self.qcs[q].reps

    def component_product(self, a: int, b: int):
        """Tensor (dims[a], dims[b], dims[a+b]) of the graded product."""
        key = (a, b)
        if key in self._tensors:
            return self._tensors[key]
        field = self.field
        d = self.algebra.dim
        da, db = self.component_dim(a), self.component_dim(b)
        dc = self.component_dim(a + b)
        if da == 0 or db == 0 or dc == 0:
            out = field.zeros((da, db, dc))
        else:
            ra = self.qcs[a].reps
            rb = self.qcs[b].reps
            # pairwise products: P[i, j] = ra[i] * rb[j] in R coords
            x = field.matmul(ra, self.algebra.table.reshape(d, d * d))
            x = np.ascontiguousarray(
                x.reshape(da, d, d).transpose(1, 0, 2)
            ).reshape(d, da * d)
            p = field.matmul(rb, x).reshape(db, da, d)
            p = np.ascontiguousarray(p.transpose(1, 0, 2)).reshape(da * db, d)
            out = self.qcs[a + b].coords(p).reshape(da, db, dc)
        self._tensors[key] = out
        return out


class RModule:
    """Finitely generated module over a FiniteLocalAlgebra.

    Elements are coordinate rows of length `dim`; act[j] is the matrix
    of the action of basis element e_j (x -> x @ act[j]). Quotient
    modules R/F_n carry proj (dim R x dim) and lift (dim x dim R)
    matrices relating module coordinates to ring coordinates.
    """

    def __init__(self, algebra: FiniteLocalAlgebra, dim: int, act,
                 proj=None, lift=None, power=None, embedding=None,
                 validate: bool = True):
        self.algebra = algebra
        self.field = algebra.field
        self.dim = dim
        self.act = algebra.field.asarray(act)
        if self.act.shape != (algebra.dim, dim, dim):
            raise AlgebraError(
                f"action tensor has shape {self.act.shape}, expected "
                f"{(algebra.dim, dim, dim)}"
            )
        self.proj = proj
        self.lift = lift
        self.power = power
        self.embedding = embedding
        if validate and dim:
            self._validate()

    def _validate(self):
        field = self.field
        d = self.algebra.dim
        m = self.dim
        unit_act = self.action_of(self.algebra.unit)
        if not field.is_zero(field.sub(unit_act, field.eye(m))):
            raise AlgebraError("unit does not act as identity on the module")
        # x * (e_i e_j) = (x * e_i) * e_j for all basis pairs
        flat = self.algebra.table.reshape(d * d, d)
        lhs = field.matmul(flat, self.act.reshape(d, m * m)).reshape(d, d, m, m)
        cols = np.ascontiguousarray(
            self.act.transpose(1, 0, 2)
        ).reshape(m, d * m)
        for i in range(d):
            rhs_i = field.matmul(self.act[i], cols).reshape(m, d, m)
            rhs_i = np.ascontiguousarray(rhs_i.transpose(1, 0, 2))
            if not field.is_zero(field.sub(lhs[i], rhs_i)):
                raise AlgebraError(
                    f"module action violates associativity against e{i}"
                )

    def action_of(self, r):
        """Action matrix of a ring element given by coordinates."""
        d = self.algebra.dim
        m = self.dim
        return self.field.matmul(
            self.field.asarray(r).reshape(1, d), self.act.reshape(d, m * m)
        ).reshape(m, m)

    @property
    def generator_actions(self):
        return [self.act_of_gen(g) for g in range(len(self.algebra.mgens))]

    def act_of_gen(self, g: int):
        return self.action_of(self.algebra.mgens[g])

    def __repr__(self):
        tag = f", power={self.power}" if self.power is not None else ""
        return f"RModule(dim={self.dim}{tag})"


def quotient_module(algebra: FiniteLocalAlgebra, n: int) -> RModule:
    """R/F_n as an R-module (zero module for n <= 0, R for n >= index)."""
    field = algebra.field
    d = algebra.dim
    if n <= 0:
        return RModule(
            algebra, 0, field.zeros((d, 0, 0)),
            proj=field.zeros((d, 0)), lift=field.zeros((0, d)), power=n,
        )
    if n >= algebra.nilpotency_index:
        return RModule(
            algebra, d, algebra.table,
            proj=field.eye(d), lift=field.eye(d), power=n, validate=False,
        )
    qc = QuotientCoords(field, algebra.filtration[0], algebra.filtration[n])
    q = qc.dim
    proj = qc.coords(field.eye(d))
    lift = qc.reps
    # act[j] = lift @ table[j] @ proj, all j at once
    tmp = field.matmul(
        lift,
        np.ascontiguousarray(algebra.table.transpose(1, 0, 2)).reshape(d, d * d),
    )
    tmp = np.ascontiguousarray(tmp.reshape(q, d, d).transpose(1, 0, 2))
    act = field.matmul(tmp.reshape(d * q, d), proj).reshape(d, q, q)
    mod = RModule(algebra, q, act, proj=proj, lift=lift, power=n, validate=False)
    if not field.is_zero(field.sub(field.matmul(lift, proj), field.eye(q))):
        raise AlgebraError("quotient coordinates are inconsistent")
    return mod

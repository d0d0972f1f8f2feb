"""Exact linear algebra: frozen examples, brute-force oracles, invariants."""

import numpy as np
import pytest
from fractions import Fraction
from hypothesis import given, settings, strategies as st

from lindef.fields import Field
from lindef.errors import LindefError
from lindef.linalg import (
    QuotientCoords,
    Subspace,
    image,
    induced_map_on_quotients,
    kernel,
    kernel_structured,
    row_space,
)

GF5 = Field(5)
GF7 = Field(7)
GF2 = Field(2)
GF3 = Field(3)
QQ = Field(0)


def naive_rref(a, p):
    """Reference implementation: plain sequential Gauss-Jordan."""
    a = (np.array(a, dtype=np.int64) % p).copy()
    m, n = a.shape
    piv = []
    r = 0
    for c in range(n):
        if r == m:
            break
        srow = next((i for i in range(r, m) if a[i, c]), -1)
        if srow < 0:
            continue
        a[[r, srow]] = a[[srow, r]]
        a[r] = a[r] * pow(int(a[r, c]), -1, p) % p
        for i in range(m):
            if i != r and a[i, c]:
                a[i] = (a[i] - a[i, c] * a[r]) % p
        piv.append(c)
        r += 1
    return a, tuple(piv)


class TestRref:
    def test_frozen_gf5(self):
        r, piv = GF5.rref(GF5.asarray([[2, 4], [1, 2]]))
        assert r.tolist() == [[1, 2], [0, 0]]
        assert piv == (0,)

    def test_identity_passthrough(self):
        a = GF7.eye(4)
        r, piv = GF7.rref(a)
        assert (r == a).all() and piv == (0, 1, 2, 3)

    def test_zero_matrix(self):
        r, piv = GF5.rref(GF5.zeros((3, 4)))
        assert piv == () and not r.any()

    def test_empty_shapes(self):
        r, piv = GF5.rref(GF5.zeros((0, 4)))
        assert r.shape == (0, 4) and piv == ()
        r, piv = GF5.rref(GF5.zeros((3, 0)))
        assert r.shape == (3, 0) and piv == ()

    def test_matches_naive_reference(self):
        rng = np.random.default_rng(7)
        for p in (2, 3, 101):
            for _ in range(40):
                m = int(rng.integers(1, 12))
                n = int(rng.integers(1, 12))
                a = rng.integers(0, p, size=(m, n))
                r, piv = Field(p).rref(a)
                rn, pn = naive_rref(a, p)
                assert piv == pn
                assert (r == rn).all()

    def test_blocked_path_matches_naive(self):
        # wider than one panel, with duplicate rows forcing rank deficiency
        rng = np.random.default_rng(11)
        a = rng.integers(0, 101, size=(60, 300))
        a[17] = a[3]
        a[45] = (2 * a[9] + 5 * a[14]) % 101
        r, piv = Field(101).rref(a)
        rn, pn = naive_rref(a, 101)
        assert piv == pn and (r == rn).all()

    def test_rational_rref(self):
        a = QQ.asarray([[2, 4], [1, 3]])
        r, piv = QQ.rref(a)
        assert piv == (0, 1)
        assert r.tolist() == [[1, 0], [0, 1]]
        a = QQ.asarray([[2, 4], [1, 2]])
        r, piv = QQ.rref(a)
        assert piv == (0,)
        assert r[0].tolist() == [Fraction(1), Fraction(2)]

    @given(
        st.integers(1, 6),
        st.integers(1, 6),
        st.integers(0, 2**32),
        st.sampled_from([2, 3, 5, 101]),
    )
    @settings(max_examples=60, deadline=None)
    def test_rref_idempotent_and_rank_bound(self, m, n, seed, p):
        rng = np.random.default_rng(seed)
        a = rng.integers(0, p, size=(m, n))
        f = Field(p)
        r, piv = f.rref(a)
        r2, piv2 = f.rref(r)
        assert piv2 == piv and (r2 == r).all()
        assert len(piv) <= min(m, n)
        # row space is preserved
        assert row_space(f, f.asarray(a)) == row_space(f, r)


class TestKernel:
    def test_frozen_gf7(self):
        k = kernel(GF7, GF7.asarray([[1, 3]]))
        assert k.basis.tolist() == [[1, 2]]
        assert k.dim == 1

    def test_structured_shape(self):
        a = GF5.asarray([[1, 2, 3], [0, 1, 4]])
        b, free = kernel_structured(GF5, a)
        assert free == [2]
        # identity at free columns
        assert b[0, 2] == 1
        assert not GF5.matmul(a, b.T).any()

    def test_rank_nullity_random(self):
        rng = np.random.default_rng(3)
        for _ in range(30):
            m, n = rng.integers(1, 10, size=2)
            a = rng.integers(0, 3, size=(int(m), int(n)))
            r = len(GF3.rref(a)[1])
            k = kernel(GF3, GF3.asarray(a))
            assert r + k.dim == n

    def test_kernel_brute_force_gf2(self):
        # every vector of GF(2)^4 is classified correctly
        rng = np.random.default_rng(5)
        a = GF2.asarray(rng.integers(0, 2, size=(3, 4)))
        k = kernel(GF2, a)
        members = 0
        for bits in range(16):
            v = np.array([(bits >> t) & 1 for t in range(4)], dtype=np.int64)
            in_kernel = not GF2.matmul(a, v.reshape(-1, 1)).any()
            members += in_kernel
            assert k.contains_vector(v) == in_kernel
        assert members == 2**k.dim

    def test_kernel_rational(self):
        k = kernel(QQ, QQ.asarray([[1, 2], [2, 4]]))
        assert k.dim == 1
        assert k.basis[0].tolist() == [Fraction(1), Fraction(-1, 2)]


class TestSubspace:
    def test_canonical_equality(self):
        s1 = Subspace.from_rows(GF5, GF5.asarray([[1, 2, 0], [0, 0, 1]]))
        s2 = Subspace.from_rows(GF5, GF5.asarray([[2, 4, 3], [1, 2, 1]]))
        assert s1 == s2

    def test_frozen_intersection_gf3(self):
        e12 = Subspace.from_rows(GF3, GF3.asarray([[1, 0, 0], [0, 1, 0]]))
        e23 = Subspace.from_rows(GF3, GF3.asarray([[0, 1, 0], [0, 0, 1]]))
        meet = e12.intersect(e23)
        assert meet.dim == 1
        assert meet.basis.tolist() == [[0, 1, 0]]

    def test_sum_and_modularity(self):
        rng = np.random.default_rng(1)
        for _ in range(25):
            a = Subspace.from_rows(GF3, GF3.asarray(rng.integers(0, 3, size=(2, 5))))
            b = Subspace.from_rows(GF3, GF3.asarray(rng.integers(0, 3, size=(2, 5))))
            s = a.sum(b)
            m = a.intersect(b)
            assert s.dim + m.dim == a.dim + b.dim
            assert s.contains(a) and s.contains(b)
            assert a.contains(m) and b.contains(m)

    def test_contains_and_reduce(self):
        s = Subspace.from_rows(GF7, GF7.asarray([[1, 0, 3], [0, 1, 5]]))
        assert s.contains_vector(GF7.asarray([2, 3, 0]))  # 2*r0+3*r1 = (2,3,21=0)
        assert not s.contains_vector(GF7.asarray([0, 0, 1]))

    def test_coords_roundtrip(self):
        s = Subspace.from_rows(GF7, GF7.asarray([[1, 0, 3], [0, 1, 5]]))
        v = GF7.matmul(GF7.asarray([[4, 6]]), s.basis)
        c = s.coords(v)
        assert c.tolist() == [[4, 6]]
        with pytest.raises(LindefError):
            s.coords(GF7.asarray([[0, 0, 1]]))

    def test_quotient_dim_requires_containment(self):
        s = Subspace.from_rows(GF5, GF5.asarray([[1, 0, 0], [0, 1, 0]]))
        t = Subspace.from_rows(GF5, GF5.asarray([[0, 0, 1]]))
        with pytest.raises(LindefError):
            s.quotient_dim(t)

    def test_adapted_reps_reduced_against_sub(self):
        rng = np.random.default_rng(9)
        for _ in range(25):
            big = Subspace.from_rows(GF5, GF5.asarray(rng.integers(0, 5, size=(4, 6))))
            mix = GF5.matmul(
                GF5.asarray(rng.integers(0, 5, size=(2, big.dim))), big.basis
            )
            small = Subspace.from_rows(GF5, mix, 6)
            reps, cols = big.adapted_reps(small)
            assert len(cols) == big.dim - small.dim
            # reps + small basis spans big
            assert Subspace.from_rows(
                GF5, np.concatenate([reps, small.basis]), 6
            ) == big
            # reps already reduced against small
            assert (small.reduce(reps) == reps).all()

    def test_block_sum(self):
        w = Subspace.from_rows(GF5, GF5.asarray([[1, 2, 0], [0, 0, 1]]))
        blk = Subspace.block_sum(w, 3)
        assert blk.ambient_dim == 9 and blk.dim == 6
        direct = Subspace.from_rows(GF5, blk.basis, 9)
        assert direct == blk  # already canonical


class TestQuotientAndInducedMaps:
    def brute_cosets(self, field, z, b):
        """All cosets of b inside z over GF(2)/GF(3), by enumeration."""
        p = field.p
        n = z.ambient_dim
        vecs = []
        for idx in range(p**z.dim):
            c = []
            t = idx
            for _ in range(z.dim):
                c.append(t % p)
                t //= p
            v = field.matmul(field.asarray([c]), z.basis)[0] if z.dim else field.zeros(n)
            vecs.append(tuple(int(x) for x in v))
        # group into cosets via reduction against b
        keyed = {}
        for v in vecs:
            key = tuple(int(x) for x in b.reduce(field.asarray([list(v)]))[0])
            keyed.setdefault(key, []).append(v)
        return keyed

    def test_quotient_coords_enumerated_gf2(self):
        z = Subspace.from_rows(GF2, GF2.asarray([[1, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]))
        b = Subspace.from_rows(GF2, GF2.asarray([[1, 1, 1, 1]]))
        assert z.contains(b)
        q = QuotientCoords(GF2, z, b)
        assert q.dim == 2
        cosets = self.brute_cosets(GF2, z, b)
        assert len(cosets) == 2**2
        # two vectors get equal coordinates iff they share a coset
        seen = {}
        for key, members in cosets.items():
            coords = {
                tuple(int(x) for x in q.coords(GF2.asarray([list(v)]))[0])
                for v in members
            }
            assert len(coords) == 1
            seen[key] = coords.pop()
        assert len(set(seen.values())) == len(cosets)

    def test_induced_map_identity(self):
        z = Subspace.from_rows(GF3, GF3.asarray([[1, 0, 0], [0, 1, 0]]))
        b = Subspace.from_rows(GF3, GF3.asarray([[0, 1, 0]]))
        m = GF3.eye(3)
        mat, rank = induced_map_on_quotients(GF3, m, (z, b), (z, b))
        assert mat.tolist() == [[1]] and rank == 1

    def test_induced_map_enumerated_gf3(self):
        # map x -> m x on ambient GF(3)^3; quotient pairs chosen so the map descends
        m = GF3.asarray([[0, 0, 0], [1, 0, 0], [0, 0, 2]])
        z_src = Subspace.from_rows(GF3, GF3.eye(3))
        b_src = Subspace.from_rows(GF3, GF3.asarray([[0, 1, 0]]))
        z_dst = Subspace.from_rows(GF3, GF3.asarray([[0, 1, 0], [0, 0, 1]]))
        b_dst = Subspace.from_rows(GF3, GF3.asarray([[0, 1, 0]]))
        mat, rank = induced_map_on_quotients(GF3, m, (z_src, b_src), (z_dst, b_dst))
        # induced map sends class of e3 to class of 2 e3, classes of e1, e2 to 0
        assert rank == 1
        q_src = QuotientCoords(GF3, z_src, b_src)
        q_dst = QuotientCoords(GF3, z_dst, b_dst)
        for idx, rep in enumerate(q_src.reps):
            img = GF3.matmul(m, rep.reshape(-1, 1)).reshape(1, -1)
            expect = q_dst.coords(img)[0]
            got = mat[:, idx]
            assert (expect == got).all()

    def test_induced_map_rejects_non_invariant(self):
        m = GF3.asarray([[0, 1, 0], [0, 0, 0], [0, 0, 0]])
        z = Subspace.from_rows(GF3, GF3.asarray([[0, 1, 0]]))
        b = Subspace.zero(GF3, 3)
        dst = (Subspace.from_rows(GF3, GF3.asarray([[0, 0, 1]])), b)
        with pytest.raises(LindefError):
            induced_map_on_quotients(GF3, m, (z, b), dst)


class TestImage:
    def test_image_is_column_space(self):
        a = GF5.asarray([[1, 2], [2, 4], [0, 1]])
        im = image(GF5, a)
        assert im.ambient_dim == 3
        assert im.dim == 2
        for col in a.T:
            assert im.contains_vector(col)

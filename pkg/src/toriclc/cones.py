"""Geometry of the rational cone spanned by the columns of an integer matrix.

Provides facet support functions (primitive integer functionals that are
nonnegative on the cone and vanish on one facet), the full face lattice of
a pointed cone, and signed incidence data orienting the face-indexed
cochain complex.  Faces are identified with the set of generating columns
they contain.

Facet enumeration is brute force over (d-1)-subsets of columns; this is
deliberate, since the inputs are desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd

from . import intlinalg as la
from .errors import NotFullDimensional, NotPointed


@dataclass(frozen=True)
class SupportFunction:
    """A primitive linear functional vanishing on one facet of the cone and
    nonnegative on every generating column."""

    facet_id: int
    coefficients: la.Vector

    def value(self, v) -> int:
        return la.dot(self.coefficients, v)


@dataclass(frozen=True)
class Face:
    face_id: int
    column_indices: frozenset
    dim: int
    zero_facets: frozenset  # facet ids whose support function vanishes on the face


def matrix_columns(matrix: la.Matrix) -> tuple:
    return la.transpose(matrix)


def primitive(v: la.Vector) -> la.Vector:
    g = 0
    for a in v:
        g = gcd(g, abs(a))
    if g in (0, 1):
        return v
    return tuple(a // g for a in v)


def facet_support_functions(matrix: la.Matrix) -> tuple:
    """One primitive support function per facet, sorted by coefficients.

    Raises NotFullDimensional unless the columns span the ambient space.
    """
    cols = matrix_columns(matrix)
    d = len(matrix)
    if la.rank(la.mat(cols)) < d:
        raise NotFullDimensional(f"columns span rank {la.rank(la.mat(cols))} < {d}")
    found = set()
    for subset in combinations(range(len(cols)), d - 1):
        rows = la.mat(cols[i] for i in subset)
        if subset and la.rank(rows) != d - 1:
            continue
        kern = la.right_kernel_basis(rows, d)
        if len(kern) != 1:
            continue
        g = primitive(kern[0])
        vals = [la.dot(g, c) for c in cols]
        if all(v >= 0 for v in vals):
            found.add(g)
        elif all(v <= 0 for v in vals):
            found.add(la.vneg(g))
    ordered = sorted(found)
    return tuple(SupportFunction(i, f) for i, f in enumerate(ordered))


def is_pointed(supports, dim: int) -> bool:
    """Pointed iff the facet normals span the dual space, so their common
    kernel is the origin alone."""
    if not supports:
        return dim == 0
    return la.rank(la.mat(s.coefficients for s in supports)) == dim


def is_simplicial(supports, dim: int) -> bool:
    return len(supports) == dim


def _solve_fraction(rows, rhs):
    """Solve rows @ x == rhs over Fractions; the solution must be unique."""
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    nrow = len(m)
    ncol = len(m[0]) - 1
    prow = 0
    pivots = []
    for col in range(ncol):
        piv = next((i for i in range(prow, nrow) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[prow], m[piv] = m[piv], m[prow]
        inv = Fraction(1, 1) / m[prow][col]
        m[prow] = [e * inv for e in m[prow]]
        for i in range(nrow):
            if i != prow and m[i][col] != 0:
                f = m[i][col]
                m[i] = [e - f * p for e, p in zip(m[i], m[prow])]
        pivots.append(col)
        prow += 1
    if prow < ncol:
        raise ValueError("underdetermined system")
    for i in range(prow, nrow):
        if m[i][ncol] != 0:
            raise ValueError("inconsistent system")
    x = [Fraction(0)] * ncol
    for i, col in enumerate(pivots):
        x[col] = m[i][ncol]
    return x


def _fraction_det_sign(rows) -> int:
    n = len(rows)
    m = [list(r) for r in rows]
    sign = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            return 0
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        if m[k][k] < 0:
            sign = -sign
        for i in range(k + 1, n):
            if m[i][k] != 0:
                f = m[i][k] / m[k][k]
                m[i] = [e - f * p for e, p in zip(m[i], m[k])]
    return sign


class FaceLattice:
    """All faces of a pointed full-dimensional cone, ordered by inclusion.

    Incidence signs orient the face-indexed cochain complex.  The sign of a
    codimension-one inclusion compares the orientation of (basis of the
    small face, an interior point of the big face) against the chosen basis
    of the big face; with this convention consecutive coboundaries compose
    to zero, which is asserted at construction time.
    """

    def __init__(self, faces, bases, signs, dim):
        self.faces = faces
        self.dim = dim
        self._bases = bases
        self._signs = signs
        self._by_columns = {f.column_indices: f.face_id for f in faces}
        self._by_zero_facets = {f.zero_facets: f.face_id for f in faces}
        bottoms = [f for f in faces if f.dim == 0]
        tops = [f for f in faces if f.dim == dim]
        if len(bottoms) != 1 or len(tops) != 1:
            raise NotPointed("face lattice lacks a unique bottom or top face")
        self.bottom_id = bottoms[0].face_id
        self.top_id = tops[0].face_id

    def __len__(self):
        return len(self.faces)

    def face(self, face_id: int) -> Face:
        return self.faces[face_id]

    def leq(self, low_id: int, high_id: int) -> bool:
        return self.faces[low_id].column_indices <= self.faces[high_id].column_indices

    def incidence_sign(self, low_id: int, high_id: int) -> int:
        return self._signs.get((low_id, high_id), 0)

    def faces_of_dim(self, k: int) -> tuple:
        return tuple(f.face_id for f in self.faces if f.dim == k)

    def face_id_by_zero_facets(self, zero_facets: frozenset) -> int:
        return self._by_zero_facets[zero_facets]

    def facet_face_id(self, facet_id: int) -> int:
        """The face cut out by a single facet."""
        return self._by_zero_facets[frozenset((facet_id,))]

    def is_filter(self, face_ids) -> bool:
        """True when the set of faces is closed upward under inclusion."""
        face_ids = frozenset(face_ids)
        return all(
            other.face_id in face_ids
            for fid in face_ids
            for other in self.faces
            if self.leq(fid, other.face_id)
        )


def build_face_lattice(matrix: la.Matrix, supports) -> FaceLattice:
    """Enumerate every face as an intersection of facets and orient the
    resulting lattice.  Raises NotPointed when the cone contains a line."""
    cols = matrix_columns(matrix)
    d = len(matrix)
    n = len(cols)
    if not is_pointed(supports, d):
        raise NotPointed("cone contains a line")
    nf = len(supports)
    values = [[s.value(c) for s in supports] for c in cols]

    entries = {}
    for mask in range(1 << nf):
        chosen = [s for s in range(nf) if mask & (1 << s)]
        colset = frozenset(
            i for i in range(n) if all(values[i][s] == 0 for s in chosen)
        )
        if colset in entries:
            continue
        zero = frozenset(
            s for s in range(nf) if all(values[i][s] == 0 for i in colset)
        )
        entries[colset] = zero

    ordered = sorted(entries, key=lambda cs: (la.rank(la.mat(cols[i] for i in cs)), sorted(cs)))
    faces = []
    bases = []
    for fid, colset in enumerate(ordered):
        basis = []
        for i in sorted(colset):
            cand = basis + [cols[i]]
            if la.rank(la.mat(cand)) == len(cand):
                basis.append(cols[i])
        faces.append(Face(fid, colset, len(basis), entries[colset]))
        bases.append(tuple(basis))
    faces = tuple(faces)

    signs = {}
    for low in faces:
        for high in faces:
            if high.dim != low.dim + 1:
                continue
            if not low.column_indices <= high.column_indices:
                continue
            interior = la.zero_vector(d)
            for i in high.column_indices:
                interior = la.vadd(interior, cols[i])
            rows = list(bases[low.face_id]) + [interior]
            target_cols = la.transpose(la.mat(bases[high.face_id]))
            coord_rows = [
                _solve_fraction(target_cols, row) for row in rows
            ]
            sign = _fraction_det_sign(coord_rows)
            assert sign != 0
            signs[(low.face_id, high.face_id)] = sign

    lattice = FaceLattice(faces, tuple(bases), signs, d)
    _assert_coboundary_squares_to_zero(lattice)
    return lattice


def _assert_coboundary_squares_to_zero(lattice: FaceLattice) -> None:
    for low in lattice.faces:
        for high in lattice.faces:
            if high.dim != low.dim + 2:
                continue
            if not lattice.leq(low.face_id, high.face_id):
                continue
            total = sum(
                lattice.incidence_sign(low.face_id, mid.face_id)
                * lattice.incidence_sign(mid.face_id, high.face_id)
                for mid in lattice.faces
                if mid.dim == low.dim + 1
                and lattice.leq(low.face_id, mid.face_id)
                and lattice.leq(mid.face_id, high.face_id)
            )
            if total != 0:
                raise AssertionError(
                    f"incidence signs violate d*d == 0 between faces "
                    f"{low.face_id} and {high.face_id}"
                )

"""Membership oracles, counting functions and classification flags for a
pointed affine semigroup presented by the columns of an integer matrix.

The central object is ToricPresentation: the matrix together with its cone
geometry, the numerical semigroups cut out by the facet support functions,
and the flags normal / scored / Serre-S2.  The flags are checked
exhaustively on a finite facet-value box and reported together with that
box; they are exact definitions restricted to the box, not global proofs.

Membership decisions are exact.  Key observation: every representation of
a degree as a nonnegative combination of columns (plus an element of a
face group) has facet-value partial sums trapped between 0 and the facet
values of the degree itself, because the support functions are nonnegative
on all columns.  A breadth-first closure of the quotient semigroup under a
facet-value cap is therefore a complete decision procedure for every query
whose values fit under the cap.  A depth-first solver with the same
contract is kept as an independent oracle for cross-validation; the two
must agree wherever both can answer.

Flags enable shortcuts: for a (box-verified) normal semigroup, membership
in the semigroup translated by a face group reduces to sign checks of the
support functions of the facets containing the face; for a scored one, to
value checks against the facet numerical semigroups.  Both shortcuts are
validated against the table oracle on the verification box before being
trusted, and are disabled on any disagreement.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd

from . import intlinalg as la
from .cones import (
    FaceLattice,
    build_face_lattice,
    facet_support_functions,
    is_pointed,
    is_simplicial,
    matrix_columns,
)
from .errors import (
    DimensionUnsupported,
    FullLatticeRequired,
    GeneratorNotInSemigroup,
    NotPointed,
    SearchBoundExceeded,
)


@dataclass(frozen=True)
class NumericalSemigroup:
    """A cofinite subsemigroup of the nonnegative integers."""

    generators: tuple
    conductor: int
    gaps: frozenset

    def __contains__(self, x) -> bool:
        x = int(x)
        if x < 0:
            return False
        return x >= self.conductor or x not in self.gaps


def numerical_semigroup(values) -> NumericalSemigroup:
    """Build the numerical semigroup generated by the positive members of
    `values`; their gcd must be 1 so that the gap set is finite."""
    gens = sorted({int(v) for v in values if int(v) > 0})
    if not gens:
        raise ValueError("no positive generators")
    g = 0
    for v in gens:
        g = gcd(g, v)
    if g != 1:
        raise ValueError(f"generators {gens} are not coprime")
    smallest = gens[0]
    reachable = [True]
    run = 1  # zero is always a member
    i = 0
    while run < smallest:
        i += 1
        hit = any(i >= v and reachable[i - v] for v in gens)
        reachable.append(hit)
        run = run + 1 if hit else 0
    conductor = i - smallest + 1
    gaps = frozenset(j for j in range(conductor) if not reachable[j])
    return NumericalSemigroup(tuple(gens), conductor, gaps)


class ToricPresentation:
    """An integer matrix together with derived cone, semigroup and flag data.

    Construct with ToricPresentation.build().  All derived data is immutable
    once built; the memoization caches are only ever extended, so sharing a
    presentation between threads is safe under CPython's dict guarantees.
    """

    def __init__(self):
        raise TypeError("use ToricPresentation.build(...)")

    @classmethod
    def build(cls, rows, *, search_bound=None, box_margin: int = 10):
        self = object.__new__(cls)
        matrix = la.mat(rows)
        if not matrix or not matrix[0]:
            raise ValueError("matrix must have at least one row and column")
        if any(len(r) != len(matrix[0]) for r in matrix):
            raise ValueError("ragged matrix")
        self.matrix = matrix
        self.dim = len(matrix)
        self.ncols = len(matrix[0])
        self.columns = matrix_columns(matrix)
        column_lattice = la.Sublattice.from_vectors(self.dim, self.columns)
        if column_lattice.rank < self.dim:
            # facet_support_functions reports this too; fail early with context
            from .errors import NotFullDimensional

            raise NotFullDimensional(
                f"columns span rank {column_lattice.rank} < {self.dim}"
            )
        if column_lattice.basis != la.identity(self.dim):
            raise FullLatticeRequired(
                "columns must generate the full integer lattice"
            )
        self.supports = facet_support_functions(matrix)
        self.pointed = is_pointed(self.supports, self.dim)
        self.simplicial = is_simplicial(self.supports, self.dim)
        max_entry = max(abs(e) for row in matrix for e in row)
        if search_bound is not None and int(search_bound) <= 0:
            raise ValueError("search_bound must be positive")
        self.search_bound = (
            int(search_bound) if search_bound
            else 10 * max(1, max_entry) * self.dim
        )
        if int(box_margin) < 0:
            raise ValueError("box_margin must be nonnegative")
        self.box_margin = int(box_margin)
        # memory guard for membership tables; exceeding it raises
        # SearchBoundExceeded rather than exhausting memory
        self.table_state_limit = 250_000
        self._face_lattice = None
        self._facet_semigroups = {}
        self._face_groups = {}
        self._face_quotients = {}
        self._tables = {}
        self._signature_cache = {}
        self.normal = None
        self.scored = None
        self.serre_s2 = None
        self.fast_path = None
        self.verification_box = None
        if self.pointed:
            self._face_lattice = build_face_lattice(matrix, self.supports)
            _classify(self)
        return self

    # -- geometry accessors -------------------------------------------------

    def _require_pointed(self) -> None:
        if not self.pointed:
            raise NotPointed("operation requires a pointed semigroup")

    @property
    def face_lattice(self) -> FaceLattice:
        self._require_pointed()
        return self._face_lattice

    def facet_values(self, v) -> tuple:
        return tuple(s.value(v) for s in self.supports)

    def facet_semigroup(self, facet_id: int) -> NumericalSemigroup:
        ns = self._facet_semigroups.get(facet_id)
        if ns is None:
            vals = [self.supports[facet_id].value(c) for c in self.columns]
            ns = numerical_semigroup(vals)
            self._facet_semigroups[facet_id] = ns
        return ns

    def max_facet_conductor(self) -> int:
        return max(self.facet_semigroup(s.facet_id).conductor for s in self.supports)

    def face_group(self, face_id: int) -> la.Sublattice:
        lat = self._face_groups.get(face_id)
        if lat is None:
            face = self.face_lattice.face(face_id)
            lat = la.Sublattice.from_vectors(
                self.dim, (self.columns[i] for i in sorted(face.column_indices))
            )
            self._face_groups[face_id] = lat
        return lat

    def face_quotient(self, face_id: int) -> la.QuotientGroup:
        q = self._face_quotients.get(face_id)
        if q is None:
            q = la.quotient(self.dim, self.face_group(face_id))
            self._face_quotients[face_id] = q
        return q

    # -- membership ---------------------------------------------------------

    def _relevant_facets(self, face_id: int) -> tuple:
        return tuple(sorted(self.face_lattice.face(face_id).zero_facets))

    def _table(self, face_id: int):
        tbl = self._tables.get(face_id)
        if tbl is None:
            relevant = self._relevant_facets(face_id)
            quot = self.face_quotient(face_id)
            face = self.face_lattice.face(face_id)
            moves = []
            for i, col in enumerate(self.columns):
                if i in face.column_indices or la.is_zero_vector(col):
                    continue
                vals = tuple(self.supports[s].value(col) for s in relevant)
                moves.append((col, vals))
            tbl = _BfsTable(quot, relevant, moves)
            self._tables[face_id] = tbl
        return tbl

    def _table_membership(self, a, face_id: int) -> bool:
        relevant = self._relevant_facets(face_id)
        vals = tuple(self.supports[s].value(a) for s in relevant)
        if any(v < 0 for v in vals):
            return False
        tbl = self._table(face_id)
        if tbl.caps is None or any(v > c for v, c in zip(vals, tbl.caps)):
            ceiling = self._table_ceiling()
            for idx, s in enumerate(relevant):
                if vals[idx] > ceiling[s]:
                    raise SearchBoundExceeded(
                        f"facet value {vals[idx]} is above the table ceiling "
                        f"{ceiling[s]}; raise the search bound"
                    )
            needed = []
            for idx, s in enumerate(relevant):
                base = self.facet_semigroup(s).conductor + self.box_margin
                old = tbl.caps[idx] if tbl.caps else 0
                # double for amortization, but never past the ceiling
                needed.append(min(max(base, vals[idx], 2 * old), ceiling[s]))
            tbl.rebuild(needed, self.table_state_limit)
        return tbl.lookup(a, vals)

    def _table_ceiling(self) -> dict:
        """Per-facet bound on table caps: the largest facet value reachable
        by a representation whose coefficients stay within the search bound,
        mirroring the coefficient bound of the depth-first oracle."""
        out = {}
        for s in self.supports:
            colsum = sum(s.value(c) for c in self.columns)
            base = self.facet_semigroup(s.facet_id).conductor + self.box_margin
            out[s.facet_id] = max(self.search_bound * max(1, colsum), 4 * base, 64)
        return out


class _BfsTable:
    """Breadth-first closure of the image of the semigroup in a face
    quotient, restricted to facet values within per-facet caps.

    Complete for every query whose facet values fit under the caps: any
    representation of such a degree has all partial sums inside the capped
    region, since moves never decrease a facet value.
    """

    __slots__ = ("quotient", "relevant", "moves", "caps", "members")

    def __init__(self, quot, relevant, moves):
        self.quotient = quot
        self.relevant = relevant
        self.moves = tuple(moves)
        self.caps = None
        self.members = None

    def rebuild(self, caps, state_limit=None) -> None:
        caps = tuple(caps)
        d = self.quotient.ambient_rank
        origin = self.quotient.project(la.zero_vector(d))
        # track a lift alongside each state so moves stay exact
        members = {origin: (0,) * len(self.relevant)}
        lifts = {origin: la.zero_vector(d)}
        frontier = [origin]
        while frontier:
            nxt = []
            for state in frontier:
                vals = members[state]
                lift = lifts[state]
                for col, mv_vals in self.moves:
                    new_vals = tuple(a + b for a, b in zip(vals, mv_vals))
                    if any(v > c for v, c in zip(new_vals, caps)):
                        continue
                    new_lift = la.vadd(lift, col)
                    new_state = self.quotient.project(new_lift)
                    if new_state not in members:
                        members[new_state] = new_vals
                        lifts[new_state] = new_lift
                        nxt.append(new_state)
            if state_limit is not None and len(members) > state_limit:
                # leave any previously built table intact
                raise SearchBoundExceeded(
                    f"membership table needs more than {state_limit} states"
                )
            frontier = nxt
        self.caps = caps
        self.members = members

    def lookup(self, a, vals) -> bool:
        state = self.quotient.project(a)
        got = self.members.get(state)
        if got is None:
            return False
        # facet values factor through the quotient, so they must agree
        assert got == vals, "facet values inconsistent with quotient state"
        return True


# -- public membership oracles ----------------------------------------------


def in_semigroup(pres: ToricPresentation, a) -> bool:
    """Exact test for membership of a degree in the semigroup."""
    pres._require_pointed()
    a = la.vec(a)
    if pres.fast_path == "normal":
        return all(v >= 0 for v in pres.facet_values(a))
    if pres.fast_path == "scored":
        return all(
            s.value(a) in pres.facet_semigroup(s.facet_id) for s in pres.supports
        )
    return pres._table_membership(a, pres.face_lattice.bottom_id)


def in_face_localization(pres: ToricPresentation, a, face_id: int) -> bool:
    """Exact test for membership in (semigroup + group of the face)."""
    pres._require_pointed()
    a = la.vec(a)
    lattice = pres.face_lattice
    if face_id == lattice.top_id:
        return True
    zero_facets = lattice.face(face_id).zero_facets
    if pres.fast_path == "normal":
        return all(pres.supports[s].value(a) >= 0 for s in zero_facets)
    if pres.fast_path == "scored":
        return all(
            pres.supports[s].value(a) in pres.facet_semigroup(s)
            for s in zero_facets
        )
    return pres._table_membership(a, face_id)


def face_membership_search(pres: ToricPresentation, a, face_id: int,
                           *, search_bound=None) -> bool:
    """Depth-first feasibility search deciding the same membership as
    in_face_localization, independent of the table path.

    Prunes on negativity of the support functions of facets containing the
    face; per-column coefficients are bounded by a strictly positive
    functional on the quotient cone.  Raises SearchBoundExceeded when a
    complete search would need a coefficient above the bound.
    """
    pres._require_pointed()
    a = la.vec(a)
    lattice = pres.face_lattice
    if face_id == lattice.top_id:
        return True
    bound = search_bound if search_bound is not None else pres.search_bound
    face = lattice.face(face_id)
    relevant = pres._relevant_facets(face_id)
    coeffs = [pres.supports[s].coefficients for s in relevant]
    vals_a = [la.dot(c, a) for c in coeffs]
    if any(v < 0 for v in vals_a):
        return False
    group = pres.face_group(face_id)
    active = []
    for i, col in enumerate(pres.columns):
        if i in face.column_indices or la.is_zero_vector(col):
            continue
        w = sum(la.dot(c, col) for c in coeffs)
        active.append((w, col))
    active.sort(key=lambda t: (-t[0], t[1]))
    w_a = sum(vals_a)
    for w, _ in active:
        if w_a // w > bound:
            raise SearchBoundExceeded(
                f"coefficient bound {w_a // w} exceeds search bound {bound}"
            )
    memo = {}

    def search(rem, idx) -> bool:
        key = (rem, idx)
        cached = memo.get(key)
        if cached is not None:
            return cached
        result = False
        if all(la.dot(c, rem) >= 0 for c in coeffs):
            if idx == len(active):
                result = group.contains(rem)
            else:
                w, col = active[idx]
                top = sum(la.dot(c, rem) for c in coeffs) // w
                cur = rem
                for _ in range(top + 1):
                    if search(cur, idx + 1):
                        result = True
                        break
                    cur = la.vsub(cur, col)
        memo[key] = result
        return result

    return search(a, 0)


def smallest_containing_face(pres: ToricPresentation, b) -> int:
    """Id of the smallest face of the cone containing a semigroup degree."""
    pres._require_pointed()
    b = la.vec(b)
    if not in_semigroup(pres, b):
        raise GeneratorNotInSemigroup(f"{b} is not in the semigroup")
    zero = frozenset(
        s.facet_id for s in pres.supports if s.value(b) == 0
    )
    return pres.face_lattice.face_id_by_zero_facets(zero)


def in_monomial_localization(pres: ToricPresentation, a, b) -> bool:
    """True iff a + m*b lies in the semigroup for some m >= 0.

    Inverting the monomial of degree b inverts exactly the smallest face
    containing b, so this equals membership in the semigroup translated by
    that face's group; the equivalence makes the test exact with no search
    over m.
    """
    return in_face_localization(pres, a, smallest_containing_face(pres, b))


def monomial_localization_witness(pres: ToricPresentation, a, b,
                                  *, limit: int = 10000):
    """Smallest m with a + m*b in the semigroup, or None when no m exists."""
    if not in_monomial_localization(pres, a, b):
        return None
    a = la.vec(a)
    b = la.vec(b)
    m = 0
    cur = a
    while not in_semigroup(pres, cur):
        cur = la.vadd(cur, b)
        m += 1
        if m > limit:
            raise SearchBoundExceeded(f"no witness below {limit}")
    return m


def in_escape_set(pres: ToricPresentation, x, shift) -> bool:
    """Whether x lies in the semigroup but leaves it after translating by
    shift.  This is the membership predicate behind escape_count and is the
    only view of the escape set available above dimension one, where the
    set itself is usually infinite."""
    x = la.vec(x)
    return in_semigroup(pres, x) and not in_semigroup(pres, la.vadd(x, la.vec(shift)))


def escape_count(pres: ToricPresentation, shift) -> int:
    """Number of semigroup elements x with x + shift outside the semigroup.

    Only defined in ambient dimension one, where the count is finite; the
    facet numerical semigroup makes the enumeration exact.
    """
    if pres.dim != 1:
        raise DimensionUnsupported("escape counts are only finite for dim 1")
    pres._require_pointed()
    shift = la.vec(shift) if not isinstance(shift, int) else (shift,)
    support = pres.supports[0]
    ns = pres.facet_semigroup(0)
    f = support.value(shift)
    upper = max(0, ns.conductor - f)
    return sum(1 for x in range(upper) if x in ns and (x + f) not in ns)


# -- classification -----------------------------------------------------------


def _facet_box_points(pres: ToricPresentation, caps) -> list:
    """All integer points whose facet values lie in [0, cap] per facet.

    Walks the image lattice of the facet-value map on a maximal independent
    subset of facets: its Hermite basis is triangular, so the value tuples
    in the box are enumerated coordinate by coordinate with no wasted
    candidates (the image can have large index in the ambient lattice, so
    scanning all value tuples would be far more expensive).  Points are
    recovered by one exact solve per achieved tuple and filtered against
    the remaining facets."""
    d = pres.dim
    basis_ids = []
    rows = []
    for s in pres.supports:
        cand = rows + [s.coefficients]
        if la.rank(la.mat(cand)) == len(cand):
            rows.append(s.coefficients)
            basis_ids.append(s.facet_id)
        if len(rows) == d:
            break
    frac_rows = [[Fraction(x) for x in r] for r in rows]
    others = [s for s in pres.supports if s.facet_id not in basis_ids]
    bounds = [caps[i] for i in basis_ids]
    # image lattice of a |-> (F(a)) is generated by the value vectors of
    # the unit directions, i.e. the columns of the basis-normal matrix
    image_basis, _ = la.hermite_normal_form(la.transpose(la.mat(rows)))
    from .cones import _solve_fraction

    points = []

    def step(level, partial):
        if level == d:
            sol = _solve_fraction(frac_rows, list(partial))
            assert all(x.denominator == 1 for x in sol)
            point = tuple(int(x) for x in sol)
            if all(0 <= s.value(point) <= caps[s.facet_id] for s in others):
                points.append(point)
            return
        row = image_basis[level]
        pivot = row[level]
        # the Hermite basis is triangular: later levels cannot change this
        # coordinate, so its box constraint pins the coefficient range here
        y = -(partial[level] // pivot)
        while partial[level] + y * pivot <= bounds[level]:
            nxt = tuple(p + y * r for p, r in zip(partial, row))
            step(level + 1, nxt)
            y += 1

    step(0, (0,) * d)
    return points


def _classify(pres: ToricPresentation) -> None:
    caps = {
        s.facet_id: pres.facet_semigroup(s.facet_id).conductor + pres.box_margin
        for s in pres.supports
    }
    points = _facet_box_points(pres, caps)
    lattice = pres.face_lattice
    bottom = lattice.bottom_id

    member = {a: pres._table_membership(a, bottom) for a in points}
    scored_pred = {
        a: all(s.value(a) in pres.facet_semigroup(s.facet_id) for s in pres.supports)
        for a in points
    }
    s2_pred = {
        a: all(
            pres._table_membership(a, lattice.facet_face_id(s.facet_id))
            for s in pres.supports
        )
        for a in points
    }
    pres.normal = all(member.values())
    pres.scored = all(member[a] == scored_pred[a] for a in points)
    pres.serre_s2 = all(member[a] == s2_pred[a] for a in points)
    assert (not pres.normal or pres.scored) and (not pres.scored or pres.serre_s2)
    pres.verification_box = tuple(caps[s.facet_id] for s in pres.supports)

    # validate the flag shortcuts against the table oracle before trusting them
    valid_normal = pres.normal
    valid_scored = pres.scored
    if pres.normal or pres.scored:
        for face in lattice.faces:
            if face.face_id == lattice.top_id:
                continue
            zf = face.zero_facets
            for a in points:
                oracle = pres._table_membership(a, face.face_id)
                if valid_normal and oracle != all(
                    pres.supports[s].value(a) >= 0 for s in zf
                ):
                    valid_normal = False
                if valid_scored and oracle != all(
                    pres.supports[s].value(a) in pres.facet_semigroup(s) for s in zf
                ):
                    valid_scored = False
            if not (valid_normal or valid_scored):
                break
    if pres.normal and valid_normal:
        pres.fast_path = "normal"
    elif pres.scored and valid_scored:
        pres.fast_path = "scored"
    else:
        pres.fast_path = None

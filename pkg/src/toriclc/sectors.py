"""Signatures, equivalence classes and the sector partition.

For a degree a and a face of the cone, the face residue set records which
residue classes l of the saturation of the face group (modulo the face
group itself) satisfy: a - l lies in the semigroup translated by the face
group.  The per-face family of residue sets is the signature of a; degrees
compare by face-wise inclusion of residue sets, and degrees with equal
signatures form the (finitely many) equivalence classes that index the
composition factors of every graded module built from monomial
localizations.

The coarser sector partition only remembers, per face, whether the zero
residue is present; its blocks are indexed by upward-closed sets of faces
(filters).  Signatures refine sectors by construction.

Class enumeration scans growing centered boxes and stops after two
consecutive growth steps discover no new signature; the theory guarantees
finiteness but no effective bound, so the box used is always reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from . import intlinalg as la
from .errors import CycleDetected
from .semigroups import ToricPresentation, in_face_localization


@dataclass(frozen=True)
class Signature:
    """Per-face residue sets, indexed by face id; hashable and canonical."""

    residues: tuple  # tuple of frozensets of residue indices


def signature_leq(a: Signature, b: Signature) -> bool:
    return all(x <= y for x, y in zip(a.residues, b.residues))


def signatures_equiv(a: Signature, b: Signature) -> bool:
    """Mutual face-wise inclusion; coincides with equality because
    signatures are stored canonically."""
    return signature_leq(a, b) and signature_leq(b, a)


def face_residue_reps(pres: ToricPresentation, face_id: int) -> tuple:
    """Representatives of the residue classes available along one face.

    The zero vector is always the representative with index 0, so the
    sector of a degree can be read off its signature.
    """
    cache = getattr(pres, "_residue_reps", None)
    if cache is None:
        cache = {}
        pres._residue_reps = cache
    reps = cache.get(face_id)
    if reps is None:
        reps = la.torsion_coset_reps(pres.face_quotient(face_id))
        cache[face_id] = reps
    return reps


def face_residues(pres: ToricPresentation, a, face_id: int) -> frozenset:
    """Residue indices l with a - l in the face-translated semigroup."""
    a = la.vec(a)
    reps = face_residue_reps(pres, face_id)
    return frozenset(
        i for i, rep in enumerate(reps)
        if in_face_localization(pres, la.vsub(a, rep), face_id)
    )


def degree_signature(pres: ToricPresentation, a) -> Signature:
    a = la.vec(a)
    cached = pres._signature_cache.get(a)
    if cached is None:
        cached = Signature(tuple(
            face_residues(pres, a, face.face_id)
            for face in pres.face_lattice.faces
        ))
        pres._signature_cache[a] = cached
    return cached


def sector_faces(pres: ToricPresentation, a) -> frozenset:
    """The filter of faces whose translated semigroup contains the degree."""
    sig = degree_signature(pres, a)
    return frozenset(
        fid for fid, residues in enumerate(sig.residues) if 0 in residues
    )


def sector_of_signature(sig: Signature) -> frozenset:
    return frozenset(fid for fid, res in enumerate(sig.residues) if 0 in res)


@dataclass(frozen=True)
class EquivClass:
    class_id: int
    signature: Signature
    representative: la.Vector
    sector: frozenset
    samples: tuple


@dataclass(frozen=True)
class SectorFilter:
    """An upward-closed set of faces with its region's observed status."""

    faces: frozenset
    nonempty: bool
    sample_points: tuple


@dataclass(frozen=True)
class ClassEnumeration:
    classes: tuple
    radius: int
    history: tuple  # (radius, number of new signatures found) per growth step

    def by_id(self, class_id: int) -> EquivClass:
        return self.classes[class_id]

    def class_of(self, pres: ToricPresentation, a) -> EquivClass:
        sig = degree_signature(pres, la.vec(a))
        for cls in self.classes:
            if cls.signature == sig:
                return cls
        raise KeyError(f"degree {a} has a signature outside the enumerated classes")


def default_initial_radius(pres: ToricPresentation) -> int:
    max_entry = max(abs(e) for row in pres.matrix for e in row)
    return max(1, 2 * pres.max_facet_conductor() + max_entry)


def enumerate_classes(pres: ToricPresentation, *, initial_radius=None,
                      growth: int = 2, stable_steps: int = 2,
                      samples_per_class: int = 3) -> ClassEnumeration:
    """Collect the distinct signatures on growing centered boxes.

    Stops once `stable_steps` consecutive box growths add no new signature.
    Class ids are assigned in order of first discovery under a fixed
    lexicographic scan, so results are deterministic.
    """
    pres._require_pointed()
    d = pres.dim
    radius = initial_radius if initial_radius else default_initial_radius(pres)
    order = []            # signatures in first-seen order
    reps = {}             # signature -> representative
    samples = {}          # signature -> list of sample degrees
    history = []
    stable = 0
    while True:
        new_found = 0
        for point in product(range(-radius, radius + 1), repeat=d):
            sig = degree_signature(pres, point)
            if sig not in reps:
                reps[sig] = point
                samples[sig] = [point]
                order.append(sig)
                new_found += 1
            elif len(samples[sig]) < samples_per_class:
                samples[sig].append(point)
        history.append((radius, new_found))
        stable = stable + 1 if new_found == 0 else 0
        if stable >= stable_steps:
            break
        radius *= growth
    classes = tuple(
        EquivClass(
            class_id=i,
            signature=sig,
            representative=la.vec(reps[sig]),
            sector=sector_of_signature(sig),
            samples=la.mat(samples[sig]),
        )
        for i, sig in enumerate(order)
    )
    return ClassEnumeration(classes, radius, tuple(history))


@dataclass(frozen=True)
class ClassPoset:
    """Strict comparabilities between classes plus a linear extension that
    lists larger classes first (suitable for reading off a composition
    series from submodules generated by larger classes)."""

    strictly_below: tuple  # pairs (low_id, high_id)
    linear_extension: tuple

    def pairs(self) -> frozenset:
        return frozenset(self.strictly_below)


def class_poset(classes) -> ClassPoset:
    below = []
    for a in classes:
        for b in classes:
            if a.class_id == b.class_id:
                continue
            if signature_leq(a.signature, b.signature):
                if signature_leq(b.signature, a.signature):
                    raise CycleDetected(
                        f"distinct classes {a.class_id}, {b.class_id} share a signature"
                    )
                below.append((a.class_id, b.class_id))
    below_set = set(below)
    remaining = {c.class_id for c in classes}
    extension = []
    while remaining:
        ready = sorted(
            cid for cid in remaining
            if not any((cid, other) in below_set for other in remaining)
        )
        if not ready:
            raise CycleDetected("no maximal class among the remaining ones")
        chosen = ready[0]
        extension.append(chosen)
        remaining.remove(chosen)
    return ClassPoset(tuple(sorted(below)), tuple(extension))


def all_sector_filters(pres: ToricPresentation, *, limit: int = 18) -> tuple:
    """Every filter of the face lattice containing the full cone.

    Enumerated by bitmask when the lattice is small enough; the region of a
    filter missing the full cone is empty, so such filters are skipped.
    """
    lattice = pres.face_lattice
    n = len(lattice)
    if n > limit:
        raise ValueError(f"face lattice too large to enumerate filters ({n} faces)")
    top = lattice.top_id
    out = []
    for mask in range(1 << n):
        if not mask & (1 << top):
            continue
        chosen = frozenset(i for i in range(n) if mask & (1 << i))
        if lattice.is_filter(chosen):
            out.append(chosen)
    out.sort(key=lambda s: (len(s), sorted(s)))
    return tuple(out)


def sector_inventory(pres: ToricPresentation,
                     enumeration: ClassEnumeration) -> tuple:
    """All candidate sector filters with their observed occupancy.

    A filter is reported nonempty when some enumerated class lives in it;
    emptiness is relative to the scanned box recorded in the enumeration.
    """
    observed = {}
    for cls in enumeration.classes:
        observed.setdefault(cls.sector, []).extend(cls.samples)
    try:
        candidates = all_sector_filters(pres)
    except ValueError:
        candidates = tuple(sorted(observed, key=lambda s: (len(s), sorted(s))))
    out = []
    for faces in candidates:
        pts = observed.get(faces, [])
        out.append(SectorFilter(faces, bool(pts), la.mat(pts[:3])))
    return tuple(out)

"""Cubic fields over which the torsion of a rational curve grows."""

from dataclasses import dataclass

from ..algebra.poly import is_square_rational
from ..elliptic import (
    Curve,
    TorsionStructure,
    primitive_factors,
    torsion_over_K,
    torsion_over_Q,
)
from ..number_field import CubicField, is_isomorphic
from .tables import H3_OF, PHI1, PHI3_OF

# Orders whose division polynomials supply candidate fields.  Five is included
# only so that the never-grows check on the 5-primary part has something to see.
CANDIDATE_ORDERS = (4, 8, 3, 9, 5, 7, 13)


class ClassificationError(AssertionError):
    """A computed result falls outside the classification tables."""


@dataclass(frozen=True)
class GrowthEntry:
    field: CubicField
    torsion: TorsionStructure

    def as_dict(self) -> dict:
        return {
            "poly": self.field.poly.int_coeffs(),
            "field_disc": self.field.field_disc,
            "torsion": self.torsion.as_list(),
        }


@dataclass(frozen=True)
class GrowthRecord:
    label: str
    base: TorsionStructure
    entries: tuple

    def multiset(self) -> tuple:
        return tuple(sorted(e.torsion for e in self.entries))

    def as_dict(self) -> dict:
        return {
            "label": self.label,
            "base": self.base.as_list(),
            "growth": [e.as_dict() for e in self.entries],
        }


def classify_growth_pair(G: TorsionStructure, H: TorsionStructure) -> bool:
    if G not in PHI1:
        raise ValueError(f"{G} is not a torsion structure over Q")
    return H in PHI3_OF[G]


def candidate_cubics(E: Curve) -> list:
    """Rational cubics whose roots could be x-coordinates of new torsion points."""
    cubics = []
    two = primitive_factors(E, 2)
    cubics.extend(two.of_degree(3))
    for q in CANDIDATE_ORDERS:
        cubics.extend(primitive_factors(E, q).of_degree(3))
    seen = set()
    out = []
    for c in cubics:
        if c not in seen:
            seen.add(c)
            out.append(c)
    return out


def candidate_fields(E: Curve) -> list:
    """Pairwise non-isomorphic fields generated by the candidate cubics."""
    fields = []
    for c in candidate_cubics(E):
        K, _ = CubicField.from_cubic(c)
        if not any(_same_field(K, L) for L in fields):
            fields.append(K)
    return fields


def _same_field(K: CubicField, L: CubicField) -> bool:
    if is_square_rational(abs(K.poly_disc * L.poly_disc)) is None:
        return False
    return is_isomorphic(K, L)


def _entry_key(e: GrowthEntry):
    return (abs(e.field.field_disc), e.field.poly.int_coeffs())


def growth_fields(E: Curve, check: bool = True) -> GrowthRecord:
    """All cubic fields, up to isomorphism, where E gains torsion.

    With check=True any result outside the classification raises
    ClassificationError.
    """
    G = torsion_over_Q(E).structure
    entries = []
    for K in candidate_fields(E):
        H = torsion_over_K(E, K).structure
        if not H.contains(G):
            raise ClassificationError(f"{E!r}: torsion over {K.poly} is {H}, not containing {G}")
        if H != G:
            entries.append(GrowthEntry(K, H))
    entries.sort(key=_entry_key)
    record = GrowthRecord(E.label or "", G, tuple(entries))
    if check:
        problems = record_violations(record)
        if problems:
            raise ClassificationError("; ".join(problems))
    return record


def record_violations(record: GrowthRecord) -> list:
    """Table-level problems with a single growth record."""
    out = []
    G = record.base
    for e in record.entries:
        if not classify_growth_pair(G, e.torsion):
            out.append(f"{record.label}: pair ({G}, {e.torsion}) is not in the cubic growth table")
    ms = record.multiset()
    if ms and ms not in H3_OF[G]:
        out.append(f"{record.label}: growth list {[str(h) for h in ms]} not listed for {G}")
    return out

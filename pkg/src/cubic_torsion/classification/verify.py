"""Dataset-level verification of the classification and its supporting lemmas."""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from ..dataset import CurveRecord, label_key
from ..elliptic import Curve, TorsionStructure
from ..number_field import CubicField, is_isomorphic, roots_in_field
from .growth import ClassificationError, GrowthRecord, classify_growth_pair, growth_fields
from .isogeny import IsogenyUndetermined, rational_isogeny
from .tables import EXCLUDED_MULTISETS, H3_OF, TABLE1


@dataclass(frozen=True)
class Violation:
    label: str
    check: str
    message: str

    def as_dict(self) -> dict:
        return {"label": self.label, "check": self.check, "message": self.message}


@dataclass
class CurveVerdict:
    label: str
    record: GrowthRecord = None
    violations: list = field(default_factory=list)
    notes: list = field(default_factory=list)


@dataclass
class DatasetReport:
    verdicts: list

    @property
    def violations(self) -> list:
        return [v for c in self.verdicts for v in c.violations]

    @property
    def notes(self) -> list:
        return [n for c in self.verdicts for n in c.notes]

    def records(self) -> list:
        return [c.record for c in self.verdicts if c.record is not None]

    def curves_with_fields(self, count: int) -> list:
        return [r.label for r in self.records() if len(r.entries) == count]

    def max_fields(self) -> int:
        return max((len(r.entries) for r in self.records()), default=0)


def _prime_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def _sylow(T: TorsionStructure, p: int) -> tuple:
    return (_prime_part(T.m, p), _prime_part(T.n, p))


def check_record(E: Curve, record: GrowthRecord) -> tuple:
    """(violations, notes) for one curve's growth record."""
    out = []
    notes = []
    label = record.label
    G = record.base

    def bad(check, msg):
        out.append(Violation(label, check, msg))

    hs = [e.torsion for e in record.entries]
    for H in hs:
        if not classify_growth_pair(G, H):
            bad("pair", f"({G}, {H}) is not an admissible pair")
    if len(hs) > 3:
        bad("at_most_three", f"{len(hs)} growth fields")
    if len(set(hs)) != len(hs):
        bad("one_field_per_group", f"repeated groups in {[str(h) for h in hs]}")
    ms = record.multiset()
    if ms and ms not in H3_OF[G]:
        bad("growth_list", f"{[str(h) for h in ms]} is not a listed growth list for {G}")
    if ms in EXCLUDED_MULTISETS:
        bad("excluded_list", f"excluded growth list {[str(h) for h in ms]} occurs")

    for e in record.entries:
        H = e.torsion
        if H.order % 9 == 0 and G.order % 3:
            bad("order_9", f"order 9 over {e.field.poly} with base {G}")
        needs = [n for n in (3, 5, 7, 13) if H.order % n == 0]
        for n in needs:
            try:
                h = rational_isogeny(E, n)
            except IsogenyUndetermined as exc:
                notes.append(f"{label}: {n}-isogeny undetermined ({exc})")
                continue
            if h is None:
                bad("isogeny", f"order {n} over {e.field.poly} but no rational {n}-isogeny")
        if _sylow(H, 5) != _sylow(G, 5):
            bad("five_part", f"5-primary part grows over {e.field.poly}: {G} -> {H}")
        if G.order % 2 == 0 and _sylow(H, 2) != _sylow(G, 2):
            bad("two_sylow", f"2-Sylow grows over {e.field.poly}: {G} -> {H}")
        if not H.is_cyclic():
            if H.m != 2:
                bad("non_cyclic", f"non-cyclic group {H} not of the form C2 x C2m")
            if len(roots_in_field(E.two_division_cubic(), e.field)) != 3:
                bad("non_cyclic", f"{H} over {e.field.poly} without full 2-torsion")

    # a grown cyclic part coprime to |G| of order >= 3 lives in at most one field
    for p in (2, 3, 5, 7, 13):
        if G.order % p == 0:
            continue
        carriers = [e for e in record.entries if _prime_part(e.torsion.n, p) >= 3]
        if len(carriers) > 1:
            bad("coprime_growth", f"{p}-primary growth in {len(carriers)} non-isomorphic fields")
    return out, notes


def verify_curve(rec: CurveRecord) -> CurveVerdict:
    verdict = CurveVerdict(rec.label)
    E = rec.curve()
    try:
        record = growth_fields(E, check=False)
    except (ClassificationError, AssertionError) as exc:
        verdict.violations.append(Violation(rec.label, "torsion_assembly", str(exc)))
        return verdict
    verdict.record = record
    verdict.violations, verdict.notes = check_record(E, record)
    return verdict


def _verify_chunk(items) -> list:
    return [verify_curve(CurveRecord(lab, tuple(a))) for lab, a in items]


def verify_dataset(records, jobs: int = 1, chunk: int = 64) -> DatasetReport:
    records = sorted(records, key=lambda r: label_key(r.label))
    if jobs <= 1 or len(records) <= chunk:
        verdicts = [verify_curve(r) for r in records]
    else:
        items = [(r.label, list(r.a_invariants)) for r in records]
        chunks = [items[i : i + chunk] for i in range(0, len(items), chunk)]
        verdicts = []
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_verify_chunk, chunks):
                verdicts.extend(part)
        verdicts.sort(key=lambda v: label_key(v.label))
    return DatasetReport(verdicts)


# --- the example table -----------------------------------------------------


@dataclass
class RowComparison:
    label: str
    expected: dict
    computed: dict
    problems: list

    @property
    def ok(self) -> bool:
        return not self.problems


def compare_table1_row(row, E: Curve) -> RowComparison:
    record = growth_fields(E, check=False)
    problems = []
    if record.base != row.group_G:
        problems.append(f"base torsion {record.base}, expected {row.group_G}")
    if record.multiset() != tuple(sorted(row.groups_H)):
        problems.append(
            f"growth list {[str(h) for h in record.multiset()]}, expected {[str(h) for h in sorted(row.groups_H)]}"
        )
    unmatched = list(record.entries)
    for cubic, disc, H in zip(row.cubics, row.field_discs, row.groups_H):
        K = CubicField(list(cubic))
        if K.field_disc != disc:
            problems.append(f"listed cubic {K.poly} has field discriminant {K.field_disc}, listed {disc}")
        match = next((e for e in unmatched if e.torsion == H and is_isomorphic(e.field, K)), None)
        if match is None:
            problems.append(f"no computed field isomorphic to {K.poly} with torsion {H}")
            continue
        unmatched.remove(match)
        if match.field.field_disc != disc:
            problems.append(f"computed field {match.field.poly} has discriminant {match.field.field_disc}, listed {disc}")
    for e in unmatched:
        problems.append(f"extra computed field {e.field.poly} with torsion {e.torsion}")
    expected = {
        "base": row.group_G.as_list(),
        "growth": [
            {"poly": list(c), "field_disc": d, "torsion": h.as_list()}
            for c, d, h in zip(row.cubics, row.field_discs, row.groups_H)
        ],
    }
    computed = record.as_dict()
    computed.pop("label")
    return RowComparison(row.curve_label, expected, computed, problems)


def verify_table1(records) -> list:
    by_label = {r.label: r for r in records}
    out = []
    for row in TABLE1:
        rec = by_label.get(row.curve_label)
        if rec is None:
            out.append(RowComparison(row.curve_label, {}, {}, ["curve not in dataset"]))
            continue
        out.append(compare_table1_row(row, rec.curve()))
    return out

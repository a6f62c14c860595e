"""Torsion structures possible over Q and over cubic fields, as constant data.

The same data lives in JSON under cubic_torsion/data; the test suite compares
the two so that a transcription slip on either side shows up.
"""

from dataclasses import dataclass

from ..elliptic import TorsionStructure


def _c(n: int) -> TorsionStructure:
    return TorsionStructure(1, n)


def _c2(n: int) -> TorsionStructure:
    return TorsionStructure(2, n)


PHI1 = frozenset([_c(n) for n in (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12)] + [_c2(2 * m) for m in (1, 2, 3, 4)])

PHI3 = frozenset(
    [_c(n) for n in (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 13, 14, 18, 21)]
    + [_c2(2 * m) for m in (1, 2, 3, 4, 7)]
)

PHI3_OF = {
    _c(1): frozenset([_c(1), _c(2), _c(3), _c(4), _c(6), _c(7), _c(13), _c2(2), _c2(14)]),
    _c(2): frozenset([_c(2), _c(6), _c(14)]),
    _c(3): frozenset([_c(3), _c(6), _c(9), _c(12), _c(21), _c2(6)]),
    _c(4): frozenset([_c(4), _c(12)]),
    _c(5): frozenset([_c(5), _c(10)]),
    _c(6): frozenset([_c(6), _c(18)]),
    _c(7): frozenset([_c(7), _c(14)]),
    _c(8): frozenset([_c(8)]),
    _c(9): frozenset([_c(9), _c(18)]),
    _c(10): frozenset([_c(10)]),
    _c(12): frozenset([_c(12)]),
    _c2(2): frozenset([_c2(2), _c2(6)]),
    _c2(4): frozenset([_c2(4)]),
    _c2(6): frozenset([_c2(6)]),
    _c2(8): frozenset([_c2(8)]),
}


def _ms(*groups) -> tuple:
    """Multiset of torsion structures, stored as a sorted tuple."""
    return tuple(sorted(groups))


H3_OF = {
    _c(1): frozenset(
        [
            _ms(_c(2)),
            _ms(_c(4)),
            _ms(_c(6)),
            _ms(_c2(2)),
            _ms(_c2(14)),
            _ms(_c(2), _c(3)),
            _ms(_c(2), _c(7)),
            _ms(_c(2), _c(13)),
            _ms(_c(3), _c(4)),
            _ms(_c(3), _c2(2)),
            _ms(_c(4), _c(7)),
            _ms(_c(7), _c2(2)),
            _ms(_c(2), _c(3), _c(7)),
        ]
    ),
    _c(2): frozenset([_ms(_c(6)), _ms(_c(14))]),
    _c(3): frozenset([_ms(_c(6)), _ms(_c(12)), _ms(_c2(6)), _ms(_c(6), _c(9)), _ms(_c(6), _c(21))]),
    _c(4): frozenset([_ms(_c(12))]),
    _c(5): frozenset([_ms(_c(10))]),
    _c(6): frozenset([_ms(_c(18))]),
    _c(7): frozenset([_ms(_c(14))]),
    _c(8): frozenset(),
    _c(9): frozenset([_ms(_c(18))]),
    _c(10): frozenset(),
    _c(12): frozenset(),
    _c2(2): frozenset([_ms(_c2(6))]),
    _c2(4): frozenset(),
    _c2(6): frozenset(),
    _c2(8): frozenset(),
}

# Growth lists ruled out in the classification argument; they must never occur.
EXCLUDED_MULTISETS = frozenset(
    [
        _ms(_c(6), _c(13)),
        _ms(_c(4), _c(13)),
        _ms(_c(9), _c(12)),
        _ms(_c2(14), _c(7)),
    ]
)


@dataclass(frozen=True)
class Table1Row:
    group_G: TorsionStructure
    curve_label: str
    cubics: tuple  # of (c0, c1, c2, 1)
    field_discs: tuple
    groups_H: tuple


def _row(g, label, *entries) -> Table1Row:
    return Table1Row(
        g,
        label,
        tuple(tuple(e[0]) for e in entries),
        tuple(e[1] for e in entries),
        tuple(e[2] for e in entries),
    )


TABLE1 = (
    _row(_c(1), "11a2", ((1, 1, -1, 1), -44, _c(2))),
    _row(_c(1), "338b2", ((12, -4, -1, 1), -676, _c(4))),
    _row(_c(1), "108a2", ((-2, 0, 0, 1), -108, _c(6))),
    _row(_c(1), "196a1", ((1, -2, -1, 1), 49, _c2(2))),
    _row(_c(1), "1922c1", ((8, -10, -1, 1), 961, _c2(14))),
    _row(_c(1), "19a2", ((-2, -2, 0, 1), -76, _c(2)), ((-12, -6, -1, 1), -1083, _c(3))),
    _row(_c(1), "294a1", ((-6, -2, -1, 1), -1176, _c(2)), ((1, -2, -1, 1), 49, _c(7))),
    _row(_c(1), "147b1", ((1, 5, -1, 1), -588, _c(2)), ((1, -2, -1, 1), 49, _c(13))),
    _row(_c(1), "162d2", ((-2, 0, 0, 1), -108, _c(3)), ((-4, -3, 0, 1), -324, _c(4))),
    _row(_c(1), "196b2", ((1, 5, -1, 1), -588, _c(3)), ((1, -2, -1, 1), 49, _c2(2))),
    _row(_c(1), "338b1", ((12, -4, -1, 1), -676, _c(4)), ((-1, -4, -1, 1), 169, _c(7))),
    _row(_c(1), "3969a1", ((-35, -21, 0, 1), 3969, _c(7)), ((-28, -21, 0, 1), 3969, _c2(2))),
    _row(
        _c(1),
        "162b2",
        ((-10, -3, 0, 1), -648, _c(2)),
        ((-2, 0, 0, 1), -108, _c(3)),
        ((-1, -3, 0, 1), 81, _c(7)),
    ),
    _row(_c(2), "14a3", ((-7, 0, 0, 1), -1323, _c(6))),
    _row(_c(2), "49a3", ((1, -2, -1, 1), 49, _c(14))),
    _row(_c(3), "19a1", ((-2, -2, 0, 1), -76, _c(6))),
    _row(_c(3), "162d1", ((-4, -3, 0, 1), -324, _c(12))),
    _row(_c(3), "196b1", ((1, -2, -1, 1), 49, _c2(6))),
    _row(_c(3), "19a3", ((-2, -2, 0, 1), -76, _c(6)), ((7, -6, -1, 1), 361, _c(9))),
    _row(_c(3), "162b1", ((-10, -3, 0, 1), -648, _c(6)), ((-1, -3, 0, 1), 81, _c(21))),
    _row(_c(4), "90c1", ((-3, -3, -1, 1), -300, _c(12))),
    _row(_c(5), "11a1", ((1, 1, -1, 1), -44, _c(10))),
    _row(_c(6), "14a4", ((1, -2, -1, 1), 49, _c(18))),
    _row(_c(7), "26b1", ((-2, -1, 0, 1), -104, _c(14))),
    _row(_c(9), "54b3", ((-2, 3, 0, 1), -216, _c(18))),
    _row(_c2(2), "30a6", ((-3, 0, 0, 1), -243, _c2(6))),
)


def check_table_integrity() -> list:
    """Internal consistency of the tables; returns a list of problems."""
    problems = []
    if set(PHI3_OF) != set(PHI1):
        problems.append("rows of the cubic growth table are not exactly the rational torsion groups")
    for G, hs in PHI3_OF.items():
        if G not in hs:
            problems.append(f"{G} missing from its own row")
        for H in hs:
            if H not in PHI3:
                problems.append(f"{H} (row {G}) is not a cubic torsion group")
            if not H.contains(G):
                problems.append(f"{H} (row {G}) does not contain {G}")
    for G, lists in H3_OF.items():
        for lst in lists:
            for H in lst:
                if H == G or H not in PHI3_OF[G]:
                    problems.append(f"growth list {[str(h) for h in lst]} for {G} uses {H}")
    for row in TABLE1:
        if _ms(*row.groups_H) not in H3_OF[row.group_G]:
            problems.append(f"table row {row.curve_label} has an unlisted growth list")
    return problems

"""Construction of the rhombus-tile surface-code family.

Codes are built from a 6-data-qubit unit cell (two data columns, three
data rows, two X-ancillae between the rows, two Z-ancillae on the column
boundaries). Larger codes replicate the cell on a grid; stabilizers of
cells sharing an ancilla are merged into a single union-support operator.
The merging rule is inferred from the four explicitly catalogued codes
and validated against them in the test suite.

Coordinates use scaled integers ``(sx, sy)`` meaning the point
``x = sx/2, y = sy*sqrt(3)/2``, so all geometry predicates are exact.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from . import pauli
from .pauli import PauliOperator, commutes, parse_pauli, to_string

Coord = Tuple[int, int]


@dataclass(frozen=True)
class LatticeLayout:
    """Planar placement of data and ancilla qubits plus measured supports."""

    data_coords: Tuple[Coord, ...]
    x_ancilla_coords: Tuple[Coord, ...]
    z_ancilla_coords: Tuple[Coord, ...]
    x_adjacency: Tuple[Tuple[int, ...], ...]  # 0-based data indices per X ancilla
    z_adjacency: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        coords = (
            list(self.data_coords)
            + list(self.x_ancilla_coords)
            + list(self.z_ancilla_coords)
        )
        if len(set(coords)) != len(coords):
            raise ValueError("coordinates of distinct qubits must be distinct")
        for adj in self.x_adjacency + self.z_adjacency:
            if not adj:
                raise ValueError("every ancilla must measure at least one data qubit")


@dataclass(frozen=True)
class FamilyParameters:
    """Closed-form parameter prediction for the p x p grid family."""

    n: int
    m: int
    k: int
    d: int

    def __post_init__(self):
        if min(self.n, self.m, self.k, self.d) <= 0:
            raise ValueError("all family parameters must be positive")
        if self.k != self.n - self.m:
            raise ValueError("k must equal n - m")


@dataclass(frozen=True)
class CodeSpec:
    """A CSS stabilizer code, optionally with logicals, layout and claims."""

    n: int
    stabilizers: Tuple[PauliOperator, ...]
    logical_pairs: Optional[Tuple[Tuple[PauliOperator, PauliOperator], ...]] = None
    layout: Optional[LatticeLayout] = None
    declared: Optional[Tuple[int, int, int]] = None

    def __post_init__(self):
        for s in self.stabilizers:
            if s.n != self.n:
                raise ValueError("stabilizer qubit count differs from code size")
            if not (s.is_x_type() or s.is_z_type()):
                raise ValueError(f"stabilizer {to_string(s)} is not CSS (pure X or Z)")
        for a, b in itertools.combinations(self.stabilizers, 2):
            if not commutes(a, b):
                raise ValueError(
                    f"stabilizers {to_string(a)} and {to_string(b)} anticommute"
                )

    @property
    def m(self) -> int:
        return len(self.stabilizers)


# --- catalog of explicitly listed codes (golden data) ---------------------

_CATALOG: Dict[str, Tuple[int, Tuple[int, int, int], str, Tuple[Tuple[str, str], ...]]] = {
    "unit": (
        6,
        (6, 2, 2),
        "X1X2X3X4 X3X4X5X6 Z1Z3Z5 Z2Z4Z6",
        (("X1X3", "Z1Z4Z6"), ("X4X6", "Z2Z4Z5")),
    ),
    "two_horizontal": (
        12,
        (12, 5, 2),
        "X1X2X3X4 X3X4X5X6 X7X8X9X10 X9X10X11X12 Z1Z3Z5 Z2Z4Z6 Z8Z10Z12",
        (
            ("X2X6", "Z1Z4Z6"),
            ("X4X6", "Z1Z4Z5"),
            ("X7X11", "Z8Z9Z11"),
            ("X9X11", "Z8Z9Z12"),
            ("X2X7", "Z2Z4Z6"),
        ),
    ),
    "two_vertical": (
        10,
        (10, 3, 3),
        "X1X2X3X4 X3X4X5X6X7X8 X7X8X9X10 Z1Z3Z5 Z2Z4Z6 Z5Z7Z9 Z6Z8Z10",
        (
            ("X2X6X8", "Z1Z4Z8Z9"),
            ("X2X6X10", "Z5Z7Z10"),
            ("X4X6X8", "Z2Z3Z6"),
        ),
    ),
    "grid_2x2": (
        20,
        (20, 8, 3),
        "X1X2X3X4 X3X4X5X6X7X8 X7X8X9X10 X11X12X13X14 X13X14X15X16X17X18 "
        "X17X18X19X20 Z1Z3Z5 Z2Z4Z6Z11Z13Z15 Z5Z7Z9 Z6Z8Z10Z15Z17Z19 "
        "Z12Z14Z16 Z16Z18Z20",
        (
            ("X1X5X9", "Z1Z3Z7Z10"),
            ("X3X5X7", "Z1Z3Z8Z9"),
            ("X4X6X17", "Z1Z4Z8Z9"),
            ("X2X6X17", "Z2Z3Z7Z10"),
            ("X6X11X19", "Z15Z18Z19"),
            ("X11X15X19", "Z12Z13Z15"),
            ("X6X11X17", "Z11Z13Z18Z19"),
            ("X14X16X20", "Z12Z13Z16"),
        ),
    ),
}

NAMED_CODES = tuple(_CATALOG)


def build_named(name: str) -> CodeSpec:
    """Return a catalog code with its transcribed stabilizers and logicals."""
    try:
        n, declared, stab_text, pair_text = _CATALOG[name]
    except KeyError:
        raise ValueError(f"unknown code name {name!r}; choose one of {NAMED_CODES}")
    stabs = tuple(parse_pauli(s, n) for s in stab_text.split())
    pairs = tuple(
        (parse_pauli(x, n), parse_pauli(z, n)) for x, z in pair_text
    )
    layout = layout_coordinates(1) if name == "unit" else None
    return CodeSpec(n, stabs, logical_pairs=pairs, layout=layout, declared=declared)


def build_unit() -> CodeSpec:
    """The single 6-qubit unit cell."""
    return build_named("unit")


def family_parameters(p: int) -> FamilyParameters:
    """Closed-form (n, m, k, d) for the p x p grid."""
    if p < 1:
        raise ValueError("p must be >= 1")
    return FamilyParameters(n=2 * p * (2 * p + 1), m=2 * p * (p + 1), k=2 * p * p, d=2 + p // 2)


# --- generated structures --------------------------------------------------
#
# Data qubits live on a grid of rows 1..R (top to bottom) and column
# pairs 1..C (two data columns per pair). Numbering is pair-major, then
# row-major, left column before right, 1-based.


def _x_blocks(rows: Sequence[int]) -> List[List[int]]:
    """Row blocks measured by the X ancillae of one column pair.

    rows must be contiguous with odd length: end blocks of two rows,
    interior blocks of three rows sharing the even rows.
    """
    first, last = rows[0], rows[-1]
    blocks = [[first, first + 1]]
    r = first + 1
    while r + 2 < last:
        blocks.append([r, r + 1, r + 2])
        r += 2
    blocks.append([last - 1, last])
    return blocks


def _z_blocks(rows: Sequence[int]) -> List[List[int]]:
    """Row blocks measured along a column boundary: {a, a+1, a+2} stepping 2."""
    first, last = rows[0], rows[-1]
    return [[r, r + 1, r + 2] for r in range(first, last - 1, 2)]


def _assemble(
    pair_rows: Sequence[Sequence[int]],
    declared: Tuple[int, int, int],
    z_order_block_major: bool,
    logical_pairs=None,
    layout: Optional[LatticeLayout] = None,
) -> CodeSpec:
    """Build a CodeSpec from per-column-pair row ranges.

    z_order_block_major=False emits Z stabilizers boundary-major (the
    grid ordering); True emits them row-block-major (the L-shape/strip
    ordering, which reproduces the two_vertical listing exactly).
    """
    npairs = len(pair_rows)
    qubit: Dict[Tuple[int, int], int] = {}
    nq = 0
    for c, rows in enumerate(pair_rows, start=1):
        for r in rows:
            for col in (2 * c - 1, 2 * c):
                nq += 1
                qubit[(r, col)] = nq

    stab_texts: List[Tuple[Tuple[int, int], str]] = []  # (sort key, text)
    for c, rows in enumerate(pair_rows, start=1):
        for j, block in enumerate(_x_blocks(rows)):
            qs = sorted(qubit[(r, col)] for r in block for col in (2 * c - 1, 2 * c))
            stab_texts.append(((c, j), "".join(f"X{q}" for q in qs)))
    x_stabs = [t for _, t in sorted(stab_texts, key=lambda kv: kv[0])]

    z_entries: List[Tuple[Tuple[int, int], str]] = []
    for b in range(npairs + 1):
        left_rows = pair_rows[b - 1] if b >= 1 else ()
        right_rows = pair_rows[b] if b < npairs else ()
        # blocks are laid out per adjacent column and merged only when the
        # two columns produce the same row block (interior weight-6 plaquettes)
        blocks: Dict[Tuple[int, ...], List[int]] = {}
        for rows, col in ((left_rows, 2 * b), (right_rows, 2 * b + 1)):
            if not rows:
                continue
            for block in _z_blocks(rows):
                qs = blocks.setdefault(tuple(block), [])
                qs.extend(qubit[(r, col)] for r in block)
        for i, key in enumerate(sorted(blocks)):
            z_entries.append(((i, b) if z_order_block_major else (b, i),
                              "".join(f"Z{q}" for q in sorted(blocks[key]))))
    z_stabs = [t for _, t in sorted(z_entries, key=lambda kv: kv[0])]

    stabs = tuple(parse_pauli(t, nq) for t in x_stabs + z_stabs)
    return CodeSpec(nq, stabs, logical_pairs=logical_pairs, layout=layout,
                    declared=declared)


def stack_grid(p: int) -> CodeSpec:
    """The p x p grid of unit cells: 2p+1 data rows by p column pairs."""
    if p < 1:
        raise ValueError("p must be >= 1")
    fam = family_parameters(p)
    rows = tuple(range(1, 2 * p + 2))
    pairs = _CATALOG["unit"][3] if p == 1 else None
    logical_pairs = (
        tuple((parse_pauli(x, 6), parse_pauli(z, 6)) for x, z in pairs)
        if pairs
        else None
    )
    return _assemble(
        [rows] * p,
        declared=(fam.n, fam.k, fam.d),
        z_order_block_major=False,
        logical_pairs=logical_pairs,
        layout=layout_coordinates(p),
    )


def stack_l_shape(v: int, h: int, fill_matrix: bool = False) -> CodeSpec:
    """Stackings of the 10-qubit two_vertical block R.

    One column strip of v+1 R's (4v+5 data rows) plus h more R's along
    the bottom row; fill_matrix extends every column pair to full height,
    giving the (v+1) x (h+1) matrix of R's.
    """
    if v < 0 or h < 0:
        raise ValueError("v and h must be nonnegative")
    full = tuple(range(1, 4 * v + 6))
    short = tuple(range(4 * v + 1, 4 * v + 6))  # bottom five rows
    pair_rows = [full] + [full if fill_matrix else short] * h
    k = 3 + 2 * v + 5 * h + (4 * v * h if fill_matrix else 0)
    n = 10 + 8 * v + 10 * h + (8 * v * h if fill_matrix else 0)
    return _assemble(
        pair_rows,
        declared=(n, k, v + 3),
        z_order_block_major=True,
    )


def layout_coordinates(p: int) -> LatticeLayout:
    """Planar coordinates and nearest-neighbour adjacency for the p x p grid.

    X-ancillae sit on the (3a, b*sqrt(3)) sublattice, Z-ancillae on
    (3(a+1/2), sqrt(3)(b+1/2)), data qubits on the two remaining
    sublattices; every measured data qubit is at unit distance from its
    ancilla, so adjacency is the exact predicate dist**2 == 1.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    data: List[Coord] = []
    for c in range(1, p + 1):
        center = 6 * (c - 1)
        for r in range(1, 2 * p + 2):
            sy = 2 * p + 1 - r
            off = 2 if sy % 2 == 0 else 1
            data.append((center - off, sy))
            data.append((center + off, sy))
    x_anc: List[Coord] = []
    for c in range(1, p + 1):
        for j in range(p + 1):
            x_anc.append((6 * (c - 1), 2 * p - 2 * j))
    z_anc: List[Coord] = []
    for b in range(p + 1):
        for i in range(1, p + 1):
            z_anc.append((6 * b - 3, 2 * p + 1 - 2 * i))

    return LatticeLayout(
        data_coords=tuple(data),
        x_ancilla_coords=tuple(x_anc),
        z_ancilla_coords=tuple(z_anc),
        x_adjacency=_adjacency(tuple(data), tuple(x_anc)),
        z_adjacency=_adjacency(tuple(data), tuple(z_anc)),
    )


def _adjacency(
    data: Tuple[Coord, ...], ancillae: Tuple[Coord, ...]
) -> Tuple[Tuple[int, ...], ...]:
    """1-based labels of the data qubits at unit distance from each ancilla."""
    out = []
    for ax, ay in ancillae:
        out.append(tuple(
            i + 1
            for i, (dx, dy) in enumerate(data)
            if (ax - dx) ** 2 + 3 * (ay - dy) ** 2 == 4  # squared distance * 4
        ))
    return tuple(out)


# --- JSON (de)serialization -------------------------------------------------


def code_to_json(code: CodeSpec) -> str:
    doc = {
        "n": code.n,
        "stabilizers": [to_string(s) for s in code.stabilizers],
        "logical_pairs": (
            [[to_string(x), to_string(z)] for x, z in code.logical_pairs]
            if code.logical_pairs is not None
            else None
        ),
        "declared": list(code.declared) if code.declared is not None else None,
        "layout": (
            {
                "data": [list(c) for c in code.layout.data_coords],
                "x_ancilla": [list(c) for c in code.layout.x_ancilla_coords],
                "z_ancilla": [list(c) for c in code.layout.z_ancilla_coords],
            }
            if code.layout is not None
            else None
        ),
    }
    return json.dumps(doc, indent=2) + "\n"


def code_from_json(text: str) -> CodeSpec:
    doc = json.loads(text)
    n = int(doc["n"])
    stabs = tuple(parse_pauli(s, n) for s in doc["stabilizers"])
    pairs = doc.get("logical_pairs")
    logical_pairs = (
        tuple((parse_pauli(x, n), parse_pauli(z, n)) for x, z in pairs)
        if pairs
        else None
    )
    declared = tuple(doc["declared"]) if doc.get("declared") else None
    layout = None
    layout_doc = doc.get("layout")
    if layout_doc:
        data = tuple(tuple(c) for c in layout_doc["data"])
        x_anc = tuple(tuple(c) for c in layout_doc["x_ancilla"])
        z_anc = tuple(tuple(c) for c in layout_doc["z_ancilla"])
        # adjacency is re-derived from the coordinates, not serialized
        layout = LatticeLayout(
            data, x_anc, z_anc, _adjacency(data, x_anc), _adjacency(data, z_anc)
        )
    return CodeSpec(
        n, stabs, logical_pairs=logical_pairs, layout=layout, declared=declared
    )

"""Real character tables for the finite point groups, built on demand.

Complex one-dimensional irreducible representations come in conjugate
pairs whose characters sum to a real function; the tables here merge
each such pair into a single row (flagged paired, dimension 2) so every
entry is real.  Columns are merged conjugacy classes keyed by ClassKey,
matching PointGroupInfo.classes exactly.

Tables are constructed from reference generator matrices per group
family (cyclic, dihedral, or direct product with a central improper
element) and for T, Td, O, I as literals, then self-checked against
the row orthogonality relations.  A merged pair row has self-norm
2 * |G| instead of |G|; decompose() accounts for that by returning the
pair multiplicity doubled, which conveniently equals the stored row
dimension on the regular representation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InternalInconsistency, NonIntegralMultiplicity, UnrecognizedGroup
from .symdetect import (
    ClassKey,
    IsometryOp,
    PointGroupInfo,
    classify_group,
    classify_matrix,
)

GROUP_ALIASES = {
    "C1v": "Cs",
    "C1h": "Cs",
    "S2": "Ci",
    "S3": "C3h",
    "D1": "C2",
    "D1h": "C2v",
    "D1d": "C2h",
}

CATALOG_2D = (
    "C1", "C2", "C3", "C4", "C5", "C6",
    "Cs", "C2v", "C3v", "C4v", "C5v", "C6v",
)

CATALOG_3D = (
    "C1", "C2", "C3", "C4", "C5", "C6",
    "Cs", "Ci", "S4", "S6",
    "C2v", "C3v", "C4v", "C5v", "C6v",
    "C2h", "C3h", "C4h", "C5h", "C6h",
    "D2", "D3", "D4", "D5", "D6",
    "D2d", "D3d", "D4d", "D5d", "D6d",
    "D2h", "D3h", "D4h", "D5h", "D6h",
    "T", "Td", "Th", "O", "Oh", "I", "Ih",
)

_GOLDEN = (1 + math.sqrt(5)) / 2


@dataclass(frozen=True)
class IrrepRow:
    """One row of a real character table.

    paired rows are merged conjugate pairs of complex 1D irreps; their
    dim is 2 and their self-norm is twice the group order.
    """

    name: str
    dim: int
    paired: bool
    values: tuple[float, ...]


@dataclass(frozen=True)
class CharacterTable:
    schoenflies: str
    dimension: int
    order: int
    class_keys: tuple[ClassKey, ...]
    class_sizes: tuple[int, ...]
    class_labels: tuple[str, ...]
    rows: tuple[IrrepRow, ...]

    def column_index(self, key: ClassKey) -> int:
        try:
            return self.class_keys.index(key)
        except ValueError:
            raise KeyError(f"no class {key} in the {self.schoenflies} table") from None

    def regular_values(self) -> tuple[float, ...]:
        """Per-class values of the regular representation."""
        return tuple(
            float(self.order) if key.kind == "E" else 0.0 for key in self.class_keys
        )

    def project(self, values) -> dict[str, float]:
        """Raw multiplicities of each row in a per-class function.

        For a paired row this is twice the multiplicity of either
        complex constituent.
        """
        vals = tuple(float(v) for v in values)
        if len(vals) != len(self.class_keys):
            raise ValueError(
                f"expected {len(self.class_keys)} per-class values, got {len(vals)}"
            )
        out: dict[str, float] = {}
        for row in self.rows:
            acc = sum(
                size * chi * v
                for size, chi, v in zip(self.class_sizes, row.values, vals)
            )
            out[row.name] = acc / self.order
        return out

    def decompose(self, values, tol: float = 1e-6) -> dict[str, int]:
        """Integer multiplicities, verified by reconstruction.

        Raises NonIntegralMultiplicity when the input is not a
        difference of characters of this group.
        """
        raw = self.project(values)
        vals = tuple(float(v) for v in values)
        out: dict[str, int] = {}
        for name, m in raw.items():
            r = round(m)
            if abs(m - r) > tol:
                raise NonIntegralMultiplicity(
                    f"multiplicity of {name} in the {self.schoenflies} "
                    f"decomposition is {m}, not an integer"
                )
            out[name] = int(r)
        recon = [0.0] * len(vals)
        for row in self.rows:
            coeff = out[row.name] / 2 if row.paired else out[row.name]
            for c, chi in enumerate(row.values):
                recon[c] += coeff * chi
        scale = max(1.0, max(abs(v) for v in vals))
        worst = max(abs(a - b) for a, b in zip(recon, vals))
        if worst > tol * scale:
            raise NonIntegralMultiplicity(
                f"reconstruction residual {worst:g} after decomposing in "
                f"{self.schoenflies}"
            )
        return out


def canonical_label(label: str) -> str:
    return GROUP_ALIASES.get(label, label)


def _parse_label(label: str) -> tuple[str, int, str]:
    """Split an axial label into (head letter, n, suffix)."""
    head, rest = label[0], label[1:]
    digits = ""
    while rest and rest[0].isdigit():
        digits += rest[0]
        rest = rest[1:]
    if not digits:
        raise UnrecognizedGroup(f"cannot parse group label {label!r}")
    return head, int(digits), rest


def _rotation_about(axis, angle: float) -> np.ndarray:
    a = np.asarray(axis, dtype=float)
    a = a / np.linalg.norm(a)
    K = np.array([[0, -a[2], a[1]], [a[2], 0, -a[0]], [-a[1], a[0], 0]])
    return np.eye(3) + math.sin(angle) * K + (1 - math.cos(angle)) * (K @ K)


def _rot2(angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s], [s, c]])


_SIGMA_H = np.diag([1.0, 1.0, -1.0])
_SIGMA_XZ = np.diag([1.0, -1.0, 1.0])
_C2X = np.diag([1.0, -1.0, -1.0])
_CYCLE_XYZ = np.array([[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])


def _generators(label: str, dimension: int) -> list[np.ndarray]:
    if label == "C1":
        return [np.eye(dimension)]
    if dimension == 2:
        if label == "Cs":
            return [np.diag([1.0, -1.0])]
        head, n, suffix = _parse_label(label)
        if head == "C" and suffix == "":
            return [_rot2(2 * math.pi / n)]
        if head == "C" and suffix == "v":
            return [_rot2(2 * math.pi / n), np.diag([1.0, -1.0])]
        raise UnrecognizedGroup(f"{label} is not a 2D point group")
    if label == "Cs":
        return [_SIGMA_H]
    if label == "Ci":
        return [-np.eye(3)]
    if label == "T":
        return [np.diag([-1.0, -1.0, 1.0]), _CYCLE_XYZ]
    if label == "Th":
        return [np.diag([-1.0, -1.0, 1.0]), _CYCLE_XYZ, -np.eye(3)]
    if label == "Td":
        return [_rotation_about((0, 0, 1), math.pi / 2) @ _SIGMA_H, _CYCLE_XYZ]
    if label == "O":
        return [_rotation_about((0, 0, 1), math.pi / 2), _CYCLE_XYZ]
    if label == "Oh":
        return [_rotation_about((0, 0, 1), math.pi / 2), _CYCLE_XYZ, -np.eye(3)]
    if label in ("I", "Ih"):
        five = _rotation_about((0.0, 1.0, _GOLDEN), 2 * math.pi / 5)
        gens = [five, np.diag([-1.0, -1.0, 1.0])]
        if label == "Ih":
            gens.append(-np.eye(3))
        return gens
    head, n, suffix = _parse_label(label)
    rotz = _rotation_about((0, 0, 1), 2 * math.pi / n)
    if head == "C" and suffix == "":
        return [rotz]
    if head == "C" and suffix == "v":
        return [rotz, _SIGMA_XZ]
    if head == "C" and suffix == "h":
        return [rotz, _SIGMA_H]
    if head == "S" and suffix == "" and n % 2 == 0:
        return [_rotation_about((0, 0, 1), 2 * math.pi / n) @ _SIGMA_H]
    if head == "D" and suffix == "":
        return [rotz, _C2X]
    if head == "D" and suffix == "h":
        return [rotz, _C2X, _SIGMA_H]
    if head == "D" and suffix == "d":
        return [_rotation_about((0, 0, 1), math.pi / n) @ _SIGMA_H, _C2X]
    raise UnrecognizedGroup(f"{label} is not a supported point group")


def _close_under_multiplication(gens: list[np.ndarray], d: int) -> list[np.ndarray]:
    elems: list[np.ndarray] = [np.eye(d)]
    frontier = [np.eye(d)]
    while frontier:
        new: list[np.ndarray] = []
        for A in frontier:
            for B in gens:
                prod = A @ B
                if any(float(np.abs(prod - E).max()) <= 1e-9 for E in elems):
                    continue
                elems.append(prod)
                new.append(prod)
                if len(elems) > 1000:
                    raise InternalInconsistency(
                        "group closure did not terminate; bad reference generators"
                    )
        frontier = new
    return elems


@lru_cache(maxsize=None)
def reference_group(label: str, dimension: int = 3) -> PointGroupInfo:
    """A concrete realization of the group from reference generators."""
    label = canonical_label(label)
    mats = _close_under_multiplication(_generators(label, dimension), dimension)
    ops = [classify_matrix(M, dimension) for M in mats]
    info = classify_group(ops, match_tol=1e-6)
    if info.schoenflies != label:
        raise InternalInconsistency(
            f"reference generators for {label} closed into {info.schoenflies}"
        )
    return info


def _half_and_flips(info: PointGroupInfo) -> tuple[list[int], list[int]]:
    """Split a dihedral-type group into its principal cyclic half and flips."""
    ops = [a.op for a in info.elements]
    principal = info.principal_axis
    half: list[int] = []
    flips: list[int] = []
    for i, op in enumerate(ops):
        if op.kind == "E":
            half.append(i)
        elif info.dimension == 2:
            (half if op.kind == "C" else flips).append(i)
        elif op.kind in ("C", "S") and principal is not None and op.axis is not None:
            av = np.asarray(op.axis, float)
            pv = np.asarray(principal, float)
            same = min(np.linalg.norm(av - pv), np.linalg.norm(av + pv)) <= 1e-4
            (half if same else flips).append(i)
        else:
            flips.append(i)
    if len(half) != len(flips) or len(half) * 2 != info.order:
        raise InternalInconsistency(
            f"{info.schoenflies} did not split evenly into an axis half and flips"
        )
    return half, flips


def _element_orders(info: PointGroupInfo) -> list[int]:
    out = []
    for i in range(info.order):
        order, cur = 1, i
        while cur != 0:
            cur = int(info.mult_table[cur, i])
            order += 1
        out.append(order)
    return out


def _discrete_logs(info: PointGroupInfo, members: list[int], gen: int) -> dict[int, int]:
    m = len(members)
    logs: dict[int, int] = {}
    cur = 0
    for p in range(m):
        logs[cur] = p
        cur = int(info.mult_table[cur, gen])
    if cur != 0 or set(logs) != set(members):
        raise InternalInconsistency("discrete logarithm walk did not cover the cyclic half")
    return logs


def _rows_cyclic(info: PointGroupInfo) -> list[IrrepRow]:
    m = info.order
    orders = _element_orders(info)
    gens = [i for i in range(m) if orders[i] == m]
    if not gens:
        raise InternalInconsistency(f"{info.schoenflies} is not cyclic")
    logs = _discrete_logs(info, list(range(m)), min(gens))
    reps = [cls.rep_id for cls in info.classes]
    rows = [IrrepRow("A", 1, False, tuple(1.0 for _ in reps))]
    if m % 2 == 0:
        rows.append(
            IrrepRow("B", 1, False, tuple(float((-1) ** logs[r]) for r in reps))
        )
    pair_count = (m - 1) // 2
    for j in range(1, pair_count + 1):
        name = "E" if pair_count == 1 else f"E{j}"
        vals = tuple(2 * math.cos(2 * math.pi * j * logs[r] / m) for r in reps)
        rows.append(IrrepRow(name, 2, True, vals))
    return rows


def _rows_dihedral(info: PointGroupInfo) -> list[IrrepRow]:
    half, flips = _half_and_flips(info)
    m = len(half)
    orders = _element_orders(info)
    gens = [i for i in half if orders[i] == m]
    if not gens:
        raise InternalInconsistency(
            f"the axis half of {info.schoenflies} is not cyclic"
        )
    logs = _discrete_logs(info, half, min(gens))
    flip_set = set(flips)
    half_classes = [ci for ci, c in enumerate(info.classes) if c.rep_id not in flip_set]
    flip_classes = [ci for ci, c in enumerate(info.classes) if c.rep_id in flip_set]
    if len(flip_classes) not in (1, 2):
        raise InternalInconsistency(
            f"{info.schoenflies} has {len(flip_classes)} flip classes"
        )
    ncls = len(info.classes)

    def build(half_fn, flip_vals: dict[int, float]) -> tuple[float, ...]:
        vals = [0.0] * ncls
        for ci in half_classes:
            vals[ci] = half_fn(logs[info.classes[ci].rep_id])
        for ci in flip_classes:
            vals[ci] = flip_vals[ci]
        return tuple(vals)

    rows = [
        IrrepRow("A1", 1, False, build(lambda p: 1.0, {ci: 1.0 for ci in flip_classes})),
        IrrepRow("A2", 1, False, build(lambda p: 1.0, {ci: -1.0 for ci in flip_classes})),
    ]
    if m % 2 == 0:
        if len(flip_classes) != 2:
            raise InternalInconsistency(
                f"{info.schoenflies} should have two flip classes for even order"
            )
        first, second = flip_classes
        rows.append(
            IrrepRow(
                "B1", 1, False,
                build(lambda p: float((-1) ** p), {first: 1.0, second: -1.0}),
            )
        )
        rows.append(
            IrrepRow(
                "B2", 1, False,
                build(lambda p: float((-1) ** p), {first: -1.0, second: 1.0}),
            )
        )
    pair_count = (m + 1) // 2 - 1
    for l in range(1, pair_count + 1):
        name = "E" if pair_count == 1 else f"E{l}"
        rows.append(
            IrrepRow(
                name, 2, False,
                build(
                    lambda p, l=l: 2 * math.cos(2 * math.pi * l * p / m),
                    {ci: 0.0 for ci in flip_classes},
                ),
            )
        )
    if info.schoenflies == "D2":
        renames = {"A1": "A", "A2": "B1", "B1": "B2", "B2": "B3"}
        rows = [
            IrrepRow(renames.get(r.name, r.name), r.dim, r.paired, r.values)
            for r in rows
        ]
    return rows


_LITERAL_ROWS: dict[str, list[tuple[str, int, bool, tuple[float, ...]]]] = {
    # columns in canonical class order
    # T: E, 8C3 (merged with its inverse class), 3C2
    "T": [
        ("A", 1, False, (1, 1, 1)),
        ("E", 2, True, (2, -1, 2)),
        ("T", 3, False, (3, 0, -1)),
    ],
    # Td: E, 8C3, 3C2, 6S4, 6sigma_d
    "Td": [
        ("A1", 1, False, (1, 1, 1, 1, 1)),
        ("A2", 1, False, (1, 1, 1, -1, -1)),
        ("E", 2, False, (2, -1, 2, 0, 0)),
        ("T1", 3, False, (3, 0, -1, 1, -1)),
        ("T2", 3, False, (3, 0, -1, -1, 1)),
    ],
    # O: E, 6C4, 8C3, 3C2, 6C2'
    "O": [
        ("A1", 1, False, (1, 1, 1, 1, 1)),
        ("A2", 1, False, (1, -1, 1, 1, -1)),
        ("E", 2, False, (2, 0, -1, 2, 0)),
        ("T1", 3, False, (3, 1, 0, -1, -1)),
        ("T2", 3, False, (3, -1, 0, -1, 1)),
    ],
    # I: E, 12C5, 12C5^2, 20C3, 15C2
    "I": [
        ("A", 1, False, (1, 1, 1, 1, 1)),
        ("T1", 3, False, (3, _GOLDEN, 1 - _GOLDEN, 0, -1)),
        ("T2", 3, False, (3, 1 - _GOLDEN, _GOLDEN, 0, -1)),
        ("G", 4, False, (4, -1, -1, 1, 0)),
        ("H", 5, False, (5, 0, 0, -1, 1)),
    ],
}

_LITERAL_KEYS: dict[str, tuple[ClassKey, ...]] = {
    "T": (
        ClassKey("E", 0, 0, ""),
        ClassKey("C", 3, 1, ""),
        ClassKey("C", 2, 1, ""),
    ),
    "Td": (
        ClassKey("E", 0, 0, ""),
        ClassKey("C", 3, 1, ""),
        ClassKey("C", 2, 1, ""),
        ClassKey("S", 4, 1, ""),
        ClassKey("sigma", 0, 0, "d"),
    ),
    "O": (
        ClassKey("E", 0, 0, ""),
        ClassKey("C", 4, 1, ""),
        ClassKey("C", 3, 1, ""),
        ClassKey("C", 2, 1, ""),
        ClassKey("C", 2, 1, "alt"),
    ),
    "I": (
        ClassKey("E", 0, 0, ""),
        ClassKey("C", 5, 1, ""),
        ClassKey("C", 5, 2, ""),
        ClassKey("C", 3, 1, ""),
        ClassKey("C", 2, 1, ""),
    ),
}


def _rows_literal(info: PointGroupInfo) -> list[IrrepRow]:
    label = info.schoenflies
    expected_keys = _LITERAL_KEYS[label]
    actual_keys = tuple(c.key for c in info.classes)
    if actual_keys != expected_keys:
        raise InternalInconsistency(
            f"classes of {label} came out as {actual_keys}, expected {expected_keys}"
        )
    return [
        IrrepRow(name, dim, paired, tuple(float(v) for v in vals))
        for name, dim, paired, vals in _LITERAL_ROWS[label]
    ]


def _proper_half_label(label: str, dimension: int) -> str:
    if label in ("Ci", "Cs"):
        return "C1"
    if label == "Th":
        return "T"
    if label == "Oh":
        return "O"
    if label == "Ih":
        return "I"
    head, n, suffix = _parse_label(label)
    if head == "C" and suffix == "h":
        return f"C{n}"
    if head == "S":
        return f"C{n // 2}"
    if head == "D" and suffix in ("h", "d"):
        return f"D{n}"
    raise UnrecognizedGroup(f"{label} is not a product-type group")


def _rows_product(info: PointGroupInfo) -> list[IrrepRow]:
    """Rows of H x {E, w} from the rows of H, w a central improper element."""
    ops = [a.op for a in info.elements]
    inv_ids = [i for i, op in enumerate(ops) if op.kind == "i"]
    if inv_ids:
        w = inv_ids[0]
        suffix_even, suffix_odd = "g", "u"
    else:
        sig_ids = [i for i, op in enumerate(ops) if op.kind == "sigma"]
        if not sig_ids:
            raise InternalInconsistency(
                f"{info.schoenflies} has no central improper element"
            )
        w = min(sig_ids)
        suffix_even, suffix_odd = "'", "''"
    w_mat = ops[w].matrix

    half_label = _proper_half_label(info.schoenflies, info.dimension)
    half_info = reference_group(half_label, info.dimension)
    half_table = _table_from_info(half_info)
    half_mats = [a.op.matrix for a in half_info.elements]

    def half_class_of(mat: np.ndarray) -> int:
        for hid, hm in enumerate(half_mats):
            if float(np.abs(hm - mat).max()) <= 1e-6:
                for ci, cls in enumerate(half_info.classes):
                    if hid in cls.member_ids:
                        return ci
        raise InternalInconsistency(
            f"element of {info.schoenflies} does not project into {half_label}"
        )

    column_map: list[tuple[int, float]] = []
    for cls in info.classes:
        rep = ops[cls.rep_id]
        if float(np.linalg.det(rep.matrix)) > 0:
            column_map.append((half_class_of(rep.matrix), 1.0))
        else:
            column_map.append((half_class_of(w_mat @ rep.matrix), -1.0))

    rows: list[IrrepRow] = []
    for parity, suffix in ((1.0, suffix_even), (-1.0, suffix_odd)):
        for hrow in half_table.rows:
            vals = tuple(
                hrow.values[hc] * (1.0 if sign > 0 else parity)
                for hc, sign in column_map
            )
            rows.append(IrrepRow(hrow.name + suffix, hrow.dim, hrow.paired, vals))
    return rows


def _rows_trivial(info: PointGroupInfo) -> list[IrrepRow]:
    return [IrrepRow("A", 1, False, tuple(1.0 for _ in info.classes))]


def _family(label: str, dimension: int) -> str:
    if label == "C1":
        return "trivial"
    if label in ("Ci",):
        return "product"
    if label == "Cs":
        return "product"
    if label in ("T", "Td", "O", "I"):
        return "literal"
    if label in ("Th", "Oh", "Ih"):
        return "product"
    head, n, suffix = _parse_label(label)
    if head == "C" and suffix == "":
        return "cyclic"
    if head == "C" and suffix == "v":
        return "dihedral"
    if head == "C" and suffix == "h":
        return "product"
    if head == "S":
        return "cyclic" if n % 4 == 0 else "product"
    if head == "D" and suffix == "":
        return "dihedral"
    if head == "D" and suffix == "d":
        return "dihedral" if n % 2 == 0 else "product"
    if head == "D" and suffix == "h":
        return "product"
    raise UnrecognizedGroup(f"{label} is not a supported point group")


def _verify_table(table: CharacterTable) -> None:
    g = table.order
    for a, ra in enumerate(table.rows):
        for b, rb in enumerate(table.rows):
            acc = sum(
                s * x * y
                for s, x, y in zip(table.class_sizes, ra.values, rb.values)
            )
            if a == b:
                expected = 2 * g if ra.paired else g
            else:
                expected = 0
            if abs(acc - expected) > 1e-6 * max(1, g):
                raise InternalInconsistency(
                    f"rows {ra.name} and {rb.name} of {table.schoenflies} have "
                    f"inner product {acc}, expected {expected}"
                )
    dims = sum(2 if r.paired else r.dim * r.dim for r in table.rows)
    if dims != g:
        raise InternalInconsistency(
            f"squared dimensions in {table.schoenflies} sum to {dims}, not {g}"
        )


def _table_from_info(info: PointGroupInfo) -> CharacterTable:
    family = _family(info.schoenflies, info.dimension)
    if family == "trivial":
        rows = _rows_trivial(info)
    elif family == "cyclic":
        rows = _rows_cyclic(info)
    elif family == "dihedral":
        rows = _rows_dihedral(info)
    elif family == "literal":
        rows = _rows_literal(info)
    else:
        rows = _rows_product(info)
    table = CharacterTable(
        schoenflies=info.schoenflies,
        dimension=info.dimension,
        order=info.order,
        class_keys=tuple(c.key for c in info.classes),
        class_sizes=tuple(c.size for c in info.classes),
        class_labels=tuple(c.label for c in info.classes),
        rows=tuple(rows),
    )
    _verify_table(table)
    return table


@lru_cache(maxsize=None)
def character_table(label: str, dimension: int = 3) -> CharacterTable:
    """The real character table of a point group by Schoenflies label."""
    info = reference_group(canonical_label(label), dimension)
    return _table_from_info(info)


def table_for_group(info: PointGroupInfo) -> CharacterTable:
    """The character table whose columns align with info.classes."""
    table = character_table(info.schoenflies, info.dimension)
    keys = tuple(c.key for c in info.classes)
    sizes = tuple(c.size for c in info.classes)
    if keys != table.class_keys or sizes != table.class_sizes:
        raise InternalInconsistency(
            f"detected {info.schoenflies} classes {keys} with sizes {sizes} do "
            f"not match the reference table ({table.class_keys}, "
            f"{table.class_sizes})"
        )
    return table

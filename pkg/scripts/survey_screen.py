#!/usr/bin/env python3
"""Sweep every catalogued point group through the free-placement screen.

Prints one row per group: order gate, symmetry-count discrepancy, and
the net irrep content whenever the discrepancy is nonzero.  The handful
of groups that survive both filters are exactly the ones where joints
and bars can be placed freely without forcing extra mechanisms or
self-stresses.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from isoframe.chartables import CATALOG_2D, CATALOG_3D
from isoframe.maxwell import free_placement_screen


@dataclass(frozen=True)
class SurveyConfig:
    dimension: int | None = None  # None = both
    as_json: bool = False
    only_admissible: bool = False


def _rows(dimension: int) -> list[dict]:
    catalog = CATALOG_2D if dimension == 2 else CATALOG_3D
    rows = []
    for label in sorted(catalog):
        rep = free_placement_screen(label, dimension)
        rows.append(
            {
                "group": label,
                "dimension": dimension,
                "order": rep.order,
                "order_allowed": rep.order_allowed,
                "discrepancy": list(rep.discrepancy.values),
                "vanishes": rep.vanishes,
                "admissible": rep.admissible,
                "net_irreps": [list(t) for t in rep.decomposition],
                "note": rep.note,
            }
        )
    return rows


def _print_table(rows: list[dict]) -> None:
    head = f"{'group':8s} {'dim':3s} {'|G|':>3s} {'gate':4s} {'zero':4s} {'free':4s}  net content"
    print(head)
    print("-" * len(head))
    for r in rows:
        net = ", ".join(f"{m:+d} {name}" for name, m in r["net_irreps"]) or "-"
        print(
            f"{r['group']:8s} {r['dimension']:3d} {r['order']:3d} "
            f"{'yes' if r['order_allowed'] else 'no':4s} "
            f"{'yes' if r['vanishes'] else 'no':4s} "
            f"{'YES' if r['admissible'] else 'no':4s}  {net}"
        )


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("-d", "--dimension", type=int, choices=(2, 3))
    parser.add_argument("--json", action="store_true", dest="as_json")
    parser.add_argument(
        "--only-admissible",
        action="store_true",
        help="list just the groups that pass both filters",
    )
    args = parser.parse_args(argv)
    cfg = SurveyConfig(args.dimension, args.as_json, args.only_admissible)

    dims = (cfg.dimension,) if cfg.dimension else (2, 3)
    rows = [r for d in dims for r in _rows(d)]
    if cfg.only_admissible:
        rows = [r for r in rows if r["admissible"]]

    if cfg.as_json:
        json.dump(rows, sys.stdout, indent=2)
        print()
    else:
        _print_table(rows)
        admissible = [f"{r['group']}({r['dimension']}D)" for r in rows if r["admissible"]]
        print()
        print("free placement possible:", ", ".join(admissible) or "none")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

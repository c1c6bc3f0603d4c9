#!/usr/bin/env python3
"""Build the whole fixture gallery and tabulate what the analyses say.

Every generated framework is written to the output directory as JSON
(loadable by the CLI and by core.from_json) next to a one-line summary:
detected group, scalar count, numeric mechanisms/self-stresses, and the
2D sparsity verdict where it applies.
"""

from __future__ import annotations

import argparse
import math
import pathlib
from dataclasses import dataclass

from isoframe.constructgen import (
    all_faces,
    cap_all_faces_symmetric,
    cap_face,
    counterexample_2d,
    double_banana,
    fig2_examples,
    hat_stack,
    platonic,
    twisted_cap_all_faces,
)
from isoframe.core import Framework, to_json
from isoframe.laman import pebble_game_2_3
from isoframe.maxwell import maxwell_count
from isoframe.numrank import mobility
from isoframe.symdetect import detect_point_group


@dataclass(frozen=True)
class GalleryConfig:
    out_dir: pathlib.Path
    rank_tol: float = 1e-10
    dry_run: bool = False


def _gallery() -> dict[str, Framework]:
    items: dict[str, Framework] = {}
    for name in ("tetrahedron", "octahedron", "icosahedron"):
        seed = platonic(name)
        items[name] = seed
        items[f"{name}_capped"] = cap_all_faces_symmetric(seed)
        items[f"{name}_twisted"] = twisted_cap_all_faces(seed)
        face = all_faces(seed)[0]
        items[f"{name}_single_cap"] = cap_face(seed, face, apex_height=1.0)
        items[f"{name}_hat3"] = hat_stack(seed, face, 3)
    # pi/5 twist lands between the degenerate angles for every seed
    items["icosahedron_twisted_36deg"] = twisted_cap_all_faces(
        platonic("icosahedron"), twist_angle=math.pi / 5
    )
    for name in ("C1", "C2", "C3", "Cs_perp", "Cs_in", "C2v", "C3v_perp", "C3v_in"):
        items[f"planar_{name}"] = fig2_examples(name)
    for name in ("C4", "C5", "C6", "C4v"):
        items[f"blocked_{name}"] = counterexample_2d(name)
    items["double_banana"] = double_banana()
    return items


def _summarize(name: str, f: Framework, rank_tol: float) -> str:
    group = detect_point_group(f)
    k = mobility(f, tol=rank_tol)
    verdict = ""
    if f.dimension == 2:
        verdict = " " + pebble_game_2_3(f).verdict
    return (
        f"{name:28s} {f.dimension}D j={f.joint_count:3d} b={f.bar_count:3d} "
        f"{group.schoenflies:4s} count={maxwell_count(f):+d} "
        f"m={k.mechanisms} s={k.self_stresses}{verdict}"
    )


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("-o", "--out", default="gallery", type=pathlib.Path)
    parser.add_argument("--tol-rank", default=1e-10, type=float)
    parser.add_argument(
        "--dry-run", action="store_true", help="print the table, write nothing"
    )
    args = parser.parse_args(argv)
    cfg = GalleryConfig(args.out, args.tol_rank, args.dry_run)

    items = _gallery()
    if not cfg.dry_run:
        cfg.out_dir.mkdir(parents=True, exist_ok=True)
    for name, f in sorted(items.items()):
        print(_summarize(name, f, cfg.rank_tol))
        if not cfg.dry_run:
            (cfg.out_dir / f"{name}.json").write_text(to_json(f))
    if not cfg.dry_run:
        print(f"\n{len(items)} frameworks written to {cfg.out_dir}/")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

#!/usr/bin/env python3
"""Render the standard cyclic-family order diagrams to DOT files.

Writes orientable_<M>.dot and combined_<M>.dot into the output directory;
render with e.g. `dot -Tpdf combined_2.dot -o combined_2.pdf`.
"""

from __future__ import annotations

import argparse
from pathlib import Path

from immorder.order import cyclic_family, emit_dot, order_graph


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-exp", type=int, default=2, help="largest cyclic 2-exponent")
    ap.add_argument("--out", type=Path, default=Path("graphs"), help="output directory")
    args = ap.parse_args()

    args.out.mkdir(parents=True, exist_ok=True)
    for combined in (False, True):
        graph = order_graph(cyclic_family(args.max_exp, combined=combined))
        stem = "combined" if combined else "orientable"
        path = args.out / f"{stem}_{args.max_exp}.dot"
        path.write_text(emit_dot(graph))
        print(f"wrote {path} ({len(graph.nodes)} nodes, {len(graph.edges)} edges)")


if __name__ == "__main__":
    main()

"""Command-line entry point: render one figure or all of them."""

from __future__ import annotations

import argparse
import sys

from .csvio import FigureDataError
from .render import RENDERERS


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="render_figures",
        description="Render figures from sfdm CLI CSV outputs")
    parser.add_argument("figure", help="figure id 1-6, or 'all'")
    parser.add_argument("--data-dir", required=True,
                        help="directory containing the sfdm CSV files")
    parser.add_argument("--out-dir", required=True,
                        help="directory for the rendered images")
    args = parser.parse_args(argv)

    if args.figure == "all":
        ids = sorted(RENDERERS)
    else:
        try:
            ids = [int(args.figure)]
        except ValueError:
            parser.error(f"figure must be 1-6 or 'all', got {args.figure!r}")
        if ids[0] not in RENDERERS:
            parser.error(f"figure must be 1-6 or 'all', got {args.figure!r}")
    try:
        for fig_id in ids:
            out = RENDERERS[fig_id](args.data_dir, args.out_dir)
            print(f"figure {fig_id}: {out}")
    except FigureDataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

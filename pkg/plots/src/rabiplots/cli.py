"""Command line figure rendering.

    rabiplot <figure-id> --in <csv> --out <file> [--format svg|png]

Exit codes: 0 rendered (or empty input, which only warns), 2 bad usage,
missing input, or a CSV whose header does not match the dataset schema.
"""

import argparse
import sys
import warnings

from .figures import FIGURES
from .render import PlotSpec, SchemaError, render


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="rabiplot",
        description="Render a rabicycle CSV dataset to a static figure.")
    p.add_argument("figure_id", metavar="figure-id", choices=list(FIGURES))
    p.add_argument("--in", dest="csv_path", required=True,
                   help="input CSV dataset")
    p.add_argument("--out", dest="out_path", required=True,
                   help="output image file")
    p.add_argument("--format", dest="image_format", choices=("svg", "png"),
                   help="image format; default svg, or png for a .png path")
    return p


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    fmt = args.image_format
    if fmt is None:
        fmt = "png" if args.out_path.endswith(".png") else "svg"
    spec = PlotSpec(args.figure_id, args.csv_path, args.out_path, fmt)
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            out = render(spec)
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
    except (SchemaError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if out is not None:
        print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())

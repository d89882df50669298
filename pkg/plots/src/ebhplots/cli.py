"""Command line entry point: render a figure from a JSON spec file."""

from __future__ import annotations

import argparse
import sys

from .render import FigureSpec, MissingColumnError, render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="render", description="Render a figure from sweep CSV files."
    )
    parser.add_argument("--spec", required=True, help="JSON figure spec file")
    parser.add_argument("--out", required=True, help="output image path")
    args = parser.parse_args(argv)
    try:
        spec = FigureSpec.from_file(args.spec)
        render(spec, out=args.out)
    except (OSError, ValueError, KeyError, MissingColumnError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

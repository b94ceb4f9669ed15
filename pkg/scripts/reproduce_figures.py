"""Write every figure's CSV curves and print a short numeric digest of each."""
import argparse
from pathlib import Path

import numpy as np

from cascade_g2.cli import emit, render_csv
from cascade_g2.figures import FIGURE_IDS, figure_curves


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=Path("figures"))
    parser.add_argument("--only", nargs="*", choices=FIGURE_IDS, default=list(FIGURE_IDS))
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for figure_id in args.only:
        for curve in figure_curves(figure_id):
            emit(render_csv(curve.header, [curve.x, curve.y]), args.out / f"{curve.name}.csv")
            print(f"{curve.name:24s} {curve.header[1]} in [{np.min(curve.y):.4f}, {np.max(curve.y):.4f}]")


if __name__ == "__main__":
    main()

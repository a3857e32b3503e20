"""Pure product states parameterized by a shared angle: every Bell quantity
sits exactly at its classical value, while the fixed-setting local-perception
CHSH value traces sin^2(2*theta)/2 — nonzero without any entanglement.

Writes results/classical.csv and results/classical.svg.
"""

import argparse
import math
from pathlib import Path

from lpow import OptimizerConfig
from lpow.svgplot import render_line_chart
from lpow.sweeps import SweepSpec, run_sweep, write_csv

QUANTITIES = ("s_chsh", "s_chsh_lpo", "i2222_tilde", "i2222_lpo_tilde")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", type=Path, default=Path("results"))
    parser.add_argument("--points", type=int, default=101)
    parser.add_argument("--beta", type=float, default=0.0)
    parser.add_argument("--restarts", type=int, default=64)
    parser.add_argument("--seed", type=int, default=3)
    args = parser.parse_args()

    spec = SweepSpec(
        family="classical",
        sweep_param="theta",
        grid=(0.0, math.pi / 2.0, args.points),
        quantities=QUANTITIES,
        fixed_params={"beta": args.beta},
        optimizer=OptimizerConfig(restarts=args.restarts, seed=args.seed),
    )
    result = run_sweep(spec)
    for warning in result.warnings:
        print(f"warning: {warning}")

    args.out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = args.out_dir / "classical.csv"
    svg_path = args.out_dir / "classical.svg"
    write_csv(result, csv_path)
    render_line_chart(
        result.param_values,
        {name: result.table[name] for name in QUANTITIES},
        svg_path,
        xlabel="theta",
        ylabel="value",
        bounds=(2.0, 1.0),
        title="Product states: classical Bell values, nonzero perception witness",
    )
    print(f"wrote {csv_path}")
    print(f"wrote {svg_path}")


if __name__ == "__main__":
    main()

"""Werner family sweep: optimized CHSH grows linearly, the normalized
three-setting value crosses its classical bound at p = 0.8, and the
local-perception witness stays at zero for every mixing weight.

Writes results/werner.csv and results/werner.svg.
"""

import argparse
from pathlib import Path

from lpow import OptimizerConfig
from lpow.svgplot import render_line_chart
from lpow.sweeps import SweepSpec, run_sweep, write_csv

QUANTITIES = ("s_chsh", "i3322_tilde", "s_chsh_lpo")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", type=Path, default=Path("results"))
    parser.add_argument("--points", type=int, default=101)
    parser.add_argument("--restarts", type=int, default=64)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args()

    spec = SweepSpec(
        family="werner",
        sweep_param="p",
        grid=(0.0, 1.0, args.points),
        quantities=QUANTITIES,
        optimizer=OptimizerConfig(restarts=args.restarts, seed=args.seed),
    )
    result = run_sweep(spec)
    for warning in result.warnings:
        print(f"warning: {warning}")

    args.out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = args.out_dir / "werner.csv"
    svg_path = args.out_dir / "werner.svg"
    write_csv(result, csv_path)
    render_line_chart(
        result.param_values,
        {name: result.table[name] for name in QUANTITIES},
        svg_path,
        xlabel="p",
        ylabel="value",
        bounds=(2.0, 1.0),
        title="Werner states: Bell values vs. local-perception witness",
    )
    print(f"wrote {csv_path}")
    print(f"wrote {svg_path}")


if __name__ == "__main__":
    main()

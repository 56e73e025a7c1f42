"""Write the data of every figure panel to CSV files.

    python3 scripts/reproduce_figures.py --out figures/ --workers 4
    python3 scripts/reproduce_figures.py fig3 fig6a
"""

import argparse
import time
from pathlib import Path

from creutz_dqpt import figures
from creutz_dqpt.cli import render
from creutz_dqpt.config import RunConfig


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("fig_ids", nargs="*", choices=[[], *figures.FIGURE_IDS], default=[])
    ap.add_argument("--out", type=Path, default=Path("figures"))
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    args.out.mkdir(parents=True, exist_ok=True)
    for fig_id in args.fig_ids or figures.FIGURE_IDS:
        cfg = RunConfig().updated(figures.DEFAULTS[fig_id]).updated({"workers": args.workers})
        start = time.perf_counter()
        cols, rows = figures.figure_data(fig_id, cfg)
        path = args.out / f"{fig_id}.csv"
        path.write_text(render(cols, rows))
        print(f"{fig_id:6s} {len(rows):6d} rows  {time.perf_counter() - start:6.2f}s  -> {path}")


if __name__ == "__main__":
    main()

"""Regenerate the five bundled reference sweeps as CSV files.

Each sweep is byte-identical across reruns, so the files can be diffed or
committed as regression anchors. Writes into ./sweep_output by default.
"""

import os
import sys

from shotdp.cli import run_figures


def main():
    out_dir = sys.argv[1] if len(sys.argv) > 1 else "sweep_output"
    os.makedirs(out_dir, exist_ok=True)
    specs = {
        "fig3": "pure budget vs shots, noiseless",
        "fig4a": "pure budget vs depolarizing probability",
        "fig4b": "pure budget vs shots under depolarizing noise",
        "fig5a": "tail budget and cutoff vs delta",
        "fig5b": "tail budget vs shots at fixed delta",
    }
    for name, blurb in specs.items():
        path = os.path.join(out_dir, f"{name}.csv")
        text = run_figures(name, path)
        rows = text.count("\n") - 1
        first = text.split("\n", 2)[1]
        print(f"  {name}: {rows} rows -> {path}  ({blurb})")
        print(f"      first row: {first}")


if __name__ == "__main__":
    main()

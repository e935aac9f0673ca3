"""Calibrate the radial Poisson fit gof thresholds used by verify_raikov.

Writes tests/fixtures/gof_calibration.json; copy the thresholds into
kingman.verify.GOF_THRESHOLDS.

    python scripts/calibrate_gof.py [--reps 200] [--n 200000]
"""

import argparse
from pathlib import Path

import numpy as np

from kingman.io import dumps
from kingman.verify import FIXTURE_PARAMS, calibrate_gof_threshold


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--reps", type=int, default=200)
    parser.add_argument("--n", type=int, default=200_000)
    parser.add_argument("--seed", type=int, default=20110324)
    parser.add_argument("--out", default=str(Path(__file__).parents[1] / "tests" / "fixtures" / "gof_calibration.json"))
    args = parser.parse_args()

    doc = {"n": args.n, "reps": args.reps, "seed": args.seed, "quantile": 0.99,
           "params": [list(p) for p in FIXTURE_PARAMS], "shapes": {}}
    for s in (-0.5, 0.0, 1.0):
        threshold, gofs = calibrate_gof_threshold(s, args.n, args.reps, args.seed)
        doc["shapes"][repr(s)] = {"threshold": threshold, "median": float(np.median(gofs)), "max": float(np.max(gofs))}
        print(f"s={s}: threshold={threshold:.6g} median={np.median(gofs):.4g} max={np.max(gofs):.4g}", flush=True)
    Path(args.out).write_text(dumps(doc) + "\n")


if __name__ == "__main__":
    main()

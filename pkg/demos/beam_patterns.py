#!/usr/bin/env python3
"""Beam patterns of the three receive-antenna selection schemes.

A base station with M antennas listens on N < M of them.  Which N it
picks shapes the array factor over spatial frequency w = sin(theta):

  successive  one solid block, wide main lobe (resolution 2/N)
  comb        every (M/N)-th antenna, narrow lobe but grating lobes
  random      narrow lobe, no grating lobes, raised side-peak floor

The script prints the main lobe width and the largest peak away from
broadside for each scheme, then a coarse dB profile over w.
"""

import numpy as np

from asymx import angular_resolution, array_factor, make_selection

NUM_TRANSMIT = 128
NUM_RECEIVE = 32
GRID_POINTS = 8192
SEED = 3


def main():
    rng = np.random.default_rng(SEED)
    w = np.linspace(-1.0, 1.0, GRID_POINTS, endpoint=False)
    print("M = %d antennas, N = %d receive chains" % (NUM_TRANSMIT, NUM_RECEIVE))
    print()
    print("%-11s %-12s %-22s" % ("selection", "resolution", "largest peak |w|>=0.1"))
    patterns = {}
    for kind in ("successive", "comb", "random"):
        selection = make_selection(kind, NUM_TRANSMIT, NUM_RECEIVE, rng)
        mags = np.abs(array_factor(selection, w))
        patterns[kind] = mags
        side = mags[np.abs(w) >= 0.1]
        res = angular_resolution(kind, NUM_TRANSMIT, NUM_RECEIVE)
        print("%-11s %-12.4f %6.2f (of %d)" % (kind, res, side.max(), NUM_RECEIVE))
    print()
    print("normalized pattern in dB (20*log10(|AF|/N)), w from -1 to 1:")
    coarse = np.linspace(-1.0, 1.0, 21)
    header = "      " + "".join("%7.1f" % v for v in coarse)
    print(header)
    for kind, mags in patterns.items():
        idx = np.clip(((coarse + 1.0) / 2.0 * GRID_POINTS).astype(int), 0,
                      GRID_POINTS - 1)
        db = 20.0 * np.log10(np.maximum(mags[idx] / NUM_RECEIVE, 1e-6))
        print("%-6s" % kind[:5] + "".join("%7.1f" % v for v in db))
    print()
    print("comb shows full-height lobes at w in {-1, -0.5, 0, 0.5}:")
    comb = make_selection("comb", NUM_TRANSMIT, NUM_RECEIVE)
    lobes = np.abs(array_factor(comb, np.array([-1.0, -0.5, 0.0, 0.5])))
    print("  |AF| =", np.round(lobes, 6).tolist())


if __name__ == "__main__":
    main()

"""Writes configs/taper_profile.csv: symmetric exponential taper of an SMF-28
fiber (62.5 um outer radius) down to a 395 nm waist radius."""

import math
from pathlib import Path

R0 = 62.5e-6
WAIST = 395e-9
DECAY = 5e-3
WAIST_LENGTH = 10e-3
SAMPLES = 401


def radius(z, z_down):
    if z <= z_down:
        return R0 * math.exp(-z / DECAY)
    if z <= z_down + WAIST_LENGTH:
        return WAIST
    return WAIST * math.exp((z - z_down - WAIST_LENGTH) / DECAY)


def main():
    z_down = DECAY * math.log(R0 / WAIST)
    total = 2 * z_down + WAIST_LENGTH
    out = Path(__file__).resolve().parent.parent / "configs" / "taper_profile.csv"
    with out.open("w") as f:
        f.write("# Exponential SMF-28 taper, 5 mm decay length, 10 mm waist of 395 nm radius.\n")
        f.write("# Generated by tools/make_taper_profile.py.\n")
        f.write("z_m,radius_m\n")
        for i in range(SAMPLES):
            z = total * i / (SAMPLES - 1)
            f.write(f"{z:.15g},{min(R0, radius(z, z_down)):.15g}\n")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Generate the hybrid-fiber dispersion tables in data/.

The visible pump mode and the infrared fundamental mode are written as
n_eff(lambda) tables built from the LLF1 Sellmeier fit plus smooth
corrections, tuned so that degenerate phase matching falls at a pump of
526.865 nm, the infrared group-velocity dispersion is small and the pump
and infrared group indices differ by 0.3.

    python3 tools/make_hybrid_tables.py [output_dir]
"""

import math
import sys
from pathlib import Path

LLF1_B = (1.21640125, 0.13366454, 0.883399468)
LLF1_C = (0.00857807248, 0.0420143003, 107.59306)

PUMP = 526.865e-9
TRIPLET = 3 * PUMP
IR_OFFSET = 0.004          # index step between LLF1 and the infrared mode
IR_CURVATURE = -0.00061    # per um^2 around the triplet wavelength
GROUP_INDEX_GAP = 0.3      # n_g(pump) - n_g(infrared)


def llf1(lam):
    l2 = (lam * 1e6) ** 2
    return math.sqrt(1 + sum(b * l2 / (l2 - c) for b, c in zip(LLF1_B, LLF1_C)))


def infrared(lam):
    return llf1(lam) - IR_OFFSET - IR_CURVATURE * ((lam - TRIPLET) * 1e6) ** 2


def group_index(n, lam, h=1e-12):
    return n(lam) - lam * (n(lam + h) - n(lam - h)) / (2 * h)


STEP = infrared(TRIPLET) - llf1(PUMP)
SLOPE = -(GROUP_INDEX_GAP - (group_index(llf1, PUMP) - group_index(infrared, TRIPLET))) / PUMP


def pump(lam):
    return llf1(lam) + STEP + SLOPE * (lam - PUMP)


HEADER = """# Hybrid SF6/LLF1 fiber, {what}.
# Synthetic dispersion: LLF1 Sellmeier (SCHOTT) with a constant index step
# and a smooth correction, generated by tools/make_hybrid_tables.py.
# Landmarks: degenerate phase matching at 526.865 nm pump, small infrared
# group-velocity dispersion, pump/infrared group-index gap {gap}.
# fiber: hybrid_sf6
# mode: {mode}
"""


def write(path, what, mode, n, lo_nm, hi_nm, step_nm):
    rows = []
    count = int(round((hi_nm - lo_nm) / step_nm))
    for k in range(count + 1):
        lam = (lo_nm + k * step_nm) * 1e-9
        rows.append("{:.15g},{:.15g}".format(lam, n(lam)))
    text = HEADER.format(what=what, mode=mode, gap=GROUP_INDEX_GAP) + "wavelength_m,n_eff\n" + "\n".join(rows) + "\n"
    path.write_text(text)


def main():
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "data"
    write(out / "hybrid_pump_pbg.csv", "visible band-gap pump mode", "HE11", pump, 500, 560, 1)
    write(out / "hybrid_ir_fundamental.csv", "infrared fundamental mode", "HE11", infrared, 1300, 2000, 5)


if __name__ == "__main__":
    main()

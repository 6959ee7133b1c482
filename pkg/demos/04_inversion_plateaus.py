"""Rabi oscillations of the inversion, with and without a definite order.

Sweeping the interaction time, the definite-order inversion oscillates the
whole way, while the control-0 conditional curve develops wide plateaus:
stretches where the postselection freezes the atom near full inversion.
This script locates the widest low-variation window of each curve.
"""

import math

from ico_cqed import SystemParams, sigma_z_ico, sigma_z_series


def widest_flat_window(gts, values, tv_budget=0.02):
    diffs = [abs(values[i + 1] - values[i]) for i in range(len(values) - 1)]
    best = (0, 0)
    for start in range(len(diffs)):
        tv, end = 0.0, start
        while end < len(diffs) and tv + diffs[end] < tv_budget:
            tv += diffs[end]
            end += 1
        if end - start > best[1] - best[0]:
            best = (start, end)
    return gts[best[0]], gts[best[1]]


def main():
    step = 0.005
    gts = [step * i for i in range(int(10 / step) + 1)]
    for n, m in ((0, 0), (1, 1), (0, 1)):
        ser, ico = [], []
        for gt in gts:
            p = SystemParams(g=1.0, T=gt, n=n, m=m, theta=math.pi / 4)
            ser.append(sigma_z_series(p))
            ico.append(sigma_z_ico(p))
        lo_s, hi_s = widest_flat_window(gts, ser)
        lo_i, hi_i = widest_flat_window(gts, ico)
        print(f"fill n={n}, m={m}:")
        print(f"  definite order:   widest flat window {hi_s - lo_s:.2f} wide, gT in [{lo_s:.2f}, {hi_s:.2f}]")
        print(f"  superposed order: widest flat window {hi_i - lo_i:.2f} wide, gT in [{lo_i:.2f}, {hi_i:.2f}]")
    print()
    print("spot checks for empty cavities:")
    for gt in (math.pi / 2, math.pi):
        p = SystemParams(g=1.0, T=gt, theta=math.pi / 4)
        print(f"  gT = {gt:.4f}: definite {sigma_z_series(p):+.6f}, conditional {sigma_z_ico(p):+.6f}")


if __name__ == "__main__":
    main()

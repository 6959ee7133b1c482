"""Where a definite-order transit leaves the atom and the photons.

An initially excited atom crosses cavity 0 and then cavity 1, each holding a
Fock state.  Sweeping the per-cavity interaction time shows the four exit
channels trading probability: full revival and first-cavity emission are
periodic certainties, second-cavity emission is capped near 1/4 for equal
fills, and the photon-interchange channel only opens when both cavities
start with photons.
"""

import math

import numpy as np

from ico_cqed import AtomFieldKet, AtomLevel, CavityOrder, SystemParams, ket_probability, state_after_both

E, G = AtomLevel.EXCITED, AtomLevel.GROUND


def channel_maxima(n, m, gts):
    channels = {
        "revival        P(e,%d,%d)" % (n, m): AtomFieldKet(E, n, m),
        "emit in C1     P(g,%d,%d)" % (n, m + 1): AtomFieldKet(G, n, m + 1),
        "emit in C0     P(g,%d,%d)" % (n + 1, m): AtomFieldKet(G, n + 1, m),
    }
    if m > 0:
        channels["interchange    P(e,%d,%d)" % (n + 1, m - 1)] = AtomFieldKet(E, n + 1, m - 1)
    best = {label: (0.0, 0.0) for label in channels}
    for gt in gts:
        p = SystemParams(g=1.0, T=float(gt), n=n, m=m)
        st = state_after_both(CavityOrder.C0_THEN_C1, p, p.T)
        for label, ket in channels.items():
            value = ket_probability(st, ket)
            if value > best[label][0]:
                best[label] = (value, float(gt))
    return best


def main():
    gts = np.arange(0.0, 30.0, 0.002)
    for n, m in ((0, 0), (5, 5), (4, 5)):
        print(f"initial fill n={n}, m={m}")
        for label, (value, at) in channel_maxima(n, m, gts).items():
            print(f"  max {label} = {value:.4f}  at gT = {at:.3f}")
        print()
    print("landmarks for empty cavities:")
    for gt, desc in ((math.pi, "full revival"), (math.pi / 2, "certain emission in the first cavity")):
        p = SystemParams(g=1.0, T=gt)
        st = state_after_both(CavityOrder.C0_THEN_C1, p, p.T)
        print(f"  gT = {gt:.6f}: {desc}, support {[(k.atom.label, k.n, k.m) for k in st.kets()]}")


if __name__ == "__main__":
    main()

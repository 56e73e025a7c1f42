"""How fast the shortest first-divergence time approaches its large-L limit."""

import math

from creutz_dqpt import qsl

SIZES = (100, 301, 1000, 3001, 10000, 30001, 100000)


def main():
    for th in (0.05, 0.25, 0.45):
        tc = qsl.tau_c_asymptote(1.0, 1.0, th * math.pi)
        gaps = []
        for L in SIZES:
            gaps.append(abs(qsl.tau_f_extrema(1.0, 1.0, th * math.pi, L).tau_fmin - tc) / tc)
        print(f"theta1={th:.2f}pi  tau_c={tc:.6f}  " + "  ".join(f"L={L}:{g:.2e}" for L, g in zip(SIZES, gaps)))


if __name__ == "__main__":
    main()

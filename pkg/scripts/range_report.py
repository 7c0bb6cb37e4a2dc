#!/usr/bin/env python3
"""Print the operating interval of each knob and method.

The interval is where the starting point of a cycle can sit: the level
gap stays above the degeneracy threshold and the expansion endpoint is
bracketable.  Run after changing solver or truncation settings to see
how the usable windows move.
"""
import sys

from rabicycle import Knob, Method, ModelParams, range_probe

FIXED = {
    Knob.G: ModelParams(g=0.0, omega=1.0, bigomega=1.0),
    Knob.OMEGA: ModelParams(g=1.0, omega=1.0, bigomega=1.0),
    Knob.BIGOMEGA: ModelParams(g=1.0, omega=1.0, bigomega=1.0),
}


def main():
    for knob, fixed in FIXED.items():
        methods = [Method.EXACT]
        if knob != Knob.BIGOMEGA:
            methods.append(Method.APPROX)
        for method in methods:
            lo, hi = range_probe(knob, fixed, method)
            print(f"{knob.value:9s} {method.value:6s} "
                  f"[{lo:.6f}, {hi:.6f}]")
    return 0


if __name__ == "__main__":
    sys.exit(main())

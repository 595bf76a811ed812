#!/usr/bin/env python3
"""Regenerate the bundled table of zeta-zero ordinates with mpmath.

Development tool only; the package itself never computes zeros.  Output is
one ordinate per line, ascending, 17 significant digits, '#' comments --
the same layout as the classic Odlyzko tables.

Usage: python3 tools/generate_zeros.py N_ZEROS OUTFILE
"""

import sys
import time

import mpmath


def main() -> int:
    n_zeros = int(sys.argv[1])
    outfile = sys.argv[2]
    mpmath.mp.dps = 18
    t0 = time.time()
    with open(outfile, "w", encoding="utf-8") as fh:
        fh.write("# imaginary parts t_m of the first %d nontrivial zeta zeros\n" % n_zeros)
        fh.write("# generated by tools/generate_zeros.py (mpmath zetazero, dps=18)\n")
        for n in range(1, n_zeros + 1):
            t = mpmath.zetazero(n).imag
            fh.write(mpmath.nstr(t, 17) + "\n")
            if n % 200 == 0:
                fh.flush()
                print("%d zeros, %.0f s" % (n, time.time() - t0), flush=True)
    print("done: %d zeros in %.0f s" % (n_zeros, time.time() - t0))
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Regenerate src/factorcheck/data/moduli.txt.

For every (p, f) we pick the primitive monic polynomial of degree f whose
coefficient vector (c_{f-1}, ..., c_0) is smallest, so that the class of x
generates the multiplicative group.  Degree one entries are x - g for the
smallest primitive root g.
"""

from __future__ import annotations

import itertools
import sys
from pathlib import Path

ENTRIES = [(2, f) for f in range(1, 17)]
ENTRIES += [(p, 1) for p in (3, 5, 7, 11, 13, 17)]
ENTRIES += [(3, 2), (3, 3), (3, 4), (5, 2), (7, 2)]


def polymulmod(a, b, mod, p):
    f = len(mod) - 1
    out = [0] * (2 * f)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    for k in range(len(out) - 1, f - 1, -1):
        c = out[k]
        if c:
            for i in range(f + 1):
                out[k - f + i] = (out[k - f + i] - c * mod[i]) % p
    return out[:f]


def element_order(poly, p):
    f = len(poly) - 1
    q = p**f
    one = [1] + [0] * (f - 1)
    x = [0, 1] + [0] * (f - 2) if f > 1 else [(-poly[0]) % p]
    cur = x[:]
    for k in range(1, q):
        if cur == one:
            return k
        cur = polymulmod(cur, x, poly, p)
    return None


def main(out: Path) -> None:
    lines = ["# factorcheck modulus table", "version 1", "# p f c0 c1 ... cf (monic, primitive)"]
    for p, f in ENTRIES:
        q = p**f
        for tail in itertools.product(range(p), repeat=f):
            coeffs = list(reversed(tail)) + [1]
            if coeffs[0] == 0:
                continue
            if element_order(coeffs, p) == q - 1:
                break
        else:
            raise SystemExit(f"no primitive polynomial for {(p, f)}")
        lines.append(" ".join(str(v) for v in [p, f, *coeffs]))
    out.write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main(Path(sys.argv[1]) if len(sys.argv) > 1 else
         Path(__file__).resolve().parents[1] / "src/factorcheck/data/moduli.txt")

"""Write the PGammaL(2,8) and SL(2,8) permutation data files.

Points 1..8 are the elements of GF(8) (code + 1) and 9 is infinity.  The
maps are x -> x+1, x -> zx (z the field generator), x -> 1/x and x -> x^2.
"""

from pathlib import Path

import numpy as np

from factorcheck.field import gf
from factorcheck.perm import cycles_text, schreier_sims

DATA = Path(__file__).resolve().parent.parent / "src" / "factorcheck" / "data"
INF = 8


def as_perm(fn) -> np.ndarray:
    return np.array([fn(x) for x in range(9)], dtype=np.int32)


def main() -> None:
    F = gf(8)
    z = F.generator.code

    def translate(x):
        return x if x == INF else int(F.add(x, 1))

    def scale(x):
        return x if x == INF else int(F.mul(x, z))

    def invert(x):
        if x == INF:
            return 0
        return INF if x == 0 else int(F.inv(x))

    def frob(x):
        return x if x == INF else int(F.mul(x, x))

    sl = [as_perm(translate), as_perm(scale), as_perm(invert)]
    full = sl + [as_perm(frob)]
    for name, fname, gens in (("PGammaL(2,8)", "pgaml28.txt", full), ("SL(2,8)", "sl28.txt", sl)):
        order = schreier_sims(gens, 9).order
        lines = [f"# name: {name}", "# degree: 9", f"# order: {order}",
                 "# generated by tools/gen_perm_data.py from x+1, zx, 1/x"
                 + (", x^2" if len(gens) == 4 else "") + " on GF(8) with infinity = 9"]
        lines += [cycles_text(g) for g in gens]
        (DATA / fname).write_text("\n".join(lines) + "\n")
        print(fname, order)


if __name__ == "__main__":
    main()

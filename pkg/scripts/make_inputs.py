"""Regenerate the JSON input files in scripts/inputs/ from the built-in
corpus algebras, so the CLI examples and goldens stay in sync with the
library definitions."""

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from cychom.algebra import (diagonal_bimodule, dual_numbers,  # noqa: E402
                            group_algebra_c2, matrix_algebra_2)
from cychom.cyclic_bimod import tautological_tau  # noqa: E402
from cychom.linalg import QQ  # noqa: E402
from cychom.trace_res import two_periodic_resolution  # noqa: E402

OUT = Path(__file__).resolve().parent / "inputs"


def algebra_payload(A, field_spec):
    mult = []
    for i in range(A.dim):
        for j in range(A.dim):
            for k, c in sorted(A.basis_product(i, j).items()):
                mult.append([i, j, k, str(c)])
    unit = ["0"] * A.dim
    for i, c in A.unit.items():
        unit[i] = str(c)
    return {"field": field_spec, "dim": A.dim, "basis": A.names,
            "unit": unit, "mult": mult}


def bimodule_payload(M):
    def acts(mats):
        out = []
        for m in mats:
            out.append([[r, c, str(v)] for r, c, v in sorted(m.entries())])
        return out
    return {"dim": M.dim,
            "left": acts([M.left_basis(i) for i in range(M.algebra.dim)]),
            "right": acts([M.right_basis(i) for i in range(M.algebra.dim)])}


def matrix_entries(m):
    return [[r, c, str(v)] for r, c, v in sorted(m.entries())]


def main():
    OUT.mkdir(exist_ok=True)
    corpus = {
        "dual_numbers": dual_numbers(QQ),
        "group_c2": group_algebra_c2(QQ),
        "mat2": matrix_algebra_2(QQ),
    }
    for name, A in corpus.items():
        write(f"{name}.json", algebra_payload(A, "Q"))
        M = diagonal_bimodule(A)
        write(f"{name}_diag_bimodule.json", bimodule_payload(M))
        cb = tautological_tau(A)
        write(f"{name}_tautological_tau.json",
              {"entries": matrix_entries(cb.tau)})

    # the zero 2-cocycle on the dual numbers (trivial square-zero data)
    A = corpus["dual_numbers"]
    write("dual_numbers_zero_cocycle.json",
          {"block": [["0"] * A.dim for _ in range(A.dim * A.dim)]})

    # the rank-one 2-periodic resolution of the dual numbers
    P = two_periodic_resolution(A, 7)
    gen_images = []
    for n in range(1, P.length + 1):
        full = P.diffs[n]
        cols = [full.column(P.modules[n].gen_index(v))
                for v in range(P.modules[n].rank)]
        m = [[r, v, str(c)] for v, col in enumerate(cols)
             for r, c in sorted(col.items())]
        gen_images.append(m)
    aug_cols = [P.aug.column(P.modules[0].gen_index(v))
                for v in range(P.modules[0].rank)]
    aug = [[r, v, str(c)] for v, col in enumerate(aug_cols)
           for r, c in sorted(col.items())]
    write("dual_numbers_2periodic_resolution.json",
          {"ranks": [m.rank for m in P.modules],
           "gen_images": gen_images, "aug": aug})


def write(name, payload):
    path = OUT / name
    path.write_text(json.dumps(payload, indent=1, sort_keys=True) + "\n")
    print(f"wrote {path}")


if __name__ == "__main__":
    main()

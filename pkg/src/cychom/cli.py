"""Command-line interface: structured-text inputs, canonical reports.

All inputs are JSON files; all reports are canonical JSON on stdout
(sorted keys, fixed separators, no timestamps), so identical inputs give
byte-identical reports.  The exit code is 0 exactly when every audit in
the report passed.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .algebra import Bimodule, FinAlgebra, diagonal_bimodule, hh
from .cyclic_bimod import (CyclicBimodule, check_cyclic_structure,
                           hc_with_coefficients, tautological_tau)
from .cyclic_space import (connes_B, hc, hp, tensor_mixed_complex)
from .deform import (cocycle_violation, gauss_manin_splitting,
                     goodwillie_check, square_zero)
from .lambda_cat import (ConstantFunctor, category_homology, hom_size,
                         lambda_leq)
from .linalg import GF, QQ, Field, Matrix, rank
from .trace_res import (bar_resolution, connes_B_via_trace,
                        small_resolution_ingest)


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# Input parsing


def _parse_field(text) -> Field:
    if text == "Q":
        return QQ
    if isinstance(text, str) and text.startswith("Fp:"):
        try:
            return GF(int(text[3:]))
        except ValueError as e:
            raise InputError(f"bad field {text!r}: {e}") from None
    raise InputError(f"bad field {text!r}: expected \"Q\" or \"Fp:<p>\"")


def _load_json(path):
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise InputError(f"{path}: {e}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(
            f"{path}: line {e.lineno}, column {e.colno}: {e.msg}") from None


def _need(data, key, path):
    if key not in data:
        raise InputError(f"{path}: missing required key {key!r}")
    return data[key]


def _coeff(field, x, where):
    try:
        return field(x)
    except (ValueError, TypeError, ZeroDivisionError) as e:
        raise InputError(f"{where}: bad coefficient {x!r} ({e})") from None


def load_algebra(path, field_override=None) -> FinAlgebra:
    data = _load_json(path)
    field = (_parse_field(field_override) if field_override
             else _parse_field(_need(data, "field", path)))
    dim = _need(data, "dim", path)
    names = _need(data, "basis", path)
    if len(names) != dim:
        raise InputError(f"{path}: dim is {dim} but basis has {len(names)}")
    unit_coords = _need(data, "unit", path)
    if len(unit_coords) != dim:
        raise InputError(f"{path}: unit must have {dim} coordinates")
    unit = {}
    for i, c in enumerate(unit_coords):
        v = _coeff(field, c, f"{path}: unit[{i}]")
        if v != field.zero:
            unit[i] = v
    mult = [[{} for _ in range(dim)] for _ in range(dim)]
    for pos, quad in enumerate(_need(data, "mult", path)):
        if len(quad) != 4:
            raise InputError(f"{path}: mult[{pos}] is not an "
                             f"[i, j, k, coeff] quadruple")
        i, j, k, c = quad
        for idx in (i, j, k):
            if not (isinstance(idx, int) and 0 <= idx < dim):
                raise InputError(f"{path}: mult[{pos}] index {idx} "
                                 f"out of range 0..{dim - 1}")
        v = _coeff(field, c, f"{path}: mult[{pos}]")
        if v != field.zero:
            if k in mult[i][j]:
                raise InputError(f"{path}: mult[{pos}] repeats ({i},{j},{k})")
            mult[i][j][k] = v
    try:
        return FinAlgebra(field, names, mult, unit=unit, check=True)
    except AssertionError as e:
        raise InputError(f"{path}: algebra audit failed: {e}") from None


def _entries_matrix(field, nrows, ncols, triples, path, what):
    entries = []
    for pos, tri in enumerate(triples):
        if len(tri) != 3:
            raise InputError(f"{path}: {what}[{pos}] is not [row, col, coeff]")
        r, c, x = tri
        if not (isinstance(r, int) and 0 <= r < nrows
                and isinstance(c, int) and 0 <= c < ncols):
            raise InputError(f"{path}: {what}[{pos}] position ({r},{c}) "
                             f"outside {nrows}x{ncols}")
        entries.append((r, c, _coeff(field, x, f"{path}: {what}[{pos}]")))
    return Matrix.from_entries(field, nrows, ncols, entries)


def load_bimodule(A, path) -> Bimodule:
    data = _load_json(path)
    m = _need(data, "dim", path)
    left = _need(data, "left", path)
    right = _need(data, "right", path)
    if len(left) != A.dim or len(right) != A.dim:
        raise InputError(f"{path}: left/right must list one {m}x{m} action "
                         f"matrix per algebra basis element ({A.dim})")
    lmats = [_entries_matrix(A.field, m, m, left[i], path, f"left[{i}]")
             for i in range(A.dim)]
    rmats = [_entries_matrix(A.field, m, m, right[i], path, f"right[{i}]")
             for i in range(A.dim)]
    try:
        return Bimodule(A, m, lmats, rmats, check=True)
    except AssertionError as e:
        raise InputError(f"{path}: bimodule audit failed: {e}") from None


def load_tau(A, M, path) -> Matrix:
    data = _load_json(path)
    n = A.dim * M.dim
    return _entries_matrix(A.field, M.dim * A.dim, n,
                           _need(data, "entries", path), path, "entries")


def load_cocycle(A, M, path) -> Matrix:
    """Dense (dim A · dim A) x (dim M) block: row i·d+j holds the
    coordinates of c(e_i, e_j)."""
    data = _load_json(path)
    block = _need(data, "block", path)
    d = A.dim
    if len(block) != d * d:
        raise InputError(f"{path}: block must have {d * d} rows")
    entries = []
    for rc, row in enumerate(block):
        if len(row) != M.dim:
            raise InputError(f"{path}: block[{rc}] must have {M.dim} entries")
        for mi, x in enumerate(row):
            v = _coeff(A.field, x, f"{path}: block[{rc}][{mi}]")
            if v != A.field.zero:
                entries.append((mi, rc, v))
    return Matrix.from_entries(A.field, M.dim, d * d, entries)


def load_resolution(A, path):
    data = _load_json(path)
    ranks = _need(data, "ranks", path)
    gen_lists = _need(data, "gen_images", path)
    if len(gen_lists) != len(ranks) - 1:
        raise InputError(f"{path}: need {len(ranks) - 1} generator-image "
                         f"blocks for {len(ranks)} ranks")
    d = A.dim
    gen_images = {}
    for n in range(1, len(ranks)):
        gen_images[n] = _entries_matrix(
            A.field, d * ranks[n - 1] * d, ranks[n], gen_lists[n - 1],
            path, f"gen_images[{n - 1}]")
    aug = _entries_matrix(A.field, d, ranks[0], _need(data, "aug", path),
                          path, "aug")
    try:
        return small_resolution_ingest(A, ranks, gen_images, aug)
    except (AssertionError, ValueError) as e:
        raise InputError(f"{path}: resolution audit failed: {e}") from None


# ---------------------------------------------------------------------------
# Report plumbing


def _scalar(x):
    return str(x)


def _dense(m: Matrix):
    return [[_scalar(v) for v in row] for row in m.to_dense()]


def _digest(*payloads):
    h = hashlib.sha256()
    for p in payloads:
        h.update(json.dumps(p, sort_keys=True, default=str).encode())
        h.update(b"\0")
    return h.hexdigest()


def emit(report, golden_dir=None, out=None):
    """Canonical serialization; optional golden comparison.

    With --golden, the report is compared byte-for-byte against the file
    named by its command and input digest; a missing golden is created.
    Returns the exit code: 0 only if all audits (and the golden check)
    passed.
    """
    if golden_dir is not None:
        name = f"{report['command']}-{report['inputs']['digest'][:12]}.json"
        target = Path(golden_dir) / name
        blob = _render(report)
        if target.exists():
            report["audits"]["golden_match"] = (target.read_bytes()
                                                == blob.encode())
        else:
            target.parent.mkdir(parents=True, exist_ok=True)
            target.write_text(blob)
            report["audits"]["golden_match"] = True
    blob = _render(report)
    (out or sys.stdout).write(blob)
    return 0 if all(report["audits"].values()) else 1


def _render(report):
    return json.dumps(report, sort_keys=True, separators=(",", ":")) + "\n"


def _pool_map(jobs, fn, items):
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# Commands


def cmd_hh(args):
    A = load_algebra(args.algebra, args.field)
    M = load_bimodule(A, args.bimodule) if args.bimodule \
        else diagonal_bimodule(A)
    dims = hh(A, M, args.range)
    report = {
        "command": "hh",
        "inputs": {"digest": _digest(Path(args.algebra).read_text(),
                                     args.bimodule and
                                     Path(args.bimodule).read_text(),
                                     args.range)},
        "field": A.field.describe(),
        "tables": {"hh_dims": dims},
        "audits": {"algebra_audit": True, "bimodule_audit": True},
        "flags": {},
        "signs": {},
    }
    return emit(report, args.golden)


def _hc_hp_report(args, command):
    A = load_algebra(args.algebra, args.field)
    top = (args.range + 2 * args.window + 1 if command == "hp"
           else args.range + 1)
    data = tensor_mixed_complex(A, top, check=True)
    report = {
        "command": command,
        "inputs": {"digest": _digest(Path(args.algebra).read_text(),
                                     args.range, args.window)},
        "field": A.field.describe(),
        "tables": {},
        "audits": {"algebra_audit": True, "mixed_complex_audit": True},
        "flags": {},
        "signs": {},
    }
    if command == "hc":
        tot = data.total_complex(args.range + 1)
        dims = _pool_map(args.jobs, tot.homology_dim, range(args.range + 1))
        report["tables"]["hc_dims"] = dims
    else:
        pairs = hp(data, args.range, window=args.window)
        report["tables"]["hp_dims"] = [r for r, _ in pairs]
        report["flags"]["stabilized"] = [s for _, s in pairs]
    return emit(report, args.golden)


def cmd_hc(args):
    return _hc_hp_report(args, "hc")


def cmd_hp(args):
    return _hc_hp_report(args, "hp")


def cmd_hc_coeff(args):
    A = load_algebra(args.algebra, args.field)
    M = load_bimodule(A, args.bimodule)
    tau = load_tau(A, M, args.tau)
    cb = CyclicBimodule(A, M, tau)
    checks = check_cyclic_structure(cb)
    witnesses = [label for label, ok in checks if not ok]
    report = {
        "command": "hc_coeff",
        "inputs": {"digest": _digest(Path(args.algebra).read_text(),
                                     Path(args.bimodule).read_text(),
                                     Path(args.tau).read_text(), args.range)},
        "field": A.field.describe(),
        "tables": {},
        "audits": {"algebra_audit": True, "bimodule_audit": True,
                   "cyclic_structure": not witnesses},
        "flags": {"violations": witnesses},
        "signs": {},
    }
    if not witnesses:
        report["tables"]["hc_dims"] = hc_with_coefficients(cb, args.range)
    return emit(report, args.golden)


def cmd_gauss_manin(args):
    A = load_algebra(args.algebra, args.field)
    M = load_bimodule(A, args.bimodule)
    tau = load_tau(A, M, args.tau)
    cocycle = load_cocycle(A, M, args.cocycle) if args.cocycle else None
    if cocycle is not None:
        bad = cocycle_violation(A, M, cocycle)
        if bad is not None:
            raise InputError(f"{args.cocycle}: not a 2-cocycle: identity "
                             f"fails at basis triple {bad}")
    ext = square_zero(A, M, cocycle)
    cb = CyclicBimodule(A, M, tau)
    witnesses = [label for label, ok in check_cyclic_structure(cb) if not ok]
    if witnesses:
        raise InputError(f"{args.tau}: cyclic-structure violations: "
                         f"{witnesses}")
    rows = gauss_manin_splitting(ext, cb, args.range, window=args.window)
    table = []
    ok = True
    for e in rows:
        row = {k: v for k, v in e.items() if not isinstance(v, Matrix)}
        if "splitting" in e:
            row["splitting"] = _dense(e["splitting"])
        table.append(row)
        if e["judged"]:
            ok = ok and e["quotient_iso"] and e["split_dims"] \
                and e["section_of_projection"]
    report = {
        "command": "gauss_manin",
        "inputs": {"digest": _digest(Path(args.algebra).read_text(),
                                     Path(args.bimodule).read_text(),
                                     Path(args.tau).read_text(),
                                     args.cocycle and
                                     Path(args.cocycle).read_text(),
                                     args.range, args.window)},
        "field": A.field.describe(),
        "tables": {"splitting": table},
        "audits": {"algebra_audit": True, "cyclic_structure": True,
                   "splitting_audits": ok},
        "flags": {"stabilized": [e["stabilized"] for e in rows]},
        "signs": {},
    }
    if A.field.is_rationals:
        gw = goodwillie_check(ext, args.range, window=args.window)
        report["tables"]["goodwillie"] = {
            "hp_total": [list(p) for p in gw["hp_total"]],
            "hp_base": [list(p) for p in gw["hp_base"]],
            "agree": gw["agree"],
        }
        report["audits"]["goodwillie"] = all(gw["agree"])
    return emit(report, args.golden)


def cmd_connes_b(args):
    A = load_algebra(args.algebra, args.field)
    P = (load_resolution(A, args.resolution) if args.resolution
         else bar_resolution(A, args.range + 3))
    via_trace = connes_B_via_trace(A, P, args.range)
    data = tensor_mixed_complex(A, args.range + 2)
    via_cyclic = {n: connes_B(data, n) for n in range(args.range + 1)}
    sign = None
    for s in (A.field.one, A.field.neg(A.field.one)):
        if all(via_trace[n] == via_cyclic[n].scale(s)
               for n in range(args.range + 1)):
            sign = s
            break
    report = {
        "command": "connes_b",
        "inputs": {"digest": _digest(Path(args.algebra).read_text(),
                                     args.resolution and
                                     Path(args.resolution).read_text(),
                                     args.range)},
        "field": A.field.describe(),
        "tables": {
            "via_trace": {str(n): _dense(m) for n, m in via_trace.items()},
            "via_cyclic": {str(n): _dense(m)
                           for n, m in via_cyclic.items()},
            "ranks": [rank(via_trace[n]) for n in range(args.range + 1)],
        },
        "audits": {"resolution_audit": True,
                   "cross_pipeline_match": sign is not None},
        "flags": {},
        "signs": {"global": _scalar(sign) if sign is not None else None},
    }
    return emit(report, args.golden)


def cmd_lambda(args):
    field = _parse_field(args.field or "Q")
    n = args.n_max
    counts = {f"[{a}]->[{b}]": hom_size(a, b)
              for a in range(1, n + 1) for b in range(1, n + 1)}
    cat = lambda_leq(n)
    dims = category_homology(cat, ConstantFunctor(field), args.range, field)
    report = {
        "command": "lambda",
        "inputs": {"digest": _digest(n, args.range, field.describe())},
        "field": field.describe(),
        "tables": {"hom_counts": counts, "homology_dims": dims},
        "audits": {"category_audit": True},
        "flags": {},
        "signs": {},
    }
    return emit(report, args.golden)


# ---------------------------------------------------------------------------


def _add_common(p, window=False):
    p.add_argument("--field", help="override the field: Q or Fp:<p>")
    p.add_argument("--range", type=int, default=4,
                   help="top homological degree (default 4)")
    p.add_argument("--n-max", type=int, default=None, dest="n_max",
                   help="deepest cyclic object to build where applicable")
    p.add_argument("--window", type=int, default=3,
                   help="stabilization window for periodic dimensions")
    p.add_argument("--jobs", type=int, default=1,
                   help="bound on per-degree parallelism")
    p.add_argument("--golden", metavar="DIR", default=None,
                   help="directory of golden reports to compare/record")


def build_parser():
    ap = argparse.ArgumentParser(
        prog="cychom",
        description="Exact Hochschild / cyclic / periodic cyclic homology "
                    "of finite-dimensional algebras.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hh", help="Hochschild homology dimensions")
    p.add_argument("algebra")
    p.add_argument("--bimodule", default=None)
    _add_common(p)
    p.set_defaults(fn=cmd_hh)

    p = sub.add_parser("hc", help="cyclic homology dimensions")
    p.add_argument("algebra")
    _add_common(p)
    p.set_defaults(fn=cmd_hc)

    p = sub.add_parser("hp", help="periodic cyclic dimensions")
    p.add_argument("algebra")
    _add_common(p)
    p.set_defaults(fn=cmd_hp)

    p = sub.add_parser("hc-coeff",
                       help="cyclic homology with bimodule coefficients")
    p.add_argument("algebra")
    p.add_argument("--bimodule", required=True)
    p.add_argument("--tau", required=True)
    _add_common(p)
    p.set_defaults(fn=cmd_hc_coeff)

    p = sub.add_parser("gauss-manin",
                       help="square-zero extension splitting report")
    p.add_argument("algebra")
    p.add_argument("--bimodule", required=True)
    p.add_argument("--tau", required=True)
    p.add_argument("--cocycle", default=None)
    _add_common(p)
    p.set_defaults(fn=cmd_gauss_manin)

    p = sub.add_parser("connes-b",
                       help="degree-raising operator, both pipelines")
    p.add_argument("algebra")
    p.add_argument("--resolution", default=None)
    _add_common(p)
    p.set_defaults(fn=cmd_connes_b)

    p = sub.add_parser("lambda",
                       help="cyclic-category hom counts and homology")
    p.add_argument("--n-max", type=int, required=True, dest="n_max")
    p.add_argument("--field", default="Q")
    p.add_argument("--range", type=int, default=4)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--golden", metavar="DIR", default=None)
    p.set_defaults(fn=cmd_lambda)

    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

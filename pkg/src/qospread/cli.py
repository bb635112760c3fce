"""Command-line surface: generate, verify, example, mub.

Exit codes: 0 success / all checks pass, 1 verification failure, 2 invalid
parameters or malformed input file, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import family_io, verify
from .constructions import ConstructionParams, build_masa_spread, build_recursive, build_spread_2
from .phase_space import check_partition, span_enumerate
from .weyl import monomial_text

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_IO = 3

PARTITION_LIMIT = 10**6


def _parse_coords(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise ValueError(f"expected comma-separated integers, got {text!r}") from exc


def _make_params(args) -> ConstructionParams:
    poly = _parse_coords(args.poly_override) if args.poly_override else None
    nonres = _parse_coords(args.d_override) if args.d_override else None
    return ConstructionParams.create(args.p, args.k, args.n, poly=poly, nonresidue=nonres)


def cmd_generate(args) -> int:
    try:
        params = _make_params(args)
        family = build_recursive(params)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    ff = family_io.from_family(family)
    try:
        family_io.save(ff, args.out)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {args.out}: {len(family.members)} members of M_"
          f"{params.p ** (params.k * params.n)}, each a copy of M_{params.p ** params.k}")
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        with open(args.path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        print(f"error: cannot read {args.path}: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        ff = family_io.parse(text)
        family = family_io.to_family(ff)
    except family_io.FamilyFormatError as exc:
        print(f"error: malformed family file: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT

    ok = True
    bad_rows = family_io.noncanonical_members(ff)
    if bad_rows:
        ok = False
        print(f"integrity: FAIL ({len(bad_rows)} members with non-canonical rows)")
        for label, detail in bad_rows[:10]:
            print(f"  {label}: {detail}")
    else:
        print(f"integrity: ok ({len(ff.members)} members, canonical rows)")

    if args.mode in ("symbolic", "both"):
        rep = verify.verify_qo_symbolic(family)
        ok = ok and rep.passed
        print(f"symbolic: {rep.describe()}")
        ambient = ff.p ** (2 * ff.k * ff.n)
        if ambient <= PARTITION_LIMIT:
            rep = check_partition(family.subspaces(), family.labels())
            ok = ok and rep.passed
            print(f"partition: {rep.describe()}")
        else:
            print(f"partition: skipped (ambient has {ambient} points)")

    if args.mode in ("numeric", "both"):
        if args.tol <= 0 or (args.sample is not None and args.sample < 1):
            print("error: --tol must be positive and --sample at least 1", file=sys.stderr)
            return EXIT_BAD_INPUT
        dim = ff.p ** (ff.k * ff.n)
        if dim > verify.NUMERIC_MAX_DIM:
            if args.mode == "numeric":
                print(f"error: dimension {dim} exceeds the numeric guard "
                      f"{verify.NUMERIC_MAX_DIM}", file=sys.stderr)
                return EXIT_BAD_INPUT
            print(f"numeric: skipped (dimension {dim} exceeds guard {verify.NUMERIC_MAX_DIM})")
        else:
            rep = verify.verify_qo_numeric(family, args.tol, sample_pairs=args.sample)
            ok = ok and rep.passed
            print(f"numeric: {rep.describe()}")

    print(f"result: {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def _display_label(label: str) -> str:
    return label.replace("[", "_{").replace("]", "}").replace("inf", "∞")


def cmd_example(args) -> int:
    del args
    params = ConstructionParams.create(3, 1, 2)
    family = build_spread_2(params)
    for mem in family.members:
        names = [monomial_text(pt) for pt in span_enumerate(mem.subspace)]
        print(f"span{{π({_display_label(mem.label)})}} = {{ {', '.join(names)} }}")
    return EXIT_OK


def _format_complex(z: complex) -> str:
    return f"{z.real:+.15e}{z.imag:+.15e}j"


def cmd_mub(args) -> int:
    dim = args.p ** (2 * args.k)
    try:
        if dim > verify.NUMERIC_MAX_DIM:
            raise ValueError(f"dimension {dim} exceeds the numeric guard {verify.NUMERIC_MAX_DIM}")
        params = ConstructionParams.create(args.p, args.k, 2)
        masas = build_masa_spread(params)
        bases = verify.extract_mub_bases(masas, seed=0)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    rep = verify.check_mub_overlaps(bases, args.tol, masas.labels())
    out = args.out or f"mub_p{args.p}_k{args.k}.txt"
    lines = [f"# {len(bases)} mutually unbiased bases of C^{dim} "
             f"(p={args.p}, k={args.k}, basis vectors are columns, one per line)"]
    for mem, basis in zip(masas.members, bases):
        lines.append(f"basis {mem.label}")
        for col in range(basis.shape[1]):
            lines.append(" ".join(_format_complex(z) for z in np.asarray(basis[:, col])))
    try:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write("\n".join(lines) + "\n")
    except OSError as exc:
        print(f"error: cannot write {out}: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {out}: {len(bases)} bases of C^{dim}")
    print(f"unbiasedness: {rep.describe()}")
    return EXIT_OK if rep.passed else EXIT_VERIFY_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qospread",
        description="Construct and verify maximal families of pairwise "
                    "quasi-orthogonal matrix subalgebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="build a family and write it to a file")
    gen.add_argument("--p", type=int, required=True, help="odd prime, the base dimension")
    gen.add_argument("--k", type=int, default=1, help="field extension degree (default 1)")
    gen.add_argument("--n", type=int, default=2, help="number of M_{p^k} blocks (default 2)")
    gen.add_argument("--out", required=True, help="output family file")
    gen.add_argument("--d-override", help="non-residue coordinates, comma separated")
    gen.add_argument("--poly-override", help="field polynomial low coefficients, comma separated")
    gen.set_defaults(func=cmd_generate)

    ver = sub.add_parser("verify", help="verify a stored family file")
    ver.add_argument("path", help="family file to verify")
    ver.add_argument("--mode", choices=("symbolic", "numeric", "both"), default="both")
    ver.add_argument("--tol", type=float, default=verify.DEFAULT_TOL)
    ver.add_argument("--sample", type=int, default=None,
                     help="number of member pairs for the numeric check (default: all, "
                          "or 200 when there are many)")
    ver.set_defaults(func=cmd_verify)

    exa = sub.add_parser("example", help="print the ten M_3 subalgebras of M_9 (D = 2)")
    exa.set_defaults(func=cmd_example)

    mub = sub.add_parser("mub", help="extract mutually unbiased bases from the masa spread")
    mub.add_argument("--p", type=int, required=True)
    mub.add_argument("--k", type=int, default=1)
    mub.add_argument("--out", default=None, help="output file (default mub_p{p}_k{k}.txt)")
    mub.add_argument("--tol", type=float, default=verify.DEFAULT_TOL)
    mub.set_defaults(func=cmd_mub)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface.

Exit codes: 0 success, 1 mathematical failure (a condition is false, the map
is not nilpotent, verification failed), 2 input or usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from . import formats
from .combinat import format_partition, parse_partition, subspace_count
from .errors import (
    ConditionsNotMet,
    InputError,
    JordanLatError,
    NotNilpotent,
    TooLarge,
    VerificationFailed,
)
from .gf import (
    all_matrices,
    block_partition_oracle,
    canonical_blocks,
    compute_jordan_chains,
    is_nilpotent,
    kernel_dimensions,
    random_nilpotent,
    verify_chain_basis,
)
from .jnb import compute_jnb, verify_jnb
from .joinhom import check_jnb1, check_jnb2, check_jnb3
from .lattice import MAX_ELEMENTS, boolean_lattice, chain_lattice, to_dot
from .sublattice import LEGS, cross_validate, enumerate_subspace_lattice

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
MAX_EXHAUSTIVE = 1 << 16


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    inputs: list = field(default_factory=list)
    prime: Optional[int] = None
    dim: Optional[int] = None
    seed: int = 0
    output: Optional[str] = None
    emit_dot: Optional[str] = None

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)


def _emit(text: str, path: Optional[str], out):
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        out.write(text)


def _show(L, witness) -> str:
    if isinstance(witness, tuple):
        return "(" + ", ".join(L.label(x) for x in witness) + ")"
    return L.label(witness)


def _verdict_line(L, name, verdict) -> str:
    if verdict.holds:
        return f"{name}: true"
    return f"{name}: false  witness {_show(L, verdict.witness)}"


# -- commands -------------------------------------------------------------------

def cmd_lattice_check(cfg: RunConfig, out) -> int:
    L, h = formats.load_lattice(cfg.inputs[0])
    verdicts = [("JNB1", check_jnb1(L))]
    if h is None:
        out.write(_verdict_line(L, "JNB1", verdicts[0][1]) + "\n")
        out.write("JNB2: skipped (no map)\nJNB3: skipped (no map)\n")
    else:
        verdicts += [("JNB2", check_jnb2(h)), ("JNB3", check_jnb3(h))]
        for name, v in verdicts:
            out.write(_verdict_line(L, name, v) + "\n")
    return EXIT_OK if all(v.holds for _, v in verdicts) else EXIT_FAIL


def cmd_lattice_solve(cfg: RunConfig, out, force: bool = False) -> int:
    L, h = formats.load_lattice(cfg.inputs[0])
    if h is None:
        raise UsageError('solve needs a "map" in the lattice file')
    try:
        base = compute_jnb(h, check=not force)
    except NotNilpotent as exc:
        out.write(f"{exc}\n")
        return EXIT_FAIL
    except ConditionsNotMet as exc:
        out.write(f"conditions fail: {exc}\n")
        return EXIT_FAIL
    except (VerificationFailed, JordanLatError) as exc:
        out.write(f"construction failed: {exc}\n")
        return EXIT_FAIL
    text = formats.dumps(formats.base_doc(L, base))
    if cfg.output:
        _emit(text, cfg.output, out)
    for t, ch in enumerate(base.chains, start=1):
        out.write(f"chain {t}: " + " <- ".join(L.label(a) for a in ch) + "\n")
    out.write(f"k = {format_partition(base.lengths)}\n")
    out.write(f"nilpotency index = {h.nilpotency_k}\n")
    if not cfg.output:
        out.write(text)
    if cfg.emit_dot:
        _emit(to_dot(L), cfg.emit_dot, out)
    return EXIT_OK


def cmd_verify(cfg: RunConfig, out) -> int:
    L, h = formats.load_lattice(cfg.inputs[0])
    if h is None:
        raise UsageError('verify needs a "map" in the lattice file')
    base = formats.parse_base(formats.read_json(cfg.inputs[1]), L, cfg.inputs[1])
    verdict = verify_jnb(h, base)
    if verdict:
        out.write(f"valid Jordan normal base, k = {format_partition(base.lengths)}\n")
        return EXIT_OK
    out.write(f"invalid: {verdict.witness}\n")
    return EXIT_FAIL


def cmd_matrix_chains(cfg: RunConfig, out) -> int:
    A = formats.load_matrix(cfg.inputs[0])
    try:
        B = compute_jordan_chains(A)
    except NotNilpotent:
        out.write("not nilpotent\n")
        return EXIT_FAIL
    verdict = verify_chain_basis(A, B)
    text = formats.dumps(formats.chain_basis_doc(B))
    _emit(text, cfg.output, out)
    out.write(f"partition {format_partition(B.lengths)}\n")
    out.write("verified\n" if verdict else f"verification failed: {verdict.witness}\n")
    return EXIT_OK if verdict else EXIT_FAIL


def cmd_matrix_oracle(cfg: RunConfig, out) -> int:
    A = formats.load_matrix(cfg.inputs[0])
    try:
        dims = kernel_dimensions(A)
    except NotNilpotent:
        out.write("not nilpotent\n")
        return EXIT_FAIL
    out.write("dim ker A^i: " + " ".join(str(d) for d in dims) + "\n")
    out.write(f"partition {format_partition(block_partition_oracle(A))}\n")
    return EXIT_OK


def _matrix_code(A) -> str:
    sep = "" if A.p <= 10 else ","
    return sep.join(str(v) for v in A.encoding())


def cmd_crosscheck(cfg: RunConfig, out, mode: str, count: int = 0,
                   matrix: Optional[str] = None, report: Optional[str] = None,
                   figure: Optional[str] = None) -> int:
    p, n = cfg.prime, cfg.dim
    total = subspace_count(n, p)
    if total > MAX_ELEMENTS:
        raise TooLarge(f"Sub(GF({p})^{n}) has {total} elements, cap is {MAX_ELEMENTS}", total)
    if mode == "matrix":
        A = formats.load_matrix(matrix)
        if A.p != p or A.rows != n:
            raise UsageError(f"matrix file is {A.rows}x{A.rows} over GF({A.p}), expected n={n}, p={p}")
        if not is_nilpotent(A):
            out.write("not nilpotent\n")
            return EXIT_FAIL
        mats = [A]
    elif mode == "exhaustive":
        if p ** (n * n) > MAX_EXHAUSTIVE:
            raise TooLarge(f"{p}^{n * n} matrices is too many for an exhaustive sweep", p ** (n * n))
        mats = [A for A in all_matrices(p, n) if is_nilpotent(A)]
    else:
        rng = cfg.rng()
        mats = [random_nilpotent(p, n, rng) for _ in range(count)]
    mats.sort(key=lambda A: A.encoding())

    enumerate_subspace_lattice(p, n)
    rows = []
    failures = 0
    for A in mats:
        rep = cross_validate(p, n, A)
        bad = rep.first_failure()
        failures += bad is not None
        rows.append((_matrix_code(A), format_partition(rep.oracle), "PASS" if bad is None else "FAIL",
                     "" if bad is None else f"{bad[0]}: {bad[1]}", rep))
        out.write("\t".join(rows[-1][:4]).rstrip("\t") + "\n")

    if failures:
        out.write(f"{failures} of {len(mats)} nilpotent matrices failed\n")
    else:
        out.write(f"all nilpotent matrices passed ({len(mats)} checked)\n")

    if report:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["matrix", "partition", *LEGS])
        for code, part, _, _, rep in rows:
            writer.writerow([code, part, *("pass" if rep.legs[leg][0] else "fail" for leg in LEGS)])
        Path(report).write_text(buf.getvalue(), encoding="utf-8")
    if figure:
        from .plotting import draw_type_tally

        draw_type_tally([rep.oracle for *_, rep in rows], figure,
                        title=f"Jordan types, GF({p})^{n}, {len(rows)} matrices")
    return EXIT_FAIL if failures else EXIT_OK


def cmd_gen(cfg: RunConfig, out, kind: str, length: Optional[int] = None,
            partition: Optional[str] = None) -> int:
    if kind == "boolean":
        doc = formats.lattice_doc(boolean_lattice(_need(cfg.dim, "--dim")))
    elif kind == "chain":
        doc = formats.lattice_doc(chain_lattice(_need(length if length is not None else cfg.dim, "--length")))
    elif kind == "subspace-lattice":
        model = enumerate_subspace_lattice(_need(cfg.prime, "--prime"), _need(cfg.dim, "--dim"))
        doc = formats.lattice_doc(model.lattice)
    elif kind == "nilpotent-matrix":
        A = random_nilpotent(_need(cfg.prime, "--prime"), _need(cfg.dim, "--dim"), cfg.rng())
        doc = formats.matrix_doc(A)
    elif kind == "canonical-blocks":
        try:
            parts = parse_partition(_need(partition, "--partition"))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        doc = formats.matrix_doc(canonical_blocks(parts, _need(cfg.prime, "--prime")))
    else:
        raise UsageError(f"unknown fixture kind {kind!r}")
    _emit(formats.dumps(doc), cfg.output, out)
    return EXIT_OK


def cmd_hasse(cfg: RunConfig, out, figure: Optional[str] = None) -> int:
    L, _ = formats.load_lattice(cfg.inputs[0])
    _emit(to_dot(L), cfg.emit_dot, out)
    if figure:
        from .plotting import draw_hasse

        draw_hasse(L, figure)
    return EXIT_OK


def _need(value, flag):
    if value is None:
        raise UsageError(f"{flag} is required")
    if isinstance(value, int) and value < 0:
        raise UsageError(f"{flag} must be non-negative")
    return value


# -- argument parsing ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jordanlat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="evaluate JNB1-JNB3 on a lattice file")
    p.add_argument("file")

    p = sub.add_parser("solve", help="compute a Jordan normal base")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.add_argument("--force", action="store_true", help="skip the JNB pre-checks")
    p.add_argument("--emit-dot")

    p = sub.add_parser("verify", help="verify a base file against a lattice file")
    p.add_argument("file")
    p.add_argument("base")

    p = sub.add_parser("chains", help="Jordan chains of a nilpotent matrix")
    p.add_argument("file")
    p.add_argument("-o", "--output")

    p = sub.add_parser("oracle", help="block partition from kernel dimensions")
    p.add_argument("file")

    p = sub.add_parser("crosscheck", help="cross-validate both engines on Sub(GF(p)^n)")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--dim", type=int, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--matrix")
    group.add_argument("--exhaustive", action="store_true")
    group.add_argument("--random", type=int, metavar="N")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report", help="write a per-matrix CSV report")
    p.add_argument("--figure", help="write a Jordan-type bar chart (PNG/PDF/SVG)")

    p = sub.add_parser("gen", help="write a deterministic fixture")
    p.add_argument("kind", choices=["boolean", "chain", "subspace-lattice", "nilpotent-matrix", "canonical-blocks"])
    p.add_argument("--dim", type=int)
    p.add_argument("--length", type=int)
    p.add_argument("--prime", type=int)
    p.add_argument("--partition")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")

    p = sub.add_parser("hasse", help="export the Hasse diagram")
    p.add_argument("file")
    p.add_argument("--emit-dot", help="DOT output path (default: stdout)")
    p.add_argument("--figure", help="render the diagram with matplotlib")
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    cfg = RunConfig(
        command=args.command,
        inputs=[v for v in (getattr(args, "file", None), getattr(args, "base", None)) if v],
        prime=getattr(args, "prime", None),
        dim=getattr(args, "dim", None),
        seed=getattr(args, "seed", 0),
        output=getattr(args, "output", None),
        emit_dot=getattr(args, "emit_dot", None),
    )
    try:
        if args.command == "check":
            return cmd_lattice_check(cfg, out)
        if args.command == "solve":
            return cmd_lattice_solve(cfg, out, force=args.force)
        if args.command == "verify":
            return cmd_verify(cfg, out)
        if args.command == "chains":
            return cmd_matrix_chains(cfg, out)
        if args.command == "oracle":
            return cmd_matrix_oracle(cfg, out)
        if args.command == "crosscheck":
            mode = "matrix" if args.matrix else "exhaustive" if args.exhaustive else "random"
            return cmd_crosscheck(cfg, out, mode, count=args.random or 0, matrix=args.matrix,
                                  report=args.report, figure=args.figure)
        if args.command == "gen":
            return cmd_gen(cfg, out, args.kind, length=args.length, partition=args.partition)
        if args.command == "hasse":
            return cmd_hasse(cfg, out, figure=args.figure)
    except (InputError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except JordanLatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_USAGE


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()

"""Command-line interface.

    realroots family {involutory2|psi|rotation|reflection|orthogonal|symmetric} [--params ...]
    realroots root {involutory|symmetric|orthogonal} --in FILE [--signs 1,-1] [--psi a:b,...]
    realroots tower --in FILE --depth K
    realroots idempotent (--blocks A B C D | --example a,b,c,d,n,m)
    realroots verify {involutory|idempotent|orthogonal} --in FILE
    realroots canonicalize {orthogonal|idempotent|involutory} --in FILE

Global flags (after the subcommand): --tol X (equality tolerance),
--seed N, --out DIR, --json.

Exit codes: 0 success, 1 I/O or parse error, 2 mathematical obstruction
(the error name is printed on stderr).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from . import errors, families, idempotent, roots
from .linalg import (
    Tolerances,
    as_square,
    frobenius,
    idempotent_residual,
    involutory_residual,
    is_idempotent,
    is_involutory,
    is_orthogonal,
    lu_invert,
    orthogonal_residual,
)
from .matrixio import format_matrix, read_matrix, write_matrix


class UsageError(Exception):
    pass


class ToleranceExceeded(errors.DomainError):
    pass


@dataclass
class Report:
    command: str
    status: str = "ok"
    info: list = field(default_factory=list)
    residuals: list = field(default_factory=list)  # (label, value, bound)
    outputs: list = field(default_factory=list)  # (label, matrix)
    table: Optional[tuple] = None  # (header, rows)
    error: Optional[str] = None
    message: Optional[str] = None
    paths: dict = field(default_factory=dict)

    def residual(self, label: str, value: float, bound: float) -> None:
        self.residuals.append((label, float(value), float(bound)))

    @property
    def verified(self) -> bool:
        return all(v <= b for _, v, b in self.residuals)

    def to_text(self) -> str:
        lines = [f"command = {self.command}", f"status = {self.status}"]
        if self.error:
            lines.append(f"error = {self.error}")
            return "\n".join(lines) + "\n"
        lines += [f"{k} = {v}" for k, v in self.info]
        for label, value, bound in self.residuals:
            lines.append(f"residual.{label} = {value:.6e}")
            lines.append(f"bound.{label} = {bound:.6e}")
        lines.append(f"verified = {'true' if self.verified else 'false'}")
        if self.table:
            header, rows = self.table
            lines.append("table:")
            lines.append("  ".join(header))
            for row in rows:
                lines.append("  ".join(_cell(x) for x in row))
        for label, mat in self.outputs:
            if label in self.paths:
                lines.append(f"output.{label} = {self.paths[label]}")
            else:
                lines.append(f"output.{label} =")
                lines.append(format_matrix(mat).rstrip("\n"))
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        obj = {"command": self.command, "status": self.status}
        if self.error:
            obj["error"] = self.error
            obj["message"] = self.message
            return json.dumps(obj, sort_keys=True) + "\n"
        obj["info"] = {k: v for k, v in self.info}
        obj["residuals"] = {label: value for label, value, _ in self.residuals}
        obj["bounds"] = {label: bound for label, _, bound in self.residuals}
        obj["verified"] = self.verified
        if self.table:
            header, rows = self.table
            obj["table"] = [dict(zip(header, row)) for row in rows]
        obj["outputs"] = {
            label: self.paths.get(label, np.asarray(mat).tolist()) for label, mat in self.outputs
        }
        return json.dumps(obj, sort_keys=True) + "\n"


def _cell(x) -> str:
    if isinstance(x, float):
        return f"{x:.6e}"
    return str(x)


def _floats(text: str, count: Optional[int] = None, what: str = "--params") -> list[float]:
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"{what}: expected comma-separated numbers, got {text!r}") from None
    if count is not None and len(values) != count:
        raise UsageError(f"{what}: expected {count} values, got {len(values)}")
    return values


def _bound(tol: Tolerances, a) -> float:
    return tol.eq_rtol * (1.0 + frobenius(a) ** 2)


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------

def cmd_family(args, tol: Tolerances, report: Report) -> None:
    kind = args.kind
    if kind == "involutory2":
        if args.params is None:
            param = families.sample_involutory_param(args.seed)
        elif args.branch == "general":
            param = families.General(*_floats(args.params, 2))
        elif args.branch == "lower":
            s, c = _floats(args.params, 2)
            param = families.LowerTriangular(int(s), c)
        else:
            (s,) = _floats(args.params, 1)
            param = families.Scalar(int(s))
        m = families.involutory_2x2(param)
        report.info.append(("param", repr(param)))
        report.residual("square_minus_identity", involutory_residual(m), _bound(tol, m))
    elif kind == "psi":
        if args.params is None:
            a, b = families.sample_psi_params(args.seed)
        else:
            a, b = _floats(args.params, 2)
        m = families.psi(a, b)
        report.info.append(("param", f"a={a!r}, b={b!r}"))
        report.residual("square_plus_identity", frobenius(m @ m + np.eye(2)), _bound(tol, m))
    elif kind in ("rotation", "reflection"):
        if args.params is None:
            raise UsageError(f"family {kind} needs --params THETA")
        (theta,) = _floats(args.params, 1)
        m = families.rotation(theta) if kind == "rotation" else families.reflection(theta)
        report.residual("orthogonality", orthogonal_residual(m), _bound(tol, m))
        if kind == "reflection":
            report.residual("square_minus_identity", involutory_residual(m), _bound(tol, m))
    elif kind == "orthogonal":
        m = families.sample_orthogonal(args.n, args.seed)
        report.residual("orthogonality", orthogonal_residual(m), _bound(tol, m))
    else:
        m = families.sample_symmetric_paired(args.n, args.pairs, args.seed)
        report.residual("asymmetry", frobenius(m - m.T), _bound(tol, m))
    report.outputs.append((kind, m))


def _root_options(args) -> roots.RootOptions:
    signs = None
    params = None
    if args.signs:
        signs = [int(v) for v in _floats(args.signs, what="--signs")]
    if args.psi:
        params = []
        for item in args.psi.split(","):
            try:
                a, b = item.split(":")
                params.append((float(a), float(b)))
            except ValueError:
                raise UsageError(f"--psi: expected a:b pairs, got {item!r}") from None
    return roots.RootOptions(signs=signs, psi_params=params)


def cmd_root(args, tol: Tolerances, report: Report) -> None:
    a = as_square(read_matrix(args.input))
    if args.kind == "involutory":
        r = roots.involutory_real_root(a, _root_options(args), tol)
    elif args.kind == "symmetric":
        r = roots.symmetric_real_root(a, _root_options(args), tol)
    else:
        r = roots.orthogonal_real_root(a, tol)
    report.residual("root_squared_minus_input", frobenius(r @ r - a), _bound(tol, a))
    if args.kind == "orthogonal":
        report.residual("root_orthogonality", orthogonal_residual(r), _bound(tol, r))
    report.outputs.append(("root", r))


def tower_report(q, depth: int, tol: Tolerances, report: Report) -> None:
    """Per-level distance of D_k to the identity and the power residual."""
    q = as_square(q)
    tower = roots.root_tower(q, depth, tol)
    rows = []
    for k in range(1, depth + 1):
        dist = tower.distance_to_identity(k)
        power = frobenius(tower.reconstruct(k) - q)
        rows.append((k, dist, power))
        report.residual(f"power_{k}", power, (2 ** k) * _bound(tol, q))
        step = tower.level_root(k)
        report.residual(
            f"telescoping_{k}", frobenius(step @ step - tower.level_root(k - 1)), _bound(tol, q)
        )
    report.table = (("k", "distance_to_identity", "power_residual"), rows)
    report.outputs.append((f"root_level_{depth}", tower.level_root(depth)))


def cmd_tower(args, tol: Tolerances, report: Report) -> None:
    tower_report(read_matrix(args.input), args.depth, tol, report)


def cmd_idempotent(args, tol: Tolerances, report: Report) -> None:
    if args.example:
        vals = _floats(args.example, 6, "--example")
        a, b, c, d = vals[:4]
        n, m = int(vals[4]), int(vals[5])
        if (n, m) != (vals[4], vals[5]):
            raise UsageError("--example: n and m must be integers")
        p, t = idempotent.example_family(a, b, c, d, n, m, tol)
        general = idempotent.block_idempotent(idempotent.example_quadruple(a, b, c, d, n, m), tol)
        report.residual("closed_form_minus_general", frobenius(p - general), _bound(tol, p))
    else:
        quad = idempotent.BlockQuadruple(*(read_matrix(path) for path in args.blocks))
        p = idempotent.block_idempotent(quad, tol)
        t = 2.0 * p - np.eye(p.shape[0])
    report.info.append(("trace", f"{np.trace(p):.12g}"))
    report.residual("idempotent", idempotent_residual(p), _bound(tol, p))
    report.residual("involutory", involutory_residual(t), _bound(tol, t))
    report.outputs.append(("P", p))
    report.outputs.append(("T", t))


_PREDICATES = {
    "involutory": (is_involutory, involutory_residual, "NotInvolutory"),
    "idempotent": (is_idempotent, idempotent_residual, "NotIdempotent"),
    "orthogonal": (is_orthogonal, orthogonal_residual, "NotOrthogonal"),
}


def cmd_verify(args, tol: Tolerances, report: Report) -> None:
    a = as_square(read_matrix(args.input))
    check, residual, error_name = _PREDICATES[args.kind]
    report.residual(args.kind, residual(a), _bound(tol, a))
    if not check(a, tol):
        raise getattr(errors, error_name)(f"residual {residual(a):.6e}")


def cmd_canonicalize(args, tol: Tolerances, report: Report) -> None:
    a = as_square(read_matrix(args.input))
    n = a.shape[0]
    if args.kind == "orthogonal":
        cls = roots.classify_orthogonal(a, tol)
        form = cls.form
        report.info.append(("blocks", ", ".join(str(b) for b in form.blocks)))
        report.info.append(("classification", cls.kind.value))
        report.info.append(("root_eligible", "true" if cls.root_eligible else "false"))
        report.residual("reconstruction", frobenius(form.reconstruct() - a), _bound(tol, a))
        report.residual("basis_orthogonality", orthogonal_residual(form.p), _bound(tol, form.p))
        report.outputs.append(("P", form.p))
    elif args.kind == "involutory":
        b, k = roots.involutory_eigenbasis(a, tol)
        target = np.diag([1.0] * k + [-1.0] * (n - k))
        report.info.append(("plus_count", str(k)))
        report.residual("similarity", frobenius(lu_invert(b, tol) @ a @ b - target), _bound(tol, a))
        report.outputs.append(("B", b))
    else:
        m, r = idempotent.idempotent_canonicalize(a, tol)
        target = idempotent.canonical_projection(n, r)
        report.info.append(("rank", str(r)))
        report.residual("similarity", frobenius(lu_invert(m, tol) @ a @ m - target), _bound(tol, a))
        report.outputs.append(("M", m))


# --------------------------------------------------------------------------
# parser and driver
# --------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_common(p: argparse.ArgumentParser, suppress: bool) -> None:
    # the subcommand copies use SUPPRESS so a flag given before the
    # subcommand is not reset by the subparser's defaults
    def default(value):
        return argparse.SUPPRESS if suppress else value

    p.add_argument("--tol", type=float, default=default(Tolerances().eq_rtol),
                   help="relative equality tolerance (default 1e-10)")
    p.add_argument("--seed", type=int, default=default(0))
    p.add_argument("--out", metavar="DIR", default=default(None),
                   help="write output matrices to DIR")
    p.add_argument("--json", action="store_true", default=default(False),
                   help="emit the report as JSON")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    _add_common(common, suppress=True)

    parser = _Parser(prog="realroots", description="Real square roots, involutions and idempotents.")
    _add_common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("family", parents=[common], help="emit a family member")
    p.add_argument("kind", choices=["involutory2", "psi", "rotation", "reflection",
                                    "orthogonal", "symmetric"])
    p.add_argument("--params", help="comma-separated parameters (use --params=-1,2 for negatives)")
    p.add_argument("--branch", choices=["general", "lower", "scalar"], default="general",
                   help="involutory2 branch for --params")
    p.add_argument("--n", type=int, default=4, help="size for orthogonal/symmetric samples")
    p.add_argument("--pairs", type=int, default=1, help="negative eigenvalue pairs (symmetric)")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("root", parents=[common], help="real square root")
    p.add_argument("kind", choices=["involutory", "symmetric", "orthogonal"])
    p.add_argument("--in", dest="input", required=True, metavar="FILE")
    p.add_argument("--signs", help="comma-separated +-1 root signs")
    p.add_argument("--psi", help="comma-separated a:b pairs for the 2x2 blocks")
    p.set_defaults(func=cmd_root)

    p = sub.add_parser("tower", parents=[common], help="root-approximation tower")
    p.add_argument("--in", dest="input", required=True, metavar="FILE")
    p.add_argument("--depth", type=int, required=True)
    p.set_defaults(func=cmd_tower)

    p = sub.add_parser("idempotent", parents=[common], help="block idempotent and 2P - I")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--blocks", nargs=4, metavar=("A", "B", "C", "D"))
    group.add_argument("--example", metavar="a,b,c,d,n,m")
    p.set_defaults(func=cmd_idempotent)

    p = sub.add_parser("verify", parents=[common], help="check a matrix property")
    p.add_argument("kind", choices=sorted(_PREDICATES))
    p.add_argument("--in", dest="input", required=True, metavar="FILE")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("canonicalize", parents=[common], help="canonical form")
    p.add_argument("kind", choices=["orthogonal", "idempotent", "involutory"])
    p.add_argument("--in", dest="input", required=True, metavar="FILE")
    p.set_defaults(func=cmd_canonicalize)
    return parser


def _command_name(args) -> str:
    kind = getattr(args, "kind", None)
    return f"{args.command} {kind}" if kind else args.command


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        tol = Tolerances(eq_rtol=args.tol)
    except (UsageError, ValueError) as exc:
        print(f"error: UsageError: {exc}", file=stderr)
        return 1

    report = Report(command=_command_name(args))
    render = report.to_json if args.json else report.to_text
    try:
        args.func(args, tol, report)
        if not report.verified:
            raise ToleranceExceeded("a residual exceeded its bound")
        if args.out:
            out = Path(args.out)
            out.mkdir(parents=True, exist_ok=True)
            for label, mat in report.outputs:
                path = out / f"{label}.mat"
                write_matrix(path, mat)
                report.paths[label] = str(path)
    except errors.DomainError as exc:
        report.status, report.error, report.message = "error", exc.name, str(exc)
        stdout.write(render())
        print(f"error: {exc.name}: {exc}", file=stderr)
        return 2
    except (errors.RealRootsError, UsageError, ValueError, OSError) as exc:
        name = exc.name if isinstance(exc, errors.RealRootsError) else type(exc).__name__
        report.status, report.error, report.message = "error", name, str(exc)
        stdout.write(render())
        print(f"error: {name}: {exc}", file=stderr)
        return 1
    stdout.write(render())
    return 0


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())

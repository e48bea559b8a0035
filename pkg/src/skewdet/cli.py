"""Command-line front end: parse problem files, dispatch engines, report.

Problem files are JSON with a field descriptor and a dense matrix of entry
coefficient lists (ascending s-degree, missing trailing coefficients zero)::

    {
      "field": {"base": "rationals", "variable": "t", "twist": "differential"},
      "matrix": [[["0", "1"], ["0", "t"]],
                 [["1"],       ["t"]]],
      "bound": 4,
      "algorithm": "all"
    }

``base`` is "rationals" or "prime" (with "p"); the presence of "variable"
selects the rational function field over it.  Scalars use the text grammar:
integers, a/b fractions, polynomials like ``3t^2 - 1/2``, and rational
functions written ``(poly)/(poly)``.

Commands: zeta, degdet, orddet, dimension, smith.  Output is line-oriented
``key = value`` (or one JSON object with --format json).  Exit codes:
0 success, 2 parse error, 3 engine disagreement, 4 unsupported twist.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from typing import Optional

from .errors import (
    EngineDisagreementError,
    ParseError,
    SkewdetError,
    UnsupportedTwistError,
)
from .field import (
    Commutative,
    Differential,
    FieldSpec,
    PrimeField,
    QShift,
    RationalFunctions,
    Rationals,
    Shift,
    format_scalar,
    parse_scalar,
)
from .linalg import scalar_matrix
from .outcomes import Deg, Dim, Ord, Zeta
from .skewapp import (
    SkewPolyMatrix,
    deg_det,
    ord_det,
    properized_coeffs,
    run_zeta_engines,
    skew_poly_matrix,
    smith_data,
    solution_dimension,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DISAGREE = 3
EXIT_UNSUPPORTED = 4


def parse_field(desc: dict) -> FieldSpec:
    kind = desc.get("base", "rationals")
    if kind == "rationals":
        inner = Rationals()
    elif kind == "prime":
        if "p" not in desc:
            raise ParseError("prime base requires \"p\"")
        inner = PrimeField(int(desc["p"]))
    else:
        raise ParseError(f"unknown base {kind!r}")
    if "variable" in desc:
        base = RationalFunctions(inner, str(desc["variable"]))
    else:
        base = inner
    twist_name = desc.get("twist", "commutative")
    if twist_name == "commutative":
        twist = Commutative()
    elif twist_name == "differential":
        twist = Differential()
    elif twist_name == "shift":
        twist = Shift()
    elif twist_name == "qshift":
        if "q" not in desc:
            raise ParseError("qshift twist requires \"q\"")
        qtext = str(desc["q"])
        if isinstance(inner, Rationals):
            q = Fraction(qtext)
        else:
            q = int(qtext) % inner.p
        twist = QShift(q)
    else:
        raise ParseError(f"unknown twist {twist_name!r}")
    try:
        return FieldSpec(base, twist)
    except SkewdetError as exc:
        raise ParseError(str(exc)) from exc


def parse_problem(doc: dict) -> tuple[SkewPolyMatrix, Optional[int], str]:
    if "field" not in doc or "matrix" not in doc:
        raise ParseError("problem file needs \"field\" and \"matrix\"")
    spec = parse_field(doc["field"])
    grid = doc["matrix"]
    n = len(grid)
    if n == 0 or any(len(row) != n for row in grid):
        raise ParseError("matrix must be square and nonempty")
    entries = []
    ell = 0
    for row in grid:
        parsed_row = []
        for cell in row:
            if isinstance(cell, str):
                cell = [cell]
            coeffs = [parse_scalar(spec, text) for text in cell]
            ell = max(ell, len(coeffs) - 1)
            parsed_row.append(coeffs)
        entries.append(parsed_row)
    from .field import scalar_zero

    zero = scalar_zero(spec)
    coeff_mats = []
    for d in range(ell + 1):
        coeff_mats.append(
            scalar_matrix(
                spec,
                [
                    [
                        entries[i][j][d] if d < len(entries[i][j]) else zero
                        for j in range(n)
                    ]
                    for i in range(n)
                ],
            )
        )
    matrix = skew_poly_matrix(spec, coeff_mats)
    bound = doc.get("bound")
    algorithm = doc.get("algorithm", "all")
    return matrix, bound, algorithm


def load_problem(path: str) -> tuple[SkewPolyMatrix, Optional[int], str]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read problem file: {exc}") from exc
    return parse_problem(doc)


def format_problem(matrix: SkewPolyMatrix) -> dict:
    """Canonical JSON document for a matrix (round-trip surface)."""
    spec = matrix.spec
    field: dict = {}
    base = spec.base
    inner = base.base if isinstance(base, RationalFunctions) else base
    field["base"] = "rationals" if isinstance(inner, Rationals) else "prime"
    if isinstance(inner, PrimeField):
        field["p"] = inner.p
    if isinstance(base, RationalFunctions):
        field["variable"] = base.var
    twist = spec.twist
    if isinstance(twist, Commutative):
        field["twist"] = "commutative"
    elif isinstance(twist, Differential):
        field["twist"] = "differential"
    elif isinstance(twist, Shift):
        field["twist"] = "shift"
    else:
        field["twist"] = "qshift"
        q = twist.q
        field["q"] = str(q)
    grid = []
    for i in range(matrix.n):
        row = []
        for j in range(matrix.n):
            cell = [format_scalar(matrix.coeffs[d].get(i, j)) for d in range(matrix.ell + 1)]
            while len(cell) > 1 and cell[-1] == "0":
                cell.pop()
            row.append(cell)
        grid.append(row)
    return {"field": field, "matrix": grid}


class _Report:
    def __init__(self, fmt: str):
        self.fmt = fmt
        self.items: list[tuple[str, object]] = []

    def add(self, key: str, value):
        self.items.append((key, value))

    def emit(self):
        if self.fmt == "json":
            print(json.dumps(dict(self.items)))
        else:
            for key, value in self.items:
                print(f"{key} = {value}")


def _open_trace(path: Optional[str]):
    return open(path, "w", encoding="utf-8") if path else None


def _run(args) -> int:
    matrix, file_bound, file_algo = load_problem(args.file)
    algo = args.algo or file_algo
    bound = args.bound if args.bound is not None else file_bound
    budget = bound if bound is not None else matrix.ell * matrix.n
    report = _Report(args.format)
    trace = _open_trace(args.trace)
    started = time.perf_counter()
    try:
        if args.command == "zeta":
            res = run_zeta_engines(
                properized_coeffs(matrix), budget, algo, trace_sink=trace
            )
            report.add("zeta", res.value if isinstance(res, Zeta) else "+inf (beyond bound)")
        elif args.command == "degdet":
            res = deg_det(matrix, algo, bound=bound, trace_sink=trace)
            report.add("degdet", res.value if isinstance(res, Deg) else "-inf (singular)")
        elif args.command == "orddet":
            res = ord_det(matrix, algo)
            report.add("orddet", res.value if isinstance(res, Ord) else "+inf (singular)")
        elif args.command == "dimension":
            res = solution_dimension(matrix, algo)
            report.add("dimension", res.value if isinstance(res, Dim) else "infinite")
            report.add("note", "dimension over an adequate extension")
            if isinstance(matrix.spec.twist, QShift):
                report.add(
                    "caveat", "difference-case formula extrapolated to the q-shift twist"
                )
        elif args.command == "smith":
            profile = smith_data(matrix)
            report.add("rank", profile.rank)
            report.add("alpha", list(profile.exponents))
            report.add("omega", list(profile.omegas))
            report.add("zeta", list(profile.zetas))
        else:  # pragma: no cover - argparse guards
            raise SkewdetError(f"unknown command {args.command}")
    finally:
        if trace:
            trace.close()
    report.add("algorithm", algo)
    report.add("bound", budget)
    report.add("time_ms", round((time.perf_counter() - started) * 1000.0, 3))
    report.emit()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skewdet",
        description="Valuations of Dieudonne determinants of skew polynomial matrices",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("zeta", "valuation of the properized matrix A s^(-l)"),
        ("degdet", "degree of the Dieudonne determinant"),
        ("orddet", "order of the Dieudonne determinant (delta = 0 twists)"),
        ("dimension", "solution space dimension of the system"),
        ("smith", "Smith-McMillan exponents and expansion ranks"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", help="problem file (JSON)")
        p.add_argument(
            "--algo",
            choices=["relax", "expand", "oracle", "all"],
            default=None,
            help="engine selection (default: file setting or all)",
        )
        p.add_argument("--bound", type=int, default=None, help="budget override")
        p.add_argument("--trace", default=None, help="write relaxation trace (JSONL)")
        p.add_argument("--format", choices=["text", "json"], default="text")
    return parser


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except EngineDisagreementError as exc:
        print(f"engine disagreement: {exc}", file=sys.stderr)
        return EXIT_DISAGREE
    except UnsupportedTwistError as exc:
        print(f"unsupported twist: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED


if __name__ == "__main__":
    sys.exit(main())

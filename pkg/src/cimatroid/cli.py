"""Command line front end.

Verbs:

* ``check FILE --axioms sg,mci,gaussoid,matroid-ci`` (ci files) or
  ``--axioms oci`` (oci files): run the named checkers.  Witnesses print
  one per line, machine readable and prefixed with ``!`` as
  ``! AXIOM i j l | K ; L``; unprefixed lines are for humans.
* ``convert FILE --to KIND [-o OUT] [--verify]``: the supported
  conversion pairs are ci->matroid, matroid->ci, signed-circuits->oci,
  oci->signed-circuits, chirotope->oci, setfn->ci, matrix->ci and
  vectors->chirotope / vectors->signed-circuits.  ``--verify`` runs the
  inverse conversion where one exists and diffs.
* ``op delete|contract|dual|direct-sum|minors``: structural operations
  on ci files.
* ``enumerate --kind matroids|matroid-ci|gaussoid-matroids --n N``:
  census counts, cross-checked between independent routes where two
  exist; ``--emit DIR`` writes every object.
* ``demo gm --m M``: the minor-minimality demonstration family.
* ``realize FILE --as chirotope|signed-circuits|ci``: build CI data
  from a vectors or matrix file (shorthand for the matching convert).

Exit codes: 0 all checks pass, 1 violations or a failed verification,
2 malformed input or violated preconditions.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field

from . import formats
from .axioms import check_gaussoid, check_mci, check_semigraphoid, is_matroid_ci
from .ci import CIStructure, minors as ci_minors
from .errors import CIMatroidError
from .matroid import (
    Matroid,
    ci_of_matroid,
    enumerate_loopless_matroids,
    g_family,
    gaussoid_matroid_decision,
    rank_from_ci,
    semimatroid_of_set_function,
)
from .oriented import (
    OrientedCIStructure,
    check_oci,
    oriented_matroid_from_sigma,
    sigma_from_chirotope,
    sigma_of_oriented_matroid,
)
from .models import chirotope_from_vectors, gaussian_ci, signed_circuits_from_vectors
from .scan import matroid_ci_masks

PASS, VIOLATIONS, ERROR = 0, 1, 2


@dataclass
class Report:
    status: str = "pass"  # "pass" | "violations" | "error"
    lines: list[str] = field(default_factory=list)

    def say(self, text: str = "") -> None:
        self.lines.append(text)

    def witness(self, line: str) -> None:
        self.lines.append(f"! {line}")
        self.status = "violations"

    def fail(self, text: str) -> None:
        self.lines.append(text)
        self.status = "error"

    @property
    def exit_code(self) -> int:
        return {"pass": PASS, "violations": VIOLATIONS, "error": ERROR}[self.status]


def _parse_elements(text: str) -> frozenset[int]:
    if not text.strip():
        return frozenset()
    try:
        return frozenset(int(t) for t in text.replace(",", " ").split())
    except ValueError:
        raise CIMatroidError(f"element list {text!r} is not comma-separated integers") from None


def _write_output(report: Report, text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as handle:
            handle.write(text)
        report.say(f"wrote {out_path}")
    else:
        report.say(text.rstrip("\n"))


# -- check --------------------------------------------------------------------

_CI_CHECKERS = {
    "sg": check_semigraphoid,
    "mci": check_mci,
    "gaussoid": check_gaussoid,
    "matroid-ci": lambda G: check_mci(G) + check_semigraphoid(G),
}


def cmd_check(args) -> Report:
    report = Report()
    obj = formats.load(args.input)
    tags = [t.strip() for t in args.axioms.split(",") if t.strip()]
    if not tags:
        raise CIMatroidError("no axiom tags given")
    for tag in tags:
        if isinstance(obj, CIStructure):
            if tag not in _CI_CHECKERS:
                raise CIMatroidError(f"axiom tag {tag!r} does not apply to a ci file")
            witnesses = _CI_CHECKERS[tag](obj)
        elif isinstance(obj, OrientedCIStructure):
            if tag != "oci":
                raise CIMatroidError(f"axiom tag {tag!r} does not apply to an oci file")
            witnesses = check_oci(obj)
        else:
            raise CIMatroidError(f"check expects a ci or oci file, not {type(obj).__name__}")
        if witnesses:
            report.say(f"{tag}: {len(witnesses)} violation(s)")
            for w in witnesses:
                report.witness(w.format_line())
        else:
            report.say(f"{tag}: pass")
    return report


# -- convert and realize --------------------------------------------------------

def _convert(obj, target: str):
    from .matroid import SetFunction
    from .models import RationalMatrix, VectorConfiguration
    from .oriented import Chirotope, SignedCircuitSet

    if isinstance(obj, CIStructure) and target == "matroid":
        return Matroid(rank_from_ci(obj))
    if isinstance(obj, Matroid) and target == "ci":
        return ci_of_matroid(obj)
    if isinstance(obj, SignedCircuitSet) and target == "oci":
        return sigma_of_oriented_matroid(obj)
    if isinstance(obj, OrientedCIStructure) and target == "signed-circuits":
        return oriented_matroid_from_sigma(obj)
    if isinstance(obj, Chirotope) and target == "oci":
        return sigma_from_chirotope(obj)
    if isinstance(obj, SetFunction) and target == "ci":
        return semimatroid_of_set_function(obj)
    if isinstance(obj, RationalMatrix) and target == "ci":
        return gaussian_ci(obj)
    if isinstance(obj, VectorConfiguration) and target == "chirotope":
        return chirotope_from_vectors(obj)
    if isinstance(obj, VectorConfiguration) and target == "signed-circuits":
        return signed_circuits_from_vectors(obj)
    raise CIMatroidError(
        f"unsupported conversion {type(obj).__name__} -> {target}")


_INVERSES = {
    ("CIStructure", "matroid"): "ci",
    ("Matroid", "ci"): "matroid",
    ("SignedCircuitSet", "oci"): "signed-circuits",
    ("OrientedCIStructure", "signed-circuits"): "oci",
}


def cmd_convert(args) -> Report:
    report = Report()
    obj = formats.load(args.input)
    result = _convert(obj, args.to)
    _write_output(report, formats.dumps(result), args.output)
    if args.verify:
        key = (type(obj).__name__, args.to)
        if key not in _INVERSES:
            raise CIMatroidError(f"no inverse conversion for {key[0]} -> {args.to}")
        back = _convert(result, _INVERSES[key])
        if back == obj:
            report.say("verify: round trip reproduces the input")
        else:
            report.status = "violations"
            report.say("verify: round trip differs from the input")
            for line in _diff_lines(obj, back):
                report.witness(line)
    return report


def _diff_lines(a, b) -> list[str]:
    if isinstance(a, CIStructure) and isinstance(b, CIStructure):
        sa, sb = set(a.statements()), set(b.statements())
        return [f"only in input: {s}" for s in sorted(sa - sb, key=str)] + \
               [f"only in round trip: {s}" for s in sorted(sb - sa, key=str)]
    return [f"input {a!r} != round trip {b!r}"]


def cmd_realize(args) -> Report:
    report = Report()
    obj = formats.load(args.input)
    result = _convert(obj, getattr(args, "as_kind"))
    _write_output(report, formats.dumps(result), args.output)
    return report


# -- structural operations -------------------------------------------------------

def cmd_op(args) -> Report:
    report = Report()
    G = formats.load(args.input)
    if not isinstance(G, CIStructure):
        raise CIMatroidError("op expects a ci file")
    if args.operation == "delete":
        result = G.delete(_parse_elements(args.elements))
    elif args.operation == "contract":
        result = G.contract(_parse_elements(args.elements))
    elif args.operation == "dual":
        result = G.dual()
    elif args.operation == "direct-sum":
        if not args.other:
            raise CIMatroidError("direct-sum needs --other with a second ci file")
        other = formats.load(args.other)
        if not isinstance(other, CIStructure):
            raise CIMatroidError("direct-sum expects a second ci file")
        result = G.direct_sum(other)
    elif args.operation == "minors":
        for m in ci_minors(G):
            deleted = ",".join(map(str, sorted(m.deleted))) or "-"
            contracted = ",".join(map(str, sorted(m.contracted))) or "-"
            flag = "proper" if m.proper else "trivial"
            report.say(f"delete {deleted} contract {contracted} "
                       f"[{flag}] members {len(m.structure)}")
        return report
    else:  # pragma: no cover - argparse restricts choices
        raise CIMatroidError(f"unknown operation {args.operation!r}")
    _write_output(report, formats.dumps(result), args.output)
    return report


# -- enumeration ------------------------------------------------------------------

def cmd_enumerate(args) -> Report:
    report = Report()
    emitted = []
    if args.kind == "matroids":
        objects = enumerate_loopless_matroids(args.n)
        report.say(f"loopless matroids on [{args.n}]: {len(objects)}")
        emitted = objects
    elif args.kind == "matroid-ci":
        masks = matroid_ci_masks(args.n, backend=args.backend)
        oracle = enumerate_loopless_matroids(args.n)
        report.say(f"matroid CI-structures on [{args.n}]: {len(masks)}")
        report.say(f"loopless matroid oracle count: {len(oracle)}")
        if len(masks) != len(oracle):
            report.fail("scan and oracle disagree")
            return report
        report.say("scan count matches the oracle")
        emitted = [CIStructure.from_mask(args.n, int(m)) for m in masks]
    elif args.kind == "gaussoid-matroids":
        if args.n > 4:
            raise CIMatroidError("gaussoid-matroids census is capped at n <= 4")
        structural, axiomatic = [], []
        for M in enumerate_loopless_matroids(args.n):
            if gaussoid_matroid_decision(M):
                structural.append(M)
            if not check_gaussoid(ci_of_matroid(M)):
                axiomatic.append(M)
        report.say(f"gaussoid matroids on [{args.n}]: {len(structural)}")
        if structural != axiomatic:
            report.fail("structural decision and axiom checker disagree")
            return report
        report.say("structural route matches the axiom checker")
        emitted = structural
    else:  # pragma: no cover - argparse restricts choices
        raise CIMatroidError(f"unknown census {args.kind!r}")
    if args.emit:
        import os

        os.makedirs(args.emit, exist_ok=True)
        for t, obj in enumerate(emitted):
            path = os.path.join(args.emit, f"{args.kind}-{args.n}-{t:05d}.txt")
            formats.dump(obj, path)
        report.say(f"emitted {len(emitted)} files to {args.emit}")
    return report


# -- demonstration family -----------------------------------------------------------

def cmd_demo(args) -> Report:
    report = Report()
    if not 4 <= args.m <= 6:
        raise CIMatroidError(f"demo gm supports 4 <= m <= 6, got {args.m}")
    G = g_family(args.m)
    if args.output:
        formats.dump(G, args.output)
        report.say(f"wrote {args.output}")
    report.say(f"family member on [{args.m}]: {len(G)} statements")
    witnesses = check_mci(G)
    if witnesses:
        w = witnesses[0]
        i, j, l = w.elements
        K, L = w.sets
        ktext = " ".join(map(str, sorted(K)))
        ltext = " ".join(map(str, sorted(L | {j} | K)))
        report.say(f"not a matroid: MCI witness ({i},{j} | {ktext}) vs ({i},{l} | {ltext})")
    else:
        report.fail("expected an MCI violation and found none")
        return report
    passed = failed = 0
    for e in range(1, args.m + 1):
        for name, minor in (("delete", G.delete({e})), ("contract", G.contract({e}))):
            ok = is_matroid_ci(minor)
            passed += ok
            failed += not ok
            report.say(f"{name} {e}: {'matroid' if ok else 'NOT a matroid'}")
    report.say(f"single-element minors: {passed} matroidal, {failed} not")
    return report


# -- wiring ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cimatroid",
        description="CI-structures, matroids and oriented matroids: "
                    "checks, conversions and censuses.")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("check", help="run axiom checkers on a ci or oci file")
    p.add_argument("input")
    p.add_argument("--axioms", required=True,
                   help="comma list from sg,mci,gaussoid,matroid-ci,oci")
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("convert", help="convert between object kinds")
    p.add_argument("input")
    p.add_argument("--to", required=True,
                   choices=["matroid", "ci", "oci", "signed-circuits", "chirotope"])
    p.add_argument("-o", "--output")
    p.add_argument("--verify", action="store_true",
                   help="run the inverse conversion and compare")
    p.set_defaults(handler=cmd_convert)

    p = sub.add_parser("op", help="structural operations on ci files")
    p.add_argument("operation",
                   choices=["delete", "contract", "dual", "direct-sum", "minors"])
    p.add_argument("input")
    p.add_argument("-e", "--elements", default="",
                   help="elements for delete/contract, e.g. 1,3")
    p.add_argument("--other", help="second ci file for direct-sum")
    p.add_argument("-o", "--output")
    p.set_defaults(handler=cmd_op)

    p = sub.add_parser("enumerate", help="census counts with oracle cross-checks")
    p.add_argument("--kind", required=True,
                   choices=["matroids", "matroid-ci", "gaussoid-matroids"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--emit", help="directory to write every object")
    p.add_argument("--backend", choices=["numba", "numpy", "auto"],
                   help="kernel for the matroid-ci scan")
    p.set_defaults(handler=cmd_enumerate)

    p = sub.add_parser("demo", help="built-in demonstrations")
    p.add_argument("family", choices=["gm"])
    p.add_argument("--m", type=int, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(handler=cmd_demo)

    p = sub.add_parser("realize", help="build CI data from vectors or a matrix")
    p.add_argument("input")
    p.add_argument("--as", dest="as_kind", required=True,
                   choices=["chirotope", "signed-circuits", "ci"])
    p.add_argument("-o", "--output")
    p.set_defaults(handler=cmd_realize)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.handler(args)
    except (CIMatroidError, ValueError) as exc:
        # precondition and validation failures, including axiom errors
        print(f"error: {exc}", file=sys.stderr)
        return ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR
    for line in report.lines:
        print(line)
    return report.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

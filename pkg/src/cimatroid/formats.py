"""Text formats for every object the command line reads and writes.

All formats are UTF-8 with '#' comments allowed anywhere (to end of
line) and a header line naming the kind and the dimensions:

* ``ci n=<n>``              one member statement per line: ``i j | k1 k2``
* ``oci n=<n>``             signed statements: ``+ i j | K`` / ``- i j | K``
* ``matroid n=<n>``         then ``rank`` with one ``elements : value`` line
                            per subset (the empty set line is ``: 0``), or
                            ``bases`` with one basis per line
* ``setfn n=<n>``           like ``rank`` but with rational values ``p/q``
* ``signed-circuits n=<n>`` one representative per negation pair:
                            ``+ e1 e2 - e3`` (the negation is implicit)
* ``chirotope n=<n> r=<r>`` lines ``e1 ... er +`` / ``... -``; unlisted
                            sorted tuples are zero
* ``matrix n=<n>``          n rows of n rationals
* ``vectors d=<d> n=<n>``   d rows of n rationals; column c is vector c

Parsers reject duplicates, out-of-range elements and malformed lines
with :class:`~cimatroid.errors.FormatError`; the matroid parser
additionally validates the matroid axioms on load.
"""

from __future__ import annotations

from fractions import Fraction

from .ci import CIStatement, CIStructure
from .errors import AxiomError, FormatError
from .matroid import Matroid, RankFunction, SetFunction
from .models import RationalMatrix, VectorConfiguration
from .oriented import Chirotope, OrientedCIStructure, SignedCircuitSet, SignedSet
from .bitsets import mask_of, set_of

KINDS = ("ci", "oci", "matroid", "setfn", "signed-circuits", "chirotope",
         "matrix", "vectors")


def _content_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((lineno, line))
    return out


def _header_fields(line: str, lineno: int, kind: str, names: tuple[str, ...]) -> dict[str, int]:
    parts = line.split()
    if parts[0] != kind or len(parts) != 1 + len(names):
        raise FormatError(f"line {lineno}: expected header '{kind} "
                          + " ".join(f"{n}=<{n}>" for n in names) + f"', got {line!r}")
    values = {}
    for part, name in zip(parts[1:], names):
        if not part.startswith(name + "="):
            raise FormatError(f"line {lineno}: expected '{name}=<value>', got {part!r}")
        try:
            values[name] = int(part[len(name) + 1:])
        except ValueError:
            raise FormatError(f"line {lineno}: {part!r} is not an integer field") from None
    return values


def _parse_header(text: str, kind: str, names: tuple[str, ...]):
    lines = _content_lines(text)
    if not lines:
        raise FormatError("empty input")
    header = _header_fields(lines[0][1], lines[0][0], kind, names)
    return header, lines[1:]


def _parse_int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise FormatError(f"line {lineno}: {token!r} is not an element") from None


def _parse_fraction(token: str, lineno: int) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"line {lineno}: {token!r} is not a rational p/q") from None


def _parse_statement(line: str, lineno: int, n: int) -> CIStatement:
    if "|" not in line:
        raise FormatError(f"line {lineno}: statement needs a '|', got {line!r}")
    left, right = line.split("|", 1)
    pair = [_parse_int(t, lineno) for t in left.split()]
    K = [_parse_int(t, lineno) for t in right.split()]
    if len(pair) != 2:
        raise FormatError(f"line {lineno}: expected 'i j | K', got {line!r}")
    for e in pair + K:
        if not 1 <= e <= n:
            raise FormatError(f"line {lineno}: element {e} outside [{n}]")
    if len(set(K)) != len(K):
        raise FormatError(f"line {lineno}: repeated conditioning element")
    try:
        return CIStatement(pair[0], pair[1], K)
    except ValueError as exc:
        raise FormatError(f"line {lineno}: {exc}") from None


def kind_of(text: str) -> str:
    lines = _content_lines(text)
    if not lines:
        raise FormatError("empty input")
    head = lines[0][1].split()[0]
    if head not in KINDS:
        raise FormatError(f"unknown format kind {head!r}; expected one of {KINDS}")
    return head


# -- ci ------------------------------------------------------------------


def parse_ci(text: str) -> CIStructure:
    header, body = _parse_header(text, "ci", ("n",))
    n = header["n"]
    members = []
    seen = set()
    for lineno, line in body:
        s = _parse_statement(line, lineno, n)
        if s in seen:
            raise FormatError(f"line {lineno}: duplicate statement {s}")
        seen.add(s)
        members.append(s)
    try:
        return CIStructure(n, members)
    except Exception as exc:
        raise FormatError(str(exc)) from exc


def serialize_ci(G: CIStructure) -> str:
    lines = [f"ci n={G.n}"]
    for s in G.statements():
        K = " ".join(str(k) for k in sorted(s.K))
        lines.append(f"{s.i} {s.j} | {K}".rstrip())
    return "\n".join(lines) + "\n"


# -- oci -----------------------------------------------------------------


def parse_oci(text: str) -> OrientedCIStructure:
    header, body = _parse_header(text, "oci", ("n",))
    n = header["n"]
    positives, negatives = [], []
    seen = set()
    for lineno, line in body:
        sign, rest = line[:1], line[1:].strip()
        if sign not in "+-":
            raise FormatError(f"line {lineno}: expected '+ i j | K' or '- i j | K'")
        s = _parse_statement(rest, lineno, n)
        if s in seen:
            raise FormatError(f"line {lineno}: duplicate statement {s}")
        seen.add(s)
        (positives if sign == "+" else negatives).append(s)
    return OrientedCIStructure(n, positives, negatives)


def serialize_oci(sigma: OrientedCIStructure) -> str:
    lines = [f"oci n={sigma.n}"]
    for sign, s in sigma.signed_statements():
        K = " ".join(str(k) for k in sorted(s.K))
        lines.append(f"{'+' if sign > 0 else '-'} {s.i} {s.j} | {K}".rstrip())
    return "\n".join(lines) + "\n"


# -- matroid and set functions --------------------------------------------


def _parse_subset_value_lines(lines, n, parse_value):
    values = {}
    for lineno, line in lines:
        if ":" not in line:
            raise FormatError(f"line {lineno}: expected 'elements : value'")
        left, right = line.split(":", 1)
        elements = [_parse_int(t, lineno) for t in left.split()]
        if len(set(elements)) != len(elements):
            raise FormatError(f"line {lineno}: repeated element")
        for e in elements:
            if not 1 <= e <= n:
                raise FormatError(f"line {lineno}: element {e} outside [{n}]")
        mask = mask_of(elements)
        if mask in values:
            raise FormatError(f"line {lineno}: duplicate subset {sorted(elements)}")
        values[mask] = parse_value(right.strip(), lineno)
    if len(values) != 1 << n:
        raise FormatError(f"expected all {1 << n} subsets of [{n}], got {len(values)}")
    return [values[m] for m in range(1 << n)]


def parse_matroid(text: str) -> Matroid:
    header, body = _parse_header(text, "matroid", ("n",))
    n = header["n"]
    if not body or body[0][1] not in ("rank", "bases"):
        raise FormatError("matroid body must start with 'rank' or 'bases'")
    mode = body[0][1]
    body = body[1:]
    try:
        if mode == "rank":
            values = _parse_subset_value_lines(body, n, _parse_int)
            return Matroid(RankFunction(n, values))
        bases = []
        for lineno, line in body:
            elements = [_parse_int(t, lineno) for t in line.split()]
            for e in elements:
                if not 1 <= e <= n:
                    raise FormatError(f"line {lineno}: element {e} outside [{n}]")
            bases.append(frozenset(elements))
        if not bases:
            raise FormatError("bases section is empty")
        return Matroid.from_bases(n, bases)
    except AxiomError as exc:
        raise FormatError(f"input is not a matroid: {exc}") from exc
    except FormatError:
        raise
    except ValueError as exc:
        raise FormatError(f"invalid matroid data: {exc}") from exc


def serialize_matroid(M: Matroid) -> str:
    lines = [f"matroid n={M.n}", "rank"]
    for mask in range(1 << M.n):
        elements = " ".join(str(e) for e in sorted(set_of(mask)))
        lines.append(f"{elements} : {M.rank.of_mask(mask)}".lstrip())
    return "\n".join(lines) + "\n"


def parse_setfn(text: str) -> SetFunction:
    header, body = _parse_header(text, "setfn", ("n",))
    n = header["n"]
    values = _parse_subset_value_lines(body, n, _parse_fraction)
    return SetFunction(n, values)


def serialize_setfn(h: SetFunction) -> str:
    lines = [f"setfn n={h.n}"]
    for mask in range(1 << h.n):
        elements = " ".join(str(e) for e in sorted(set_of(mask)))
        lines.append(f"{elements} : {h.values[mask]}".lstrip())
    return "\n".join(lines) + "\n"


# -- signed circuits -------------------------------------------------------


def parse_signed_circuits(text: str) -> SignedCircuitSet:
    header, body = _parse_header(text, "signed-circuits", ("n",))
    n = header["n"]
    circuits = []
    for lineno, line in body:
        pos, neg = set(), set()
        current = None
        for token in line.split():
            if token == "+":
                current = pos
            elif token == "-":
                current = neg
            else:
                if current is None:
                    raise FormatError(f"line {lineno}: sign marker must precede elements")
                e = _parse_int(token, lineno)
                if not 1 <= e <= n:
                    raise FormatError(f"line {lineno}: element {e} outside [{n}]")
                if e in pos or e in neg:
                    raise FormatError(f"line {lineno}: element {e} repeated")
                current.add(e)
        if not pos and not neg:
            raise FormatError(f"line {lineno}: empty signed set")
        X = SignedSet(pos, neg)
        circuits.extend((X, -X))
    return SignedCircuitSet(n, circuits)


def serialize_signed_circuits(C: SignedCircuitSet) -> str:
    lines = [f"signed-circuits n={C.n}"]
    for X in C.representatives():
        parts = []
        if X.pos:
            parts.append("+ " + " ".join(str(e) for e in sorted(X.pos)))
        if X.neg:
            parts.append("- " + " ".join(str(e) for e in sorted(X.neg)))
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


# -- chirotope -------------------------------------------------------------


def parse_chirotope(text: str) -> Chirotope:
    header, body = _parse_header(text, "chirotope", ("n", "r"))
    n, r = header["n"], header["r"]
    signs = {}
    for lineno, line in body:
        tokens = line.split()
        if len(tokens) != r + 1 or tokens[-1] not in "+-":
            raise FormatError(f"line {lineno}: expected '{r} elements then + or -'")
        tpl = tuple(_parse_int(t, lineno) for t in tokens[:-1])
        if len(set(tpl)) != len(tpl):
            raise FormatError(f"line {lineno}: repeated element in {tpl}")
        for e in tpl:
            if not 1 <= e <= n:
                raise FormatError(f"line {lineno}: element {e} outside [{n}]")
        parity = 1
        items = list(tpl)
        for a in range(len(items)):
            for b in range(a + 1, len(items)):
                if items[a] > items[b]:
                    items[a], items[b] = items[b], items[a]
                    parity = -parity
        key = tuple(items)
        if key in signs:
            raise FormatError(f"line {lineno}: duplicate tuple {key}")
        signs[key] = parity * (1 if tokens[-1] == "+" else -1)
    try:
        return Chirotope(n, r, signs)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def serialize_chirotope(chi: Chirotope) -> str:
    lines = [f"chirotope n={chi.n} r={chi.r}"]
    for tpl in sorted(chi.signs):
        sign = "+" if chi.signs[tpl] > 0 else "-"
        lines.append(" ".join(str(e) for e in tpl) + f" {sign}")
    return "\n".join(lines) + "\n"


# -- matrices and vectors ----------------------------------------------------


def parse_matrix(text: str) -> RationalMatrix:
    header, body = _parse_header(text, "matrix", ("n",))
    n = header["n"]
    rows = []
    for lineno, line in body:
        row = [_parse_fraction(t, lineno) for t in line.split()]
        if len(row) != n:
            raise FormatError(f"line {lineno}: expected {n} entries, got {len(row)}")
        rows.append(row)
    if len(rows) != n:
        raise FormatError(f"expected {n} rows, got {len(rows)}")
    return RationalMatrix(rows)


def serialize_matrix(matrix: RationalMatrix) -> str:
    if matrix.rows != matrix.cols:
        raise ValueError("matrix format is for square matrices")
    lines = [f"matrix n={matrix.rows}"]
    for row in matrix.entries:
        lines.append(" ".join(str(v) for v in row))
    return "\n".join(lines) + "\n"


def parse_vectors(text: str) -> VectorConfiguration:
    header, body = _parse_header(text, "vectors", ("d", "n"))
    d, n = header["d"], header["n"]
    rows = []
    for lineno, line in body:
        row = [_parse_fraction(t, lineno) for t in line.split()]
        if len(row) != n:
            raise FormatError(f"line {lineno}: expected {n} entries, got {len(row)}")
        rows.append(row)
    if len(rows) != d:
        raise FormatError(f"expected {d} rows, got {len(rows)}")
    return VectorConfiguration.from_rows(rows)


def serialize_vectors(config: VectorConfiguration) -> str:
    lines = [f"vectors d={config.d} n={config.n}"]
    for row in config.as_rows():
        lines.append(" ".join(str(v) for v in row))
    return "\n".join(lines) + "\n"


# -- dispatch ----------------------------------------------------------------


_PARSERS = {
    "ci": parse_ci,
    "oci": parse_oci,
    "matroid": parse_matroid,
    "setfn": parse_setfn,
    "signed-circuits": parse_signed_circuits,
    "chirotope": parse_chirotope,
    "matrix": parse_matrix,
    "vectors": parse_vectors,
}


def loads(text: str):
    return _PARSERS[kind_of(text)](text)


def load(path):
    with open(path, encoding="utf-8") as handle:
        return loads(handle.read())


def dumps(obj) -> str:
    if isinstance(obj, CIStructure):
        return serialize_ci(obj)
    if isinstance(obj, OrientedCIStructure):
        return serialize_oci(obj)
    if isinstance(obj, Matroid):
        return serialize_matroid(obj)
    if isinstance(obj, SetFunction):
        return serialize_setfn(obj)
    if isinstance(obj, SignedCircuitSet):
        return serialize_signed_circuits(obj)
    if isinstance(obj, Chirotope):
        return serialize_chirotope(obj)
    if isinstance(obj, RationalMatrix):
        return serialize_matrix(obj)
    if isinstance(obj, VectorConfiguration):
        return serialize_vectors(obj)
    raise TypeError(f"no text format for {type(obj).__name__}")


def dump(obj, path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(dumps(obj))

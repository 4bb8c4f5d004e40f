"""Text and JSON formats for algebra tables, maps, probe lists and certificates.

Text format (``.alg``)::

    # comments run to end of line
    algebra heisenberg1
    dim 3
    field Q            # or F<p>
    lie                # or general
    complete skew      # skew | symmetric | none
    labels e-1 e1 e0   # optional display names
    [e1,e2] = e3
    [e1,e3] = 2*e4 - 1/3*e5
    e1*e1 = e2

Basis references are always positional and 1-based (``e1 .. en``); labels
are for display only.  JSON uses the same 1-based indices and writes every
scalar as an exact string.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .algcore import AlgebraTable, check_structure
from .autolocal import AutMap, LocalAutWitness, PureLocalAutCertificate
from .errors import (
    DSLSyntaxError,
    DuplicateProductError,
    FieldMismatchError,
    IndexRangeError,
    ParseError,
    ScalarFieldError,
    SchemaError,
    StructureError,
)
from .exactlin import FieldSpec, Matrix
from .localder import LocalWitness, PureLocalDerCertificate

MAX_DIM = 512
MAX_PRIME = 2 ** 31
MAX_LITERAL = 1000

_HEADERS = ("algebra", "dim", "field", "lie", "general", "complete", "labels")
_COMPLETIONS = ("skew", "symmetric", "none")

# ---------------------------------------------------------------------------
# text DSL


class _Lexer:
    """Tokens of one product line, with 1-based columns."""

    _TOKEN = re.compile(r"\s*(?:(?P<basis>e[0-9]+)|(?P<num>[0-9]+)|(?P<op>[\[\],=*/+\-]))")

    def __init__(self, text: str, line: int, offset: int):
        self.tokens = []
        self.line = line
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = self._TOKEN.match(text, pos)
            if not m or m.end() == pos:
                col = offset + pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
                raise DSLSyntaxError(f"unexpected character {text[pos:].lstrip()[:1]!r}", line, col)
            kind = m.lastgroup
            start = m.start(kind)
            if len(m.group(kind)) > MAX_LITERAL:
                raise DSLSyntaxError(f"literal longer than {MAX_LITERAL} digits", line, offset + start + 1)
            self.tokens.append((kind, m.group(kind), offset + start + 1))
            pos = m.end()
        self.i = 0
        self.end_col = offset + len(text) + 1

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, self.end_col)

    def take(self, kind=None, value=None, what=""):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            found = "end of line" if tok[0] is None else repr(tok[1])
            raise DSLSyntaxError(f"expected {what or value or kind}, found {found}", self.line, tok[2])
        self.i += 1
        return tok


def _basis_index(tok, dim: int, line: int) -> int:
    k = int(tok[1][1:])
    if not 1 <= k <= dim:
        raise IndexRangeError(f"{tok[1]} outside e1..e{dim}", line, tok[2])
    return k - 1


def _scalar(field: FieldSpec, num: int, den: int, line: int, col: int):
    try:
        return field.coerce(Fraction(num, den))
    except (FieldMismatchError, ZeroDivisionError):
        raise ScalarFieldError(f"{num}/{den} is not an element of {field}", line, col) from None


def _parse_rhs(lex: _Lexer, field: FieldSpec, dim: int) -> dict:
    terms: dict = {}
    first = True
    while True:
        sign = 1
        kind, val, col = lex.peek()
        if kind == "op" and val in "+-":
            lex.take()
            sign = -1 if val == "-" else 1
        elif not first:
            if kind is None:
                break
            raise DSLSyntaxError(f"expected '+' or '-', found {val!r}", lex.line, col)
        kind, val, col = lex.peek()
        if kind == "num":
            num = int(lex.take()[1])
            den = 1
            if lex.peek()[:2] == ("op", "/"):
                lex.take()
                dtok = lex.take("num", what="denominator")
                den = int(dtok[1])
                if den == 0:
                    raise ScalarFieldError("zero denominator", lex.line, dtok[2])
            if lex.peek()[:2] == ("op", "*"):
                lex.take()
                btok = lex.take("basis", what="basis element")
            elif lex.peek()[0] == "basis":
                btok = lex.take()
            elif first and num == 0 and den == 1 and lex.peek()[0] is None:
                return {}
            else:
                btok = lex.take("basis", what="basis element")
            c = _scalar(field, sign * num, den, lex.line, col)
        else:
            btok = lex.take("basis", what="scalar or basis element")
            c = field.coerce(sign)
        k = _basis_index(btok, dim, lex.line)
        terms[k] = field.reduce(terms.get(k, 0) + c)
        first = False
        if lex.peek()[0] is None:
            break
    return {k: c for k, c in terms.items() if c}


def _parse_product(text: str, line: int, offset: int, field: FieldSpec, dim: int):
    lex = _Lexer(text, line, offset)
    kind, val, col = lex.peek()
    if (kind, val) == ("op", "["):
        lex.take()
        a = lex.take("basis", what="basis element")
        lex.take("op", ",")
        b = lex.take("basis", what="basis element")
        lex.take("op", "]")
    else:
        a = lex.take("basis", what="'[' or basis element")
        lex.take("op", "*")
        b = lex.take("basis", what="basis element")
    i, j = _basis_index(a, dim, line), _basis_index(b, dim, line)
    lex.take("op", "=")
    if lex.peek()[0] is None:
        raise DSLSyntaxError("missing right-hand side", line, lex.peek()[2])
    return (i, j), col, _parse_rhs(lex, field, dim)


def _decode(src) -> str:
    if isinstance(src, str):
        return src
    try:
        return bytes(src).decode("utf-8")
    except UnicodeDecodeError as exc:
        head = bytes(src)[: exc.start]
        line = head.count(b"\n") + 1
        col = exc.start - (head.rfind(b"\n") + 1) + 1
        raise DSLSyntaxError("input is not valid UTF-8", line, col) from None


def _parse_field(word: str, line: int, col: int) -> FieldSpec:
    m = re.fullmatch(r"Q|QQ|(?:F|GF)([0-9]{1,12})", word)
    if not m:
        raise DSLSyntaxError(f"unknown field {word!r} (expected Q or F<p>)", line, col)
    if m.group(1) is None:
        return FieldSpec(0)
    p = int(m.group(1))
    if p > MAX_PRIME:
        raise DSLSyntaxError(f"modulus {p} too large", line, col)
    try:
        return FieldSpec(p)
    except ValueError as exc:
        raise DSLSyntaxError(str(exc), line, col) from None


def parse_text(src) -> AlgebraTable:
    """Parse the line-oriented table format; errors carry line and column."""
    text = _decode(src)
    name, dim, field, lie, complete, labels = "unnamed", None, FieldSpec(0), True, None, None
    header_pos = {}
    products: dict = {}
    positions: dict = {}
    for lineno, raw in enumerate(text.split("\n"), start=1):
        body = raw.split("#", 1)[0]
        stripped = body.strip()
        if not stripped:
            continue
        offset = len(body) - len(body.lstrip())
        word = stripped.split()[0]
        if word in _HEADERS:
            if products:
                raise DSLSyntaxError(f"header {word!r} after product lines", lineno, offset + 1)
            if word in header_pos and word not in ("lie", "general"):
                raise DSLSyntaxError(f"repeated header {word!r}", lineno, offset + 1)
            rest = stripped[len(word):].split()
            argcol = offset + len(word) + len(stripped[len(word):]) - len(stripped[len(word):].lstrip()) + 1
            header_pos[word] = (lineno, offset + 1)
            if word in ("lie", "general"):
                if rest:
                    raise DSLSyntaxError(f"{word} takes no argument", lineno, argcol)
                if ("general" if word == "lie" else "lie") in header_pos:
                    raise DSLSyntaxError("both lie and general given", lineno, offset + 1)
                lie = word == "lie"
                continue
            if word == "labels":
                if dim is None:
                    raise DSLSyntaxError("labels before dim", lineno, offset + 1)
                if len(rest) != dim:
                    raise DSLSyntaxError(f"{len(rest)} labels for dimension {dim}", lineno, argcol)
                labels = rest
                continue
            if len(rest) != 1:
                raise DSLSyntaxError(f"{word} takes exactly one argument", lineno, argcol)
            arg = rest[0]
            if word == "algebra":
                name = arg
            elif word == "dim":
                if not re.fullmatch(r"[0-9]{1,6}", arg):
                    raise DSLSyntaxError(f"dimension must be a nonnegative integer, got {arg!r}", lineno, argcol)
                dim = int(arg)
                if dim > MAX_DIM:
                    raise DSLSyntaxError(f"dimension {dim} exceeds {MAX_DIM}", lineno, argcol)
            elif word == "field":
                field = _parse_field(arg, lineno, argcol)
            elif word == "complete":
                if arg not in _COMPLETIONS:
                    raise DSLSyntaxError(f"completion must be one of {', '.join(_COMPLETIONS)}", lineno, argcol)
                complete = arg
            continue
        if dim is None:
            raise DSLSyntaxError("product line before 'dim' header", lineno, offset + 1)
        key, col, rhs = _parse_product(body[offset:], lineno, offset, field, dim)
        if key in products:
            first = positions[key][0]
            raise DuplicateProductError(f"[e{key[0] + 1},e{key[1] + 1}] already given on line {first}",
                                        lineno, col)
        products[key] = rhs
        positions[key] = (lineno, col)
    if dim is None:
        raise DSLSyntaxError("missing 'dim' header", max(1, text.count("\n") + 1), 1)
    if complete is None:
        complete = "skew" if lie else "none"
    for (i, j), (ln, col) in positions.items():
        if lie and i == j and products[(i, j)]:
            raise StructureError(f"[e{i + 1},e{i + 1}] must be 0 in a Lie algebra", ln, col)
    try:
        table = AlgebraTable.from_products(name, dim, field, products, complete=complete, lie=lie,
                                           labels=labels)
    except ValueError as exc:
        raise StructureError(str(exc), *header_pos.get("complete", (1, 1))) from None
    if lie:
        rep = check_structure(table)
        if not rep.lie:
            what = "not alternating" if not rep.anticommutative else "Jacobi identity fails"
            raise StructureError(f"declared lie but {what}", *header_pos.get("lie", (1, 1)))
    return table


def _term(field: FieldSpec, c, k: int) -> str:
    plain = field.format_plain(c)
    return f"e{k + 1}" if plain == "1" else f"{plain}*e{k + 1}"


def serialize_text(a: AlgebraTable) -> str:
    """Canonical text form: every product written out, ``complete none``."""
    field = a.field
    lines = [f"algebra {a.name}", f"dim {a.dim}", f"field {field}", "lie" if a.lie else "general",
             "complete none"]
    if a.labels != tuple(f"e{i + 1}" for i in range(a.dim)):
        lines.append("labels " + " ".join(a.labels))
    for (i, j), terms in a.products.items():
        rhs = ""
        for k, c in terms:
            if not field.p and c < 0:
                t = _term(field, -c, k)
                rhs += f" - {t}" if rhs else f"-{t}"
            else:
                t = _term(field, c, k)
                rhs += f" + {t}" if rhs else t
        lines.append(f"[e{i + 1},e{j + 1}] = {rhs}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# JSON


def dumps(obj) -> bytes:
    return (json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def _loads(data):
    try:
        text = data.decode("utf-8") if isinstance(data, (bytes, bytearray)) else data
    except UnicodeDecodeError as exc:
        raise SchemaError("input is not valid UTF-8", 1, exc.start + 1) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(exc.msg, exc.lineno, exc.colno) from None
    except (ValueError, RecursionError) as exc:
        raise SchemaError(f"unreadable JSON: {exc}", 1, 1) from None


def _need(obj, key, types, path):
    if not isinstance(obj, dict):
        raise SchemaError("expected an object", path=path)
    if key not in obj:
        raise SchemaError(f"missing key {key!r}", path=path)
    v = obj[key]
    if not isinstance(v, types) or (isinstance(v, bool) and bool not in _tuple(types)):
        raise SchemaError(f"wrong type {type(v).__name__}", path=f"{path}.{key}")
    return v


def _tuple(t):
    return t if isinstance(t, tuple) else (t,)


def _json_scalar(field: FieldSpec, v, path):
    if not isinstance(v, str):
        raise SchemaError("scalars must be strings", path=path)
    try:
        return field.coerce(v)
    except FieldMismatchError as exc:
        raise ScalarFieldError(str(exc), path=path) from None
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(str(exc), path=path) from None


def _json_field(text, path) -> FieldSpec:
    if not isinstance(text, str):
        raise SchemaError("field must be a string", path=path)
    try:
        if len(text) > 12:
            raise ValueError("modulus too large")
        return FieldSpec.parse(text)
    except ValueError as exc:
        raise SchemaError(str(exc), path=path) from None


def table_to_obj(a: AlgebraTable) -> dict:
    field = a.field
    obj = {
        "name": a.name,
        "dim": a.dim,
        "field": str(field),
        "kind": "lie" if a.lie else "general",
        "complete": "none",
        "products": [
            {"i": i + 1, "j": j + 1, "rhs": [{"k": k + 1, "c": field.format(c)} for k, c in terms]}
            for (i, j), terms in a.products.items()
        ],
    }
    if a.labels != tuple(f"e{i + 1}" for i in range(a.dim)):
        obj["labels"] = list(a.labels)
    return obj


def table_from_obj(obj, path="$") -> AlgebraTable:
    name = _need(obj, "name", str, path)
    dim = _need(obj, "dim", int, path)
    if not 0 <= dim <= MAX_DIM:
        raise SchemaError(f"dimension must lie in [0, {MAX_DIM}]", path=f"{path}.dim")
    field = _json_field(_need(obj, "field", str, path), f"{path}.field")
    kind = obj.get("kind", "lie")
    if kind not in ("lie", "general"):
        raise SchemaError("kind must be 'lie' or 'general'", path=f"{path}.kind")
    lie = kind == "lie"
    complete = obj.get("complete", "skew" if lie else "none")
    if complete not in _COMPLETIONS:
        raise SchemaError(f"complete must be one of {', '.join(_COMPLETIONS)}", path=f"{path}.complete")
    labels = obj.get("labels")
    if labels is not None and (not isinstance(labels, list) or len(labels) != dim
                               or not all(isinstance(s, str) for s in labels)):
        raise SchemaError(f"labels must be {dim} strings", path=f"{path}.labels")
    prods = {}
    for t, entry in enumerate(_need(obj, "products", list, path)):
        p = f"{path}.products[{t}]"
        idx = []
        for key in ("i", "j"):
            v = _need(entry, key, int, p)
            if not 1 <= v <= dim:
                raise IndexRangeError(f"{key}={v} outside 1..{dim}", path=f"{p}.{key}")
            idx.append(v - 1)
        key = tuple(idx)
        if key in prods:
            raise DuplicateProductError(f"product ({key[0] + 1},{key[1] + 1}) given twice", path=p)
        terms = {}
        for u, term in enumerate(_need(entry, "rhs", list, p)):
            q = f"{p}.rhs[{u}]"
            k = _need(term, "k", int, q)
            if not 1 <= k <= dim:
                raise IndexRangeError(f"k={k} outside 1..{dim}", path=f"{q}.k")
            c = _json_scalar(field, _need(term, "c", str, q), f"{q}.c")
            terms[k - 1] = field.reduce(terms.get(k - 1, 0) + c)
        prods[key] = terms
    if lie:
        for (i, j), terms in prods.items():
            if i == j and any(terms.values()):
                raise StructureError(f"[e{i + 1},e{i + 1}] must be 0 in a Lie algebra", path=path)
    try:
        table = AlgebraTable.from_products(name, dim, field, prods, complete=complete, lie=lie, labels=labels)
    except ValueError as exc:
        raise StructureError(str(exc), path=path) from None
    if lie and not check_structure(table).lie:
        raise StructureError("declared lie but the table is not a Lie algebra", path=path)
    return table


def parse_json(data) -> AlgebraTable:
    """Parse an algebra table from JSON bytes or text."""
    return table_from_obj(_loads(data))


def map_to_obj(m: Matrix) -> dict:
    f = m.field
    return {"type": "map", "field": str(f), "rows": m.rows, "cols": m.cols,
            "entries": [[f.format(v) for v in row] for row in m.data]}


def map_from_obj(obj, field: FieldSpec | None = None, dim: int | None = None, path="$") -> Matrix:
    """A map given as ``{"type": "map", ...}`` or as a bare list of rows."""
    if isinstance(obj, list):
        rows_data = obj
        f = field
        if f is None:
            raise SchemaError("a bare row list needs a field", path=path)
    else:
        f = _json_field(_need(obj, "field", str, path), f"{path}.field")
        if field is not None and f != field:
            raise ScalarFieldError(f"map over {f}, expected {field}", path=f"{path}.field")
        rows_data = _need(obj, "entries", list, path)
    rows = []
    for r, row in enumerate(rows_data):
        if not isinstance(row, list):
            raise SchemaError("rows must be lists", path=f"{path}.entries[{r}]")
        rows.append([_json_scalar(f, v, f"{path}.entries[{r}][{c}]") for c, v in enumerate(row)])
    width = len(rows[0]) if rows else 0
    if any(len(r) != width for r in rows):
        raise SchemaError("ragged rows", path=path)
    if dim is not None and (len(rows) != dim or width != dim):
        raise SchemaError(f"expected a {dim}x{dim} map, got {len(rows)}x{width}", path=path)
    return Matrix(f, rows, width)


def serialize_map(m: Matrix) -> bytes:
    return dumps(map_to_obj(m))


def _vec(field, v):
    return [field.format(x) for x in v]


def _vec_from(field, v, path, dim=None):
    if not isinstance(v, list):
        raise SchemaError("expected a list of scalars", path=path)
    out = tuple(_json_scalar(field, x, f"{path}[{t}]") for t, x in enumerate(v))
    if dim is not None and len(out) != dim:
        raise SchemaError(f"expected {dim} entries, got {len(out)}", path=path)
    return out


# ---------------------------------------------------------------------------
# probes, maps and points from loose text


def parse_vector(text: str, field: FieldSpec, dim: int) -> tuple:
    """``"1,0,1/2"`` or ``"1 0 1/2"``."""
    parts = [p for p in re.split(r"[,\s]+", text.strip()) if p]
    if len(parts) != dim:
        raise DSLSyntaxError(f"expected {dim} coordinates, got {len(parts)}", 1, 1)
    out = []
    col = 1
    for p in parts:
        try:
            out.append(field.coerce(p))
        except FieldMismatchError:
            raise ScalarFieldError(f"{p!r} is not an element of {field}", 1, col) from None
        except (ValueError, ZeroDivisionError):
            raise DSLSyntaxError(f"not a scalar: {p!r}", 1, col) from None
        col += len(p) + 1
    return tuple(out)


def parse_probes(src, field: FieldSpec, dim: int) -> list[tuple]:
    """Probe points: JSON (a list, or ``{"probes": [...]}``) or one vector per line."""
    text = _decode(src)
    if text.lstrip().startswith(("[", "{")):
        obj = _loads(text)
        if isinstance(obj, dict):
            obj = _need(obj, "probes", list, "$")
        if not isinstance(obj, list):
            raise SchemaError("expected a list of probe vectors", path="$")
        return [_vec_from(field, v, f"$[{t}]", dim) for t, v in enumerate(obj)]
    out = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            try:
                out.append(parse_vector(body, field, dim))
            except ParseError as exc:
                raise type(exc)(exc.message, lineno, exc.col) from None
    return out


def parse_map(src, field: FieldSpec, dim: int) -> Matrix:
    """A map as JSON (object or row list) or as whitespace-separated rows."""
    text = _decode(src)
    if text.lstrip().startswith(("[", "{")):
        return map_from_obj(_loads(text), field, dim)
    rows = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            try:
                rows.append(parse_vector(body, field, dim))
            except ParseError as exc:
                raise type(exc)(exc.message, lineno, exc.col) from None
    if len(rows) != dim:
        raise DSLSyntaxError(f"expected {dim} rows, got {len(rows)}", max(1, len(rows)), 1)
    return Matrix(field, rows, dim)


# ---------------------------------------------------------------------------
# certificates


def certificate_to_obj(cert) -> dict:
    a = cert.algebra
    f = a.field
    common = {
        "kind": cert.kind,
        "algebra": table_to_obj(a),
        "change_of_basis": map_to_obj(cert.change_of_basis),
        "generator_count": cert.generator_count,
        "witness_strategy": cert.witness_strategy,
        "source_derivation": None if cert.source_derivation is None else map_to_obj(cert.source_derivation),
        "source_tag": cert.source_tag,
    }
    if isinstance(cert, PureLocalAutCertificate):
        common.update({
            "type": "pure-local-automorphism-certificate",
            "nabla": map_to_obj(cert.nabla),
            "mult_failure": [cert.mult_failure[0] + 1, cert.mult_failure[1] + 1],
            "residual": _vec(f, cert.residual),
            "epsilon": None if cert.epsilon is None else f.format(cert.epsilon),
            "probes": [_vec(f, w.point) for w in cert.sampled_witnesses],
            "witnesses": [{"point": _vec(f, w.point), "construction": w.construction,
                           "map": map_to_obj(w.witness.matrix)} for w in cert.sampled_witnesses],
            "unresolved": [_vec(f, x) for x in cert.unresolved],
        })
    else:
        common.update({
            "type": "pure-local-derivation-certificate",
            "delta": map_to_obj(cert.delta),
            "failure_pair": [cert.failure_pair[0] + 1, cert.failure_pair[1] + 1],
            "residual": _vec(f, cert.residual),
            "probes": [_vec(f, w.point) for w in cert.sampled_witnesses],
            "witnesses": [{"point": _vec(f, w.point), "construction": w.construction,
                           "map": map_to_obj(w.witness),
                           "coefficients": None if w.coefficients is None else _vec(f, w.coefficients)}
                          for w in cert.sampled_witnesses],
        })
    return common


def serialize_json(obj) -> bytes:
    """Canonical JSON for a table, a map or a certificate."""
    if isinstance(obj, AlgebraTable):
        return dumps(table_to_obj(obj))
    if isinstance(obj, Matrix):
        return dumps(map_to_obj(obj))
    if hasattr(obj, "witness_strategy"):
        return dumps(certificate_to_obj(obj))
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _pair(v, dim, path):
    if not (isinstance(v, list) and len(v) == 2 and all(isinstance(x, int) and not isinstance(x, bool) for x in v)):
        raise SchemaError("expected a pair of indices", path=path)
    if not all(1 <= x <= dim for x in v):
        raise IndexRangeError(f"pair {v} outside 1..{dim}", path=path)
    return (v[0] - 1, v[1] - 1)


def parse_certificate_json(data):
    """Rebuild a certificate; call ``.verify()`` on the result to re-check it."""
    obj = _loads(data)
    kind_tag = _need(obj, "type", str, "$")
    a = table_from_obj(_need(obj, "algebra", dict, "$"), "$.algebra")
    f, n = a.field, a.dim
    change = map_from_obj(_need(obj, "change_of_basis", dict, "$"), f, n, "$.change_of_basis")
    m = _need(obj, "generator_count", int, "$")
    strategy = _need(obj, "witness_strategy", str, "$")
    src = obj.get("source_derivation")
    src = None if src is None else map_from_obj(src, f, n, "$.source_derivation")
    tag = obj.get("source_tag")
    kind = _need(obj, "kind", str, "$")
    if kind not in ("2step", "restriction"):
        raise SchemaError("kind must be '2step' or 'restriction'", path="$.kind")
    residual = _vec_from(f, _need(obj, "residual", list, "$"), "$.residual", n)
    witnesses = _need(obj, "witnesses", list, "$")
    if kind_tag == "pure-local-derivation-certificate":
        delta = map_from_obj(_need(obj, "delta", dict, "$"), f, n, "$.delta")
        pair = _pair(_need(obj, "failure_pair", list, "$"), n, "$.failure_pair")
        cert = PureLocalDerCertificate(kind, a, change, m, delta, pair, residual, strategy,
                                       source_derivation=src, source_tag=tag)
        for t, w in enumerate(witnesses):
            p = f"$.witnesses[{t}]"
            coeffs = w.get("coefficients") if isinstance(w, dict) else None
            cert.sampled_witnesses.append(LocalWitness(
                _vec_from(f, _need(w, "point", list, p), f"{p}.point", n),
                map_from_obj(_need(w, "map", dict, p), f, n, f"{p}.map"),
                _need(w, "construction", str, p),
                None if coeffs is None else _vec_from(f, coeffs, f"{p}.coefficients")))
        return cert
    if kind_tag == "pure-local-automorphism-certificate":
        nabla = map_from_obj(_need(obj, "nabla", dict, "$"), f, n, "$.nabla")
        pair = _pair(_need(obj, "mult_failure", list, "$"), n, "$.mult_failure")
        eps = obj.get("epsilon")
        eps = None if eps is None else _json_scalar(f, eps, "$.epsilon")
        cert = PureLocalAutCertificate(kind, a, change, m, nabla, pair, residual, strategy, epsilon=eps,
                                       source_derivation=src, source_tag=tag)
        for t, w in enumerate(witnesses):
            p = f"$.witnesses[{t}]"
            phi = map_from_obj(_need(w, "map", dict, p), f, n, f"{p}.map")
            inv = phi.inverse()
            if inv is None:
                raise StructureError("witness map is singular", path=f"{p}.map")
            cert.sampled_witnesses.append(LocalAutWitness(
                _vec_from(f, _need(w, "point", list, p), f"{p}.point", n), AutMap(phi, inv),
                _need(w, "construction", str, p)))
        for t, x in enumerate(obj.get("unresolved") or []):
            cert.unresolved.append(_vec_from(f, x, f"$.unresolved[{t}]", n))
        return cert
    raise SchemaError(f"unknown certificate type {kind_tag!r}", path="$.type")

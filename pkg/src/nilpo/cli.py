"""Command-line front end.

Exit codes: 0 success or claim verified, 1 claim refuted or construction
degenerate, 2 input or usage error.  Results go to stdout, diagnostics to
stderr.  Randomized commands need ``--seed`` (or ``NILPO_SEED``).
"""

from __future__ import annotations

import argparse
import os
import sys

from . import algparse, catalog
from .algcore import AlgebraTable, center, check_structure
from .autolocal import (
    EXP_OF_DERIVATION_SOLVE,
    FAMILIES,
    THEOREM_CASES,
    construct_pure_local_automorphism,
    exp_nilpotent,
    is_automorphism,
    locaut_witness_at,
    scaling_auto,
    suitable_epsilon,
)
from .deriv import derivation_space
from .errors import DegenerateConstruction, ExpError, NilpoError, ParseError
from .exactlin import FieldSpec, Matrix
from .localder import (
    LOCDER_EQUALS_DER,
    construct_pure_local_derivation,
    falsify,
    locder_upper_bound,
    witness_at,
)

OK, REFUTED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# argument plumbing


def _algebra_args(p):
    src = p.add_argument_group("algebra source")
    src.add_argument("--catalog", metavar="NAME", help="built-in example (see `catalog list`)")
    src.add_argument("--input", metavar="PATH", help=".alg text or JSON table")
    src.add_argument("--n", type=int, help="size parameter for catalog examples")
    src.add_argument("--field", help="Q or F<p>")


def _common(p):
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=int, help="seed for randomized steps (default: $NILPO_SEED)")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="nilpo", description="Derivations, local derivations and local automorphisms "
                                            "of algebras given by structure constants.")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)

    for name, text in (("check", "structural flags"), ("series", "lower central series and center"),
                       ("der", "basis of the derivation algebra")):
        p = sub.add_parser(name, help=text)
        _algebra_args(p)
        _common(p)

    p = sub.add_parser("locder", help="local derivations")
    _algebra_args(p)
    _common(p)
    p.add_argument("action", choices=("construct", "witness", "falsify", "probe"))
    p.add_argument("--map", help="file with the candidate map (rows, or JSON)")
    p.add_argument("--point", help="comma-separated coordinates")
    p.add_argument("--probes", help="file with probe points")
    p.add_argument("--samples", type=int, default=0, help="random witness samples in certificates")
    p.add_argument("--budget", type=int, default=1000, help="random points tried by falsify")

    p = sub.add_parser("aut", help="automorphisms")
    _algebra_args(p)
    _common(p)
    p.add_argument("action", choices=("exp", "check", "scale"))
    p.add_argument("--map", help="file with the map (rows, or JSON)")
    p.add_argument("--epsilon", help="scaling parameter (default 2)")

    p = sub.add_parser("locaut", help="local automorphisms")
    _algebra_args(p)
    _common(p)
    p.add_argument("action", choices=("construct", "witness"))
    p.add_argument("--map", help="file with the candidate map (rows, or JSON)")
    p.add_argument("--point", help="comma-separated coordinates")
    p.add_argument("--epsilon", help="scaling parameter (default 2)")
    p.add_argument("--samples", type=int, default=0)
    p.add_argument("--family", choices=FAMILIES, default=EXP_OF_DERIVATION_SOLVE)

    p = sub.add_parser("catalog", help="built-in examples")
    p.add_argument("action", choices=("list", "verify"))
    p.add_argument("name", nargs="?")
    p.add_argument("--n", type=int)
    p.add_argument("--field")
    _common(p)
    return ap


def _field(text) -> FieldSpec | None:
    if text is None:
        return None
    try:
        return FieldSpec.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _read(path) -> bytes:
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def retarget(a: AlgebraTable, field: FieldSpec) -> AlgebraTable:
    """The same rational structure constants read in ``field``."""
    if field == a.field:
        return a
    if not a.field.is_rational:
        raise UsageError(f"{a.name} is defined over {a.field}; cannot move it to {field}")
    prods = {key: {k: field.coerce(c) for k, c in terms} for key, terms in a.products.items()}
    return AlgebraTable(a.name, a.dim, field, prods, lie=a.lie, labels=a.labels)


def load_algebra(args) -> AlgebraTable:
    field = _field(args.field)
    if bool(args.catalog) == bool(args.input):
        raise UsageError("give exactly one of --catalog or --input")
    if args.catalog:
        try:
            entry = catalog.get_entry(args.catalog)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
        if entry.fixed_field is not None and field is not None and field != entry.fixed_field:
            raise UsageError(f"{entry.name} is only defined over {entry.fixed_field}")
        try:
            return entry.build(args.n, field)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    data = _read(args.input)
    if data.lstrip()[:1] == b"{":
        a = algparse.parse_json(data)
    else:
        a = algparse.parse_text(data)
    return a if field is None else retarget(a, field)


def _seed(args, needed: bool):
    if args.seed is not None:
        return args.seed
    env = os.environ.get("NILPO_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"NILPO_SEED must be an integer, got {env!r}") from None
    if needed:
        raise UsageError("this command is randomized: pass --seed or set NILPO_SEED")
    return None


def _map(args, a: AlgebraTable) -> Matrix:
    if not args.map:
        raise UsageError("--map is required")
    return algparse.parse_map(_read(args.map), a.field, a.dim)


def _point(args, a: AlgebraTable):
    if not args.point:
        raise UsageError("--point is required")
    return algparse.parse_vector(args.point, a.field, a.dim)


# ---------------------------------------------------------------------------
# rendering


class Out:
    def __init__(self, fmt: str, stream, err=None):
        self.fmt = fmt
        self.stream = stream
        self.err = err or sys.stderr
        self.lines = []
        self.obj = {}

    def text(self, *lines):
        self.lines.extend(lines)

    def put(self, **kw):
        self.obj.update(kw)

    def flush(self):
        if self.fmt == "json":
            self.stream.write(algparse.dumps(self.obj).decode("utf-8"))
        else:
            self.stream.write("\n".join(self.lines) + ("\n" if self.lines else ""))


def fmt_vector(a: AlgebraTable, v) -> str:
    f = a.field
    parts = []
    for k, c in enumerate(v):
        if not c:
            continue
        s = f.format_plain(c)
        lab = a.labels[k]
        parts.append(lab if s == "1" else f"{s}*{lab}")
    return " + ".join(parts) if parts else "0"


def _vec(a, v):
    return [a.field.format(x) for x in v]


def _pair(p):
    return [p[0] + 1, p[1] + 1]


def _matrix_text(m: Matrix, indent="    "):
    return [indent + line for line in m.pretty().split("\n")]


def _basis_text(a: AlgebraTable, sub) -> str:
    vecs = sub.vectors()
    return "span{" + ", ".join(fmt_vector(a, v) for v in vecs) + "}" if vecs else "0"


# ---------------------------------------------------------------------------
# commands


def cmd_check(args, out):
    a = load_algebra(args)
    rep = check_structure(a)
    out.put(command="check", algebra=algparse.table_to_obj(a), anticommutative=rep.anticommutative,
            jacobi=rep.jacobi, commutative=rep.commutative, lie=rep.lie)
    out.text(f"algebra {a.name}: dim {a.dim} over {a.field}",
             f"anticommutative: {rep.anticommutative}", f"jacobi: {rep.jacobi}",
             f"commutative: {rep.commutative}", f"lie: {rep.lie}")
    return OK


def cmd_series(args, out):
    a = load_algebra(args)
    ser = a.series
    layers = [{"k": k + 1, "dim": s.dim, "basis": [_vec(a, v) for v in s.vectors()]}
              for k, s in enumerate(ser.layers)]
    z = center(a)
    out.put(command="series", algebra=a.name, field=str(a.field), layers=layers, nilpotent=ser.nilpotent,
            nilindex=ser.nilindex, center=[_vec(a, v) for v in z.vectors()])
    out.text(f"algebra {a.name}: dim {a.dim} over {a.field}")
    for k, s in enumerate(ser.layers):
        out.text(f"  n^{k + 1}: dim {s.dim}  {_basis_text(a, s)}")
    out.text(f"nilpotent: {ser.nilpotent}" + (f", nilindex {ser.nilindex}" if ser.nilpotent else ""),
             f"center: dim {z.dim}  {_basis_text(a, z)}")
    return OK


def cmd_der(args, out):
    a = load_algebra(args)
    der = derivation_space(a)
    out.put(command="der", algebra=a.name, field=str(a.field), dim=der.dim,
            basis=[algparse.map_to_obj(b) for b in der.basis])
    out.text(f"algebra {a.name}: dim Der = {der.dim}")
    for t, b in enumerate(der.basis, start=1):
        out.text(f"  D{t}:", *_matrix_text(b))
    if der.dim:
        out.text("generic derivation (column i = D(e_i)):", der.format_parametrized())
    return OK


def _cert_text(out, cert, a_map_name, a_map):
    a = cert.algebra
    out.text(f"adapted basis: {cert.generator_count} generators; change of basis (columns = new basis):",
             *_matrix_text(cert.change_of_basis))
    if cert.source_derivation is not None:
        out.text(f"source derivation ({cert.source_tag or 'given'}):", *_matrix_text(cert.source_derivation))
    out.text(f"{a_map_name}:", *_matrix_text(a_map))
    out.text("witness strategy: " + cert.witness_strategy)
    shown = cert.sampled_witnesses[:5]
    for w in shown:
        m = w.witness if isinstance(w.witness, Matrix) else w.witness.matrix
        out.text(f"  x = {fmt_vector(a, w.point)}  [{w.construction}]", *_matrix_text(m, "      "))
    rest = len(cert.sampled_witnesses) - len(shown)
    if rest > 0:
        out.text(f"  ... {rest} more verified witnesses")


def cmd_locder(args, out):
    a = load_algebra(args)
    if args.action == "construct":
        seed = _seed(args, args.samples > 0)
        cert = construct_pure_local_derivation(a, samples=args.samples, seed=seed)
        problems = cert.problems()
        if problems:
            print("internal verification failed: " + "; ".join(problems), file=out.err)
            return REFUTED
        i, j = cert.failure_pair
        b = cert.algebra
        out.put(command="locder construct", certificate=algparse.certificate_to_obj(cert), verified=True)
        out.text(f"pure local derivation on {a.name} ({cert.kind} construction)")
        out.text(f"not a derivation: Delta[{b.labels[i]},{b.labels[j]}] - [Delta {b.labels[i]},{b.labels[j]}]"
                 f" - [{b.labels[i]},Delta {b.labels[j]}] = {fmt_vector(b, cert.residual)} != 0")
        _cert_text(out, cert, "Delta (adapted coordinates)", cert.delta)
        out.text(f"certificate verified: {len(cert.sampled_witnesses)} witnesses checked")
        return OK
    if args.action == "witness":
        d = _map(args, a)
        x = _point(args, a)
        w = witness_at(a, derivation_space(a), d, x)
        out.put(command="locder witness", point=_vec(a, x), found=w is not None,
                witness=None if w is None else algparse.map_to_obj(w))
        if w is None:
            out.text(f"no derivation D with D(x) = Delta(x) at x = {fmt_vector(a, x)}: Delta is not a local derivation")
            return REFUTED
        out.text(f"derivation D_x with D_x(x) = Delta(x) at x = {fmt_vector(a, x)}:", *_matrix_text(w))
        return OK
    if args.action == "falsify":
        d = _map(args, a)
        seed = _seed(args, args.budget > 0)
        probes = algparse.parse_probes(_read(args.probes), a.field, a.dim) if args.probes else ()
        x = falsify(a, derivation_space(a), d, seed, budget=args.budget, probes=probes)
        out.put(command="locder falsify", refuted=x is not None, point=None if x is None else _vec(a, x),
                budget=args.budget, seed=seed)
        if x is None:
            out.text(f"no counterexample found (structured probes + {args.budget} random points); "
                     "this does not prove Delta is a local derivation")
            return OK
        out.text(f"refuted: no derivation matches Delta at x = {fmt_vector(a, x)}")
        return REFUTED
    probes = algparse.parse_probes(_read(args.probes), a.field, a.dim) if args.probes else []
    der = derivation_space(a)
    rep = locder_upper_bound(a, der, probes)
    out.put(command="locder probe", verdict=rep.verdict, der_dim=rep.der_subspace.dim,
            bound_dim=rep.upper_bound.dim, probes=[_vec(a, p) for p in rep.probes])
    out.text(f"probes: {len(rep.probes)}", f"dim Der = {rep.der_subspace.dim}",
             f"dim probe bound on LocDer = {rep.upper_bound.dim}", f"verdict: {rep.verdict}")
    return OK if rep.verdict == LOCDER_EQUALS_DER else REFUTED


def _aut_json(m):
    return algparse.map_to_obj(m)


def cmd_aut(args, out):
    a = load_algebra(args)
    if args.action == "check":
        f = _map(args, a)
        chk = is_automorphism(a, f)
        out.put(command="aut check", automorphism=bool(chk), reason=chk.reason,
                pair=None if chk.pair is None else _pair(chk.pair),
                residual=None if chk.residual is None else _vec(a, chk.residual))
        if chk:
            out.text("automorphism: yes")
            return OK
        if chk.pair is None:
            out.text(f"automorphism: no ({chk.reason})")
        else:
            i, j = chk.pair
            out.text(f"automorphism: no; f[{a.labels[i]},{a.labels[j]}] - [f {a.labels[i]}, f {a.labels[j]}]"
                     f" = {fmt_vector(a, chk.residual)}")
        return REFUTED
    if args.action == "exp":
        d = _map(args, a)
        phi = exp_nilpotent(a, d)
        out.put(command="aut exp", exp=_aut_json(phi.matrix), verified=True)
        out.text("exp(D) (verified automorphism):", *_matrix_text(phi.matrix))
        return OK
    eps = _epsilon(args, a, allow_unit=True)
    psi = scaling_auto(a, eps)
    out.put(command="aut scale", epsilon=a.field.format(eps), map=_aut_json(psi.matrix), verified=True)
    out.text(f"psi_eps with eps = {a.field.format_plain(eps)} (verified automorphism):", *_matrix_text(psi.matrix))
    return OK


def _epsilon(args, a, allow_unit=False):
    if args.epsilon is None:
        return None if not allow_unit else a.field.coerce(2)
    try:
        e = a.field.coerce(args.epsilon)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad --epsilon {args.epsilon!r}: {exc}") from None
    if not allow_unit:
        try:
            suitable_epsilon(a.field, e)
        except NilpoError as exc:
            raise UsageError(f"epsilon rejected: {exc}") from None
    return e


def cmd_locaut(args, out):
    a = load_algebra(args)
    if args.action == "construct":
        eps = _epsilon(args, a)
        seed = _seed(args, args.samples > 0)
        cert = construct_pure_local_automorphism(a, eps, samples=args.samples, seed=seed)
        problems = cert.problems()
        if problems:
            print("internal verification failed: " + "; ".join(problems), file=out.err)
            return REFUTED
        b = cert.algebra
        i, j = cert.mult_failure
        out.put(command="locaut construct", certificate=algparse.certificate_to_obj(cert), verified=True)
        out.text(f"pure local automorphism on {a.name} ({cert.kind} construction)")
        if cert.epsilon is not None:
            out.text(f"epsilon = {b.field.format_plain(cert.epsilon)}")
        out.text(f"not an automorphism: nabla[{b.labels[i]},{b.labels[j]}] - [nabla {b.labels[i]}, nabla {b.labels[j]}]"
                 f" = {fmt_vector(b, cert.residual)} != 0")
        _cert_text(out, cert, "nabla (adapted coordinates)", cert.nabla)
        out.text(f"certificate verified: {len(cert.sampled_witnesses)} witnesses checked")
        return OK
    nabla = _map(args, a)
    x = _point(args, a)
    cert = None
    if args.family == THEOREM_CASES:
        try:
            cert = construct_pure_local_automorphism(a, _epsilon(args, a))
        except NilpoError:
            cert = None
    phi = locaut_witness_at(a, nabla, x, args.family, cert=cert)
    out.put(command="locaut witness", point=_vec(a, x), found=phi is not None,
            witness=None if phi is None else _aut_json(phi.matrix))
    if phi is None:
        out.text(f"no witness automorphism found at x = {fmt_vector(a, x)} (family {args.family})")
        return REFUTED
    out.text(f"automorphism phi_x with phi_x(x) = nabla(x) at x = {fmt_vector(a, x)}:", *_matrix_text(phi.matrix))
    return OK


def cmd_catalog(args, out):
    if args.action == "list":
        out.put(command="catalog list",
                examples=[{"name": e.name, "domain": e.domain} for e in catalog.CATALOG.values()])
        for e in catalog.CATALOG.values():
            out.text(f"{e.name:12s} {e.domain}")
        return OK
    if not args.name:
        raise UsageError("catalog verify needs an example name")
    try:
        catalog.get_entry(args.name)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    seed = _seed(args, False)
    try:
        rep = catalog.verify_example(args.name, args.n, _field(args.field), seed=0 if seed is None else seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out.put(command="catalog verify", **rep.to_dict())
    out.text(rep.format_text())
    return OK if rep.passed else REFUTED


COMMANDS = {
    "check": cmd_check, "series": cmd_series, "der": cmd_der, "locder": cmd_locder,
    "aut": cmd_aut, "locaut": cmd_locaut, "catalog": cmd_catalog,
}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.command:
            raise UsageError("missing command")
        out = Out(args.format, stdout, stderr)
        code = COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"nilpo: error: {exc}", file=stderr)
        return USAGE
    except ParseError as exc:
        print(f"nilpo: input error: {exc}", file=stderr)
        return USAGE
    except (DegenerateConstruction, ExpError) as exc:
        verdict = "degenerate" if isinstance(exc, DegenerateConstruction) else "exp-undefined"
        out = Out(args.format, stdout)
        out.put(command=args.command, verdict=verdict, reason=str(exc))
        out.text(f"verdict: {verdict}: {exc}")
        out.flush()
        print(f"nilpo: {exc}", file=stderr)
        return REFUTED
    except NilpoError as exc:
        print(f"nilpo: error: {exc}", file=stderr)
        return USAGE
    out.flush()
    return code


def main():
    try:
        code = run()
        sys.stdout.flush()
    except BrokenPipeError:
        # downstream closed early (e.g. piped into head); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        code = OK
    sys.exit(code)


if __name__ == "__main__":
    main()

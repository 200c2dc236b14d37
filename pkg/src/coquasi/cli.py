"""Algebra files, the command surface and machine-readable reports.

An algebra file is JSON with scalars written as canonical strings of the
declared field ("-1/2" over Q, "0".."p-1" over GF(p)) and sparse tensors as
lists of [i, j, k, "c"] quadruples in lexicographic index order:

    delta    Δe_i = Σ c e_j⊗e_k
    product  e_i e_j = Σ c e_k
    phi      φ(e_i⊗e_j⊗e_k) = c          (absent entries are 0)
    antipode {"S": rows, "alpha": [...], "beta": [...]}, row i = coordinates of S(e_i)
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from dataclasses import dataclass

import numpy as np

from .checks import Report, holds
from .coalg import Coalgebra, check_coalgebra
from .comod import check_triangles, regular, regular_right
from .cqbialg import (MissingPhiInverse, antipode_morphism, check_antipode, check_coquasi,
                      check_monoidal_morphism, chi_s, make_bialgebra, with_antipode)
from .hopfmod import check_tau, free_hopf_module, fundamental_check
from .linalg import ScalarFormatError, field_from_descriptor
from .radford import (DimensionNotOne, NotAHopfAlgebra, NotBijective, NotGroupLike, certify,
                      check_frobenius, check_modular, check_mu_monoidal, cointegrals,
                      dual_module_action, hopf_specialize, modular_element, prepare,
                      sigma_from_mu)
from .zoo import BadRoot, CharTwo, NotAGroup, build

TOOL = "coquasi"
TOOL_VERSION = "0.1.0"
FILE_FORMAT = "coquasi-algebra/1"
REPORT_SCHEMA = 1


class ParseError(ValueError):
    pass


class ValidationError(ValueError):
    pass


class InputError(ValueError):
    """A per-command precondition that the input does not meet."""


def max_dim():
    return int(os.environ.get("COQUASI_MAX_DIM", "16"))


# ---------------------------------------------------------------- emitting

def _sparse(F, T):
    out = []
    for idx in zip(*np.nonzero(np.asarray(T != 0))):
        out.append([int(i) for i in idx] + [F.format(T[idx])])
    return out


def algebra_document(H) -> dict:
    F = H.field
    doc = {
        "format": FILE_FORMAT,
        "name": H.name,
        "field": F.name,
        "dim": H.dim,
        "basis_names": list(H.names),
        "delta": _sparse(F, H.delta),
        "counit": [F.format(x) for x in H.counit],
        "product": _sparse(F, H.prod),
        "unit": [F.format(x) for x in H.unit],
        "phi": _sparse(F, H.phi),
    }
    if hasattr(H, "antipode"):
        doc["antipode"] = {"S": [[F.format(x) for x in row] for row in H.S.T],
                           "alpha": [F.format(x) for x in H.alpha],
                           "beta": [F.format(x) for x in H.beta]}
    return doc


def _dump(value, indent):
    pad = "  " * indent
    if isinstance(value, dict):
        items = [f'{pad}  {json.dumps(k)}: {_dump(v, indent + 1).lstrip()}'
                 for k, v in value.items()]
        return pad + "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(value, list) and value and isinstance(value[0], list):
        rows = [pad + "  " + json.dumps(v, ensure_ascii=False) for v in value]
        return pad + "[\n" + ",\n".join(rows) + "\n" + pad + "]"
    return pad + json.dumps(value, ensure_ascii=False)


def dumps_algebra(H) -> str:
    return _dump(algebra_document(H), 0) + "\n"


def emit_algebra(H, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_algebra(H))


# ---------------------------------------------------------------- parsing

def _scalar(F, s, where):
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise ParseError(f"{where}: scalar must be a string, got {s!r}")
    try:
        x = F.scalar(s)
    except (ScalarFormatError, ValueError, TypeError, ZeroDivisionError) as exc:
        raise ValidationError(f"{where}: {exc}") from exc
    if isinstance(s, str) and F.format(x) != s:
        raise ValidationError(f"{where}: non-canonical scalar {s!r} (canonical form {F.format(x)!r})")
    return x


def _vector(F, vals, n, where):
    if not isinstance(vals, list) or len(vals) != n:
        raise ValidationError(f"{where}: expected a list of {n} scalars")
    return F.asarray([_scalar(F, v, f"{where}[{i}]") for i, v in enumerate(vals)])


def _tensor(F, entries, n, arity, where):
    T = F.zeros((n,) * arity)
    if not isinstance(entries, list):
        raise ParseError(f"{where}: expected a list of index tuples")
    seen = set()
    for t, e in enumerate(entries):
        if not isinstance(e, list) or len(e) != arity + 1:
            raise ParseError(f"{where}[{t}] = {e!r}: expected {arity} indices and a scalar")
        idx = e[:arity]
        if not all(isinstance(i, int) and not isinstance(i, bool) for i in idx):
            raise ParseError(f"{where}[{t}] = {e!r}: indices must be integers")
        bad = [i for i in idx if not 0 <= i < n]
        if bad:
            raise ValidationError(f"{where}[{t}] = {e!r}: index {bad[0]} out of range for dim {n}")
        if tuple(idx) in seen:
            raise ValidationError(f"{where}[{t}] = {e!r}: repeated index tuple")
        seen.add(tuple(idx))
        T[tuple(idx)] = _scalar(F, e[arity], f"{where}[{t}]")
    return T


def _require(doc, key, kind):
    if key not in doc:
        raise ParseError(f"missing key {key!r}")
    if not isinstance(doc[key], kind):
        raise ParseError(f"key {key!r} has the wrong type")
    return doc[key]


def algebra_from_document(doc, field=None):
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    fmt = doc.get("format", FILE_FORMAT)
    if fmt != FILE_FORMAT:
        raise ParseError(f"unsupported format {fmt!r}")
    try:
        F = field_from_descriptor(field or _require(doc, "field", str))
    except ScalarFormatError as exc:
        raise ParseError(str(exc)) from exc
    n = _require(doc, "dim", int)
    if n < 1:
        raise ValidationError(f"dim must be positive, got {n}")
    if n > max_dim():
        raise ValidationError(f"dim {n} exceeds COQUASI_MAX_DIM={max_dim()}")
    names = doc.get("basis_names") or [f"e{i}" for i in range(n)]
    if len(names) != n:
        raise ValidationError(f"basis_names has {len(names)} entries for dim {n}")
    D = _tensor(F, _require(doc, "delta", list), n, 3, "delta")
    e = _vector(F, _require(doc, "counit", list), n, "counit")
    C = Coalgebra(F, tuple(str(x) for x in names), D, e)
    rep = check_coalgebra(C)
    if not rep.ok:
        c = rep.failures()[0]
        raise ValidationError(f"coalgebra axiom {c.name} fails: {c.witness}")
    P = _tensor(F, _require(doc, "product", list), n, 3, "product")
    u = _vector(F, _require(doc, "unit", list), n, "unit")
    phi = _tensor(F, doc.get("phi", []), n, 3, "phi")
    try:
        B = make_bialgebra(C, P, u, phi, name=str(doc.get("name", "")))
    except MissingPhiInverse as exc:
        raise ValidationError(f"phi: {exc}") from exc
    ant = doc.get("antipode")
    if ant is None:
        return B
    if not isinstance(ant, dict):
        raise ParseError("antipode must be an object")
    rows = _require(ant, "S", list)
    if len(rows) != n:
        raise ValidationError(f"antipode.S has {len(rows)} rows for dim {n}")
    S = np.stack([_vector(F, r, n, f"antipode.S[{i}]") for i, r in enumerate(rows)]).T.copy()
    alpha = _vector(F, _require(ant, "alpha", list), n, "antipode.alpha")
    beta = _vector(F, _require(ant, "beta", list), n, "antipode.beta")
    return with_antipode(B, S, alpha, beta)


def loads_algebra(text, field=None):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return algebra_from_document(doc, field)


def parse_algebra(path, field=None):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from exc
    return loads_algebra(text, field)


# ---------------------------------------------------------------- commands

@dataclass
class Outcome:
    report: Report
    payload: dict


def _need_antipode(H):
    if not hasattr(H, "antipode"):
        raise InputError("the file has no antipode block")
    if H.antipode.S_inv is None:
        raise InputError("the antipode is not invertible")


def _structure(H) -> Report:
    r = Report("structure")
    r.add(check_coalgebra(H.coalgebra))
    r.add(check_coquasi(H))
    if hasattr(H, "antipode"):
        r.add(check_antipode(H))
    return r


def cmd_check(H):
    return Outcome(_structure(H), {})


def cmd_antipode(H):
    _need_antipode(H)
    F = H.field
    r = check_antipode(H)
    S_inv = H.Sbar
    return Outcome(r, {"S_inverse": [[F.format(x) for x in row] for row in S_inv.T]})


def _pipeline_ready(H):
    _need_antipode(H)
    r = _structure(H)
    if not r.ok:
        raise InputError("the structure checks fail; run `check` for witnesses")


def cmd_cointegrals(H):
    _pipeline_ready(H)
    F = H.field
    X = dual_module_action(H)
    W = cointegrals(H, X)
    r = Report("cointegrals")
    r.add(holds("dim_one", W.dim == 1, {"dim": W.dim}))
    return Outcome(r, {"W": [[F.format(x) for x in row] for row in W.basis]})


def cmd_modular(H):
    _pipeline_ready(H)
    F = H.field
    X = dual_module_action(H)
    W = cointegrals(H, X)
    a = modular_element(H, W)
    return Outcome(check_modular(H, W, a), {"a": [F.format(x) for x in a]})


def cmd_frobenius(H):
    _pipeline_ready(H)
    return Outcome(check_frobenius(prepare(H)), {})


def cmd_chi_s(H):
    _need_antipode(H)
    F = H.field
    res = chi_s(H)
    r = Report("chi_s")
    r.add(res.report)
    r.add(check_monoidal_morphism(antipode_morphism(H, res.morphism.chi)))
    return Outcome(r, {"source": res.source,
                       "chi": [[F.format(x) for x in row] for row in res.morphism.chi]})


def cmd_fundamental(H):
    _pipeline_ready(H)
    r = Report("fundamental")
    r.add(fundamental_check(dual_module_action(H)).report)
    free = free_hopf_module(regular(H))
    fr = fundamental_check(free).report
    r.checks += [type(c)(f"free_regular.{c.name}", c.ok, c.witness, c.note) for c in fr.checks]
    r.add(check_tau(regular_right(H)))
    return Outcome(r, {})


def cmd_radford(H, source="MuChain"):
    _pipeline_ready(H)
    cert = certify(H, source=source)
    return Outcome(cert.report, {"certificate": cert.payload(H.field)})


def cmd_mu_monoidal(H):
    _pipeline_ready(H)
    M = regular_right(H)
    return Outcome(check_mu_monoidal(prepare(H), M, M), {})


def cmd_hopf_case(H):
    _pipeline_ready(H)
    if not H.is_hopf():
        raise InputError("φ, α, β are not trivial: not an ordinary Hopf algebra")
    ctx = prepare(H)
    r, omega = hopf_specialize(ctx, sigma_from_mu(ctx))
    return Outcome(r, {"omega": [H.field.format(x) for x in omega]})


def cmd_report(H):
    _need_antipode(H)
    F = H.field
    r = Report("report")
    st = _structure(H)
    r.add(st)
    payload = {}
    if not st.ok:
        return Outcome(r, payload)
    r.add(check_triangles(regular(H)))
    chi = chi_s(H)
    r.add(chi.report)
    r.add(cmd_fundamental(H).report)
    ctx = prepare(H)
    cert = certify(H, ctx)
    r.add(cert.report)
    payload["certificate"] = cert.payload(F)
    if "hopf_case" in cert.report.data:
        payload["hopf_case"] = cert.report.data["hopf_case"]
    return Outcome(r, payload)


COMMANDS = {
    "check": cmd_check,
    "antipode": cmd_antipode,
    "cointegrals": cmd_cointegrals,
    "modular": cmd_modular,
    "frobenius": cmd_frobenius,
    "chi-s": cmd_chi_s,
    "fundamental": cmd_fundamental,
    "radford": cmd_radford,
    "mu-monoidal": cmd_mu_monoidal,
    "hopf-case": cmd_hopf_case,
    "report": cmd_report,
}

INPUT_ERRORS = (ParseError, ValidationError, InputError, NotAHopfAlgebra, DimensionNotOne,
                NotGroupLike, NotBijective, NotAGroup, BadRoot, CharTwo, KeyError)


def report_document(command, outcome: Outcome, digest, name):
    r = outcome.report
    return {"tool": TOOL, "version": TOOL_VERSION, "schema": REPORT_SCHEMA,
            "command": command, "input_digest": digest, "algebra": name, "pass": r.ok,
            "checks": {c.name: c.to_json() for c in r.checks}, **outcome.payload}


def _print_text(doc, out):
    print(f"{'PASS' if doc['pass'] else 'FAIL'} {doc['command']} {doc['algebra']}", file=out)
    for name, c in doc["checks"].items():
        line = f"  {'ok  ' if c['ok'] else 'FAIL'} {name}"
        if not c["ok"] and "witness" in c:
            line += f"  witness={json.dumps(c['witness'], ensure_ascii=False)}"
        print(line, file=out)
    for key in ("certificate", "hopf_case", "omega", "W", "a", "source"):
        if key in doc:
            print(f"  {key}: {json.dumps(doc[key], ensure_ascii=False)}", file=out)


def _params(ns):
    params = {}
    for kv in ns.param or []:
        if "=" not in kv:
            raise InputError(f"--param expects key=value, got {kv!r}")
        k, v = kv.split("=", 1)
        params[k] = v
    for k in ("n", "q", "zeta"):
        if getattr(ns, k, None) is not None:
            params[k] = getattr(ns, k)
    if getattr(ns, "p", None) is not None:
        params["field"] = f"GF({ns.p})"
    if ns.field:
        params["field"] = ns.field
    for k in ("n",):
        if k in params:
            params[k] = int(params[k])
    return params


def build_parser():
    ap = argparse.ArgumentParser(prog=TOOL, description="Exact checks for finite-dimensional "
                                 "coquasi Hopf algebras.")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("path", help="algebra file")
        p.add_argument("--json", action="store_true", help="print the JSON report")
        p.add_argument("--field", help="override the field descriptor of the file")
        if name == "radford":
            p.add_argument("--direct", action="store_true",
                           help="take σ from the direct solver instead of μ")
    z = sub.add_parser("zoo", help="build a zoo algebra, check it and optionally emit it")
    z.add_argument("name")
    z.add_argument("--emit", help="write the algebra file here")
    z.add_argument("--json", action="store_true")
    z.add_argument("--field")
    z.add_argument("--param", action="append", help="key=value construction parameter")
    z.add_argument("--n", type=int)
    z.add_argument("--p", type=int)
    z.add_argument("--q")
    z.add_argument("--zeta")
    return ap


def run(argv, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ns = build_parser().parse_args(argv)
    try:
        if ns.command == "zoo":
            H = build(ns.name, **_params(ns))
            if H.dim > max_dim():
                raise ValidationError(f"dim {H.dim} exceeds COQUASI_MAX_DIM={max_dim()}")
            text = dumps_algebra(H)
            if ns.emit:
                with open(ns.emit, "w", encoding="utf-8") as fh:
                    fh.write(text)
            outcome = cmd_check(H)
            digest = hashlib.sha256(text.encode()).hexdigest()
        else:
            with open(ns.path, "rb") as fh:
                raw = fh.read()
            digest = hashlib.sha256(raw).hexdigest()
            H = parse_algebra(ns.path, ns.field)
            if ns.command == "radford" and ns.direct:
                outcome = cmd_radford(H, "DirectSolve")
            else:
                outcome = COMMANDS[ns.command](H)
    except OSError as exc:
        print(f"error: {exc}", file=err)
        return 2
    except INPUT_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=err)
        return 2
    doc = report_document(ns.command, outcome, digest, H.name)
    if ns.json:
        print(json.dumps(doc, indent=2, ensure_ascii=False), file=out)
    else:
        _print_text(doc, out)
    return 0 if doc["pass"] else 1


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()

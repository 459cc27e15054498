"""Command-line front end.

Subcommands: construct, verify, extend, analyze, certify, sweep.  Scalars
are written as CYC literals: a rational ("3/2", "-2"), a root of unity
("z12^5" is zeta_12^5), or a product ("-1/2*z3").  Reports are JSON on
stdout or --out, embed the toolkit version and the input file hash, and
are byte-identical for identical inputs and seed.

Exit codes: 0 success, 1 relation violation, 2 bad input, 3 no extension.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import re
import sys
from fractions import Fraction

from . import __version__, extend, sampling
from . import catalog
from .cyclotomic import CycNum, make_root_of_unity
from .errors import LoopBraidError
from .repcore import GroupKind, LBRep, verify
from .serialize import (
    certificate_to_obj,
    certify_report_to_obj,
    cycnum_to_obj,
    dumps,
    linearized_to_obj,
    rep_from_obj,
    rep_to_obj,
)

_SCALAR_RE = re.compile(
    r"^(?P<rat>[+-]?\d+(?:/\d+)?)?(?:(?<=\d)\*)?(?P<root>z(?P<n>\d+)(?:\^(?P<k>-?\d+))?)?$"
)


def parse_scalar(text: str) -> CycNum:
    """Parse a CYC literal: RATIONAL, zN[^K], or RATIONAL*zN[^K].

    Literals may be wrapped in parentheses, which keeps argparse from
    mistaking negative values like "(-1/2*z3)" for option flags.
    """
    text = text.strip().replace(" ", "")
    while text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    m = _SCALAR_RE.match(text)
    if not m or (m.group("rat") is None and m.group("root") is None):
        raise ValueError(f"cannot parse scalar literal {text!r}")
    value = CycNum.from_rational(Fraction(m.group("rat") or 1), 1)
    if m.group("root"):
        n = int(m.group("n"))
        k = int(m.group("k") or 1)
        root = make_root_of_unity(n, k)
        value = value.promote(n) * root
    return value


def _seed_default(args_seed: int | None) -> int:
    if args_seed is not None:
        return args_seed
    env = os.environ.get("LOOPBRAID_SEED")
    return int(env) if env else 0


def _file_sha256(path: str | None) -> str | None:
    if path is None:
        return None
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _emit(payload: dict, out: str | None) -> None:
    text = dumps(payload)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _load_rep(path: str) -> LBRep:
    with open(path) as fh:
        return rep_from_obj(json.load(fh))


def _meta(input_path: str | None) -> dict:
    return {
        "toolkit_version": __version__,
        "input_sha256": _file_sha256(input_path),
    }


# -- construct ---------------------------------------------------------------


def _cmd_construct(args) -> int:
    lam = [parse_scalar(s) for s in args.lam or []]
    try:
        if args.family == "tw2":
            rep = catalog.tw2(*_arity(lam, 2), family=args.variant or 2)
        elif args.family == "tw3":
            rep = catalog.tw3(*_arity(lam, 3))
        elif args.family == "tw4":
            rep = catalog.tw4(_arity(lam, 4), parse_scalar(_req(args.gamma2, "--gamma2")))
        elif args.family == "tw5":
            rep = catalog.tw5(_arity(lam, 5), parse_scalar(_req(args.gamma, "--gamma")))
        elif args.family == "binomial":
            rep = catalog.binomial_rep(lam, parse_scalar(_req(args.c, "--c")))
        elif args.family == "counterexample6":
            rep = catalog.counterexample6()
        elif args.family == "v1":
            rep = catalog.v1_family(
                parse_scalar(_req(args.lam and args.lam[0], "--lambda")),
                parse_scalar(args.x or "0"),
            )
        elif args.family == "abeq":
            rep = catalog.abeq_family(
                args.n,
                parse_scalar(_req(args.mu, "--mu")),
                parse_scalar(_req(args.sqrt_mu, "--sqrt-mu")),
                variant_a1=args.variant_a1,
                variant_a2=args.variant_a2,
                sign=args.sign,
            )
        elif args.family == "lkb3":
            rep = catalog.lkb3(
                parse_scalar(_req(args.q, "--q")), parse_scalar(_req(args.t, "--t"))
            )
        elif args.family == "perm3":
            rep = catalog.perm3(parse_scalar(_req(args.t, "--t")))
        else:
            print(f"unknown family {args.family!r}", file=sys.stderr)
            return 2
    except (LoopBraidError, ValueError) as exc:
        print(f"constraint violated: {exc}", file=sys.stderr)
        return 2
    _emit(rep_to_obj(rep), args.out)
    return 0


def _arity(values: list, n: int) -> list:
    if len(values) != n:
        raise ValueError(f"expected {n} --lambda values, got {len(values)}")
    return values


def _req(value, flag: str):
    if value is None:
        raise ValueError(f"missing required {flag}")
    return value


# -- verify --------------------------------------------------------------------


def _cmd_verify(args) -> int:
    try:
        rep = _load_rep(args.file)
        report = verify(rep, GroupKind[args.group])
    except (LoopBraidError, KeyError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    payload = {
        "meta": _meta(args.file),
        "group": args.group,
        "verdicts": report.verdicts,
        "all_hold": report.all_hold,
        "failing": report.failing,
    }
    _emit(payload, args.out)
    return 0 if report.all_hold else 1


# -- extend ----------------------------------------------------------------------


def _cmd_extend(args) -> int:
    try:
        rep = _load_rep(args.file)
    except (LoopBraidError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        if args.mode == "standard":
            return _extend_standard(rep, args)
        if args.mode == "nonstandard3":
            return _extend_nonstandard3(rep, args)
        if args.mode == "vb3":
            return _extend_vb3(rep, args)
        print(f"unknown mode {args.mode!r}", file=sys.stderr)
        return 2
    except LoopBraidError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _extend_standard(rep: LBRep, args) -> int:
    search = extend.standard_k_candidates(rep.A, rep.B)
    if not search.candidates:
        reason = {
            "cube-not-scalar": "(AB)^3 is not scalar",
            "no-root-in-field": "no cube root of Det-scalar in the field "
            f"(k^3 must equal {search.k_cubed}); suggested conductor x3",
            "no-integer-trace": "no k gives Tr(kAB) a rational integer",
        }[search.reason]
        print(f"no standard extension: {reason}", file=sys.stderr)
        return 3
    if args.k is not None:
        want = parse_scalar(args.k)
        matches = [
            (kk, mm)
            for kk, mm in search.candidates
            if kk.conductor % want.conductor == 0 and kk == want.promote(kk.conductor)
        ]
        if not matches:
            print("error: --k is not a valid candidate", file=sys.stderr)
            return 2
        k, m = matches[0]
    else:
        k, m = search.candidates[0]
    built = extend.build_standard_extension(rep.A, rep.B, k)
    s = (built.A @ built.B).scalar_mul(k.promote(built.conductor))
    cert = extend.ExtensionCertificate(
        k=k.promote(built.conductor),
        S=s,
        params=extend.default_extension_params(s),
        trace_value=m,
    )
    payload = {
        "meta": _meta(args.file),
        "mode": "standard",
        "representation": rep_to_obj(built),
        "certificate": certificate_to_obj(cert),
        "candidate_count": len(search.candidates),
    }
    _emit(payload, args.out)
    return 0


def _extend_nonstandard3(rep: LBRep, args) -> int:
    if rep.A is None or rep.A.dim != 3:
        print("error: nonstandard3 mode needs a 3-dimensional braid pair", file=sys.stderr)
        return 2
    l1, l2, l3 = (rep.A.rows[i][i] for i in range(3))
    if l3 != -l2:
        print(
            "no nonstandard extension: requires lambda3 = -lambda2 "
            "(relabel the eigenvalues)",
            file=sys.stderr,
        )
        return 3
    check = catalog.tw3(l1, l2, l3)
    if check.A != rep.A or check.B != rep.B:
        print("error: input is not in the tw3 normal form", file=sys.stderr)
        return 2
    z = parse_scalar(_req(args.z, "--z"))
    built = extend.nonstandard_3d(l1, l2, z, sign=args.sign)
    payload = {
        "meta": _meta(args.file),
        "mode": "nonstandard3",
        "z": cycnum_to_obj(z),
        "sign": args.sign,
        "representation": rep_to_obj(built),
        "verifies_SLB3": verify(built, GroupKind.SLB3).all_hold,
    }
    _emit(payload, args.out)
    return 0


def _extend_vb3(rep: LBRep, args) -> int:
    if rep.S1 is None or rep.S2 is None:
        print("error: vb3 mode needs a verified LB3 representation", file=sys.stderr)
        return 2
    if not verify(rep, GroupKind.LB3).all_hold:
        print("error: input does not verify LB3", file=sys.stderr)
        return 2
    search = extend.standard_k_candidates(rep.A, rep.B)
    if args.k is not None:
        k = parse_scalar(args.k)
    elif search.candidates:
        k = search.candidates[0][0]
    else:
        print("no VB3 lift: no standard-extension candidate k exists", file=sys.stderr)
        return 3
    built = extend.vb3_lift(rep, k)
    payload = {
        "meta": _meta(args.file),
        "mode": "vb3",
        "k": cycnum_to_obj(k),
        "representation": rep_to_obj(built),
        "trace_of_S": cycnum_to_obj(built.S.trace()),
    }
    _emit(payload, args.out)
    return 0


# -- analyze ---------------------------------------------------------------------


def _cmd_analyze(args) -> int:
    try:
        rep = _load_rep(args.file)
    except (LoopBraidError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sections = {}
    run_all = not (args.uniqueness or args.slb3 or args.irreducible or args.poly_s)
    try:
        if args.irreducible or run_all:
            from .repcore import is_irreducible

            sections["irreducible"] = is_irreducible(rep)
        if (args.uniqueness or run_all) and rep.A is not None and rep.dim in (4, 5):
            lin = extend.uniqueness_linearized(rep.A, rep.B)
            obj = linearized_to_obj(lin)
            obj.pop("matrix")  # rank and sizes suffice for the report
            sections["uniqueness"] = obj
        if (args.slb3 or run_all) and rep.S1 is not None:
            sections["slb3"] = {"direct": extend.slb3_test(rep, "direct")}
            try:
                sections["slb3"]["commutator"] = extend.slb3_test(rep, "commutator")
            except LoopBraidError as exc:
                sections["slb3"]["commutator"] = f"hypothesis unmet: {exc}"
        if (args.poly_s or run_all) and rep.S1 is not None:
            try:
                ps = extend.polynomial_S_solve(rep.A, rep.B, rep.S)
                sections["polynomial_S"] = [cycnum_to_obj(c) for c in ps.coefficients]
            except LoopBraidError as exc:
                sections["polynomial_S"] = f"unavailable: {exc}"
        if run_all and rep.A is not None:
            search = extend.standard_k_candidates(rep.A, rep.B)
            sections["k_candidates"] = {
                "candidates": [
                    {"k": cycnum_to_obj(k), "m": m} for k, m in search.candidates
                ],
                "reason": search.reason,
            }
    except LoopBraidError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    payload = {"meta": _meta(args.file), "analysis": sections}
    _emit(payload, args.out)
    return 0


# -- certify ---------------------------------------------------------------------


def _cmd_certify(args) -> int:
    try:
        rep = _load_rep(args.file)
        report = extend.certify_no_extension(
            rep.A,
            rep.B,
            starts=args.starts,
            tol=args.tol,
            cluster_radius=args.cluster_radius,
            seed=_seed_default(args.seed),
        )
    except (LoopBraidError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    payload = {"meta": _meta(args.file), "report": certify_report_to_obj(report)}
    _emit(payload, args.out)
    return 0


# -- sweep -----------------------------------------------------------------------


def _cmd_sweep(args) -> int:
    try:
        report = extend.standard_extension_sweep(
            args.family, args.draws, _seed_default(args.seed)
        )
    except (LoopBraidError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    payload = {"meta": _meta(None), "sweep": report}
    _emit(payload, args.out)
    return 0


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="loopbraid",
        description="Exact toolkit for extending B3 representations to the loop braid group",
    )
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a catalog representation")
    c.add_argument("family", choices=[
        "tw2", "tw3", "tw4", "tw5", "binomial", "counterexample6",
        "v1", "abeq", "lkb3", "perm3",
    ])
    c.add_argument("--lambda", dest="lam", nargs="*", metavar="CYC")
    c.add_argument("--family", dest="variant", type=int, help="tw2 family (1 or 2)")
    c.add_argument("--gamma2", metavar="CYC")
    c.add_argument("--gamma", metavar="CYC")
    c.add_argument("--c", metavar="CYC")
    c.add_argument("--x", metavar="CYC")
    c.add_argument("--n", type=int, help="abeq half-dimension")
    c.add_argument("--mu", metavar="CYC")
    c.add_argument("--sqrt-mu", dest="sqrt_mu", metavar="CYC")
    c.add_argument("--variant-a1", dest="variant_a1", type=int, default=0)
    c.add_argument("--variant-a2", dest="variant_a2", type=int, default=0)
    c.add_argument("--sign", type=int, default=-1)
    c.add_argument("--q", metavar="CYC")
    c.add_argument("--t", metavar="CYC")
    c.add_argument("--out")
    c.set_defaults(func=_cmd_construct)

    v = sub.add_parser("verify", help="check the relations of a group")
    v.add_argument("file")
    v.add_argument("--group", required=True, choices=[k.value for k in GroupKind])
    v.add_argument("--out")
    v.set_defaults(func=_cmd_verify)

    e = sub.add_parser("extend", help="search/build extensions")
    e.add_argument("file")
    e.add_argument("--mode", default="standard", choices=["standard", "nonstandard3", "vb3"])
    e.add_argument("--k", metavar="CYC")
    e.add_argument("--z", metavar="CYC")
    e.add_argument("--sign", type=int, default=1)
    e.add_argument("--out")
    e.set_defaults(func=_cmd_extend)

    a = sub.add_parser("analyze", help="uniqueness/SLB3/irreducibility reports")
    a.add_argument("file")
    a.add_argument("--uniqueness", action="store_true")
    a.add_argument("--slb3", action="store_true")
    a.add_argument("--irreducible", action="store_true")
    a.add_argument("--poly-s", dest="poly_s", action="store_true")
    a.add_argument("--out")
    a.set_defaults(func=_cmd_analyze)

    ce = sub.add_parser("certify", help="no-extension certification")
    ce.add_argument("file")
    ce.add_argument("--starts", type=int, default=2000)
    ce.add_argument("--tol", type=float, default=1e-9)
    ce.add_argument("--cluster-radius", dest="cluster_radius", type=float, default=1e-6)
    ce.add_argument("--seed", type=int, default=None)
    ce.add_argument("--out")
    ce.set_defaults(func=_cmd_certify)

    s = sub.add_parser("sweep", help="extension-existence rates over random draws")
    s.add_argument("--family", required=True, choices=sampling.family_names())
    s.add_argument("--draws", type=int, default=25)
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--out")
    s.set_defaults(func=_cmd_sweep)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: ``wonderful <subcommand> ...``.

Exit status is 0 on success, 1 when ``verify`` (or ``poincare --oracle``)
finds a mismatch and 2 on invalid arguments.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Callable

from . import arrangements as arr
from . import formulas as fm
from . import oracle as orc
from . import partitions as pt
from . import series as sr
from .qpoly import QPolynomial

KIND_NAMES = {"A": "A", "B": "B", "D": "D", "boolean": "Boolean", "Boolean": "Boolean"}
EXIT_MISMATCH = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _kind(text: str) -> str:
    try:
        return KIND_NAMES[text]
    except KeyError:
        raise argparse.ArgumentTypeError(f"unknown kind {text!r} (choose A, B, D or boolean)")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _form(kind: str, text: str | None):
    if text is None:
        return None
    try:
        return pt.Partition.parse(text) if kind == "A" else pt.SingularPartition.parse(text)
    except ValueError as exc:
        raise UsageError(f"bad form {text!r}: {exc}")


def _require(cond: bool, message: str):
    if not cond:
        raise UsageError(message)


# ---------------------------------------------------------------------------
# subcommands

def cmd_poset(args) -> int:
    _require(args.kind in pt.KINDS, "poset needs kind A, B or D")
    poset = pt.building_poset(args.kind, args.n)
    elements = list(poset.elements)
    form = _form(args.kind, args.form)
    if form is not None:
        _require(form in elements, f"{form} is not a building form of {args.kind}{args.n}")
        elements = [e for e in elements if poset.leq(form, e)]
    keep = set(elements)
    covers = [(a, b) for a, b in poset.covers if a in keep and b in keep]
    if args.output == "dot":
        if form is None:
            print(pt.hasse_dot(poset), end="")
        else:
            sub = pt.PartitionPoset(poset.kind, poset.n, tuple(elements), tuple(covers), poset.rules)
            print(pt.hasse_dot(sub), end="")
    elif args.output == "json":
        print(_dump({"kind": args.kind, "n": args.n,
                     "elements": [str(e) for e in elements],
                     "covers": [[str(a), str(b)] for a, b in covers]}))
    else:
        print(f"{len(elements)} elements")
        for e in elements:
            ups = [str(b) for a, b in covers if a == e]
            print(f"{e} < {', '.join(ups)}" if ups else str(e))
    return 0


def cmd_classify(args) -> int:
    _require(args.kind in pt.KINDS, "classify needs kind A, B or D")
    poset = pt.building_poset(args.kind, args.n)
    chains = list(pt.antichains(poset))
    status = 0
    found = None
    if args.exhaustive:
        found = set(arr.invariant_building_sets(args.kind, args.n))
        indexed = {arr.g_of_antichain(a, args.kind, args.n) for a in chains}
        if found != indexed:
            status = EXIT_MISMATCH
    if args.output == "json":
        out = {"kind": args.kind, "n": args.n, "count": len(chains),
               "antichains": [[str(e) for e in a] for a in chains]}
        if found is not None:
            out["exhaustive_count"] = len(found)
            out["agree"] = status == 0
        print(_dump(out))
    else:
        print(f"{len(chains)} invariant building sets")
        for a in chains:
            print("{" + ", ".join(str(e) for e in a) + "}")
        if found is not None:
            verdict = "agrees" if status == 0 else "DISAGREES"
            print(f"exhaustive orbit search: {len(found)} families, {verdict}")
    return status


def _family(args) -> arr.BuildingSet:
    form = _form(args.kind, args.form)
    if form is not None:
        _require(args.kind in pt.KINDS, "--form needs kind A, B or D")
        _require(form.n == args.n, f"{form} is not a form of size {args.n}")
        return arr.g_of_antichain([form], args.kind, args.n)
    if args.s is None:
        return arr.maximal_building(args.kind, args.n)
    if args.tilde:
        return arr.regular_tilde(args.kind, args.n, args.s)
    return arr.regular(args.kind, args.n, args.s)


def _poly_out(args, payload: dict, poly: QPolynomial):
    if args.output == "json":
        payload["poincare"] = poly.to_json()
        payload["text"] = poly.to_text()
        print(_dump(payload))
    else:
        print(poly.to_text())


def cmd_poincare(args) -> int:
    _require(args.output != "dot", "poincare has no dot output")
    if args.form is not None:
        poly = orc.poincare_oracle(_family(args))
        via = "oracle"
    else:
        poly = fm.poincare(args.kind, args.n, args.s, args.tilde)
        via = "formula"
    payload = {"kind": args.kind, "n": args.n, "s": args.s, "tilde": args.tilde,
               "form": args.form, "via": via}
    status = 0
    if args.oracle:
        brute = orc.poincare_oracle(_family(args))
        payload["oracle"] = brute.to_json()
        payload["agree"] = brute == poly
        if brute != poly:
            status = EXIT_MISMATCH
    _poly_out(args, payload, poly)
    if args.oracle and args.output != "json":
        print(f"oracle: {'agrees' if status == 0 else 'DISAGREES: ' + brute.to_text()}")
    return status


def cmd_oracle(args) -> int:
    _require(args.output != "dot", "oracle has no dot output")
    g = _family(args)
    poly = orc.poincare_oracle(g)
    payload = {"kind": args.kind, "n": args.n, "s": args.s, "tilde": args.tilde,
               "form": args.form, "members": len(g)}
    if args.monomials:
        monos = sorted(orc.admissible_monomials(g), key=lambda m: (m[1], orc.format_monomial(m[0])))
        payload["monomials"] = [{"monomial": orc.format_monomial(m), "degree": d} for m, d in monos]
    if args.output == "json":
        _poly_out(args, payload, poly)
        return 0
    print(f"{len(g)} members")
    print(poly.to_text())
    if args.monomials:
        for m, deg in monos:
            print(f"{orc.format_monomial(m)} : degree {deg}")
    return 0


def cmd_series(args) -> int:
    _require(args.kind in pt.KINDS, "series needs kind A, B or D")
    _require(args.output != "dot", "series has no dot output")
    _require(args.order >= 1, "--order must be positive")
    rows = sr.coefficient_table(args.kind, args.order, args.reading)
    if args.n is not None:
        rows = [r for r in rows if r[0] == args.n]
    if args.output == "json":
        print(_dump([{"n": i, "j": j, "poly": c.to_json()} for i, j, c in rows]))
    else:
        for i, j, c in rows:
            print(f"{i:>3} {j:>3}  {c.to_text()}")
    return 0


def euler_report(kind: str, n: int) -> dict:
    if kind == "A":
        values = {
            "poincare": fm.euler_from_poincare(fm.poincare_max_A(n)),
            "permutohedron": fm.euler_permutohedron_A(n),
            "closed": fm.euler_closed_A(n),
        }
    elif kind == "B":
        values = {
            "poincare": fm.euler_from_poincare(fm.poincare_max_B(n)),
            "permutohedron": fm.euler_permutohedron_B(n),
        }
    else:
        raise UsageError("euler supports kinds A and B")
    return {"kind": kind, "n": n, "values": values, "agree": len(set(values.values())) == 1}


def cmd_euler(args) -> int:
    _require(args.output != "dot", "euler has no dot output")
    rep = euler_report(args.kind, args.n)
    if args.output == "json":
        print(_dump(rep))
    else:
        for name, v in rep["values"].items():
            print(f"{name:>14}: {v}")
        print("agree" if rep["agree"] else "DISAGREE")
    return 0 if rep["agree"] else EXIT_MISMATCH


# ---------------------------------------------------------------------------
# verification suite

Check = tuple[str, Callable[[], tuple[bool, str]]]


def _eq(got, want) -> tuple[bool, str]:
    if got == want:
        return True, ""
    show = lambda x: x.to_text() if isinstance(x, QPolynomial) else str(x)
    return False, f"expected {show(want)}, got {show(got)}"


def _oracle_check(kind, n, s, tilde=False) -> Check:
    name = f"oracle {kind}{n} {'tilde ' if tilde else ''}s={s}"

    def run():
        g = arr.regular_tilde(kind, n, s) if tilde else arr.regular(kind, n, s)
        return _eq(fm.poincare(kind, n, s, tilde), orc.poincare_oracle(g))
    return name, run


def _oracle_checks(kind, n) -> list[Check]:
    low = {"A": 1, "B": 0, "D": 0}[kind]
    out = [_oracle_check(kind, n, s) for s in range(low, n - 1)]
    out += [_oracle_check(kind, n, s, tilde=True) for s in range(low, n)]
    return out


def _classify_check(kind, n) -> Check:
    def run():
        found = set(arr.invariant_building_sets(kind, n))
        chains = list(pt.antichains(pt.building_poset(kind, n)))
        indexed = {arr.g_of_antichain(a, kind, n) for a in chains}
        return _eq((len(indexed), indexed == found), (len(found), True))
    return f"classify {kind}{n}", run


GOLDEN = [
    ("A", 5, 1, "q^3+16*q^2+16*q+1"),
    ("A", 5, 2, "q^3+26*q^2+26*q+1"),
    ("A", 5, 3, "q^3+41*q^2+41*q+1"),
    ("A", 6, 2, "q^4+67*q^3+222*q^2+67*q+1"),
    ("A", 6, 4, "q^4+187*q^3+732*q^2+187*q+1"),
]


def verify_checks(tier: str) -> list[Check]:
    checks: list[Check] = []
    for kind, n, s, text in GOLDEN:
        checks.append((f"golden {kind}{n} s={s}",
                       lambda k=kind, n=n, s=s, t=text: _eq(fm.poincare(k, n, s), QPolynomial.from_text(t))))
    checks.append(("golden max A7", lambda: _eq(fm.poincare_max_A(7),
                   QPolynomial.from_text("q^5+855*q^4+9556*q^3+9556*q^2+855*q+1"))))
    checks.append(("max A inductive = closed, n<=12", lambda: _eq(
        [n for n in range(2, 13) if fm.poincare_max_A_inductive(n) != fm.poincare_max_A_closed(n)], [])))
    checks.append(("euler A n<=10", lambda: _eq(
        [n for n in range(2, 11) if not euler_report("A", n)["agree"]], [])))
    checks.append(("euler A6 = 360", lambda: _eq(fm.euler_permutohedron_A(6), 360)))
    checks.append(("euler B n<=6", lambda: _eq(
        [n for n in range(2, 7) if not euler_report("B", n)["agree"]], [])))
    for n in (4, 5):
        checks += _oracle_checks("A", n)
    for n in (3, 4, 5):
        checks.append(_classify_check("A", n))
    if tier in ("full", "nightly"):
        for n in (3, 4):
            checks += _oracle_checks("B", n)
        checks += _oracle_checks("D", 4)
        for n in range(2, 6):
            for s in range(-1, n):
                checks.append((f"boolean {n} s={s}", lambda n=n, s=s: _eq(
                    fm.poincare_regular_boolean(n, s), orc.poincare_oracle(arr.regular("Boolean", n, s)))))
        checks.append(("tilde B closed = inductive, n<=8", lambda: _eq(
            [(n, s) for n in range(2, 9) for s in range(n - 1)
             if fm.poincare_tilde_B_closed(n, s) != fm.poincare_tilde_B_inductive(n, s)], [])))
        for n in range(2, 7):
            checks.append((f"series A{n}", lambda n=n: _eq(
                sr.minimal_poincare("A", n), orc.poincare_oracle(arr.irreducibles("A", n)))))
        for n in range(2, 5):
            checks.append((f"series B{n}", lambda n=n: _eq(
                sr.minimal_poincare("B", n), orc.poincare_oracle(arr.irreducibles("B", n)))))
        checks.append(("series D4", lambda: _eq(
            sr.minimal_poincare("D", 4), orc.poincare_oracle(arr.irreducibles("D", 4)))))
        for kind, n in (("B", 3), ("B", 4), ("D", 4)):
            checks.append(_classify_check(kind, n))
    if tier == "nightly":
        checks += _oracle_checks("A", 6)
        checks += _oracle_checks("D", 5)
        checks.append(("series D5", lambda: _eq(
            sr.minimal_poincare("D", 5), orc.poincare_oracle(arr.irreducibles("D", 5)))))
    return checks


def cmd_verify(args) -> int:
    results = []
    for name, run in verify_checks(args.tier):
        ok, detail = run()
        results.append({"check": name, "ok": ok, "detail": detail})
    failed = [r for r in results if not r["ok"]]
    if args.output == "json":
        print(_dump({"tier": args.tier, "passed": len(results) - len(failed),
                     "failed": len(failed), "results": results}))
    else:
        for r in results:
            line = f"{'PASS' if r['ok'] else 'FAIL'} {r['check']}"
            print(line + (f": {r['detail']}" if r["detail"] else ""))
        print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return EXIT_MISMATCH if failed else 0


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wonderful",
                                     description="Invariant building sets and wonderful model Poincaré polynomials.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, kinds=True, n_required=True, s=False, form=False, outputs=("text", "json")):
        if kinds:
            p.add_argument("--kind", type=_kind, required=True, help="A, B, D or boolean")
        p.add_argument("--n", type=int, required=n_required)
        if s:
            p.add_argument("--s", type=int, help="regular family index; omit for the maximal model")
            p.add_argument("--tilde", action="store_true", help="use the tilde family")
        if form:
            p.add_argument("--form", help='partition "(3,2)" or singular form "(2|2,1)" or "(0|2,2)+"')
        p.add_argument("--output", choices=outputs, default="text")

    p = sub.add_parser("poset", help="Hasse diagram of the building-form poset")
    common(p, form=True, outputs=("text", "json", "dot"))
    p.set_defaults(func=cmd_poset)

    p = sub.add_parser("classify", help="invariant building sets via antichains")
    common(p)
    p.add_argument("--exhaustive", action="store_true", help="cross-check by orbit search")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("poincare", help="Poincaré polynomial from the formulas")
    common(p, s=True, form=True)
    p.add_argument("--oracle", action="store_true", help="compare with brute force")
    p.set_defaults(func=cmd_poincare)

    p = sub.add_parser("oracle", help="brute-force Poincaré polynomial")
    common(p, s=True, form=True)
    p.add_argument("--monomials", action="store_true", help="list the basis monomials")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("series", help="normalized coefficient table of a generating series")
    common(p, n_required=False)
    p.add_argument("--order", type=int, default=8)
    p.add_argument("--reading", choices=sr.D_READINGS, default=sr.DEFAULT_D_READING,
                   help="type D strong-tree series")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("euler", help="Euler characteristic identities")
    common(p)
    p.set_defaults(func=cmd_euler)

    p = sub.add_parser("verify", help="cross-validation suite")
    p.add_argument("--tier", choices=("quick", "full", "nightly"), default="quick")
    p.add_argument("--output", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "n", None) is not None and args.n < 1:
        parser.error("--n must be positive")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (ValueError, KeyError) as exc:
        parser.error(str(exc).strip("'\""))
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Verbs: ``jones``, ``tail``, ``phi1``, ``verify``, ``identities``,
``nahm-generic`` and ``info``.  Exit status is 0 on success, 1 when a
verification fails and 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import acceptance, identities, kernels
from .diagram import LinkDiagram, faces, nahm_data_from_pd, parse_pd, reduced_tait, tait_graph
from .errors import BoundTooLarge, InputError, JonesTailsError, TooLarge
from .jones import BraidWord, braid_to_pd, hat_jones, jones_braid, min_degree_formula
from .knots import knot_names, knot_record
from .nahm import DEFAULT_CAP, GenericNahmSpec, diagram_regularity, generic_nahm_result, phi0_result, phi1_result
from .qseries import QSeries
from .stability import empirical_phi, jones_sequence, verify_kstability

DEFAULT_ORDER = 50
DEFAULT_NMAX = 8


class CliInputError(InputError):
    """Bad input, tagged with the flag or file it came from."""

    def __init__(self, source: str, msg: str):
        super().__init__(f"{source}: {msg}")


# ------------------------------------------------------------------ inputs
def _read(value: str) -> tuple[str, str]:
    """``@path`` reads a file; anything else is inline text."""
    if value.startswith("@"):
        path = Path(value[1:])
        try:
            return path.read_text(), str(path)
        except OSError as exc:
            raise CliInputError(str(path), exc.strerror or "cannot read") from None
    return value, "inline"


class Source:
    """The one input of a command: a table knot, a PD or a braid word."""

    def __init__(self, args):
        given = [f for f in ("knot", "pd", "braid") if getattr(args, f, None)]
        if len(given) != 1:
            raise CliInputError("input", "give exactly one of --knot, --pd, --braid")
        self.kind = given[0]
        self.name = None
        self.record = None
        raw = getattr(args, self.kind)
        if self.kind == "knot":
            self.name = raw
            self.record = knot_record(raw)
            self.where = f"--knot {raw}"
        else:
            self.text, origin = _read(raw)
            self.where = f"--{self.kind} ({origin})"

    def _wrap(self, fn):
        try:
            return fn()
        except InputError as exc:
            raise CliInputError(self.where, str(exc)) from None

    def diagram(self) -> LinkDiagram:
        if self.kind == "knot":
            return parse_pd(self.record["pd"])
        if self.kind == "pd":
            return self._wrap(lambda: parse_pd(self.text))
        return self._wrap(lambda: braid_to_pd(self.braid()))

    def braid(self) -> BraidWord:
        if self.kind == "knot":
            if not self.record.get("braid"):
                raise CliInputError(self.where, "no braid word on record")
            return BraidWord.parse(self.record["braid"])
        if self.kind == "braid":
            return self._wrap(lambda: BraidWord.parse(self.text.strip()))
        raise CliInputError(self.where, "a braid word is needed for the state sum")

    def label(self) -> str | None:
        return self.name


def _mirrored(d: LinkDiagram, mirror: str) -> LinkDiagram:
    return d.mirror() if mirror == "minus" else d


def _coeffs(s: QSeries, order: int) -> list[int]:
    return s.int_coeffs(order)


# ----------------------------------------------------------------- verbs
def cmd_jones(args) -> tuple[int, dict, str]:
    src = Source(args)
    b = src.braid()
    j = jones_braid(b, args.n)
    mono, unit = hat_jones(j)
    out = {
        "knot": src.label(),
        "n": args.n,
        "braid": str(b),
        "jones": j.to_json(),
        "min_degree": j.min_exp / 4,
        "hat": unit.to_json(),
    }
    lines = [f"J_{args.n} = {j}", f"lowest monomial {mono}"]
    if src.record is not None:
        f = min_degree_formula(src.record["c_minus"], src.record["sigma"], args.n)
        out["min_degree_formula"] = f / 4
        out["min_degree_ok"] = f == j.min_exp
        lines.append(f"minimum degree {j.min_exp / 4} (formula {f / 4})")
        if f != j.min_exp:
            return 1, out, "\n".join(lines)
    return 0, out, "\n".join(lines)


def _series_cmd(args, fn, what: str):
    src = Source(args)
    d = _mirrored(src.diagram(), args.mirror)
    nd = nahm_data_from_pd(d)
    r = fn(nd, args.order, cap=args.cap)
    out = {"knot": src.label(), "mirror": args.mirror, "order": args.order,
           "coefficients": _coeffs(r.series, args.order)}
    out.update(r.to_json())
    text = f"{what} = {r.series}\npoints enumerated {r.points_enumerated}"
    return 0, out, text


def cmd_tail(args):
    return _series_cmd(args, phi0_result, "Phi_0")


def cmd_phi1(args):
    return _series_cmd(args, phi1_result, "Phi_1")


def cmd_verify(args):
    if args.criterion is not None:
        res = [acceptance.run_criterion(k) for k in args.criterion]
        out = {"criteria": [r.to_json() for r in res]}
        return (0 if all(r.passed for r in res) else 1), out, "\n".join(r.line() for r in res)
    src = Source(args)
    if args.k < 0:
        raise CliInputError("--k", "must be nonnegative")
    b = src.braid()
    nd = nahm_data_from_pd(_mirrored(src.diagram(), args.mirror))
    n_max = args.nmax
    exact = min(args.k, 1)
    # the shifted k-residual needs every series to order (k+1)(n+1)+2
    N = (args.k + 1) * (n_max + 1) + 2
    phis = [phi0_result(nd, N, cap=args.cap).series]
    if exact >= 1:
        phis.append(phi1_result(nd, N, cap=args.cap).series)
    seq = _sequence(b, n_max, lambda n: (args.k + 1) * (n + 1) + 2, args.threads)
    if args.k > exact:
        extra = empirical_phi(seq, args.k, max(1, n_max - args.k), known=phis)
        phis.extend(extra[len(phis):])
    rep = verify_kstability(phis, seq, n_max, args.k, src.label())
    out = rep.to_json()
    out["certified"] = [rep.certified[n] for n in sorted(rep.certified)]
    text = (f"k={args.k} n<={n_max}: {'pass' if rep.passed else 'FAIL'}\n"
            f"residual valuations {out['residual_valuations']}")
    return (0 if rep.passed else 1), out, text


def _one_term(job):
    b, n, need = job
    return jones_sequence(b, n, need, n_min=n)[n]


def _sequence(b, n_max, order, threads):
    if threads <= 1:
        return jones_sequence(b, n_max, order)
    jobs = [(b, n, order(n)) for n in range(1, n_max + 1)]
    with ProcessPoolExecutor(threads) as pool:
        terms = list(pool.map(_one_term, jobs))
    return {n: t for n, t in zip(range(1, n_max + 1), terms)}


def _row_job(job):
    name, order, cap = job
    return identities.check_row(name, order, cap)


def cmd_identities(args):
    out: dict = {}
    lines = []
    ok = True
    suites = ["micro", "twist", "tetra", "table"] if args.suite == "all" else [args.suite]
    if "micro" in suites:
        res = identities.micro_suite(args.order)
        out["micro"] = res
        lines += [f"{'ok ' if v else 'NO '} {k}" for k, v in res.items()]
        ok &= all(res.values())
    if "twist" in suites:
        res = {}
        for p in (1, 2, 3, 4):
            res[f"p={p} signed form = difference form"] = (
                identities.twist_plus_signed(p, args.order) == identities.twist_plus_difference(p, args.order))
        out["twist"] = res
        lines += [f"{'ok ' if v else 'NO '} {k}" for k, v in res.items()]
        ok &= all(res.values())
    if "tetra" in suites:
        vals = identities.tetra_stability(args.nmax)
        good = all(v is None or v >= n + 1 for n, v in vals.items())
        out["tetra"] = {"valuations": [vals[n] for n in sorted(vals)], "pass": good}
        lines.append(f"{'ok ' if good else 'NO '} tetrahedron 0-stability n<={args.nmax}")
        ok &= good
    if "table" in suites:
        names = [args.knot] if args.knot else identities.table_rows()
        names = sorted(names, key=identities._knot_sort_key)
        jobs = [(n, args.order, args.cap) for n in names]
        if args.threads > 1:
            with ProcessPoolExecutor(args.threads) as pool:
                rows = list(pool.map(_row_job, jobs))
        else:
            rows = [_row_job(j) for j in jobs]
        out["table"] = [r.to_json() for r in rows]
        lines.append(identities.suite_text(rows))
        ok &= all(r.ok for r in rows)
    return (0 if ok else 1), out, "\n".join(lines)


def cmd_nahm_generic(args):
    text, origin = _read(args.spec)
    try:
        obj = json.loads(text)
        spec = GenericNahmSpec(
            tuple(tuple(r) for r in obj["A"]), tuple(obj["b"]), tuple(obj.get("a", [0] * len(obj["b"]))),
            tuple(tuple(r) for r in obj.get("cone", [])), args.order, obj.get("radius"),
        )
    except (ValueError, KeyError, TypeError) as exc:
        raise CliInputError(f"--spec ({origin})", f"bad specification: {exc}") from None
    except InputError as exc:
        raise CliInputError(f"--spec ({origin})", str(exc)) from None
    series, rep = generic_nahm_result(spec)
    out = {"order": args.order, "coefficients": series.int_coeffs(args.order) if series.has_integer_exponents()
           else None, "series": series.to_json(), "regularity": rep.to_json()}
    return 0, out, f"{series}\nregularity constant {rep.c}"


def cmd_info(args):
    if not any(getattr(args, f, None) for f in ("knot", "pd", "braid")):
        names = knot_names()
        return 0, {"knots": names}, " ".join(names)
    src = Source(args)
    d = _mirrored(src.diagram(), args.mirror)
    f = faces(d)
    nd = nahm_data_from_pd(d)
    reg = diagram_regularity(nd, min(args.order, 6), args.cap)
    t = reduced_tait(tait_graph(f))
    out = {
        "knot": src.label(),
        "pd": d.to_pd_text(),
        "crossings": d.n_crossings,
        "c_plus": d.c_plus,
        "c_minus": d.c_minus,
        "a_faces": len(f.a_faces),
        "b_faces": len(f.b_faces),
        "reduced_tait_edges": [list(e) for e in t.edges],
        "nahm_data": nd.to_json(),
        "regularity": reg.to_json(),
        "kernels": kernels.backend(),
    }
    if src.record is not None:
        out["record"] = src.record
    text = "\n".join([
        f"PD {d.to_pd_text()}",
        f"crossings {d.n_crossings} (c+ {d.c_plus}, c- {d.c_minus})",
        f"faces A {len(f.a_faces)}, B {len(f.b_faces)}; variables {nd.n_vars}",
        "matrix " + json.dumps([list(r) for r in nd.Q2x]),
        "2L " + json.dumps(list(nd.L2)),
        f"regularity constant {reg.c}",
    ])
    return 0, out, text


# ----------------------------------------------------------------- parser
def _add_input(p):
    g = p.add_argument_group("input (exactly one)")
    g.add_argument("--knot", help="name from the built-in table, e.g. 4_1")
    g.add_argument("--pd", help="PD code, inline or @file")
    g.add_argument("--braid", help='braid word such as "w:3 1 -2 1 -2", inline or @file')


def _add_common(p, order=True):
    if order:
        p.add_argument("--order", type=int, default=DEFAULT_ORDER, help="truncation order N (default 50)")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--threads", type=int, default=1, help="worker processes for suites and per-n work")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="enumeration point cap")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="jonestails", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("jones", help="coloured Jones polynomial by the braid state sum")
    _add_input(p)
    p.add_argument("--n", type=int, default=1, help="colour (default 1)")
    _add_common(p, order=False)
    p.set_defaults(func=cmd_jones)

    for verb, fn, what in (("tail", cmd_tail, "Phi_0"), ("phi1", cmd_phi1, "Phi_1")):
        p = sub.add_parser(verb, help=f"{what} of an alternating diagram")
        _add_input(p)
        p.add_argument("--mirror", choices=("auto", "plus", "minus"), default="auto",
                       help="minus evaluates the mirror diagram (the head); auto = plus")
        _add_common(p)
        p.set_defaults(func=fn)

    p = sub.add_parser("verify", help="k-stability against the state sum, or an acceptance criterion")
    _add_input(p)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--nmax", "--n", type=int, default=DEFAULT_NMAX, dest="nmax")
    p.add_argument("--mirror", choices=("auto", "plus", "minus"), default="auto")
    p.add_argument("--criterion", type=int, action="append", choices=range(1, 14), metavar="K",
                   help="run acceptance criterion K (repeatable)")
    _add_common(p, order=False)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("identities", help="q-series identities and the knot table")
    p.add_argument("--suite", choices=("micro", "twist", "tetra", "table", "all"), default="micro")
    p.add_argument("--knot", help="restrict the table suite to one row")
    p.add_argument("--nmax", type=int, default=10)
    _add_common(p)
    p.set_defaults(func=cmd_identities)

    p = sub.add_parser("nahm-generic", help="generalised Nahm sum from a JSON specification")
    p.add_argument("--spec", required=True, help='JSON {"A", "b", "a", "cone", "radius"}, inline or @file')
    _add_common(p)
    p.set_defaults(func=cmd_nahm_generic)

    p = sub.add_parser("info", help="diagram data, or the list of built-in knots")
    _add_input(p)
    p.add_argument("--mirror", choices=("auto", "plus", "minus"), default="auto")
    _add_common(p)
    p.set_defaults(func=cmd_info)
    return ap


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    if getattr(args, "order", 1) < 1:
        print("error: --order: must be positive", file=stderr)
        return 2
    try:
        code, out, text = args.func(args)
    except (InputError, TooLarge, BoundTooLarge) as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    except JonesTailsError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=stderr)
        return 1
    if args.format == "json":
        stdout.write(json.dumps(out, sort_keys=True) + "\n")
    else:
        stdout.write(text + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

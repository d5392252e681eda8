"""Command-line front end.

    python -m cogrowth_lab [global flags] <command> <verb> [args]

Global flags go before the command. Output is TSV (``#`` metadata lines,
tab separators) or JSON with big integers as decimal strings. Exit codes:
0 success, 1 a checked invariant failed, 2 usage error, 3 capacity error.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from pathlib import Path

from . import arith, diophantine, path_model, series_lab, subword, theorem_check
from .heis_core import eval_word, format_word, parse_word
from .walk_engine import (
    DEFAULT_BUDGET,
    EXACT,
    VH_S,
    CapacityError,
    CountTable,
    count_closed,
    count_reduced_split,
    h3_lazy_ratio,
    parse_ring,
    tables_from_tsv,
    tables_to_tsv,
)

THREADS_ENV = "COGROWTH_THREADS"


class UsageError(ValueError):
    pass


def _parse_bytes(text: str) -> int:
    units = {"k": 1 << 10, "m": 1 << 20, "g": 1 << 30}
    t = text.strip().lower().rstrip("b")
    mult = units.get(t[-1:], 1)
    if t[-1:] in units:
        t = t[:-1]
    try:
        return int(float(t) * mult)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad byte count {text!r}") from None


def _json_list(text: str) -> list:
    """A JSON literal, or @path to read one from a file."""
    if text.startswith("@"):
        text = Path(text[1:]).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise argparse.ArgumentTypeError(f"bad JSON: {exc}") from None


def _jsonable(v):
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return v
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return v
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return str(v)


class Output:
    """Collects rows and renders them in the requested format."""

    def __init__(self, fmt: str):
        self.fmt = fmt
        self.meta: list[str] = []
        self.columns: list[str] = []
        self.rows: list[list] = []
        self.raw: str | None = None

    def table(self, columns, rows, meta=()):
        self.columns, self.rows, self.meta = list(columns), [list(r) for r in rows], list(meta)

    def render(self) -> str:
        if self.raw is not None:
            return self.raw
        if self.fmt == "json":
            recs = [dict(zip(self.columns, (_jsonable(v) for v in r))) for r in self.rows]
            return json.dumps(recs, indent=2) + "\n"
        lines = [f"# {m}" for m in self.meta]
        lines.append("\t".join(self.columns))
        lines += ["\t".join(_cell(v) for v in r) for r in self.rows]
        return "\n".join(lines) + "\n"


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.6f}"
    if isinstance(v, (list, tuple)):
        return " ".join(str(x) for x in v)
    return str(v)


# ---------------------------------------------------------------------------
# DP tables with an on-disk TSV cache


def _engine_kw(args) -> dict:
    return {"threads": args.threads, "budget": args.memory_budget, "prune": not getattr(args, "no_prune", False)}


def _cached_tables(args, engine: str, max_len: int, ring) -> list[CountTable]:
    prune = not getattr(args, "no_prune", False)
    params = f"engine={engine} max_len={max_len} ring={ring} prune={int(prune)}"
    path = None
    if args.cache_dir:
        path = Path(args.cache_dir) / f"{engine}_L{max_len}_{ring}_p{int(prune)}.tsv"
        if path.exists():
            return tables_from_tsv(path.read_text())
    if engine == "gamma":
        tables = [count_closed(VH_S, "VH", max_len, ring, **_engine_kw(args))]
    else:
        tables = list(count_reduced_split(max_len, ring, **_engine_kw(args)))
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(tables_to_tsv(tables, params))
    return tables


def _emit_tables(out: Output, tables: list[CountTable], params: str) -> None:
    if out.fmt == "json":
        out.raw = json.dumps(
            {"params": params, "ring": str(tables[0].ring), **{t.name: _jsonable(list(t.values)) for t in tables}},
            indent=2,
        ) + "\n"
    else:
        out.raw = tables_to_tsv(tables, params)


def cmd_gamma(args, out: Output) -> int:
    ring = parse_ring(args.ring)
    tables = _cached_tables(args, "gamma", args.max_len, ring)
    _emit_tables(out, tables, f"engine=gamma max_len={args.max_len}")
    return 0


def cmd_reduced_split(args, out: Output) -> int:
    ring = parse_ring(args.ring)
    tables = _cached_tables(args, "reduced", args.max_len, ring)
    _emit_tables(out, tables, f"engine=reduced max_len={args.max_len}")
    return 0


def cmd_h3(args, out: Output) -> int:
    ratio = h3_lazy_ratio(args.ell, threads=args.threads, budget=args.memory_budget)
    out.table(["ell", "ratio", "target"], [[args.ell, ratio, 1.5625]])
    return 0


# ---------------------------------------------------------------------------


def cmd_path(args, out: Output) -> int:
    w = parse_word(args.word)
    p = path_model.word_to_path(w)
    g = eval_word(w)
    if args.verb == "area":
        out.table(
            ["word", "a", "b", "c", "eps", "returns_to_origin", "area"],
            [[format_word(w), g.h.a, g.h.b, g.h.c, g.eps, p.endpoint() == (0, 0), path_model.algebraic_area(p)]],
        )
    else:
        grid = path_model.winding_grid(p)
        out.raw = f"# total={grid.total()}\n" + grid.to_tsv()
        if out.fmt == "json":
            out.raw = json.dumps(
                {"x0": grid.x0, "y0": grid.y0, "total": str(grid.total()), "values": grid.values.tolist()}
            ) + "\n"
    return 0


def cmd_dioph(args, out: Output) -> int:
    n = args.ell
    if args.verb == "list":
        sols = diophantine.enumerate_Sn(n, args.method)
        out.table(
            ["a", "b", "c", "d", "orbit_id", "orbit_size"],
            [[s.a, s.b, s.c, s.d, ",".join(map(str, s.orbit_id)), s.orbit_size] for s in sols],
            [f"n={n} count={len(sols)}"],
        )
    elif args.verb == "orbits":
        st = diophantine.orbit_decompose(n)
        out.table(
            ["n", "total", "aaaa", "abab", "abcc", "free", "reconstructed", "residual_mod8", "closed_forms_ok"],
            [[n, st.total, st.aaaa, st.abab, st.abcc, st.free, st.reconstructed(), st.residual() % 8, st.closed_forms_ok]],
        )
        return 0 if st.closed_forms_ok and st.reconstructed() == st.total else 1
    elif args.verb == "abcc":
        vals = {m: diophantine.count_abcc(n, m) for m in ("brute", "totient", "closed_form")}
        out.table(["n", "brute", "totient", "closed_form", "agree"], [[n, *vals.values(), len(set(vals.values())) == 1]])
    else:
        v = diophantine.r2_formula(n, args.reading)
        out.table(["ell", "length", "reading", "r2", "r2_over_8^6"], [[n, 2 * n + 6, args.reading, v, v // 8**6]])
    return 0


def cmd_arith(args, out: Output) -> int:
    v = args.value
    if args.verb == "m":
        out.raw = f"{arith.m_of_n(v)}\n"
    elif args.verb == "f":
        out.raw = f"{arith.f_sign(v)}\n"
    elif args.verb == "density":
        count = arith.density_counts(v)
        out.table(
            ["X", "count", "density", "limit"],
            [[v, count, count / v, arith.DENSITY_LIMIT]],
        )
    elif args.verb == "gauss":
        bad = arith.gauss_identity_check(v)
        out.table(["limit", "ok", "first_failure"], [[v, bad is None, "" if bad is None else bad]])
        return 0 if bad is None else 1
    else:
        q = arith.qf_scan(v)
        out.table(
            ["limit", "members", "partial_sum", "decimal"],
            [[v, len(q.members), str(q.partial_sum), q.decimal]],
        )
    if out.fmt == "json" and out.raw is not None:
        out.raw = json.dumps(out.raw.strip()) + "\n"
    return 0


def cmd_complexity(args, out: Output) -> int:
    if args.verb == "profile":
        prof = subword.complexity_profile(arith.f_sieve(args.window), args.n)
        out.table(["n", "p", "max"], [[k, p, 2**k] for k, p in enumerate(prof, start=1)], [f"window={args.window}"])
    elif args.verb == "scan":
        count, missing = subword.saturation_scan(args.n, args.window)
        out.table(
            ["n", "window", "seen", "total", "missing"],
            [[args.n, args.window, count, 2**args.n, ";".join("".join("+" if u > 0 else "-" for u in b) for b in missing)]],
        )
    else:
        if args.block:
            block = tuple(1 if ch == "+" else -1 for ch in args.block)
            if any(ch not in "+-" for ch in args.block):
                raise UsageError("--block takes a string over '+' and '-'")
        else:
            block = subword.random_blocks(1, args.n, args.seed)[0]
        cert = subword.crt_witness(block, force_crt=args.force_crt)
        ok = subword.verify_certificate(cert)
        d = json.loads(cert.to_json())
        d["verified"] = ok
        out.raw = json.dumps(d, sort_keys=True) + "\n"
        return 0 if ok else 1
    return 0


def cmd_series(args, out: Output) -> int:
    if args.verb == "guess":
        rec = series_lab.guess_recurrence(args.terms, args.max_order, args.max_degree, step=args.step)
        out.raw = json.dumps(None if rec is None else rec.to_json()) + "\n"
        return 0 if rec is not None else 1
    if args.verb == "check":
        rec = series_lab.Recurrence.of(args.rec)
        bad = series_lab.check_recurrence(rec, args.terms)
        out.table(["terms", "holds", "first_failure"], [[len(args.terms), bad is None, "" if bad is None else bad]])
        return 0 if bad is None else 1
    if args.verb == "extract-even":
        rec = series_lab.extract_even(series_lab.Recurrence.of(args.rec), odd=args.odd)
        out.raw = json.dumps(rec.to_json()) + "\n"
        return 0
    N = args.order
    r = _cached_tables(args, "reduced", N, EXACT)[0]
    c = _cached_tables(args, "gamma", N, EXACT)[0]
    rep = series_lab.cogrowth_check(r.values, c.values, N)
    out.table(
        ["n", "lhs", "rhs", "equal"],
        [[n, str(a), str(b), a == b] for n, (a, b) in enumerate(zip(rep.lhs, rep.rhs))],
        [f"order={N} first_mismatch={rep.first_mismatch if rep.first_mismatch is not None else 'none'}"],
    )
    return 0


def cmd_theorem(args, out: Output) -> int:
    ring = parse_ring(args.ring)
    rows = theorem_check.miracle_report(args.jmax, ring, threads=args.threads, budget=args.memory_budget)
    out.raw = theorem_check.report_json(rows) + "\n" if out.fmt == "json" else theorem_check.report_tsv(rows)
    problems = theorem_check.internal_problems(rows)
    for p in problems:
        print(f"invariant: {p}", file=sys.stderr)
    return 1 if problems else 0


# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    env_threads = os.environ.get(THREADS_ENV)
    p = _Parser(prog="cogrowth_lab", description=__doc__.splitlines()[0])
    p.add_argument("--format", choices=("tsv", "json"), default=None)
    p.add_argument("--out", help="write output here instead of stdout")
    p.add_argument("--cache-dir", help="reuse DP tables stored as TSV in this directory")
    p.add_argument("--threads", type=int, default=int(env_threads) if env_threads else 1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--memory-budget", type=_parse_bytes, default=DEFAULT_BUDGET)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gamma", help="weighted closed walks on vH")
    g.add_argument("--max-len", type=int, required=True)
    g.add_argument("--ring", default="exact")
    g.add_argument("--no-prune", action="store_true")
    g.set_defaults(func=cmd_gamma)

    g = sub.add_parser("reduced-split", help="reduced closed walks split into r1, r2, r3")
    g.add_argument("--max-len", type=int, required=True)
    g.add_argument("--ring", default="exact")
    g.add_argument("--no-prune", action="store_true")
    g.set_defaults(func=cmd_reduced_split)

    g = sub.add_parser("h3-diaconis", help="ell^2 c_ell / 5^ell for the lazy walk on H3")
    g.add_argument("--ell", type=int, default=40)
    g.set_defaults(func=cmd_h3)

    g = sub.add_parser("path", help="lattice path of a word")
    g.add_argument("verb", choices=("area", "grid"))
    g.add_argument("word")
    g.set_defaults(func=cmd_path)

    g = sub.add_parser("dioph", help="solutions of a+b+c+d = n, ab = cd")
    g.add_argument("verb", choices=("list", "orbits", "abcc", "r2"))
    g.add_argument("--ell", type=int, required=True)
    g.add_argument("--reading", choices=("expanded", "representative"), default="expanded")
    g.add_argument("--method", choices=("fast", "brute"), default="fast")
    g.set_defaults(func=cmd_dioph)

    g = sub.add_parser("arith", help="m(n), f(n) and related scans")
    g.add_argument("verb", choices=("m", "f", "density", "gauss", "qf"))
    g.add_argument("value", type=int)
    g.set_defaults(func=cmd_arith)

    g = sub.add_parser("complexity", help="subword complexity of f and CRT witnesses")
    g.add_argument("verb", choices=("profile", "scan", "witness"))
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--window", type=int, default=10**6)
    g.add_argument("--block", help="explicit block over '+' and '-' (witness only)")
    g.add_argument("--force-crt", action="store_true")
    g.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    g.set_defaults(func=cmd_complexity)

    g = sub.add_parser("series", help="recurrences and the cogrowth identity")
    g.add_argument("verb", choices=("guess", "check", "extract-even", "cogrowth-check"))
    g.add_argument("--terms", type=_json_list, help="JSON list of integers, or @file")
    g.add_argument("--rec", type=_json_list, help="JSON list of coefficient lists, or @file")
    g.add_argument("--max-order", type=int, default=2)
    g.add_argument("--max-degree", type=int, default=2)
    g.add_argument("--step", type=int, default=1)
    g.add_argument("--odd", action="store_true")
    g.add_argument("--order", type=int, default=12)
    g.set_defaults(func=cmd_series)

    g = sub.add_parser("theorem", help="parity report for the S(z) coefficients")
    g.add_argument("verb", choices=("verify",))
    g.add_argument("--jmax", type=int, default=5)
    g.add_argument("--ring", default="mod24")
    g.set_defaults(func=cmd_theorem)
    return p


_JSON_DEFAULT = {("theorem", "verify"), ("complexity", "witness")}


def _check_series_args(args) -> None:
    need = {"guess": ("terms",), "check": ("terms", "rec"), "extract-even": ("rec",), "cogrowth-check": ()}
    for name in need[args.verb]:
        if getattr(args, name) is None:
            raise UsageError(f"series {args.verb} needs --{name}")


def dispatch(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    fmt = args.format or ("json" if (args.command, getattr(args, "verb", None)) in _JSON_DEFAULT else "tsv")
    out = Output(fmt)
    random.seed(args.seed)
    try:
        if args.threads < 1:
            raise UsageError("--threads must be >= 1")
        if args.command == "series":
            _check_series_args(args)
        code = args.func(args, out)
    except CapacityError as exc:
        print(f"capacity-error\treason={exc}", file=sys.stderr)
        return 3
    except (UsageError, ValueError, series_lab.SeriesError) as exc:
        print(f"cogrowth_lab: error: {exc}", file=sys.stderr)
        return 2
    except subword.BudgetExceeded as exc:
        print(f"budget-exceeded\treason={exc}", file=sys.stderr)
        return 3
    text = out.render()
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    raise SystemExit(dispatch())

"""
Command-line front end.

    cyclokappa kappa --from 3 --to 30 --format csv
    cyclokappa kappa --N 121 --allow-large
    cyclokappa kappa --from 1 --to 120 --diff
    cyclokappa verify unipotence --p 3 --M 1 --k 3 --d 2
    cyclokappa verify surjectivity --N 5 --k 2 --d 2
    cyclokappa verify dual --p 2 --q 17
    cyclokappa coproduct "I(0; e1, e2; 1)" --N 5
    cyclokappa cache show --cache results.jsonl

Exit status is 0 on success, 1 when a check is falsified (or ``--diff``
finds a mismatch) and 2 on usage errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from . import __version__
from .cache import ResultCache, resolve_path

EXIT_OK, EXIT_FALSIFIED, EXIT_USAGE = 0, 1, 2
LARGE_N = 200
CSV_FIELDS = ["N", "kappa", "dimY1", "rank", "method", "elapsed_ms"]


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    Ns: list = field(default_factory=list)
    k: Optional[int] = None
    d: Optional[int] = None
    p: Optional[int] = None
    q: Optional[int] = None
    M: Optional[int] = None
    field_p: Optional[int] = None
    fmt: str = "csv"
    cache: Optional[str] = None
    threads: int = 1
    force_rational: bool = False


# --- kappa -----------------------------------------------------------------------------


def _parse_Ns(args) -> list[int]:
    Ns: list[int] = []
    for tok in args.N or []:
        for part in str(tok).split(","):
            part = part.strip()
            if part:
                Ns.append(int(part))
    if args.from_ is not None or args.to is not None:
        if args.from_ is None or args.to is None:
            raise UsageError("--from and --to must be given together")
        if args.from_ > args.to:
            raise UsageError(f"empty range {args.from_}..{args.to}")
        Ns.extend(range(args.from_, args.to + 1))
    if not Ns:
        raise UsageError("give --N or a --from/--to range")
    if any(n < 1 for n in Ns):
        raise UsageError("N must be positive")
    return Ns


def _compute(job):
    N, force_rational = job
    from .kappa import kappa

    res = kappa(N, "exact" if force_rational else "auto").as_dict()
    return {k: res[k] for k in CSV_FIELDS}


def compute_kappas(Ns, force_rational=False, threads=1, cache: Optional[ResultCache] = None):
    """Results in input order; cached entries are reused and new ones stored."""
    params = lambda N: {"N": N, "method": "exact" if force_rational else "auto"}
    out: dict[int, dict] = {}
    todo = []
    for N in dict.fromkeys(Ns):
        hit = cache.get("kappa", params(N)) if cache is not None else None
        if hit is not None:
            out[N] = hit
        else:
            todo.append(N)
    jobs = [(N, force_rational) for N in todo]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            fresh = list(ex.map(_compute, jobs))
    else:
        fresh = [_compute(j) for j in jobs]
    for N, res in zip(todo, fresh):
        out[N] = res
        if cache is not None:
            cache.put("kappa", params(N), res)
    return [out[N] for N in Ns]


def format_rows(rows, fmt: str, stable: bool = False) -> str:
    if stable:
        rows = [dict(r, elapsed_ms=0) for r in rows]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, CSV_FIELDS, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow(r)
        return buf.getvalue()
    if fmt == "json":
        return "".join(json.dumps(r) + "\n" for r in rows)
    cells = [CSV_FIELDS] + [[str(r[k]) for k in CSV_FIELDS] for r in rows]
    widths = [max(len(c[i]) for c in cells) for i in range(len(CSV_FIELDS))]
    lines = ["  ".join(c[i].rjust(widths[i]) for i in range(len(c))) for c in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def cmd_kappa(args, out) -> int:
    Ns = _parse_Ns(args)
    big = [n for n in Ns if n > LARGE_N]
    if big and not args.allow_large:
        raise UsageError(
            f"N={big[0]} exceeds the default cap N <= {LARGE_N}; pass --allow-large to accept the runtime"
        )
    if args.threads < 1:
        raise UsageError("--threads must be >= 1")
    path = resolve_path(args.cache)
    cache = ResultCache(path) if path else None
    rows = compute_kappas(Ns, args.force_rational, args.threads, cache)
    status = EXIT_OK
    if args.diff:
        from .kappa import load_table1

        table = load_table1()
        compared = [r for r in rows if r["N"] in table]
        bad = [r for r in compared if r["kappa"] != table[r["N"]]]
        for r in bad:
            out.write(f"MISMATCH N={r['N']}: computed {r['kappa']}, table {table[r['N']]}\n")
        out.write(f"compared {len(compared)} values against the table, {len(bad)} mismatches\n")
        status = EXIT_FALSIFIED if bad else EXIT_OK
    else:
        out.write(format_rows(rows, args.format, args.stable))
    if args.conjectures:
        from .kappa import conjecture_report

        for r in rows:
            v = conjecture_report(r["N"], computed=r["kappa"])
            if v.shape is None:
                out.write(f"N={v.N}: {v.note}\n")
            else:
                verdict = "holds" if v.match else "FAILS"
                out.write(f"N={v.N} [{v.shape}]: predicted {v.predicted}, computed {v.computed}, {verdict}\n")
    return status


# --- verify ----------------------------------------------------------------------------


def _special_level(args):
    from .cyclotomic import make_level

    if args.N is not None:
        N = _single_N(args)
    elif args.p is not None and args.M is not None:
        if args.p not in (2, 3) or args.M < 0:
            raise UsageError("--p must be 2 or 3 and --M >= 0")
        N = (6 - args.p) * args.p ** args.M
    else:
        raise UsageError("give --N, or --p and --M, for a level N = q*p^M")
    lv = make_level(N)
    if not lv.is_special:
        raise UsageError(f"N={N} is not of the form q*p^M with p in {{2,3}}, q=6-p")
    return lv


def _single_N(args) -> int:
    Ns = _parse_Ns(args)
    if len(Ns) != 1:
        raise UsageError("this suite takes a single --N")
    return Ns[0]


def _levels(args):
    """One level, or the grid p in {2,3}, M in {1,2} when no level is given."""
    if args.N is None and args.M is None:
        ps = [args.p] if args.p is not None else [2, 3]
        from .cyclotomic import make_level

        return [make_level((6 - p) * p**M) for p in ps for M in (1, 2)]
    return [_special_level(args)]


def _kd_grid(args, ds):
    ds = [args.d] if args.d is not None else ds
    out = []
    for d in ds:
        ks = [args.k] if args.k is not None else range(d, d + 3)
        for k in ks:
            if k < d:
                raise UsageError(f"need k >= d, got k={k}, d={d}")
            out.append((k, d))
    return out


def cmd_verify(args, out) -> int:
    from . import depthgraded as dg
    from .exactlinalg import NotNilpotent

    suite = args.suite
    failures = 0
    report = []
    if suite in ("unipotence", "decomposition", "basis"):
        ds = [1, 2, 3] if suite == "basis" else [2, 3]
        for lv in _levels(args):
            for k, d in _kd_grid(args, ds):
                tag = f"N={lv.N} (p={lv.p}, M={lv.M}) k={k} d={d}"
                if suite == "unipotence":
                    idx = dg.unipotence_check(lv, k, d)
                    ok = bool(idx is not NotNilpotent)
                    msg = f"pass, index {idx}" if ok else "FAIL, not nilpotent"
                elif suite == "decomposition":
                    ok = dg.decomposition_check(lv, k, d)
                    msg = "pass" if ok else "FAIL"
                else:
                    ok = dg.basis_bijectivity_check(lv, k, d)
                    msg = "pass, bijective and stable" if ok else "FAIL"
                failures += not ok
                report.append({"suite": suite, "N": lv.N, "k": k, "d": d, "pass": ok, "detail": msg})
                out.write(f"{suite} {tag}: {msg}\n")
    elif suite == "surjectivity":
        from .cyclotomic import make_level

        lv = make_level(_single_N(args))
        if args.k is None or args.d is None:
            raise UsageError("surjectivity needs --k and --d")
        if args.k < args.d:
            raise UsageError(f"need k >= d, got k={args.k}, d={args.d}")
        method = "fraction_free" if args.force_rational else "auto"
        c = dg.surjectivity_check(lv, args.k, args.d, method)
        holds = c == 0
        msg = f"cokernel {c}, P({lv.N},{args.k},{args.d}) {'holds' if holds else 'fails'}"
        failures += not holds
        report.append({"suite": suite, "N": lv.N, "k": args.k, "d": args.d, "pass": holds, "detail": msg})
        out.write(msg + "\n")
    elif suite == "dual":
        from .kappa import dual_kernel_check, lower_bound_witnesses, n_q

        if args.p is None or args.q is None:
            raise UsageError("dual needs --p and --q")
        try:
            r = dual_kernel_check(args.p, args.q)
            w = lower_bound_witnesses(args.p, args.q)
        except ValueError as e:
            raise UsageError(str(e))
        bound = n_q(args.p, args.q) - 1
        ok = r.agrees and w.ok and len(w) == bound <= r.kappa
        rel = "==" if r.kernel_dim == r.kappa else "!="
        msg = (
            f"kernel {r.kernel_dim} {rel} kappa {r.kappa}; "
            f"{len(w)} witnesses (n_q(p)-1 = {bound}) {'verified' if w.ok else 'FAILED'}"
        )
        failures += not ok
        report.append({"suite": suite, "N": args.p * args.q, "pass": ok, "detail": msg})
        out.write(msg + "\n")
    if args.format == "json":
        out.write(json.dumps(report) + "\n")
    return EXIT_FALSIFIED if failures else EXIT_OK


# --- coproduct / cache -----------------------------------------------------------------


def cmd_coproduct(args, out) -> int:
    from .coproduct import WordParseError, goncharov_coproduct, parse_word, render_tensor

    if args.N is None:
        raise UsageError("coproduct needs --N")
    N = _single_N(args)
    try:
        w = parse_word(args.word, N)
    except WordParseError as e:
        raise UsageError(f"cannot parse {args.word!r}: {e}")
    out.write(render_tensor(goncharov_coproduct(w)) + "\n")
    return EXIT_OK


def cmd_cache(args, out) -> int:
    path = resolve_path(args.cache)
    if path is None:
        raise UsageError("no cache path: pass --cache PATH or set CYCLOKAPPA_CACHE")
    cache = ResultCache(path)
    if args.action == "path":
        out.write(f"{path}\n")
    elif args.action == "show":
        rows = sorted(
            (r.result for r in cache.records() if r.command == "kappa"), key=lambda r: r["N"]
        )
        out.write(format_rows(rows, args.format))
    elif args.action == "stats":
        out.write(f"{path}: {len(cache)} records, {cache.skipped} unreadable lines\n")
    elif args.action == "clear":
        cache.clear()
        out.write(f"cleared {path}\n")
    return EXIT_OK


# --- parser ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cyclokappa", description="kappa(N) tables and depth-graded checks")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--N", action="append", help="level(s); repeat or comma-separate")
        p.add_argument("--from", dest="from_", type=int)
        p.add_argument("--to", type=int)
        p.add_argument("--format", choices=["csv", "json", "table"], default="csv")
        p.add_argument("--cache", metavar="PATH")
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--force-rational", action="store_true")

    k = sub.add_parser("kappa", help="compute kappa(N)")
    common(k)
    k.add_argument("--diff", action="store_true", help="compare with the embedded table")
    k.add_argument("--allow-large", action="store_true", help=f"allow N > {LARGE_N}")
    k.add_argument("--stable", action="store_true", help="write elapsed_ms as 0 for byte-stable output")
    k.add_argument("--conjectures", action="store_true", help="print conjecture verdicts")

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=["unipotence", "basis", "surjectivity", "decomposition", "dual"])
    common(v)
    v.add_argument("--k", type=int)
    v.add_argument("--d", type=int)
    v.add_argument("--p", type=int)
    v.add_argument("--q", type=int)
    v.add_argument("--M", type=int)

    c = sub.add_parser("coproduct", help="print the coproduct of a word")
    c.add_argument("word")
    common(c)

    ca = sub.add_parser("cache", help="inspect the result cache")
    ca.add_argument("action", choices=["show", "stats", "clear", "path"])
    common(ca)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    handler = {"kappa": cmd_kappa, "verify": cmd_verify, "coproduct": cmd_coproduct, "cache": cmd_cache}
    try:
        return handler[args.command](args, out)
    except (UsageError, ValueError) as e:
        sys.stderr.write(f"cyclokappa: error: {e}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Subcommands: check (one exponent), scan (a range with summary), census
(singular points), oracle (brute-force ground truth), selftest.

Exit codes: 0 success, 1 usage or runtime error, 2 when --strict is set
and a verdict came back Skipped because a resource cap was hit.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from .config import CapExceeded, RunConfig, default_config, load_config_file

SCHEMA = "pnveri/1"

CSV_COLUMNS = [
    "p",
    "t",
    "case",
    "classification",
    "group_attained",
    "proven_by",
    "failed",
    "skipped",
    "notes",
]


class _Parser(argparse.ArgumentParser):
    """argparse variant that exits 1 (not 2) on usage errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _parse_groups(text: str) -> tuple:
    return tuple(sorted({int(g) for g in text.replace(",", " ").split()}))


def _parse_nrange(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def build_parser() -> _Parser:
    ap = _Parser(prog="pnveri", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="FILE", help="TOML or JSON settings file")
    common.add_argument("--format", choices=("text", "csv", "json"), help="output format")
    common.add_argument("--seed", type=int, help="deterministic seed override")
    common.add_argument("--strict", action="store_true", help="exit 2 on cap-skipped verdicts")
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    c = add("check", help="classify a single exponent")
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--t", type=int, required=True)
    c.add_argument("--groups", type=_parse_groups, default=None, metavar="G[,G..]")
    c.add_argument("--with-b", action="store_true", help="include the census count test")
    c.add_argument("--exhaustive", action="store_true", help="evaluate every condition")

    s = add("scan", help="classify a whole exponent range")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--t-max", type=int, required=True)
    s.add_argument("--groups", type=_parse_groups, default=None, metavar="G[,G..]")
    s.add_argument("--with-b", action="store_true")
    s.add_argument("--jobs", type=int, default=None)

    o = add("oracle", help="brute-force ground truth")
    osub = o.add_subparsers(dest="oracle_cmd", required=True, parser_class=_Parser)
    op = osub.add_parser("planar", parents=[common], help="planarity over listed extension degrees")
    op.add_argument("--p", type=int, required=True)
    op.add_argument("--t", type=int, required=True)
    op.add_argument("--n", type=_parse_nrange, required=True, metavar="N|A..B|N,N..")
    ob = osub.add_parser("pp", parents=[common], help="permutation test for explicit coefficients")
    ob.add_argument("--p", type=int, required=True)
    ob.add_argument("--n", type=int, default=1)
    ob.add_argument("--coeffs", required=True, metavar="C0,C1,..", help="element codes, low degree first")
    ox = osub.add_parser("points", parents=[common], help="off-diagonal rational point search")
    ox.add_argument("--p", type=int, required=True)
    ox.add_argument("--t", type=int, required=True)
    ox.add_argument("--n", type=int, required=True)
    oq = osub.add_parser("pairs", parents=[common], help="count singular-pair collisions literally")
    oq.add_argument("--p", type=int, required=True)
    oq.add_argument("--t", type=int, required=True)

    ce = add("census", help="singular points of the division curve")
    ce.add_argument("--p", type=int, required=True)
    ce.add_argument("--t", type=int, required=True)

    add("selftest", help="run the built-in sanity battery")
    return ap


def _make_config(args) -> RunConfig:
    cfg = default_config()
    if args.config:
        cfg = cfg.replace(**load_config_file(args.config))
    over = {}
    if args.seed is not None:
        over["seed"] = args.seed
    if args.format is not None:
        over["fmt"] = args.format
    if args.strict:
        over["strict"] = True
    if getattr(args, "groups", None) is not None:
        over["groups"] = args.groups
    if getattr(args, "with_b", False):
        over["with_b"] = True
    if getattr(args, "jobs", None) is not None:
        over["jobs"] = args.jobs
    return cfg.replace(**over) if over else cfg


def verdict_row(v) -> dict:
    return {
        "p": v.p,
        "t": v.t,
        "case": v.case or "",
        "classification": v.classification,
        "group_attained": "" if v.group_attained is None else v.group_attained,
        "proven_by": v.proven_by or "",
        "failed": " ".join(v.failed_ids()),
        "skipped": " ".join(v.skipped_ids()),
        "notes": "; ".join(v.notes),
    }


def _write_rows(rows: list[dict], out) -> None:
    w = csv.DictWriter(out, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r)


def _emit_json(payload: dict, out) -> None:
    out.write(json.dumps({"schema": SCHEMA, **payload}, indent=2) + "\n")


def _print_verdict_text(v, out) -> None:
    row = verdict_row(v)
    head = f"p={v.p} t={v.t} case={row['case'] or '-'} -> {v.classification}"
    if v.proven_by:
        head += f" by ({v.proven_by}) in group {v.group_attained}"
    out.write(head + "\n")
    for c in v.conditions:
        out.write(f"  ({c.id}) {c.status}: {c.trace}\n")
    for note in v.notes:
        out.write(f"  note: {note}\n")


def cmd_check(args, cfg: RunConfig, out) -> int:
    from .criteria import check

    v = check(args.p, args.t, cfg, exhaustive=args.exhaustive)
    if cfg.fmt == "csv":
        _write_rows([verdict_row(v)], out)
    elif cfg.fmt == "json":
        _emit_json({"command": "check", "verdict": v.to_json()}, out)
    else:
        _print_verdict_text(v, out)
    if cfg.strict and v.classification == "Skipped":
        return 2
    return 0


def _scan_one(payload):
    p, t, cfg = payload
    from .criteria import check

    return t, verdict_row(check(p, t, cfg))


def _scan_rows(p: int, t_max: int, cfg: RunConfig) -> list[dict]:
    ts = [t for t in range(3, t_max + 1) if t % p != 0]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            got = dict(pool.map(_scan_one, [(p, t, cfg) for t in ts], chunksize=32))
        return [got[t] for t in ts]
    return [_scan_one((p, t, cfg))[1] for t in ts]


def scan_summary(p: int, t_max: int, rows: list[dict], cfg: RunConfig) -> dict:
    def ts(pred):
        return [r["t"] for r in rows if pred(r)]

    return {
        "p": p,
        "t_max": t_max,
        "groups": list(cfg.groups),
        "case_A_unresolved": ts(lambda r: r["case"] == "A" and r["classification"] == "Unresolved"),
        "case_A_skipped": ts(lambda r: r["case"] == "A" and r["classification"] == "Skipped"),
        "case_B_unresolved": ts(
            lambda r: r["case"] == "B" and r["classification"] in ("Unresolved", "Skipped")
        ),
        "case_B_proven": ts(lambda r: r["case"] == "B" and r["classification"] == "Proven"),
        "exceptional": ts(lambda r: r["classification"] == "Exceptional"),
        "discrepancy": ts(lambda r: "discrepancy" in r["notes"]),
    }


def _print_summary_text(summary: dict, out) -> None:
    out.write(
        f"scan p={summary['p']} t<={summary['t_max']} "
        f"groups={','.join(map(str, summary['groups']))}\n"
    )

    def sect(label, key):
        vals = summary[key]
        out.write(f"{label} ({len(vals)})")
        if vals:
            out.write(": " + " ".join(map(str, vals)))
        out.write("\n")

    sect("case A unresolved", "case_A_unresolved")
    if summary["case_A_skipped"]:
        sect("case A skipped", "case_A_skipped")
    sect("case B unresolved", "case_B_unresolved")
    sect("case B proven", "case_B_proven")
    sect("exceptional", "exceptional")
    if summary["discrepancy"]:
        sect("discrepancy notes", "discrepancy")


def cmd_scan(args, cfg: RunConfig, out) -> int:
    rows = _scan_rows(args.p, args.t_max, cfg)
    summary = scan_summary(args.p, args.t_max, rows, cfg)
    if cfg.fmt == "csv":
        _write_rows(rows, out)
    elif cfg.fmt == "json":
        _emit_json({"command": "scan", "summary": summary, "rows": rows}, out)
    else:
        _print_summary_text(summary, out)
        flagged = [
            r
            for r in rows
            if r["classification"] in ("Unresolved", "Skipped") or "discrepancy" in r["notes"]
        ]
        if flagged:
            out.write("rows needing attention:\n")
            for r in flagged:
                tail = f"  [{r['notes']}]" if r["notes"] else ""
                out.write(
                    f"  t={r['t']} case={r['case'] or '-'} {r['classification']}{tail}\n"
                )
    if cfg.strict and any(r["classification"] == "Skipped" for r in rows):
        return 2
    return 0


def cmd_census(args, cfg: RunConfig, out) -> int:
    from .arith import decompose, reduce_exponent
    from .sing import caseB_enum, omega_census

    t = args.t
    if t % 2 or reduce_exponent(args.p, t) != t:
        raise ValueError("census covers even exponents coprime to p")
    dec = decompose(args.p, t)
    summary = omega_census(args.p, t, cfg) if dec.case == "A" else caseB_enum(args.p, t, dec, cfg)
    if cfg.fmt == "json":
        _emit_json({"command": "census", "census": summary.to_json()}, out)
    else:
        data = summary.to_json()
        pts = data.pop("points", None)
        for k, v in data.items():
            out.write(f"{k}: {v}\n")
        if pts is not None:
            for pt in pts:
                out.write(f"  {pt}\n")
    return 0


def cmd_oracle(args, cfg: RunConfig, out) -> int:
    from . import oracle as om

    if args.oracle_cmd == "planar":
        results = []
        for n in args.n:
            ok, rep = om.is_planar(args.p, args.t, n, cfg)
            results.append({"n": n, "planar": ok, "statement": rep.statement})
        if cfg.fmt == "json":
            _emit_json(
                {"command": "oracle.planar", "p": args.p, "t": args.t, "results": results}, out
            )
        elif cfg.fmt == "csv":
            w = csv.DictWriter(out, fieldnames=["n", "planar"], lineterminator="\n")
            w.writeheader()
            for r in results:
                w.writerow({"n": r["n"], "planar": str(r["planar"]).lower()})
        else:
            line = ",".join(str(r["planar"]).lower() for r in results)
            out.write(f"planar p={args.p} t={args.t} n={args.n[0]}..{args.n[-1]}: {line}\n")
        return 0

    if args.oracle_cmd == "pp":
        from .gf import build_field
        from .poly import UniPoly

        ctx = build_field(args.p, args.n, cfg)
        coeffs = [ctx.from_code(int(c)) for c in args.coeffs.split(",")]
        ok, rep = om.is_pp(UniPoly(ctx, coeffs), cfg)
        payload = {"command": "oracle.pp", "result": ok, "statement": rep.statement}
    elif args.oracle_cmd == "points":
        ok, rep = om.distinct_point_search(args.p, args.t, args.n, cfg)
        payload = {
            "command": "oracle.points",
            "result": ok,
            "witness": rep.extra.get("witness"),
            "statement": rep.statement,
        }
    else:
        count, rep = om.brute_pairs(args.p, args.t, cfg)
        payload = {"command": "oracle.pairs", "result": count, "statement": rep.statement}
    if cfg.fmt == "json":
        _emit_json(payload, out)
    else:
        out.write(f"{payload['result']}  ({payload['statement']})\n")
    return 0


def _selftest_battery(cfg: RunConfig):
    from .criteria import check
    from .gf import build_field
    from .oracle import brute_pairs, exhaustive_bifactor, is_planar
    from .poly import build_ft_gt
    from .sing import omega_census

    def planar_table():
        got = [is_planar(3, 14, n, cfg)[0] for n in range(1, 4)]
        assert got == [True, True, False], got
        assert is_planar(3, 4, 2, cfg)[0] is False

    def census_pairs():
        s = omega_census(3, 14, cfg)
        assert s.N_t == 60 and sorted(s.class_sizes.values()) == [6, 6]
        assert brute_pairs(3, 14, cfg)[0] == 60

    def line_split():
        _, g4 = build_ft_gt(3, 4, cfg)
        assert exhaustive_bifactor(g4, 1, cfg)[0] == []
        divs, _ = exhaustive_bifactor(g4.recode(build_field(3, 2, cfg)), 1, cfg)
        assert len(divs) == 2

    def verdict_spots():
        v = check(5, 8, cfg)
        assert v.classification == "Proven" and v.group_attained == 1, v
        v = check(3, 46, cfg)
        assert v.classification == "Proven" and v.proven_by == "B.1", v
        v = check(5, 76, cfg)
        assert v.proven_by == "B.2" and any("discrepancy" in n for n in v.notes), v
        v = check(3, 14, cfg)
        assert v.classification == "Exceptional", v

    return [
        ("planar-table", planar_table),
        ("census-pairs", census_pairs),
        ("line-split", line_split),
        ("verdict-spots", verdict_spots),
    ]


def cmd_selftest(args, cfg: RunConfig, out) -> int:
    failed = 0
    for name, fn in _selftest_battery(cfg):
        try:
            fn()
            out.write(f"ok   {name}\n")
        except Exception as exc:  # report and keep going
            failed += 1
            out.write(f"FAIL {name}: {exc}\n")
    out.write(f"{'all good' if not failed else f'{failed} failing'}\n")
    return 1 if failed else 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _make_config(args)
    except (OSError, ValueError) as exc:
        sys.stderr.write(f"pnveri: config error: {exc}\n")
        return 1
    out = sys.stdout
    try:
        if args.cmd == "check":
            return cmd_check(args, cfg, out)
        if args.cmd == "scan":
            return cmd_scan(args, cfg, out)
        if args.cmd == "census":
            return cmd_census(args, cfg, out)
        if args.cmd == "oracle":
            return cmd_oracle(args, cfg, out)
        return cmd_selftest(args, cfg, out)
    except CapExceeded as exc:
        sys.stderr.write(f"pnveri: cap exceeded: {exc}\n")
        return 2 if cfg.strict else 1
    except ValueError as exc:
        sys.stderr.write(f"pnveri: {exc}\n")
        return 1
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    raise SystemExit(main())

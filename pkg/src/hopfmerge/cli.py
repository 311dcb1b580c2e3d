"""Command-line workbench: ``hopfmerge <command> ...``.

Every command prints a short human-readable rendering by default and a
JSON document (with ``"schema": 1``) under ``--json``.  A tree argument
given as ``-`` is read from standard input, one line per ``-``.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

from . import checks
from . import externalization as ext
from . import loday_ronco as lr
from . import magma, stabler
from . import workspace as ws
from .config import load_config
from .linear import FormalSum
from .trees import (TreeSyntaxError, abstract_trees, admissible_cuts, format_addr, parse_abstract,
                    parse_addr, parse_planar, parse_tree, planar_embeddings, planar_trees, quotient)


class _Stdin:
    """Hands out stdin lines to successive ``-`` arguments."""

    def __init__(self, stream):
        self.stream = stream
        self.lines = None

    def next(self) -> str:
        if self.lines is None:
            self.lines = [ln.strip() for ln in self.stream.read().splitlines() if ln.strip()]
        if not self.lines:
            raise SystemExit("error: not enough lines on standard input for '-' arguments")
        return self.lines.pop(0)


class Context:
    def __init__(self, args, stdin, stdout):
        self.args = args
        self.stdin = _Stdin(stdin)
        self.out = stdout
        self.cfg = load_config(args.config)

    def text(self, value: str) -> str:
        return self.stdin.next() if value == "-" else value

    def abstract(self, value: str):
        return parse_abstract(self.text(value))

    def planar(self, value: str):
        return parse_planar(self.text(value))

    def mg(self, value: str):
        return parse_tree(self.text(value), "mg")

    def emit(self, command: str, result, lines) -> None:
        if self.args.json:
            doc = {"schema": 1, "command": command, "result": result}
            self.out.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
        else:
            for line in lines:
                self.out.write(line + "\n")


def _sum_lines(s: FormalSum) -> list[str]:
    return [str(s)]


def _prefixed(suite: str, name: str) -> str:
    return name if name.startswith(suite + "-") else f"{suite}-{name}"


def _csv(value: str) -> list[str]:
    return [x.strip() for x in value.split(",") if x.strip()]


# --------------------------------------------------------------------------
# enum


def cmd_enum(ctx: Context) -> int:
    a = ctx.args
    if a.what == "planar":
        m = a.labels
        labels = tuple(f"d{i}" for i in range(m)) if m > 1 else (None,)
        ts = planar_trees(a.k, labels)
        result = {"k": a.k, "labels": m, "enumerated": len(ts), "formula": magma.dim_vk(a.k, m)}
        if a.list:
            result["trees"] = [str(t) for t in ts]
        lines = [f"planar trees with {a.k} internal vertices, {m} label(s): "
                 f"{len(ts)} enumerated, {magma.dim_vk(a.k, m)} by formula"]
        ctx.emit("enum planar", result, lines + (result.get("trees") or []))
    elif a.what == "abstract":
        ts = abstract_trees(a.n, _csv(a.alphabet))
        ctx.emit("enum abstract", [str(t) for t in ts], [str(t) for t in ts])
    elif a.what == "cuts":
        t = ctx.abstract(a.tree)
        rows = []
        for cut in admissible_cuts(t):
            q = quotient(t, cut)
            rows.append({"cut": [format_addr(c) for c in cut],
                         "extracted": [str(t.subtree_at(c)) for c in cut], "quotient": str(q)})
        ctx.emit("enum cuts", rows, [f"{{{', '.join(r['cut'])}}}  {' | '.join(r['extracted']) or '1'}"
                                     f"  ->  {r['quotient']}" for r in rows])
    elif a.what == "quotient":
        t = ctx.abstract(a.tree)
        cut = [parse_addr(x) for x in _csv(a.cut)]
        q = quotient(t, cut)
        ctx.emit("enum quotient", {"tree": str(t), "quotient": str(q)}, [str(q)])
    elif a.what == "embeddings":
        t = ctx.abstract(a.tree)
        es = [str(p) for p in planar_embeddings(t)]
        ctx.emit("enum embeddings", es, es)
    return 0


# --------------------------------------------------------------------------
# ds


def cmd_ds(ctx: Context) -> int:
    xs = magma.ds_solve(ctx.args.n)
    result = [{"n": i, "terms": x.to_json()} for i, x in enumerate(xs, start=1)]
    ctx.emit("ds solve", result, [f"X_{i} = {x}" for i, x in enumerate(xs, start=1)])
    return 0


# --------------------------------------------------------------------------
# lr


def cmd_lr(ctx: Context) -> int:
    a = ctx.args
    if a.op == "check":
        return _run_named(ctx, [_prefixed("lr", n) for n in a.laws] or ["lr"],
                          {"lr_max_degree": a.max_degree})
    if a.op == "product":
        x, y = ctx.planar(a.a), ctx.planar(a.b)
        s = lr.PRODUCTS[a.form](x, y)
    elif a.op == "coproduct":
        s = lr.COPRODUCTS[a.form](ctx.planar(a.tree))
    else:
        s = lr.antipode(ctx.planar(a.tree), a.form)
    ctx.emit(f"lr {a.op}", s.to_json(), _sum_lines(s))
    return 0


# --------------------------------------------------------------------------
# mg


_MG_LAWS = {
    "coideal": (["mg-coideal"], "mg_coideal_max_leaves"),
    "right-ideal": (["mg-right-ideal"], "mg_ideal_max_leaves"),
    "left-ideal": (["mg-left-ideal"], "mg_ideal_max_leaves"),
    "intmergeprod": (["mg-intmergeprod"], "mg_ideal_max_leaves"),
    "coset": (["mg-coset"], "mg_ideal_max_leaves"),
    "nested-domain": (["mg-nested-domain"], "mg_nested_max_leaves"),
    "cocycle": (["mg-veeid", "mg-cocycle"], "mg_cocycle_max_leaves"),
}


def cmd_mg(ctx: Context) -> int:
    a = ctx.args
    mode = a.mode or ctx.cfg.mg_mode
    smc = a.smc or ctx.cfg.mg_smc
    if a.op == "check":
        names, key = _MG_LAWS[a.law]
        if a.law == "cocycle" and a.domain == "unrestricted":
            names = [n + "-unrestricted" for n in names]
        over = {key: a.max_leaves, "mg_mode": a.mode, "mg_smc": a.smc,
                "mg_alphabet": _csv(a.alphabet) if a.alphabet else None}
        if a.law == "cocycle" and a.alphabet:
            over["mg_cocycle_alphabet"] = over.pop("mg_alphabet")
        return _run_named(ctx, names, over)
    if a.op == "em":
        t1, t2 = ctx.mg(a.t1), ctx.mg(a.t2)
        why = stabler.em_mismatch(t1, t2, mode)
        if why:
            ctx.emit("mg em", {"defined": False, "reason": why}, [f"undefined: {why}"])
            return 2
        t = stabler.external_merge(t1, t2, mode)
        ctx.emit("mg em", {"defined": True, "result": str(t)}, [str(t)])
        return 0
    t = ctx.mg(a.tree)
    try:
        if a.op == "im":
            s = stabler.internal_merge(t, smc)
            certs = [c.to_json() for c in stabler.in_dom_im(t, smc)]
        else:
            s = stabler.iterated_internal_merge(t, a.n, smc, a.association)
            certs = [[c.to_json() for c in cs] for cs in stabler.dom_im_n(t, a.n)[1]]
    except stabler.DomainError as e:
        ctx.emit(f"mg {a.op}", {"defined": False, "reason": str(e)}, [f"undefined: {e}"])
        return 2
    ctx.emit(f"mg {a.op}", {"defined": True, "certificates": certs, "result": s.to_json()},
             _sum_lines(s))
    return 0


# --------------------------------------------------------------------------
# ws


def cmd_ws(ctx: Context) -> int:
    a = ctx.args
    if a.op == "check":
        over = {"ws_max_leaves": a.max_leaves, "ws_max_components": a.max_components}
        return _run_named(ctx, [_prefixed("ws", n) for n in a.laws] or ["ws"], over)
    f = ws.Workspace.parse(ctx.text(a.workspace))
    full = not a.no_full_cover if a.op == "coproduct" else True
    if a.op == "coproduct":
        if a.graded:
            d = ws.graded_coproduct(f, full)
            rows = [{"coeff": c, "extracted": str(x), "quotient": str(y), "degree": k}
                    for (x, y, k), c in d.items()]
            lines = [f"{r['coeff']} * ({r['extracted']})^{{+{r['degree']}}} ⊗ "
                     f"({r['quotient']})^{{-{r['degree']}}}" for r in rows]
            ctx.emit("ws coproduct", rows, lines)
        else:
            d = ws.ws_coproduct(f, full)
            ctx.emit("ws coproduct", d.to_json(), _sum_lines(d))
        return 0
    s, s2 = parse_abstract(ctx.text(a.s)), parse_abstract(ctx.text(a.s2))
    terms, nested = ws.merge_terms(s, s2, f)
    if a.graded or a.minimal_search:
        terms = ws.merge_graded(s, s2, f)
        if a.minimal_search:
            terms = ws.minimal_search_filter(terms)
        result = {"terms": [t.to_json() for t in terms], "unsupported": [n.to_json() for n in nested]}
        lines = [f"{t.mtype:13s} {t.result}   degrees {list(t.degrees)}" for t in terms]
        lines += [f"unsupported nesting at {format_addr(n.outer.addr)} / {format_addr(n.inner.addr)}"
                  for n in nested]
        ctx.emit("ws merge", result, lines or ["(no terms)"])
        return 0
    out = ws.merge_action(s, s2, f)
    ctx.emit("ws merge", {"terms": out.to_json(), "unsupported": [n.to_json() for n in nested]},
             _sum_lines(out))
    return 0


# --------------------------------------------------------------------------
# ext


def cmd_ext(ctx: Context) -> int:
    a = ctx.args
    if a.op == "check":
        if a.what == "lca-totality":
            names = ["ext-lca-head-free-total", "ext-lca-head-free-antisymmetric",
                     "ext-lca-heads-total", "ext-lca-heads-antisymmetric"]
            return _run_named(ctx, names, {"ext_max_leaves": a.max_leaves})
        if a.what == "section":
            return _run_named(ctx, [f"ext-section-{a.name}"], {"ext_section_max_leaves": a.max_leaves})
        return _run_named(ctx, ["ext-head-label-obstruction"], {"ext_max_leaves": a.max_leaves})
    t = ctx.abstract(a.tree)
    h = None
    if getattr(a, "heads", None):
        h = ext.heads_from_marks(t, ext.parse_marks(a.heads))
    if a.op == "relations":
        r = ext.relations(t).to_json()
        ctx.emit("ext relations", r, [f"{k}: {' '.join(x + '>' + y for x, y in v)}" for k, v in r.items()])
    elif a.op == "planarize":
        p = ext.planarize(t, h)
        ctx.emit("ext planarize", {"tree": str(t), "planar": str(p)}, [str(p)])
    elif a.op == "heads":
        hs = [ext.format_marks(ext.marks_from_heads(t, x)) for x in ext.head_functions(t)]
        ctx.emit("ext heads", hs, hs)
    else:
        o = ext.lca_order(t, h)
        j = o.to_json()
        lines = [f"precedes: {' '.join(x + '<' + y for x, y in j['precedes'])}",
                 f"total: {j['total']}  antisymmetric: {j['antisymmetric']}"]
        ctx.emit("ext lca", j, lines)
    return 0


# --------------------------------------------------------------------------
# check


def _run_named(ctx: Context, names, overrides: dict) -> int:
    over = {k: v for k, v in overrides.items() if v is not None}
    cfg = replace(ctx.cfg, **over) if over else ctx.cfg
    reports = checks.run_checks(names, cfg)
    if ctx.args.json:
        ctx.out.write(json.dumps(checks.report_json(reports, cfg, ctx.args.timing), indent=2,
                                 ensure_ascii=False) + "\n")
    else:
        for r in reports:
            extra = f"  {r.wallTime:.2f}s" if ctx.args.timing else ""
            ctx.out.write(f"{r.status:24s} {r.law:34s} tried {r.instancesTried:7d}  passed {r.passed:7d}"
                          f"  skipped {r.skipped:7d}  witnesses {len(r.witnesses):5d}{extra}\n")
    return checks.exit_code(reports)


def cmd_check(ctx: Context) -> int:
    if ctx.args.list:
        rows = [{"law": n, "suite": s} for n, (s, _) in checks.LAWS.items()]
        ctx.emit("check --list", rows, [f"{r['suite']:6s} {r['law']}" for r in rows])
        return 0
    return _run_named(ctx, ctx.args.laws or ["all"], {})


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=argparse.SUPPRESS, help="JSON or key = value file")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    common.add_argument("--timing", action="store_true", default=argparse.SUPPRESS,
                        help="include wall times in check reports")

    p = argparse.ArgumentParser(prog="hopfmerge", parents=[common],
                                description="Trees, Merge and Hopf algebras: computations and law checks.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("enum", parents=[common], help="enumerate trees, cuts and embeddings")
    esub = e.add_subparsers(dest="what", required=True)
    x = esub.add_parser("planar", parents=[common])
    x.add_argument("k", type=int)
    x.add_argument("--labels", type=int, default=1)
    x.add_argument("--list", action="store_true")
    x = esub.add_parser("abstract", parents=[common])
    x.add_argument("n", type=int)
    x.add_argument("--alphabet", default="x")
    for name in ("cuts", "embeddings"):
        x = esub.add_parser(name, parents=[common])
        x.add_argument("tree")
    x = esub.add_parser("quotient", parents=[common])
    x.add_argument("tree")
    x.add_argument("--cut", required=True, help="comma-separated vertex addresses, e.g. 0,11")

    d = sub.add_parser("ds", parents=[common], help="Dyson-Schwinger solution")
    dsub = d.add_subparsers(dest="op", required=True)
    x = dsub.add_parser("solve", parents=[common])
    x.add_argument("n", type=int)

    forms = ("graphical", "recursive")
    lp = sub.add_parser("lr", parents=[common], help="Loday-Ronco Hopf algebra")
    lsub = lp.add_subparsers(dest="op", required=True)
    x = lsub.add_parser("product", parents=[common])
    x.add_argument("a")
    x.add_argument("b")
    x.add_argument("--form", choices=forms, default="graphical")
    for name in ("coproduct", "antipode"):
        x = lsub.add_parser(name, parents=[common])
        x.add_argument("tree")
        x.add_argument("--form", choices=forms, default="graphical")
    x = lsub.add_parser("check", parents=[common])
    x.add_argument("laws", nargs="*", help="e.g. assoc coassoc bialgebra antipode-left")
    x.add_argument("--max-degree", type=int)

    m = sub.add_parser("mg", parents=[common], help="minimalist-grammar trees")
    msub = m.add_subparsers(dest="op", required=True)

    def mg_modes(q):
        q.add_argument("--mode", choices=stabler.MATCH_MODES)
        q.add_argument("--smc", choices=stabler.SMC_MODES)

    x = msub.add_parser("em", parents=[common])
    x.add_argument("t1")
    x.add_argument("t2")
    mg_modes(x)
    x = msub.add_parser("im", parents=[common])
    x.add_argument("tree")
    mg_modes(x)
    x = msub.add_parser("im-n", parents=[common])
    x.add_argument("tree")
    x.add_argument("n", type=int)
    x.add_argument("--association", choices=("right", "left"), default="right")
    mg_modes(x)
    x = msub.add_parser("check", parents=[common])
    x.add_argument("law", choices=sorted(_MG_LAWS))
    x.add_argument("--max-leaves", type=int)
    x.add_argument("--alphabet")
    x.add_argument("--domain", choices=("external-merge", "unrestricted"), default="external-merge")
    mg_modes(x)

    w = sub.add_parser("ws", parents=[common], help="workspaces and the action of Merge")
    wsub = w.add_subparsers(dest="op", required=True)
    x = wsub.add_parser("merge", parents=[common])
    x.add_argument("workspace")
    x.add_argument("s")
    x.add_argument("s2")
    x.add_argument("--graded", action="store_true")
    x.add_argument("--minimal-search", action="store_true")
    x = wsub.add_parser("coproduct", parents=[common])
    x.add_argument("workspace")
    x.add_argument("--graded", action="store_true")
    x.add_argument("--no-full-cover", action="store_true",
                   help="drop cuts that remove a whole component except the root cut")
    x = wsub.add_parser("check", parents=[common])
    x.add_argument("laws", nargs="*", help="e.g. coassoc bialgebra merge-equivalence minimal-search")
    x.add_argument("--max-leaves", type=int)
    x.add_argument("--max-components", type=int)

    xp = sub.add_parser("ext", parents=[common], help="externalization")
    xsub = xp.add_subparsers(dest="op", required=True)
    x = xsub.add_parser("relations", parents=[common])
    x.add_argument("tree")
    x = xsub.add_parser("heads", parents=[common])
    x.add_argument("tree")
    x = xsub.add_parser("planarize", parents=[common])
    x.add_argument("tree")
    x.add_argument("--heads", required=True, help="head child per vertex, e.g. root:0,0:1")
    x = xsub.add_parser("lca", parents=[common])
    x.add_argument("tree")
    x.add_argument("--heads")
    x = xsub.add_parser("check", parents=[common])
    x.add_argument("what", choices=("lca-totality", "section", "obstruction"))
    x.add_argument("--name", choices=("canonical-left", "head-driven"), default="canonical-left")
    x.add_argument("--max-leaves", type=int)

    c = sub.add_parser("check", parents=[common], help="run law checkers")
    c.add_argument("laws", nargs="*", help="law names, suite names or 'all' (default)")
    c.add_argument("--list", action="store_true")
    return p


COMMANDS = {"enum": cmd_enum, "ds": cmd_ds, "lr": cmd_lr, "mg": cmd_mg, "ws": cmd_ws,
            "ext": cmd_ext, "check": cmd_check}


def main(argv=None, stdin=None, stdout=None) -> int:
    args = build_parser().parse_args(argv)
    for name, default in (("config", None), ("json", False), ("timing", False)):
        if not hasattr(args, name):
            setattr(args, name, default)
    stdout = stdout or sys.stdout
    try:
        ctx = Context(args, stdin or sys.stdin, stdout)
        return COMMANDS[args.command](ctx)
    except (TreeSyntaxError, ValueError, KeyError, checks.UnknownLaw) as e:
        sys.stderr.write(f"error: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""``incmon`` command line.

Exit status 0 on success (JSON or DOT on stdout), 1 on a domain error (error
JSON on stdout), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass
from pathlib import Path

from incmon import conjugacy, green, idempotent, incidence, kernels, oracle
from incmon.errors import IncmonError
from incmon.exact import QQ, ExactMatrix, Field, IndexSet
from incmon.poset import build_poset, chain, classify, complete_bipartite, connected_components, poset_from_json


@dataclass(frozen=True)
class Config:
    field: Field = QQ
    max_search: int = kernels.DEFAULT_MAX_SEARCH
    format: str = "json"
    seed: int = 0

    def __post_init__(self):
        if self.max_search <= 0:
            raise ValueError("caps must be positive")
        if self.format not in ("json", "dot", "table"):
            raise ValueError(f"unknown format {self.format!r}")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _table(obj) -> str:
    """Tab-separated rendering: one ``key<TAB>value`` line per field, or one row per list item."""
    if isinstance(obj, dict):
        return "\n".join(f"{k}\t{json.dumps(v, sort_keys=True)}" for k, v in sorted(obj.items()))
    if isinstance(obj, list) and obj and all(isinstance(r, dict) for r in obj):
        keys = sorted({k for r in obj for k in r})
        lines = ["\t".join(keys)]
        lines += ["\t".join(json.dumps(r.get(k), sort_keys=True) for k in keys) for r in obj]
        return "\n".join(lines)
    return json.dumps(obj, sort_keys=True)


def render(obj, fmt: str) -> str:
    if isinstance(obj, str):
        return obj
    return _table(obj) if fmt == "table" else _dump(obj)


def _load_json(path: str):
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return json.loads(text)


# ---------------------------------------------------------------- inputs


def _add_poset_source(p: argparse.ArgumentParser, antichain: bool = False):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--poset", metavar="FILE", help='poset JSON {"labels": [...], "covers": [[i, j], ...]}')
    src.add_argument("--chain", type=int, metavar="N")
    src.add_argument("--complete-bipartite", type=int, nargs=2, metavar=("K", "M"))
    src.add_argument("--edges", metavar="A<B,...", help="cover relations inline, labels in order of appearance")
    if antichain:
        p.add_argument("--antichain", metavar="LABELS", help="comma-separated antichain labels")


def _poset(args):
    if args.poset:
        return poset_from_json(_load_json(args.poset))
    if args.chain is not None:
        return chain(args.chain)
    if args.complete_bipartite:
        return complete_bipartite(*args.complete_bipartite)
    pairs = [tuple(e.split("<")) for e in args.edges.split(",") if e]
    labels = list(dict.fromkeys(x for pr in pairs for x in pr))
    return build_poset(labels, pairs)


def _context(args):
    p = _poset(args)
    if getattr(args, "antichain", None):
        return incidence.antichain_monoid(p, args.antichain.split(","))
    return incidence.full_incidence(p)


def _index_set(n: int, text: str) -> IndexSet:
    return IndexSet.of(n, (int(t) for t in text.split(",") if t.strip()))


def _matrix(obj, cfg: Config) -> ExactMatrix:
    return ExactMatrix.from_rows(obj["rows"], Field.parse(obj.get("field", cfg.field.name)))


def _pair(path: str, cfg: Config):
    """Pair file: ``{"field", "k", "m", "X": rows, "Y": rows}``; ``field`` defaults to ``--field``."""
    obj = _load_json(path)
    f = Field.parse(obj.get("field", cfg.field.name))
    k = int(obj["k"])
    x = green.BlockElement.from_matrix(ExactMatrix.from_rows(obj["X"], f), k)
    y = green.BlockElement.from_matrix(ExactMatrix.from_rows(obj["Y"], f), k)
    return x, y


# ---------------------------------------------------------------- handlers


def cmd_poset(args, cfg):
    p = _poset(args)
    if args.action == "build":
        return p.to_json()
    if args.action == "classify":
        c = classify(p)
        return {"class": c.tag, "k": c.k, "m": c.m, "label": str(c)}
    if args.action == "dot" or cfg.format == "dot":
        return p.to_dot()
    return [c.to_json() for c in connected_components(p)]


def cmd_ctx(args, cfg):
    ctx = _context(args)
    if args.action == "build":
        return ctx.describe()
    if args.action == "contains":
        x = _matrix(_load_json(args.matrix), cfg)
        return {"contains": incidence.contains(ctx, x)}
    return [c.describe() for c in incidence.decompose(ctx)]


def cmd_idem(args, cfg):
    if args.action == "dim":
        return idempotent.component_dimension(args.k, args.m, _index_set(args.k + args.m, args.J))
    if args.action == "components":
        ctx = incidence.maximal_antichain_monoid(args.k, args.m) if args.maximal else incidence.full_incidence(
            complete_bipartite(args.k, args.m)
        )
        n = args.k + args.m
        rows, dims = [], {}
        for mask in range(2**n):
            J = IndexSet.of(n, (i + 1 for i in range(n) if mask >> i & 1))
            try:
                d = idempotent.component_parametrization(ctx, J)
            except IncmonError:
                continue
            dims[J] = d.dimension
            rows.append({"J": J.bits(), "dimension": d.dimension, "pattern": d.pattern()})
        if args.dot or cfg.format == "dot":
            return idempotent.components_dot(dims, dims)
        rows.sort(key=lambda r: IndexSet.from_bits(r["J"]).sort_key())
        return rows
    ctx = _context(args)
    if args.action == "enumerate":
        groups = idempotent.enumerate_idempotents_gf(ctx, args.gf)
        out = [
            {"J": J.bits(), "count": len(ms), "idempotents": [x.to_json()["rows"] for x in ms] if args.list else None}
            for J, ms in groups.items()
        ]
        for o in out:
            if o["idempotents"] is None:
                del o["idempotents"]
        return {"field": f"GF({args.gf})", "total": sum(o["count"] for o in out), "components": out}
    mode = "gf" if args.mode == "gf" else "random"
    rep = idempotent.check_orthodox(ctx, mode, q=args.gf, trials=args.trials, seed=cfg.seed)
    return rep.to_json()


def cmd_green(args, cfg):
    if args.action == "lattice":
        lat = green.cross_section_lattice(args.k, args.m)
        return lat.to_dot() if args.dot or cfg.format == "dot" else lat.to_json()
    if args.action == "inverse":
        x = green.BlockElement.from_matrix(_matrix(_load_json(args.file), cfg), args.k)
        inv = green.canonical_inverse(x)
        return (
            {
                "inverse": inv.to_matrix().to_json(),
                "support": green.support_set(x).bits(),
                "meet_idempotent": green.meet_idempotent(x).to_matrix().to_json(),
            }
        )
    x, y = _pair(args.file, cfg)
    rels = [args.rel] if args.rel else list(green.RELATIONS)
    return {r: green.green_related(x, y, r) for r in rels}


def cmd_conj(args, cfg):
    x, y = _pair(args.file, cfg)
    if args.action == "p":
        return conjugacy.p_conjugate(x, y).to_json()
    if args.action == "group":
        return conjugacy.group_conjugate(x, y).to_json()
    z, w = conjugacy.o_conjugacy_witness(x, y)
    return {"Z": z.to_matrix().to_json(), "W": w.to_matrix().to_json()}


def cmd_oracle(args, cfg):
    if args.action in ("green", "pconj"):
        x, y = _pair(args.file, cfg)
        if x.field.is_rational:
            raise IncmonError("oracle queries need a GF(q) pair")
        S = oracle.materialize(incidence.maximal_antichain_monoid(x.k, x.m), x.field.q, cap=cfg.max_search)
        a, b = S.index(x.to_matrix()), S.index(y.to_matrix())
        if args.action == "green":
            rels = [args.rel] if args.rel else list(green.RELATIONS)
            return {r: oracle.green_oracle(S, a, b, r) for r in rels}
        hit = oracle.p_conjugacy_oracle(S, a, b)
        out = {"related": hit is not None}
        if hit:
            out["witness"] = [S.element(hit[0]).to_json(), S.element(hit[1]).to_json()]
        return out
    ctx = _context(args)
    S = oracle.materialize(ctx, args.gf, cap=min(cfg.max_search, oracle.MAX_MATERIALIZE))
    if args.action == "materialize":
        out = {"field": f"GF({args.gf})", "elements": S.size}
        if args.list:
            out["matrices"] = [S.element(i).to_json()["rows"] for i in range(S.size)]
        return out
    return oracle.report(S)


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="incmon", description=__doc__.splitlines()[0])
    ap.add_argument("--field", default="QQ", help="QQ or GF(q), q prime <= 7 (default QQ)")
    ap.add_argument("--max-search", type=int, default=None, help="enumeration cap (env INCMON_MAX_SEARCH)")
    ap.add_argument("--format", choices=("json", "dot", "table"), default="json")
    ap.add_argument("--seed", type=int, default=0)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poset", help="build, classify and draw posets")
    p.add_argument("action", choices=("build", "classify", "dot", "components"))
    _add_poset_source(p)
    p.set_defaults(func=cmd_poset)

    p = sub.add_parser("ctx", help="incidence and antichain monoid contexts")
    p.add_argument("action", choices=("build", "contains", "decompose"))
    _add_poset_source(p, antichain=True)
    p.add_argument("--matrix", metavar="FILE", help='matrix JSON {"field", "rows"} for contains')
    p.set_defaults(func=cmd_ctx)

    idem = sub.add_parser("idem", help="idempotent components").add_subparsers(dest="action", required=True)
    p = idem.add_parser("dim")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-J", required=True, help="comma-separated 1-based indices")
    p = idem.add_parser("components")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--maximal", action="store_true", help="restrict to the maximal-antichain monoid")
    p.add_argument("--dot", action="store_true")
    p = idem.add_parser("enumerate")
    _add_poset_source(p, antichain=True)
    p.add_argument("--gf", type=int, required=True)
    p.add_argument("--list", action="store_true", help="include the matrices")
    p = idem.add_parser("orthodox")
    _add_poset_source(p, antichain=True)
    p.add_argument("--mode", choices=("gf", "random"), default="gf")
    p.add_argument("--gf", type=int, default=2)
    p.add_argument("--trials", type=int, default=1000)
    for p in idem.choices.values():
        p.set_defaults(func=cmd_idem)

    gr = sub.add_parser("green", help="Green's relations in the maximal antichain monoid").add_subparsers(
        dest="action", required=True
    )
    p = gr.add_parser("rel")
    p.add_argument("--file", required=True, help="pair JSON")
    p.add_argument("--rel", choices=green.RELATIONS)
    p = gr.add_parser("lattice")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--dot", action="store_true")
    p = gr.add_parser("inverse")
    p.add_argument("--file", required=True, help="matrix JSON")
    p.add_argument("-k", type=int, required=True)
    for p in gr.choices.values():
        p.set_defaults(func=cmd_green)

    cj = sub.add_parser("conj", help="conjugacy decisions").add_subparsers(dest="action", required=True)
    for name in ("p", "group", "o-witness"):
        p = cj.add_parser(name)
        p.add_argument("--file", required=True, help="pair JSON")
        p.set_defaults(func=cmd_conj)

    orc = sub.add_parser("oracle", help="brute-force checks over GF(q)").add_subparsers(dest="action", required=True)
    for name in ("materialize", "report"):
        p = orc.add_parser(name)
        _add_poset_source(p, antichain=True)
        p.add_argument("--gf", type=int, required=True)
        if name == "materialize":
            p.add_argument("--list", action="store_true")
    p = orc.add_parser("green")
    p.add_argument("--file", required=True, help="pair JSON over GF(q)")
    p.add_argument("--rel", choices=green.RELATIONS)
    p = orc.add_parser("pconj")
    p.add_argument("--file", required=True, help="pair JSON over GF(q)")
    for p in orc.choices.values():
        p.set_defaults(func=cmd_oracle)
    return ap


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    saved = os.environ.get("INCMON_MAX_SEARCH")
    try:
        cap = args.max_search if args.max_search is not None else kernels.max_search()
        cfg = Config(Field.parse(args.field), cap, args.format, args.seed)
        os.environ["INCMON_MAX_SEARCH"] = str(cfg.max_search)
        random.seed(cfg.seed)
        text = render(args.func(args, cfg), cfg.format)
    except IncmonError as e:
        out.write(_dump(e.to_json()) + "\n")
        return 1
    except (OSError, json.JSONDecodeError, KeyError, ZeroDivisionError) as e:
        out.write(_dump({"error": "bad_input", "message": str(e)}) + "\n")
        return 1
    except ValueError as e:
        out.write(_dump({"error": "usage", "message": str(e)}) + "\n")
        return 2
    finally:
        if saved is None:
            os.environ.pop("INCMON_MAX_SEARCH", None)
        else:
            os.environ["INCMON_MAX_SEARCH"] = saved
    out.write(text if text.endswith("\n") else text + "\n")
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

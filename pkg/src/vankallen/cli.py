"""Command-line front end: ``vankallen <command> [flags]``."""
from __future__ import annotations

import argparse
import json
import logging
import sys

from .cartan import (
    ConfigurationError,
    build_root_system,
    dominant_weights,
    floor_rep,
    format_word,
    j_of,
    length,
    parabolic_quotient,
    parse_type,
)
from .characters import IDENTITIES, gch_K, gch_K_direct, gch_K_moebius, gch_V, macdonald_E_inf
from .paths import deg, deg_at, qls_enumerate, qls_wt
from .poly import expand_truncated, format_poly, format_weight
from .qbg import build_qbg, eqb, k_parametrize
from .suite import CRITERIA, SWEEP_TYPES, run_identities

log = logging.getLogger("vankallen")

COMMANDS = ("rootsys", "qbg", "eqb", "kset", "qls", "macdonald", "gch", "verify")
FLAG_KEYS = ("type", "rank", "lambda", "J", "w", "method", "trunc", "format", "jobs", "out", "seed", "suite", "max_coord")
DEFAULTS = {"trunc": 6, "jobs": 1, "seed": 0, "suite": "all", "max_coord": 2}
METHODS = {
    "eqb": ("label_increasing", "recursive", "brute"),
    "macdonald": ("qls", "recursion"),
    "gch": ("K", "V", "moebius", "direct", "partitions"),
}


class UsageError(Exception):
    pass


def read_config(path):
    """``key = value`` lines; ``#`` starts a comment, values may be quoted."""
    out = {}
    try:
        lines = open(path, encoding="utf-8").read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config: {exc}") from exc
    for n, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line or line.startswith("["):
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{n}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in FLAG_KEYS:
            raise UsageError(f"{path}:{n}: unknown key {key!r}")
        if len(value) >= 2 and value[0] == value[-1] and value[0] in "\"'":
            value = value[1:-1]
        out[key] = value
    return out


def build_parser():
    parser = argparse.ArgumentParser(prog="vankallen", description="Exact level-zero character computations in small rank.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value file; command-line flags take precedence")
    common.add_argument("--type", help='root system, e.g. "A2", or a series letter together with --rank')
    common.add_argument("--rank", type=int)
    common.add_argument("--lambda", dest="lambda", help='dominant weight in fundamental coordinates, e.g. "1,1"')
    common.add_argument("--J", help='parabolic index set, e.g. "2" or "1,3"; "" for the empty set')
    common.add_argument("--w", help='reduced word such as "s1 s2", or "all"')
    common.add_argument("--method")
    common.add_argument("--trunc", type=int, help="truncation depth N (default 6)")
    common.add_argument("--format", choices=("text", "json", "dot"))
    common.add_argument("--jobs", type=int, help="worker processes for sweeps")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--seed", type=int, help="seed for random operator samples")
    common.add_argument("--suite", help='verify: "all", "acceptance", or an identity/criterion name')
    common.add_argument("--max-coord", dest="max_coord", type=int, help="verify sweep: largest lambda coordinate")
    common.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def resolve(args) -> dict:
    cfg = dict(DEFAULTS)
    if args.config:
        cfg.update(read_config(args.config))
    for key in FLAG_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            cfg[key] = value
    for key in ("rank", "trunc", "jobs", "seed", "max_coord"):
        if cfg.get(key) is not None:
            try:
                cfg[key] = int(cfg[key])
            except ValueError as exc:
                raise UsageError(f"--{key} expects an integer") from exc
    if cfg["trunc"] < 0:
        raise UsageError("--trunc must be nonnegative")
    if cfg["jobs"] < 1:
        raise UsageError("--jobs must be at least 1")
    return cfg


def root_system(cfg, required=True):
    text = cfg.get("type")
    if text is None:
        if required:
            raise UsageError("--type is required")
        return None
    text = str(text).strip().upper()
    rank = cfg.get("rank")
    if text[1:]:
        series, r = parse_type(text)
        if rank is not None and rank != r:
            raise UsageError(f"--rank {rank} contradicts --type {text}")
        return build_root_system(series, r)
    if rank is None:
        raise UsageError(f"--type {text} needs --rank")
    return build_root_system(text, rank)


def parse_ints(text):
    text = str(text).strip()
    if not text:
        return ()
    try:
        return tuple(int(t) for t in text.replace(",", " ").split())
    except ValueError as exc:
        raise UsageError(f"cannot parse integers from {text!r}") from exc


def weight(R, cfg, required=True):
    if cfg.get("lambda") is None:
        if required:
            raise UsageError("--lambda is required")
        return None
    lam = parse_ints(cfg["lambda"])
    if len(lam) != R.rank:
        raise UsageError(f"lambda needs {R.rank} coordinates, got {len(lam)}")
    if min(lam) < 0:
        raise UsageError("lambda must be dominant (nonnegative coordinates)")
    return lam


def index_set(R, cfg, lam):
    if cfg.get("J") is None:
        return j_of(lam) if lam is not None else frozenset()
    J = frozenset(parse_ints(cfg["J"]))
    bad = J - set(R.index_set)
    if bad:
        raise UsageError(f"J contains indices outside 1..{R.rank}: {sorted(bad)}")
    if lam is not None and J != j_of(lam):
        raise UsageError(f"J must equal the zero set of lambda, {sorted(j_of(lam))}")
    return J


def elements(R, cfg, pool, J=frozenset(), default="all"):
    """Elements named by --w, checked to be reduced and to lie in ``pool``."""
    text = cfg.get("w", default)
    if text is None:
        raise UsageError("--w is required")
    if str(text).strip() == "all":
        return list(pool)
    w = R.parse(str(text))
    word = [int(t.lstrip("s")) for t in str(text).replace(",", " ").split() if t != "e"]
    if len(word) != length(w):
        raise UsageError(f"word {text!r} is not reduced")
    if w not in pool:
        raise UsageError(f"{format_word(w.word)} is not a minimal coset representative; try {format_word(floor_rep(w, J).word)}")
    return [w]


def method(cfg, command):
    choices = METHODS[command]
    m = cfg.get("method") or choices[0]
    if m not in choices:
        raise UsageError(f"--method for {command} must be one of {', '.join(choices)}")
    return m


def show_set(S):
    return [format_word(v.word) for v in sorted(S, key=lambda v: v.index)]


def cmd_rootsys(cfg):
    R = root_system(cfg)
    data = {
        "type": R.name,
        "cartan": [list(r) for r in R.cartan],
        "positive_roots": [list(b) for b in R.positive_roots],
        "positive_coroots": [list(b) for b in R.positive_coroots],
        "highest_root": list(R.theta),
        "highest_coroot": list(R.theta_coroot),
        "weyl_group_order": len(R.elements),
        "longest_element": format_word(R.longest_element.word),
    }
    if cfg.get("format") == "json":
        return data, 0
    lines = [f"type {R.name}", "cartan matrix:"]
    lines += ["  " + " ".join(f"{a:3d}" for a in row) for row in R.cartan]
    lines.append(f"positive roots ({len(R.positive_roots)}): " + ", ".join(str(tuple(b)) for b in R.positive_roots))
    lines.append(f"highest root {tuple(R.theta)}, coroot {tuple(R.theta_coroot)}")
    lines.append(f"|W| = {len(R.elements)}, w0 = {data['longest_element']}")
    return "\n".join(lines), 0


def cmd_qbg(cfg):
    R = root_system(cfg)
    lam = weight(R, cfg, required=False)
    G = build_qbg(R, index_set(R, cfg, lam))
    fmt = cfg.get("format") or "json"
    if fmt == "dot":
        return G.to_dot(), 0
    if fmt == "json":
        return G.to_json(), 0
    lines = [f"QBG({R.name}, J={sorted(G.J)}): {len(G.vertices)} vertices, {len(G.edges)} edges"]
    for e in G.edges:
        lines.append(f"  {format_word(e.src.word)} -> {format_word(e.dst.word)}  {e.kind}  {tuple(e.label)}")
    return "\n".join(lines), 0


def cmd_eqb(cfg):
    R = root_system(cfg)
    G = build_qbg(R)
    m = method(cfg, "eqb")
    out = {format_word(w.word): show_set(eqb(G, w, m)) for w in elements(R, cfg, R.elements)}
    if cfg.get("format") == "json":
        return out, 0
    return "\n".join(f"EQB({w}) = {{{', '.join(S)}}}" for w, S in out.items()), 0


def cmd_kset(cfg):
    R = root_system(cfg)
    lam = weight(R, cfg, required=False)
    J = index_set(R, cfg, lam)
    out = {}
    for w in elements(R, cfg, parabolic_quotient(R, J), J):
        fins, weights, free = k_parametrize(w, J)
        out[format_word(w.word)] = {
            "directions": [{"u": format_word(u.word), "wt": list(weights[u])} for u in sorted(fins, key=lambda v: v.index)],
            "free": sorted(free),
        }
    if cfg.get("format") == "json":
        return out, 0
    lines = []
    for w, rec in out.items():
        dirs = ", ".join(f"{d['u']} + {tuple(d['wt'])}" for d in rec["directions"])
        lines.append(f"K({w}): directions {{{dirs}}}, free coroots {rec['free']}")
    return "\n".join(lines), 0


def cmd_qls(cfg):
    R = root_system(cfg)
    lam = weight(R, cfg)
    J = j_of(lam)
    at = None if cfg.get("w") in (None, "all") else elements(R, cfg, parabolic_quotient(R, J), J)[0]
    rows = []
    for eta in qls_enumerate(R, lam):
        rec = dict(eta.to_json())
        rec["wt"] = list(qls_wt(eta, lam))
        rec["deg"] = deg(eta, lam) if at is None else deg_at(eta, at, lam)
        rows.append(rec)
    if cfg.get("format") == "json":
        return rows, 0
    label = "deg" if at is None else f"deg at {format_word(at.word)}"
    lines = [f"QLS({lam}) in {R.name}: {len(rows)} paths"]
    for rec in rows:
        lines.append(f"  ({', '.join(rec['dirs'])}; {', '.join(rec['times'])})  {format_weight(rec['wt'])}  {label} {rec['deg']}")
    return "\n".join(lines), 0


def cmd_macdonald(cfg):
    R = root_system(cfg)
    lam = weight(R, cfg)
    m = method(cfg, "macdonald")
    out = {format_word(w.word): macdonald_E_inf(R, lam, w, m) for w in elements(R, cfg, parabolic_quotient(R, j_of(lam)), j_of(lam))}
    if cfg.get("format") == "json":
        return {w: f.to_json() for w, f in out.items()}, 0
    if len(out) == 1:
        return str(next(iter(out.values()))), 0
    return "\n".join(f"{w}: {f}" for w, f in out.items()), 0


def cmd_gch(cfg):
    R = root_system(cfg)
    lam = weight(R, cfg)
    m = method(cfg, "gch")
    N = cfg["trunc"]
    out = {}
    for w in elements(R, cfg, parabolic_quotient(R, j_of(lam)), j_of(lam)):
        key = format_word(w.word)
        if m in ("direct", "partitions"):
            method_name = "definitional" if m == "direct" else "partitions"
            out[key] = {"truncated": gch_K_direct(R, lam, w, N, method_name)}
        else:
            g = {"K": gch_K, "V": gch_V, "moebius": gch_K_moebius}[m](R, lam, w)
            out[key] = {"character": g, "truncated": expand_truncated(g, N)}
    if cfg.get("format") == "json":
        return {
            w: {k: v.to_json() for k, v in rec.items()} | {"trunc": N} for w, rec in out.items()
        }, 0
    lines = []
    for w, rec in out.items():
        if "character" in rec:
            lines.append(f"{w}: {rec['character']}")
        lines.append(f"{w}: up to q^-{N}: {format_poly(rec['truncated'])}")
    return "\n".join(lines), 0


def sweep_cases(R, lam, max_coord):
    if R is not None and lam is not None:
        return [(R.name, lam)]
    types = [R.name] if R is not None else list(SWEEP_TYPES)
    cases = []
    for t in types:
        rank = build_root_system(t).rank
        cases += [(t, mu) for mu in dominant_weights(rank, max_coord * rank) if max(mu) <= max_coord and any(mu)]
    return cases


def cmd_verify(cfg):
    R = root_system(cfg, required=False)
    lam = weight(R, cfg, required=False) if R is not None else None
    suite = cfg["suite"]
    report_lines = []
    if suite == "acceptance" or suite in CRITERIA:
        names = list(CRITERIA) if suite == "acceptance" else [suite]
        records = []
        for name in names:
            rep = CRITERIA[name]()
            report_lines.append(rep.line())
            records.append({
                "case": "acceptance",
                "identity": name,
                "status": "pass" if rep.ok else "fail",
                "lhs": None if rep.ok else "; ".join(rep.failures[:5]),
                "rhs": None,
            })
    else:
        names = list(IDENTITIES) if suite == "all" else [suite]
        if any(n not in IDENTITIES for n in names):
            raise UsageError(f"unknown suite {suite!r}; use all, acceptance, {', '.join(IDENTITIES)} or {', '.join(CRITERIA)}")
        cases = sweep_cases(R, lam, cfg["max_coord"])
        log.info("verifying %d cases with %d jobs", len(cases), cfg["jobs"])
        records = run_identities(cases, names, cfg["jobs"], seed=cfg["seed"], trunc=cfg["trunc"])
    failed = sum(r["status"] != "pass" for r in records)
    code = 1 if failed else 0
    if cfg.get("format") == "json":
        return {"records": records, "checked": len(records), "failed": failed}, code
    if report_lines:
        lines = report_lines
    else:
        lines = [f"FAIL {r['identity']} {r['case']}: {r['lhs']} != {r['rhs']}" for r in records if r["status"] != "pass"]
    lines.append(f"{len(records)} checks, {failed} failures")
    return "\n".join(lines), code


HANDLERS = {
    "rootsys": cmd_rootsys,
    "qbg": cmd_qbg,
    "eqb": cmd_eqb,
    "kset": cmd_kset,
    "qls": cmd_qls,
    "macdonald": cmd_macdonald,
    "gch": cmd_gch,
    "verify": cmd_verify,
}


def emit(payload, cfg):
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2, sort_keys=False)
    if cfg.get("out"):
        with open(cfg["out"], "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        cfg = resolve(args)
        if cfg.get("format") == "dot" and args.command != "qbg":
            raise UsageError("--format dot is only available for qbg")
        payload, code = HANDLERS[args.command](cfg)
    except (UsageError, ConfigurationError, ValueError) as exc:
        print(f"vankallen {args.command}: error: {exc}", file=sys.stderr)
        return 2
    emit(payload, cfg)
    return code


if __name__ == "__main__":
    sys.exit(main())

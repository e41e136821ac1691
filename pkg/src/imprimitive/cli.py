"""Command-line front end; every command prints one JSON report."""
from __future__ import annotations

import argparse
import configparser
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import verify
from .census import classify
from .cocycle import TargetMonomial, admissible_target, solve_delta2_detailed
from .field import FieldError, field_make, field_of_order
from .group import ParamsError, beta_poly, params_validate, psi_polys
from .iso import (NotApplicable, case_descriptor, check_iso, corrupted, search_iso_detailed)
from .poly import delta2
from .report import Report, check, skipped

COMMANDS = ("construct", "verify", "cocycle-solve", "iso", "classify")
PARAM_KEYS = ("char", "ext", "e2", "e3", "h2", "h3", "beta", "r", "s", "l2", "l3", "m", "n",
              "allow_equal_exponents")
INT_KEYS = {"char", "ext", "e2", "e3", "h2", "h3", "r", "s", "l2", "l3", "m", "n", "bound", "b2", "b3", "d1"}
BOOL_KEYS = {"allow_equal_exponents", "pretty", "timing", "search", "all_b", "negative_control"}
LIST_KEYS = {"q", "suite"}
EXTRA_KEYS = ("bound", "case", "b2", "b3", "d1", "target", "search", "all_b", "negative_control")

# largest q per suite: the pair-exhaustive suites enumerate G x Omega
SUITE_MAX_Q = {"assoc": 27, "action": 9, "blocks": 9, "inblock": 9, "lambda": 9, "structure": 9}

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class RunConfig:
    command: str
    params: dict = field(default_factory=dict)
    q: list[int] = field(default_factory=list)
    suite: list[str] = field(default_factory=list)
    extra: dict = field(default_factory=dict)
    out: str | None = None
    pretty: bool = False
    timing: bool = False

    def to_flat(self) -> dict[str, str]:
        flat = {"command": self.command}
        for k, v in {**self.params, **self.extra}.items():
            if v is not None:
                flat[k] = str(v).lower() if isinstance(v, bool) else str(v)
        if self.q:
            flat["q"] = ",".join(map(str, self.q))
        if self.suite:
            flat["suite"] = ",".join(self.suite)
        if self.out:
            flat["out"] = self.out
        for k in ("pretty", "timing"):
            if getattr(self, k):
                flat[k] = "true"
        return flat

    def to_text(self) -> str:
        return "".join(f"{k} = {v}\n" for k, v in sorted(self.to_flat().items()))

    @classmethod
    def from_flat(cls, flat: dict[str, str]) -> RunConfig:
        vals = {k: _parse_value(k, v) for k, v in flat.items()}
        return cls(
            command=vals.pop("command"),
            params={k: vals.pop(k) for k in PARAM_KEYS if k in vals},
            q=vals.pop("q", []),
            suite=vals.pop("suite", []),
            out=vals.pop("out", None),
            pretty=vals.pop("pretty", False),
            timing=vals.pop("timing", False),
            extra={k: vals.pop(k) for k in EXTRA_KEYS if k in vals},
        )

    @classmethod
    def from_text(cls, text: str) -> RunConfig:
        return cls.from_flat(read_flat(text))


def _parse_value(key: str, v: str):
    v = v.strip()
    if key in LIST_KEYS:
        items = [s.strip() for s in v.split(",") if s.strip()]
        return [int(s) for s in items] if key == "q" else items
    if key in BOOL_KEYS:
        return v.lower() in ("1", "true", "yes", "on")
    if key in INT_KEYS:
        return int(v)
    return v


def read_flat(text: str) -> dict[str, str]:
    cp = configparser.ConfigParser(interpolation=None, delimiters=("=", ":"))
    cp.optionxform = str
    cp.read_string("[run]\n" + text)
    return {k.replace("-", "_"): v for k, v in cp["run"].items()}


# -- argument parsing ----------------------------------------------------------

def _param_parent() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(add_help=False)
    g = ap.add_argument_group("group parameters")
    g.add_argument("--char", type=int)
    g.add_argument("--ext", type=int)
    for k in ("e2", "e3", "h2", "h3", "r", "s", "l2", "l3", "m", "n"):
        g.add_argument(f"--{k}", type=int)
    g.add_argument("--beta", choices=["zero", "witt", "monomial", "ncm", "ncn"])
    g.add_argument("--allow-equal-exponents", action="store_true", default=None)
    o = ap.add_argument_group("output")
    o.add_argument("--config", help="flat key = value file; flags override it")
    o.add_argument("--save-config", help="write the resolved configuration here")
    o.add_argument("--out", help="write the report here instead of stdout")
    o.add_argument("--pretty", action="store_true", default=None)
    o.add_argument("--timing", action="store_true", default=None,
                   help="record elapsed_ms (reports are then not byte-stable)")
    o.add_argument("--q", action="append", help="field size; repeatable or comma separated")
    return ap


def build_parser() -> argparse.ArgumentParser:
    parent = _param_parent()
    ap = argparse.ArgumentParser(prog="imprimitive", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("construct", parents=[parent], help="validate parameters and print the group law data")
    v = sub.add_parser("verify", parents=[parent], help="run verification suites over F_q")
    v.add_argument("--suite", action="append", help=f"{', '.join(verify.SUITES)} or all")
    sub.add_parser("cocycle-solve", parents=[parent], help="solve delta2(beta) = z1^A z2^B z3^C")
    i = sub.add_parser("iso", parents=[parent], help="check a case map or search for an isomorphism")
    i.add_argument("--case", choices=["14.1", "14.2", "14.3"])
    i.add_argument("--b2", type=int, help="index of b2 in F_q")
    i.add_argument("--b3", type=int, help="index of b3 in F_q")
    i.add_argument("--d1", type=int, help="index of d1 (case 14.3)")
    i.add_argument("--all-b", action="store_true", default=None, help="every b2, b3 in F_q*")
    i.add_argument("--negative-control", action="store_true", default=None,
                   help="also check the map with d2 negated (d2 + 1 in characteristic 2)")
    i.add_argument("--search", action="store_true", default=None,
                   help="search for a map from the given parameters to --target")
    i.add_argument("--target", help="target overrides, e.g. 'beta=monomial,r=0,s=1'")
    c = sub.add_parser("classify", parents=[parent], help="census of tuples up to isomorphism")
    c.add_argument("--bound", type=int, help="largest e2, e3, h2, h3 (default 9)")
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    flat: dict[str, str] = {}
    if ns.config:
        flat.update(read_flat(Path(ns.config).read_text()))
    cfg = RunConfig.from_flat({**flat, "command": ns.command})
    for k in PARAM_KEYS:
        v = getattr(ns, k, None)
        if v is not None:
            cfg.params[k] = v
    for k in EXTRA_KEYS:
        v = getattr(ns, k, None)
        if v is not None:
            cfg.extra[k] = v
    if ns.q:
        cfg.q = [int(x) for item in ns.q for x in item.split(",") if x.strip()]
    if getattr(ns, "suite", None):
        cfg.suite = [x.strip() for item in ns.suite for x in item.split(",") if x.strip()]
    for k in ("out", "pretty", "timing"):
        v = getattr(ns, k, None)
        if v is not None:
            setattr(cfg, k, v)
    return cfg


# -- commands ---------------------------------------------------------------------

class UsageError(ValueError):
    code = "Usage"


def _params(cfg: RunConfig):
    return params_validate(dict(cfg.params))


def _field_for(cfg: RunConfig, p: int):
    if cfg.q:
        ctx = field_of_order(cfg.q[0])
        if ctx.p != p:
            raise UsageError(f"q = {cfg.q[0]} is not a power of {p}")
        return ctx
    return field_make(p, int(cfg.params.get("ext") or 1))


def cmd_construct(cfg: RunConfig) -> Report:
    par = _params(cfg)
    rep = Report("construct", par.to_dict(), par.field.describe())
    psi1, psi2 = psi_polys(par)
    rep.extra["derived"] = {
        "e1": par.e1,
        "e2": par.e2,
        "h2": par.h2,
        "h3": par.h3,
        "beta": beta_poly(par).to_json(),
        "psi1": psi1.to_json(),
        "psi2": psi2.to_json(),
    }
    return rep


def cmd_verify(cfg: RunConfig) -> Report:
    par = _params(cfg)
    suites = verify.expand_suites(cfg.suite or ["all"])
    qs = cfg.q
    if not qs and par.field.is_finite:
        qs = [par.field.order]
    rep = Report("verify", par.to_dict(), par.field.describe())
    rep.extra["suites"] = suites
    rep.extra["q"] = qs
    if not par.field.is_finite:
        rep.extend(c for c in verify.check_assoc(par) if c.name.startswith("assoc.symbolic"))
        for s in suites:
            if s != "assoc":
                rep.checks.append(skipped(f"{s}", "characteristic 0: only symbolic identities are checked"))
        return rep
    for q in qs:
        ctx = field_of_order(q)
        if ctx.p != par.p:
            raise UsageError(f"q = {q} is not a power of {par.p}")
        for s in suites:
            if q > SUITE_MAX_Q[s]:
                rep.checks.append(skipped(f"q={q}/{s}", f"q above the cap {SUITE_MAX_Q[s]} for this suite"))
                continue
            for c in verify.SUITE_FUNCS[s](par, q):
                c.name = f"q={q}/{c.name}"
                rep.checks.append(c)
    return rep


def cmd_cocycle_solve(cfg: RunConfig) -> Report:
    P = cfg.params
    p = int(P.get("char") or 0)
    if p == 0:
        raise UsageError("cocycle-solve needs --char p > 0")
    l2, l3, m, n = (int(P.get(k) or 0) for k in ("l2", "l3", "m", "n"))
    t = TargetMonomial.from_exponents(p, l2, l3, m, n)
    rep = Report("cocycle-solve", {"char": p, "l2": l2, "l3": l3, "m": m, "n": n}, field_make(p).describe())
    adm = admissible_target(t)
    sol = solve_delta2_detailed(t)
    rep.extra["target"] = t.to_dict()
    rep.extra["admissible"] = adm
    rep.extra["system"] = sol.to_dict()
    rep.extra["outcome"] = "solved" if sol.consistent else ("inadmissible" if not adm else "inconsistent")
    if sol.consistent:
        ok = delta2(sol.solution) == t.poly()
        rep.checks.append(check("cocycle.solution_reverified", ok, {"terms": len(sol.solution)}))
    else:
        rep.checks.append(skipped("cocycle.solution_reverified", "no solution",
                                  {"rank": sol.rank, "augmented_rank": sol.augmented_rank}))
    rep.checks.append(check("cocycle.inadmissible_implies_inconsistent", adm or not sol.consistent,
                            {"admissible": int(adm), "consistent": int(sol.consistent)}))
    return rep


def _target_overrides(text: str | None) -> dict:
    out: dict = {}
    for item in (text or "").split(","):
        if "=" in item:
            k, v = item.split("=", 1)
            k = k.strip().replace("-", "_")
            out[k] = _parse_value(k, v)
    return out


def cmd_iso(cfg: RunConfig) -> Report:
    X = cfg.extra
    if X.get("search"):
        src = _params(cfg)
        ctx = _field_for(cfg, src.p)
        src = src.with_field(ctx)
        # the target keeps the source's (e2, e3, h2, h3) unless overridden
        tgt_raw = {"char": src.p, "e2": src.e2, "e3": src.e3, "h2": src.h2, "h3": src.h3,
                   "allow_equal_exponents": src.allow_equal_exponents,
                   **_target_overrides(X.get("target")), "field": ctx}
        dst = params_validate(tgt_raw)
        rep = Report("iso", {"source": src.to_dict(), "target": dst.to_dict()}, ctx.describe())
        res = search_iso_detailed(src, dst)
        rep.extra["search"] = res.to_dict()
        if res.found:
            rep.checks.append(check_iso(res.descriptor))
        else:
            rep.checks.append(skipped("iso.search", "no structured isomorphism over this field (heuristic)",
                                      {"candidates": res.candidates, "prefilter_survivors": res.survivors}))
        return rep
    case = X.get("case") or "14.2"
    P = cfg.params
    p = int(P.get("char") or 0)
    if p == 0:
        raise UsageError("iso needs --char p > 0")
    ctx = _field_for(cfg, p)
    r, s = int(P.get("r") or 0), int(P.get("s") or (0 if case == "14.3" else 1))
    e2, e3 = int(P.get("e2") or 1), int(P.get("e3") or 1)
    if X.get("all_b"):
        bs = [(b2, b3) for b2 in range(1, ctx.order) for b3 in range(1, ctx.order)]
    else:
        bs = [(int(X.get("b2") or 1), int(X.get("b3") or 1))]
    rep = None
    for b2, b3 in bs:
        desc = case_descriptor(case, ctx, r, s, b2, b3, e2, e3, int(X.get("d1") or 0))
        if rep is None:
            rep = Report("iso", {"source": desc.source.to_dict(), "target": desc.target.to_dict(), "case": case},
                         ctx.describe())
            rep.extra["descriptors"] = []
        rep.extra["descriptors"].append(desc.to_dict())
        c = check_iso(desc)
        c.name = f"{c.name}[b2={b2},b3={b3}]"
        rep.checks.append(c)
        if X.get("negative_control"):
            bad = corrupted(desc, d2=-desc.d2 if p != 2 else desc.d2 + desc.field.one)
            n = check_iso(bad)
            rep.checks.append(check(f"iso.negative_control[b2={b2},b3={b3}]", not n.ok,
                                    n.counts, None if not n.ok else {"reason": "corrupted map passed"}))
    return rep


def cmd_classify(cfg: RunConfig) -> Report:
    p = int(cfg.params.get("char") or 0)
    if p == 0:
        raise UsageError("classify needs --char p > 0")
    ctx = _field_for(cfg, p)
    return classify(ctx, int(cfg.extra.get("bound") or 9))


HANDLERS = {
    "construct": cmd_construct,
    "verify": cmd_verify,
    "cocycle-solve": cmd_cocycle_solve,
    "iso": cmd_iso,
    "classify": cmd_classify,
}


def run(cfg: RunConfig) -> tuple[Report, int]:
    t = time.perf_counter()
    try:
        rep = HANDLERS[cfg.command](cfg)
        status = EXIT_OK if rep.ok else EXIT_FAIL
    except (ParamsError, FieldError, NotApplicable, UsageError) as exc:
        rep = Report(cfg.command, {k: v for k, v in cfg.params.items()})
        rep.extra["error"] = {"code": getattr(exc, "code", type(exc).__name__), "message": getattr(exc, "message", str(exc))}
        status = EXIT_USAGE
    if cfg.timing:
        rep.elapsed_ms = int((time.perf_counter() - t) * 1000)
    return rep, status


def main(argv: Sequence[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    cfg = config_from_args(ns)
    if ns.save_config:
        Path(ns.save_config).write_text(cfg.to_text())
    rep, status = run(cfg)
    text = rep.dumps(cfg.pretty)
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())

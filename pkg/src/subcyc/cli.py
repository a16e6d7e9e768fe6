"""Command line interface: ``subcyc <command> [options]``.

Exit status: 0 on success, 1 when a cross-validation fails, 2 on bad input.
Structured output (``--format json``) is a key-sorted JSON document whose
layout is described in ``output.schema.json`` next to this module.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .cech import graded_lc_dim, graded_lc_dims, straightness_check
from .corpus import all_squarefree_ideals, random_corpus
from .field_linalg import QQ, FieldSpec, LinalgError, format_entry
from .invariants import (characteristic_cycle, complement_betti, cross_validate,
                         extension_analysis, hypercube, multiplicities, multiplicities_of_ideal)
from .koszul import graded_betti, verify_dual_identity
from .monomials import (IdealError, MonomialIdeal, SignVector, alexander_dual, all_sign_vectors,
                        ensure_squarefree, parse_ideal)
from .poset import ArrangementError, IntersectionPoset, parse_subspaces, poset_from_ideal, poset_from_subspaces

log = logging.getLogger("subcyc")

COMMANDS = ("cc", "graded-dims", "dual", "betti", "complement", "hypercube",
            "extensions", "check", "selftest")

SCHEMA_PATH = Path(__file__).with_name("output.schema.json")


class InputError(Exception):
    pass


@dataclass
class JobConfig:
    command: str
    ideal: str | None = None
    input: str | None = None
    subspaces: str | None = None
    nvars: int | None = None
    field: FieldSpec = QQ
    flavor: str = "real"
    r: int | None = None
    alpha: tuple[int, ...] | None = None
    box: int | None = None
    all_squarefree: bool = False
    random: int | None = None
    seed: int = 0
    format: str = "text"

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise InputError(f"unknown command {self.command!r}")
        if self.command in ("hypercube", "extensions") and self.r is None:
            raise InputError(f"{self.command} needs --r")
        if self.box is not None and self.box < 1:
            raise InputError("--box must be >= 1")
        if sum(x is not None for x in (self.ideal, self.input, self.subspaces)) > 1:
            raise InputError("give at most one of --ideal, --input, --subspaces")


@dataclass
class Outcome:
    status: int
    text: str
    data: dict = field(default_factory=dict)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("SUBCYC_THREADS", "1")))
    except ValueError:
        return 1


def _pmap(fn, items):
    """Ordered map, fanned out over SUBCYC_THREADS workers."""
    workers = _threads()
    if workers == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _load_ideal(cfg: JobConfig) -> MonomialIdeal:
    text = cfg.ideal
    if text is None and cfg.input:
        try:
            text = Path(cfg.input).read_text()
        except OSError as e:
            raise InputError(f"cannot read {cfg.input}: {e.strerror}") from None
        text = " ".join(line.split("#", 1)[0] for line in text.splitlines())
    if text is None:
        raise InputError(f"{cfg.command} needs --ideal or --input")
    return parse_ideal(text, cfg.nvars)


def _load_poset(cfg: JobConfig) -> tuple[IntersectionPoset, dict]:
    if cfg.subspaces:
        try:
            text = Path(cfg.subspaces).read_text()
        except OSError as e:
            raise InputError(f"cannot read {cfg.subspaces}: {e.strerror}") from None
        subs = parse_subspaces(text, cfg.nvars)
        return poset_from_subspaces(subs), {"subspaces": [str(s) for s in subs], "nvars": subs[0].nvars}
    I = _load_ideal(cfg)
    return poset_from_ideal(I), {"ideal": str(I), "nvars": I.nvars}


def _node_key(p) -> str:
    return str(p.sign) if p.sign is not None else str(p.geometry)


def _matrix_strings(m) -> list[list[str]]:
    return [[format_entry(v) for v in row] for row in m.to_rows()]


# -- commands ----------------------------------------------------------------

def _cmd_cc(cfg):
    P, echo = _load_poset(cfg)
    cc = characteristic_cycle(P)
    table = multiplicities(P, cfg.field)
    lines = [f"CC(H^{r}) = {cc.render(r)}" for r in sorted(cc.terms)]
    data = {
        "m": {f"{r}|{_node_key(p)}": v for r, p, v in table.nonzero()},
        "cc": {str(r): [{"node": _node_key(p), "label": f"T*_{{{p.label()}}}", "mult": v}
                        for p, v in terms] for r, terms in cc.terms.items()},
    }
    return Outcome(0, "\n".join(lines), data), echo


def _cmd_graded_dims(cfg):
    I = _load_ideal(cfg)
    echo = {"ideal": str(I), "nvars": I.nvars}
    degrees = [cfg.alpha] if cfg.alpha is not None else [a.signs for a in all_sign_vectors(I.nvars)]
    table = {}
    lines = []
    for deg in degrees:
        if len(deg) != I.nvars:
            raise InputError(f"--alpha has {len(deg)} entries, expected {I.nvars}")
        dims = ({cfg.r: graded_lc_dim(I, cfg.r, deg, cfg.field)} if cfg.r is not None
                else graded_lc_dims(I, deg, cfg.field))
        key = ",".join(map(str, deg))
        for r, d in sorted(dims.items()):
            if d:
                table[f"{r}|{key}"] = d
                lines.append(f"dim H^{r}_I(R)_({key}) = {d}")
    if not lines:
        lines.append("all dimensions are zero")
    return Outcome(0, "\n".join(lines), {"dims": table}), echo


def _cmd_dual(cfg):
    I = ensure_squarefree(_load_ideal(cfg))
    D = alexander_dual(I)
    return Outcome(0, str(D), {"dual": str(D)}), {"ideal": str(I), "nvars": I.nvars}


def _cmd_betti(cfg):
    J = _load_ideal(cfg)
    tab = graded_betti(J, cfg.field)
    lines = [f"beta_{i},({','.join(map(str, a))}) = {v}" for (i, a), v in tab.items()]
    data = {"betti": {f"{i}|{','.join(map(str, a))}": v for (i, a), v in tab.items()}}
    return Outcome(0, "\n".join(lines), data), {"ideal": str(J), "nvars": J.nvars}


def _cmd_complement(cfg):
    P, echo = _load_poset(cfg)
    b = complement_betti(P, cfg.flavor)
    last = max((i for i, v in enumerate(b) if v), default=0)
    text = " ".join(f"b~{i}={b[i]}" for i in range(last + 1))
    echo["flavor"] = cfg.flavor
    return Outcome(0, text, {"betti": b, "flavor": cfg.flavor}), echo


def _cmd_hypercube(cfg):
    I = _load_ideal(cfg)
    cube = hypercube(I, cfg.r, cfg.field)
    verts = {str(a): d for a, d in cube.vertices.items() if d}
    maps = {f"x{i + 1}|{a}": _matrix_strings(m) for (i, a), m in cube.maps.items()
            if m.rows and m.cols}
    lines = [f"H^{cfg.r} hypercube"]
    lines += [f"  vertex ({a}): dim {d}" for a, d in verts.items()]
    lines += [f"  x{k}: {v}" for k, v in maps.items()]
    return Outcome(0, "\n".join(lines), {"r": cfg.r, "vertices": verts, "maps": maps}), \
        {"ideal": str(I), "nvars": I.nvars, "r": cfg.r}


def _cmd_extensions(cfg):
    I = _load_ideal(cfg)
    levels = extension_analysis(I, cfg.r, cfg.field)
    lines = []
    data = {}
    for lv in levels:
        verdict = "splits" if lv.splits else "non-split"
        lines.append(f"j={lv.j}: dim F_j/F_(j-1) = {lv.quotient_dim}, {verdict}"
                     + (f" ({'; '.join(lv.nonzero_maps)})" if lv.nonzero_maps else ""))
        data[str(lv.j)] = {"quotient_dim": lv.quotient_dim, "splits": lv.splits,
                           "nonzero_maps": lv.nonzero_maps}
    return Outcome(0, "\n".join(lines), {"levels": data}), {"ideal": str(I), "nvars": I.nvars, "r": cfg.r}


def _validate_one(I: MonomialIdeal, f: FieldSpec, box: int | None) -> tuple[MonomialIdeal, list[str]]:
    rep = cross_validate(I, f)
    diffs = list(rep.diffs)
    if box is not None:
        for r in range(I.nvars + 1):
            st = straightness_check(rep.ideal, r, box, f)
            diffs.extend(f"straightness r={r}: {v}" for v in st.violations)
    return rep.ideal, diffs


def _cmd_check(cfg):
    if cfg.all_squarefree or cfg.random is not None:
        if cfg.nvars is None:
            raise InputError("corpus checks need -n")
        ideals = (all_squarefree_ideals(cfg.nvars) if cfg.all_squarefree
                  else random_corpus(cfg.random, cfg.nvars, cfg.seed))
        echo = {"corpus": "all-squarefree" if cfg.all_squarefree else f"random:{cfg.random}:seed={cfg.seed}",
                "nvars": cfg.nvars}
    else:
        I = _load_ideal(cfg)
        ideals = [I]
        echo = {"ideal": str(I), "nvars": I.nvars}
    results = _pmap(lambda I: _validate_one(I, cfg.field, cfg.box), ideals)
    failures = {str(I): d for I, d in results if d}
    n = len(results)
    if failures:
        lines = [f"FAIL ({len(failures)} of {n} ideals)"]
        for k, d in failures.items():
            lines += [f"  ({k}): {x}" for x in d]
        return Outcome(1, "\n".join(lines), {"verdict": "FAIL", "ideals": n, "failures": failures}), echo
    return Outcome(0, f"PASS ({n} ideals)", {"verdict": "PASS", "ideals": n, "failures": {}}), echo


def named_checks() -> dict[str, bool]:
    """The worked examples, each reduced to a boolean."""
    from .poset import AffineSubspace

    out = {}
    I = parse_ideal("x1*x2, x1*x3", 3)
    cc = characteristic_cycle(I)
    out["cc_h1"] = cc.render(1) == "T*_{V(x1)}"
    out["cc_h2"] = cc.render(2) == "T*_{V(x2,x3)} + T*_{V(x1,x2,x3)}"
    cube = hypercube(I, 2)
    nz = cube.nonzero_maps()
    out["hypercube_h2"] = (sorted(d for d in cube.vertices.values() if d) == [1, 1]
                           and len(nz) == 1 and nz[0][0] == 0 and nz[0][2].rows == 1
                           and nz[0][2].cols == 1)
    lv = extension_analysis(I, 2, cube=cube)
    out["nonsplit_j3"] = not lv[3].splits and all(l.splits for l in lv if l.j != 3)
    hyper = poset_from_subspaces([AffineSubspace.from_system([[1, 0]], [0])])
    out["hyperplane_real"] = complement_betti(hyper, "real") == [1, 0]
    out["hyperplane_complex"] = complement_betti(hyper, "complex") == [0, 1, 0, 0]
    axes = poset_from_ideal(parse_ideal("x1*x2, x2*x3, x1*x3", 3))
    out["three_axes_real"] = complement_betti(axes, "real")[:2] == [0, 5]
    ok = True
    for n in range(1, 7):
        m = parse_ideal(", ".join(f"x{i}" for i in range(1, n + 1)), n)
        tab = multiplicities_of_ideal(m)
        top = SignVector(tuple([-1] * n))
        ok &= tab.by_sign() == {(n, top): 1}
        ok &= complement_betti(poset_from_ideal(m), "complex") == [0] * (2 * n - 1) + [1]
    out["maximal_ideal"] = ok
    out["dual_identity_example"] = verify_dual_identity(I).ok
    return out


def _cmd_selftest(cfg):
    ideals = all_squarefree_ideals(3)
    results = _pmap(lambda I: _validate_one(I, cfg.field, 2), ideals)
    failures = {str(I): d for I, d in results if d}
    named = named_checks()
    bad_named = sorted(k for k, v in named.items() if not v)
    ok = not failures and not bad_named
    verdict = "PASS" if ok else "FAIL"
    text = f"selftest {verdict} ({len(ideals)} ideals, {len(named)} named checks)"
    if not ok:
        text += "".join(f"\n  named check failed: {k}" for k in bad_named)
        text += "".join(f"\n  ({k}): {x}" for k, d in failures.items() for x in d)
    data = {"verdict": verdict, "ideals": len(ideals), "named": named, "failures": failures}
    return Outcome(0 if ok else 1, text, data), {"corpus": "all-squarefree", "nvars": 3}


_DISPATCH = {
    "cc": _cmd_cc, "graded-dims": _cmd_graded_dims, "dual": _cmd_dual, "betti": _cmd_betti,
    "complement": _cmd_complement, "hypercube": _cmd_hypercube, "extensions": _cmd_extensions,
    "check": _cmd_check, "selftest": _cmd_selftest,
}


def emit_structured(command: str, echo: dict, result: dict) -> str:
    doc = {"version": __version__, "command": command, "input": echo, "result": result}
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def run(cfg: JobConfig) -> tuple[int, str]:
    """Execute a job; returns (exit status, stdout text).  Errors go to the log."""
    try:
        outcome, echo = _DISPATCH[cfg.command](cfg)
    except (InputError, IdealError, ArrangementError, LinalgError) as e:
        log.error("%s", e)
        return 2, ""
    echo = dict(echo, field=str(cfg.field))
    if cfg.format == "json":
        return outcome.status, emit_structured(cfg.command, echo, outcome.data)
    return outcome.status, outcome.text + "\n"


def _alpha(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad multidegree {text!r}") from None


def _field(text: str) -> FieldSpec:
    try:
        return FieldSpec.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_argument_group("input")
    src.add_argument("--ideal", help='monomial ideal, e.g. "x1*x2, x1^2*x3"')
    src.add_argument("--input", help="file holding an ideal")
    src.add_argument("--subspaces", help="file of affine subspaces (cc, complement)")
    common.add_argument("-n", "--nvars", type=int, help="number of variables (default: highest index)")
    common.add_argument("--field", type=_field, default=QQ, help="q (default) or fp:<prime>")
    common.add_argument("--format", choices=("text", "json"), default="text")

    p = argparse.ArgumentParser(prog="subcyc", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"subcyc {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("cc", parents=[common], help="characteristic cycles of H^r_I(R)")
    g = sub.add_parser("graded-dims", parents=[common], help="dim H^r_I(R)_alpha via Cech fibers")
    g.add_argument("--r", type=int)
    g.add_argument("--alpha", type=_alpha, help="multidegree, e.g. -1,0,-1")
    sub.add_parser("dual", parents=[common], help="Alexander dual")
    sub.add_parser("betti", parents=[common], help="multigraded Betti numbers")
    c = sub.add_parser("complement", parents=[common], help="Betti numbers of the complement")
    fl = c.add_mutually_exclusive_group()
    fl.add_argument("--real", dest="flavor", action="store_const", const="real")
    fl.add_argument("--complex", dest="flavor", action="store_const", const="complex")
    for name, hlp in (("hypercube", "Omega-hypercube of H^r_I(R)"),
                      ("extensions", "splitting of the filtration of H^r_I(R)")):
        s = sub.add_parser(name, parents=[common], help=hlp)
        s.add_argument("--r", type=int, required=True)
    k = sub.add_parser("check", parents=[common], help="cross-validate the three engines")
    k.add_argument("--all-squarefree", action="store_true")
    k.add_argument("--random", type=int, metavar="COUNT")
    k.add_argument("--seed", type=int, default=0)
    k.add_argument("--box", type=int, help="also run the straightness check on [-box, box]^n")
    sub.add_parser("selftest", parents=[common], help="exhaustive n=3 corpus plus worked examples")
    return p


def _setup_logging():
    for h in list(log.handlers):
        log.removeHandler(h)
    h = logging.StreamHandler(sys.stderr)
    h.setFormatter(logging.Formatter("subcyc: %(levelname)s: %(message)s"))
    log.addHandler(h)
    log.propagate = False


def _glue_negative_values(argv: list[str]) -> list[str]:
    # "--alpha -1,0,-1" would otherwise be read as an unknown option
    out = []
    for tok in argv:
        if out and out[-1] == "--alpha" and tok.startswith("-"):
            out[-1] = f"--alpha={tok}"
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    _setup_logging()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_glue_negative_values(argv))
    kw = {k: v for k, v in vars(args).items() if v is not None}
    kw.setdefault("flavor", "real")
    try:
        cfg = JobConfig(**kw)
    except InputError as e:
        log.error("%s", e)
        return 2
    status, out = run(cfg)
    sys.stdout.write(out)
    return status


if __name__ == "__main__":
    sys.exit(main())

"""``gdh`` command-line front end.

Exit status: 0 ok, 1 invalid input, 2 usage error, 3 budget exhausted
(result is only a bound).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import io
from .core import (
    TheoryMismatch,
    count_copies,
    count_injective_homs,
    density,
    find_embedding,
)
from .extremal import DEFAULT_BUDGET, extremal_number, langlois_construction
from .jumps import certify_jump, degenerate_witness, jump_interval, nonjump_catalog
from .lagrangian import LagrangianConfig, blowup, blowup_density
from .lattice import TheoryPair, expand_all, min_container, orient_k, project_family

EXIT_INVALID = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3


class _Run:
    """Per-invocation state: loaded inputs are hashed into the manifest."""

    def __init__(self, args, argv):
        self.args = args
        self.manifest = io.RunManifest(command=["gdh", *argv], seed=getattr(args, "seed", None))

    def read(self, path: str) -> str:
        text = io.read_text(path)
        self.manifest.inputs[path] = io.digest(text)
        return text

    def theory(self, path):
        return io.parse_theory(self.read(path))

    def gdh(self, path, theory):
        return io.parse_gdh(self.read(path), theory)

    def family(self, path, theory):
        return io.parse_family(self.read(path), theory)


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)
    if isinstance(x, float):
        return f"{x:.10g}"
    return str(x)


def _lagrangian_config(args) -> LagrangianConfig:
    return LagrangianConfig(starts=args.starts, seed=args.seed, threads=args.threads)


def cmd_density(run: _Run):
    a = run.args
    T = run.theory(a.theory)
    G = run.gdh(a.gdh, T)
    d = density(G)
    return {"n": G.n, "edges": G.num_edges, "density": d}, f"density {d:.10g} ({G.num_edges} edges, n={G.n})"


def cmd_blowup(run: _Run):
    a = run.args
    T = run.theory(a.theory)
    G = run.gdh(a.gdh, T)
    t = [int(x) for x in a.t.split(",")]
    B = blowup(G, t)
    return io.gdh_to_json(B), io.serialize_gdh(B).rstrip()


def cmd_lagrangian(run: _Run):
    a = run.args
    T = run.theory(a.theory_file)
    G = run.gdh(a.gdh_file, T)
    res = blowup_density(G, _lagrangian_config(a))
    weights = " ".join(f"{w:.6f}" for w in res.argmax)
    text = (f"blowup density >= {res.value:.12g}\n"
            f"argmax: {weights}\n"
            f"converged: {'yes' if res.converged else 'no'} ({res.starts_used} starts)")
    return res.to_dict(), text


def cmd_contains(run: _Run):
    a = run.args
    T = run.theory(a.theory)
    H = run.gdh(a.h, T)
    G = run.gdh(a.g, T)
    psi = find_embedding(H, G)
    text = "embedding: NONE" if psi is None else "embedding: " + " ".join(
        f"{v}->{w}" for v, w in enumerate(psi))
    return {"embedding": None if psi is None else list(psi)}, text


def cmd_count_copies(run: _Run):
    a = run.args
    T = run.theory(a.theory)
    H = run.gdh(a.h, T)
    G = run.gdh(a.g, T)
    homs = count_injective_homs(H, G)
    copies = count_copies(H, G)
    return ({"injective_homs": homs, "copies": copies},
            f"injective homomorphisms {homs}\ncopies {copies}")


def cmd_exsearch(run: _Run):
    a = run.args
    T = run.theory(a.theory_file)
    fam = run.family(a.family_file, T)
    res = extremal_number(T, a.n, fam, budget=a.budget, threads=a.threads)
    status = "exact" if res.exhaustive else "lower bound (budget exhausted)"
    text = (f"ex(n={res.n}) = {res.best_edge_count}  [{status}]\n"
            f"density bound {res.density_bound:.10g}\n"
            f"nodes {res.nodes_explored}\n"
            f"witness:\n{io.serialize_gdh(res.witness).rstrip()}")
    return res.to_dict(), text, (0 if res.exhaustive else EXIT_INCONCLUSIVE)


def cmd_transform(run: _Run):
    a = run.args
    pair = TheoryPair(run.theory(a.fine_theory), run.theory(a.coarse_theory))
    if a.op == "project":
        src = run.family(a.input_file, pair.coarse)
        out = project_family(src, pair)
        return ({"members": [io.gdh_to_json(F) for F in out]}, io.serialize_family(out).rstrip())
    if a.op == "min-container":
        out = min_container(run.gdh(a.input_file, pair.fine), pair)
    elif a.op == "expand":
        out = expand_all(run.gdh(a.input_file, pair.coarse), pair)
    else:
        out = orient_k(run.gdh(a.input_file, pair.coarse), pair, a.k, seed=a.seed)
    return io.gdh_to_json(out), io.serialize_gdh(out).rstrip()


def cmd_certify_jump(run: _Run):
    a = run.args
    T = run.theory(a.theory_file)
    fam = run.family(a.family_file, T)
    cert = certify_jump(a.alpha, fam, a.n, budget=a.budget,
                        config=_lagrangian_config(a), threads=a.threads)
    out = cert.to_dict()
    out["inputs"] = dict(run.manifest.inputs)
    lbs = ", ".join(f"{b:.10g}" for b in cert.member_blowup_lbs)
    text = (f"alpha {a.alpha:g}: {'VALID' if cert.valid else 'INVALID'} jump certificate\n"
            f"pi upper bound (n={cert.n_used}) {cert.pi_upper:.10g}\n"
            f"member blowup density lower bounds: {lbs}\n"
            f"reason: {cert.reason}")
    return out, text, (0 if cert.exhaustive else EXIT_INCONCLUSIVE)


def cmd_catalog(run: _Run):
    a = run.args
    T = run.theory(a.theory_file)
    iv = jump_interval(T)
    out = {
        "r": T.r,
        "m": T.m,
        "jump_interval": {"lo": float(iv.lo), "hi": float(iv.hi), "hi_exact": _fmt(iv.hi)},
    }
    lines = [f"[0, {float(iv.hi):.4f}…) jump interval  (= [0, {_fmt(iv.hi)}))"]
    if iv.note:
        lines.append(iv.note)
    if T.r >= 3:
        cat = nonjump_catalog(T)
        out["nonjumps"] = [{"k": e.k, "value": float(e.value), "exact": _fmt(e.value)} for e in cat]
        lines.append("nonjump " + ", ".join(_fmt(e.value) for e in cat))
    else:
        out["nonjumps"] = []
    return out, "\n".join(lines)


def cmd_degenerate(run: _Run):
    a = run.args
    T = run.theory(a.theory_file)
    fam = run.family(a.family_file, T)
    w = degenerate_witness(fam, a.t_cap)
    out = {"degenerate": w is not None}
    if w is None:
        bound = Fraction(T.m, T.r ** T.r)
        out.update(witness=None, pi_lower=float(bound))
        text = f"no member embeds in a blowup of one edge; pi >= m/r^r = {_fmt(bound)}"
    else:
        out.update(witness={"member": w.member, "t": list(w.t), "embedding": list(w.embedding)},
                   pi=0.0)
        text = f"member {w.member} embeds in the {w.t}-blowup of one edge; pi = 0"
    return out, text


def cmd_construct_langlois(run: _Run):
    G = langlois_construction(run.args.n)
    return io.gdh_to_json(G), io.serialize_gdh(G).rstrip()


def cmd_report(run: _Run):
    from . import plotting

    a = run.args
    if a.kind == "blowup-sequence":
        T = run.theory(a.theory_file)
        info = plotting.blowup_sequence_report(T, a.t_max, a.out)
    elif a.kind == "langlois":
        info = plotting.langlois_report(a.n_max, a.out)
    else:
        T = run.theory(a.theory_file)
        fam = run.family(a.family_file, T)
        info = plotting.density_bounds_report(T, fam, range(a.n_min, a.n_max + 1), a.out,
                                              budget=a.budget, threads=a.threads)
    text = f"wrote {info['csv']}\nwrote {info['figure']}"
    code = 0 if info.get("exhaustive", True) else EXIT_INCONCLUSIVE
    return info, text, code


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of a table")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="node budget")
    common.add_argument("--starts", type=int, default=100, help="ascent starts")
    common.add_argument("--manifest", default=None,
                        help="write the run manifest here instead of standard error")

    p = argparse.ArgumentParser(prog="gdh", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.set_defaults(func=func)
        return sp

    sp = add("density", cmd_density, "edge density of a GDH")
    sp.add_argument("gdh")
    sp.add_argument("--theory", required=True)

    sp = add("blowup", cmd_blowup, "t-blowup of a GDH")
    sp.add_argument("gdh")
    sp.add_argument("--theory", required=True)
    sp.add_argument("--t", required=True, help="comma-separated clone counts")

    sp = add("lagrangian", cmd_lagrangian, "blowup density (lower bound)")
    sp.add_argument("theory_file")
    sp.add_argument("gdh_file")

    sp = add("contains", cmd_contains, "find an embedding of H into G")
    sp.add_argument("h")
    sp.add_argument("g")
    sp.add_argument("--theory", required=True)

    sp = add("count-copies", cmd_count_copies, "count embeddings and copies of H in G")
    sp.add_argument("h")
    sp.add_argument("g")
    sp.add_argument("--theory", required=True)

    sp = add("exsearch", cmd_exsearch, "exact extremal number by branch and bound")
    sp.add_argument("theory_file")
    sp.add_argument("family_file")
    sp.add_argument("--n", type=int, required=True)

    sp = add("transform", cmd_transform, "move graphs between theories")
    sp.add_argument("op", choices=["min-container", "expand", "orient-k", "project"])
    sp.add_argument("fine_theory")
    sp.add_argument("coarse_theory")
    sp.add_argument("input_file")
    sp.add_argument("--k", type=int, default=1)

    sp = add("certify-jump", cmd_certify_jump, "check a finite-family jump certificate")
    sp.add_argument("theory_file")
    sp.add_argument("family_file")
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--n", type=int, required=True)

    sp = add("catalog", cmd_catalog, "known jump interval and nonjumps")
    sp.add_argument("theory_file")

    sp = add("degenerate", cmd_degenerate, "look for a member inside a blowup of one edge")
    sp.add_argument("theory_file")
    sp.add_argument("family_file")
    sp.add_argument("--t-cap", type=int, default=None)

    sp = add("construct-langlois", cmd_construct_langlois, "extremal 2->1 construction")
    sp.add_argument("--n", type=int, required=True)

    sp = add("report", cmd_report, "write CSV tables and figures")
    sp.add_argument("kind", choices=["blowup-sequence", "langlois", "density-bounds"])
    sp.add_argument("theory_file", nargs="?")
    sp.add_argument("family_file", nargs="?")
    sp.add_argument("--out", default="report")
    sp.add_argument("--t-max", type=int, default=40)
    sp.add_argument("--n-min", type=int, default=3)
    sp.add_argument("--n-max", type=int, default=15)
    return p


def dispatch(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "report" and args.kind != "langlois" and args.theory_file is None:
            parser.error("this report needs a theory file")
        if args.command == "report" and args.kind == "density-bounds" and args.family_file is None:
            parser.error("density-bounds needs a family file")
    except SystemExit as exc:
        return int(exc.code or 0)

    run = _Run(args, argv)
    code = 0
    try:
        with io.ManifestTimer(run.manifest) as timer:
            out = args.func(run)
            if len(out) == 3:
                result, text, code = out
            else:
                result, text = out
            timer.record(result)
    except (ValueError, TheoryMismatch, OSError) as exc:
        print(f"gdh: error: {exc}", file=stderr)
        return EXIT_INVALID

    if args.json:
        print(json.dumps(result, indent=2, sort_keys=True), file=stdout)
    else:
        print(text, file=stdout)
    if args.manifest:
        with open(args.manifest, "w") as fh:
            fh.write(run.manifest.to_json() + "\n")
    else:
        print(run.manifest.to_json(), file=stderr)
    return code


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()

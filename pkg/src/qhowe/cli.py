"""Command-line entry point: ``qhowe <verb> <action> [options]``.

Each run produces a list of certificates (a claim id, pass/fail, and the
nonzero residue on failure) plus optional results, rendered as text or as
schema-versioned JSON. Exit status is 0 when every certificate passes, 1 when
one fails and 2 on a usage error.

``QHOWE_THREADS`` sets the number of worker threads used for independent
certificates (default 1). Output order never depends on it.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import re
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

from . import __version__
from .errors import ConfigError, ContextError, DomainError, InvariantViolation
from .howe import (
    bernstein_check,
    build_context,
    fischer_decompose,
    harmonic_basis,
    highest_weight_checks,
    invariants_match,
    slice_tally,
    verify_context,
)
from .linalg import same_span
from .ncpoly import NCPoly, associativity_fuzz, center_basis, is_central, make_ring, normal_form, p_q
from .quantumgroup import (
    adjoint_matrices,
    casimir_is_central,
    check_relations,
    commutator_identities,
    sl2_presentation,
    sln_presentation,
    standard_matrices,
)
from .scalars import field_axiom_fuzz, qbinom, qfact, qint
from .verma import (
    casimir_collisions,
    casimir_diag,
    check_pq_module,
    classify,
    closed_form_agreement,
    closed_forms_for,
    closed_form_singular,
    embedding_check,
    parse_weight,
    pq_module,
    realization_checks,
    singular_vectors,
    verify_plan,
    weight_pair,
)
from .weylop import action_fuzz, fourier_residues, identity_residues

SCHEMA = "qhowe.report/1"


class UsageError(Exception):
    pass


@dataclass
class Certificate:
    """One verified claim. ``residue`` is None exactly when the claim passed."""

    claim: str
    passed: bool
    residue: object = None
    timing: float | None = None
    input_hash: str = ""

    def to_json(self, timing: bool = False) -> dict:
        out = {"claim": self.claim, "status": "pass" if self.passed else "fail",
               "residue": self.residue, "input_hash": self.input_hash}
        if timing:
            out["timing_s"] = round(self.timing or 0.0, 6)
        return out


def _jsonable(x):
    if x is None:
        return None
    if hasattr(x, "to_json"):
        return x.to_json()
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x if isinstance(x, (str, int, float, bool, dict)) else str(x)


def _hash(claim: str, params: dict) -> str:
    blob = json.dumps({"claim": claim, "params": params}, sort_keys=True, default=str)
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _natural(claim: str):
    return [int(p) if p.isdigit() else p for p in re.split(r"(\d+)", claim)]


Task = tuple[str, Callable[[], tuple[bool, object]]]


def run_tasks(tasks: list[Task], params: dict) -> list[Certificate]:
    """Evaluate certificate thunks, possibly in threads, and sort by claim id."""

    def one(task: Task) -> Certificate:
        claim, fn = task
        start = time.perf_counter()
        try:
            ok, residue = fn()
        except InvariantViolation as exc:
            ok, residue = False, {"error": str(exc), "residue": _jsonable(exc.residue)}
        ok = bool(ok)
        return Certificate(claim, ok, None if ok else (_jsonable(residue) if residue is not None else "failed"),
                           time.perf_counter() - start, _hash(claim, params))

    threads = max(1, int(os.environ.get("QHOWE_THREADS", "1") or 1))
    if threads > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            certs = list(pool.map(one, tasks))
    else:
        certs = [one(t) for t in tasks]
    return sorted(certs, key=lambda c: _natural(c.claim))


def report_emit(certs: list[Certificate], fmt: str = "json", *, command: str = "", params: dict | None = None,
                seed: int = 0, results: dict | None = None, timing: bool = False) -> str:
    """Serialize a report. JSON output has stable key order and no volatile fields unless ``timing``."""
    passed = sum(c.passed for c in certs)
    summary = {"total": len(certs), "passed": passed, "failed": len(certs) - passed,
               "status": "pass" if passed == len(certs) else "fail"}
    if fmt == "json":
        doc = {"schema": SCHEMA, "version": __version__, "command": command, "params": params or {},
               "seed": seed, "summary": summary, "certificates": [c.to_json(timing) for c in certs],
               "results": results or {}}
        return json.dumps(doc, indent=2, sort_keys=False, default=str)
    lines = [f"# {command}  seed={seed}"]
    for key, val in (results or {}).items():
        lines.append(f"{key}: {val if isinstance(val, str) else json.dumps(val, default=str)}")
    for c in certs:
        tail = "" if c.passed else f"  residue={json.dumps(c.residue, default=str)}"
        lines.append(f"{'PASS' if c.passed else 'FAIL'}  {c.claim}{tail}")
    lines.append(f"{summary['passed']}/{summary['total']} certificates passed")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# verbs


def _zero(x) -> tuple[bool, object]:
    return x.is_zero(), x


def _label(text: str, which: str):
    parts = [int(p) for p in text.split(",")]
    if which == "sl2_triple":
        if len(parts) != 1:
            raise UsageError("sl2_triple labels are a single degree a")
        return parts[0]
    if len(parts) != 2:
        raise UsageError("sln labels are a,b")
    return tuple(parts)


def _ctx_name(args) -> tuple[str, int | None]:
    if args.case == "sln":
        if args.n is None:
            raise UsageError("--n is required for --case sln")
        return "sln", args.n
    return "sl2_triple", None


def do_scalars(args) -> tuple[list[Task], dict]:
    if args.action == "qint":
        return [], {"value": str(qint(args.args[0], args.base))}
    if args.action == "qfact":
        return [], {"value": str(qfact(args.args[0], args.base))}
    if args.action == "qbinom":
        if len(args.args) != 2:
            raise UsageError("qbinom needs N K")
        return [], {"value": str(qbinom(args.args[0], args.args[1], args.base))}
    samples = args.samples

    def fuzz():
        bad = field_axiom_fuzz(samples, args.seed)
        return not bad, bad[:20]
    return [(f"scalars:field-axioms:samples={samples}", fuzz)], {}


def do_ring(args) -> tuple[list[Task], dict]:
    ring = make_ring(args.ring, args.n)
    if args.action == "normal":
        word = []
        for tok in args.word:
            var, _, power = tok.partition("^")
            word.append((var, int(power or 1)))
        return [], {"normal_form": str(normal_form(ring, word))}
    if args.action == "fuzz":
        def fuzz():
            bad = associativity_fuzz(ring, args.samples, args.max_degree, args.seed)
            return not bad, [str(b) for b in bad[:10]]
        return [(f"ring:{ring.name}:associativity:samples={args.samples}", fuzz)], {}
    if args.action == "center":
        D = args.degree
        basis = center_basis(ring, D)
        results = {"center_dim": len(basis), "basis": [str(b) for b in basis]}
        if ring.name == "xyz_sl2":
            p = p_q(ring)
            expect = [(p ** j).terms for j in range(D // 2 + 1)]
            task = (f"ring:{ring.name}:center=span(p^j):D={D}",
                    lambda: (same_span([b.terms for b in basis], expect), results["basis"]))
        else:
            task = (f"ring:{ring.name}:center=span(1):D={D}",
                    lambda: (same_span([b.terms for b in basis], [NCPoly.one(ring).terms]), results["basis"]))
        return [task], results
    # invariant p_q
    p = p_q(ring)
    return [(f"ring:{ring.name}:p_q-central", lambda: (is_central(ring, p), str(p)))], {"p_q": str(p)}


def do_weyl(args) -> tuple[list[Task], dict]:
    tasks: list[Task] = []
    for name, res in identity_residues("x").items():
        tasks.append((f"weyl:identity:{name}", lambda r=res: _zero(r)))
    for name, res in fourier_residues("x").items():
        tasks.append((f"weyl:fourier:{name}", lambda r=res: _zero(r)))

    def fuzz():
        bad = action_fuzz(args.samples, args.seed)
        return not bad, [[str(a), str(b), str(f)] for a, b, f in bad[:5]]
    tasks.append((f"weyl:action-oracle:samples={args.samples}", fuzz))
    return tasks, {}


def do_qgroup(args) -> tuple[list[Task], dict]:
    tasks: list[Task] = []
    if args.action == "commutators":
        for s in range(args.smax + 1):
            def check(s=s):
                r1, r2 = commutator_identities(s)
                return r1.is_zero() and r2.is_zero(), [r1, r2]
            tasks.append((f"qgroup:commutator-identities:s={s}", check))
    elif args.action == "casimir":
        for d in (1, 2):
            tasks.append((f"qgroup:casimir-central:d={d}", lambda d=d: (casimir_is_central(d), None)))
    else:
        rep = adjoint_matrices()
        tasks.append(("qgroup:relations:adjoint", lambda: _report(check_relations(rep, sl2_presentation()))))
        for n in range(2, args.n + 1):
            for dual in (False, True):
                r = standard_matrices(n, dual)
                tasks.append((f"qgroup:relations:{r.label}",
                              lambda r=r, n=n: _report(check_relations(r, sln_presentation(n)))))
    return tasks, {}


def _report(rep) -> tuple[bool, object]:
    return rep.passed, [f.to_json() for f in rep.failures]


def do_howe(args) -> tuple[list[Task], dict]:
    which, n = _ctx_name(args)
    ctx = build_context(which, n, verify=False)
    tag = f"howe:{ctx.name}"
    if args.action == "verify":
        try:
            checks = verify_context(ctx)
        except InvariantViolation:
            checks = ctx.checks
        return [(f"{tag}:{c.claim}", lambda c=c: (c.passed, c.to_json()["residue"])) for c in checks], {}
    if args.action == "harmonics":
        labels = [_label(args.label, which)] if args.label else ctx.labels_up_to(args.degree)
        tasks: list[Task] = []
        results = {}
        for L in labels:
            def dim(L=L):
                got = len(harmonic_basis(ctx, L, check=False).basis)
                return got == ctx.harmonic_dimension(L), {"computed": got, "formula": ctx.harmonic_dimension(L)}
            tasks.append((f"{tag}:dim H{L}", dim))
            for c in highest_weight_checks(ctx, L):
                tasks.append((f"{tag}:highest-weight{L}:{c.claim}", lambda c=c: (c.passed, c.to_json()["residue"])))
        if args.label:
            results["basis"] = [str(b) for b in harmonic_basis(ctx, labels[0], check=False).basis]
        return tasks, results
    if args.action == "fischer":
        tasks = []
        for L in ctx.labels_up_to(args.degree):
            def roundtrip(L=L):
                bad = []
                for e in ctx.slice_exps(L):
                    f = ctx.monomial(e)
                    if fischer_decompose(ctx, f).recompose(ctx) != f:
                        bad.append(str(f))
                return not bad, bad
            tasks.append((f"{tag}:fischer-roundtrip:{L}", roundtrip))
            tasks.append((f"{tag}:slice-tally:{L}", lambda L=L: (lambda a: (a[0] == a[1], list(a)))(slice_tally(ctx, L))))
        return tasks, {}
    if args.action == "bernstein":
        results = {}
        tasks = []
        for s in range(args.smax + 1):
            def check(s=s):
                results[f"b({s})"] = str(bernstein_check(ctx, s))
                return True, None
            tasks.append((f"{tag}:bernstein:s={s}", check))
        return tasks, results
    D = args.degree
    return [(f"{tag}:invariants=span(p^j):D={D}", lambda: (invariants_match(ctx, D), None))], {}


def _pair(args):
    return weight_pair(args.lam, args.mu)


def do_verma(args) -> tuple[list[Task], dict]:
    if args.action == "singular":
        pair = _pair(args)
        space = singular_vectors(pair, args.n)
        results = {"pair": pair.to_json(), "dim": space.dim, "basis": [str(b) for b in space.basis],
                   "closed_forms": {w: str(closed_form_singular(pair, args.n, w)) for w in closed_forms_for(pair, args.n)}}
        tag = f"verma:singular:{args.lam},{args.mu}:n={args.n}"
        return [(f"{tag}:closed-forms", lambda: (closed_form_agreement(pair, args.n, space), None))], results
    if args.action == "decompose":
        pair = _pair(args)
        plan = classify(pair)
        report = verify_plan(pair, plan, args.depth)
        tag = f"verma:plan:{args.lam},{args.mu}"
        tasks = [(f"{tag}:n={c.n}:{c.check}", lambda c=c: (c.passed, c.detail)) for c in report.checks]
        return tasks, {"pair": pair.to_json(), "plan": plan.to_json(args.depth)}
    if args.action == "verify":
        pair = _pair(args)
        checks = realization_checks(pair)
        return [(f"verma:{k}", lambda v=v: (v, None)) for k, v in checks.items()], {"pair": pair.to_json()}
    if args.action == "casimir":
        if args.mu is None:
            lam = parse_weight(args.lam)
            res = casimir_diag(lam, args.depth)
            return [(f"verma:casimir:{args.lam}:k={k}", lambda r=r: _zero(r)) for k, r in enumerate(res)], {}
        pair = _pair(args)
        coll = casimir_collisions(pair, args.depth)
        return [], {"pair": pair.to_json(), "collisions": [list(c) for c in coll]}
    if args.action == "embedding":
        res = embedding_check(parse_weight(args.lam))
        expect = parse_weight(args.lam).lam_int is not None
        claim = "embedded-verma" if expect else "no-embedded-verma"
        return [(f"verma:embedding:{args.lam}:{claim}", lambda: (res.passed == expect, res.to_json()))], {"embedding": res.to_json()}
    # pqmodule
    mod = pq_module(args.lam_int, args.depth)
    rep = check_pq_module(mod)
    return [(f"verma:pqmodule:{args.lam_int}:depth={args.depth}", lambda: (rep.passed, rep.to_json()))], \
        {"checked": rep.checked, "skipped": rep.skipped, "character": mod.character().to_json()}


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qhowe", description="Exact verification of quantum Howe dualities.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--seed", type=int, default=0, help="seed for random sampling")
    common.add_argument("--timing", action="store_true", help="include per-certificate timings")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("scalars", parents=[common], help="q-numbers and field checks")
    p.add_argument("action", choices=["qint", "qfact", "qbinom", "fuzz"])
    p.add_argument("args", type=int, nargs="*")
    p.add_argument("--base", type=int, default=1)
    p.add_argument("--samples", type=int, default=1000)

    p = sub.add_parser("ring", parents=[common], help="quantum coordinate rings")
    p.add_argument("action", choices=["normal", "fuzz", "center", "pq"])
    p.add_argument("word", nargs="*", help="factors like x^2 y (for normal)")
    p.add_argument("--ring", default="xyz_sl2", choices=["xyz_sl2", "x_n", "y_n", "xy_n"])
    p.add_argument("--n", type=int)
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--max-degree", type=int, default=5)
    p.add_argument("--degree", type=int, default=6)

    p = sub.add_parser("weyl", parents=[common], help="quantum Weyl algebra identities")
    p.add_argument("action", choices=["identities"])
    p.add_argument("--samples", type=int, default=500)

    p = sub.add_parser("qgroup", parents=[common], help="quantum group presentations")
    p.add_argument("action", choices=["commutators", "casimir", "matrices"])
    p.add_argument("--smax", type=int, default=8)
    p.add_argument("--n", type=int, default=4)

    p = sub.add_parser("howe", parents=[common], help="the two Howe dualities")
    p.add_argument("action", choices=["verify", "harmonics", "fischer", "bernstein", "invariants"])
    p.add_argument("--case", choices=["sl2_triple", "sln"], default="sl2_triple")
    p.add_argument("--n", type=int)
    p.add_argument("--label", help="degree label: a, or a,b for sln")
    p.add_argument("--degree", type=int, default=4)
    p.add_argument("--smax", type=int, default=6)

    p = sub.add_parser("verma", parents=[common], help="Verma modules and tensor products")
    p.add_argument("action", choices=["singular", "decompose", "verify", "casimir", "embedding", "pqmodule"])
    p.add_argument("--lambda", dest="lam", default="generic", help="'generic' or an integer")
    p.add_argument("--mu", default=None, help="'generic', an integer, or sum=N")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--depth", type=int, default=8)
    p.add_argument("--lambda-int", dest="lam_int", type=int, default=0)
    return parser


HANDLERS = {"scalars": do_scalars, "ring": do_ring, "weyl": do_weyl, "qgroup": do_qgroup,
            "howe": do_howe, "verma": do_verma}


def _params(args) -> dict:
    skip = {"json", "seed", "timing", "verb"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def run(argv: list[str] | None = None) -> tuple[int, str]:
    """Parse arguments, run the verb and return ``(exit code, report text)``."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (2 if exc.code else 0), ""
    if args.verb == "verma" and args.action in ("singular", "decompose", "verify") and args.mu is None:
        args.mu = "generic"
    params = _params(args)
    command = f"{args.verb} {args.action}"
    try:
        tasks, results = HANDLERS[args.verb](args)
        certs = run_tasks(tasks, params)
    except (UsageError, DomainError, ConfigError, ContextError, ValueError) as exc:
        return 2, f"usage error: {exc}"
    out = report_emit(certs, "json" if args.json else "text", command=command, params=params,
                      seed=args.seed, results=results, timing=args.timing)
    return (0 if all(c.passed for c in certs) else 1), out


def main(argv: list[str] | None = None) -> None:
    code, out = run(argv)
    if out:
        stream = sys.stderr if code == 2 else sys.stdout
        print(out, file=stream)
    sys.exit(code)


if __name__ == "__main__":
    main()

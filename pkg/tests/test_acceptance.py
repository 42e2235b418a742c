"""End-to-end acceptance suite.

Each criterion gathers named sub-checks, prints a single PASS/FAIL line and
then asserts. Run directly with ``python3 tests/test_acceptance.py`` to get
the summary lines without pytest.
"""

from math import comb

import pytest

from qhowe import howe, verma
from qhowe.linalg import same_span
from qhowe.ncpoly import associativity_fuzz, center_basis, make_ring, monomials_of_degree, p_q
from qhowe.quantumgroup import commutator_identities, relations_by_action, sl2_presentation
from qhowe.scalars import field_axiom_fuzz
from qhowe.weylop import CommPoly, action_fuzz, fourier_residues, identity_residues


def _report(number: int, title: str, results: dict[str, bool]) -> None:
    failed = [k for k, ok in results.items() if not ok]
    status = "PASS" if not failed else "FAIL"
    line = f"[{status}] criterion {number:2d}: {title} ({len(results) - len(failed)}/{len(results)} checks)"
    if failed:
        line += " failed: " + ", ".join(failed[:5])
    print(line, flush=True)
    assert not failed, line


CONTEXTS = [("sl2_triple", None), ("sln", 2), ("sln", 3), ("sln", 4)]


def criterion_1() -> dict[str, bool]:
    out = {}
    for which, n in CONTEXTS:
        ctx = howe.build_context(which, n, verify=False)
        try:
            howe.verify_context(ctx)
        except howe.InvariantViolation:
            pass
        assert ctx.checks
        for c in ctx.checks:
            out[f"{ctx.name}:{c.claim}"] = c.passed
    return out


def criterion_2() -> dict[str, bool]:
    out = {}
    ctx = howe.build_context("sl2_triple")
    for a in range(9):
        out[f"sl2_triple:H{a}"] = howe.harmonic_basis(ctx, a, check=False).dim == 2 * a + 1
    for n in (2, 3):
        ctx = howe.build_context("sln", n)
        for a in range(5):
            for b in range(5):
                # slice dimension minus the image of multiplication by p
                count = comb(a + n - 1, n - 1) * comb(b + n - 1, n - 1)
                if a and b:
                    count -= comb(a + n - 2, n - 1) * comb(b + n - 2, n - 1)
                solved = howe.harmonic_basis(ctx, (a, b), check=False).dim
                out[f"sln{n}:H{a},{b}"] = solved == ctx.harmonic_dimension((a, b)) == count
    return out


def criterion_3() -> dict[str, bool]:
    out = {}
    for which, n in CONTEXTS[:3]:
        ctx = howe.build_context(which, n)
        p = p_q(ctx.ring)
        for s in range(7):
            try:
                b = howe.bernstein_check(ctx, s)
                ok = b == ctx.bernstein_expected(s)
            except howe.InvariantViolation:
                ok = False
            # second route: the explicit Laplacian formula on the coordinate ring
            ok = ok and howe.delta_q(ctx, p ** (s + 1)) == howe.transported(ctx, ctx.Q, p ** (s + 1))
            out[f"{ctx.name}:s={s}"] = ok
    return out


def criterion_4() -> dict[str, bool]:
    out = {}
    ring = make_ring("xyz_sl2")
    p = p_q(ring)
    for D in range(7):
        center = [f.terms for f in center_basis(ring, D)]
        out[f"center:xyz:D={D}"] = same_span(center, [(p ** j).terms for j in range(D // 2 + 1)])
    for n in (2, 3):
        ring = make_ring("xy_n", n)
        one = {(0,) * ring.nvars: 1}
        for D in range(5):
            center = [f.terms for f in center_basis(ring, D)]
            out[f"center:xy{n}:D={D}"] = len(center) == 1 and same_span(center, [one])
    for which, n in CONTEXTS[:3]:
        ctx = howe.build_context(which, n)
        D = 6 if which == "sl2_triple" else 4
        out[f"invariants:{ctx.name}"] = howe.invariants_match(ctx, D)
    return out


def criterion_5() -> dict[str, bool]:
    out = {}
    for which, n in CONTEXTS[:3]:
        ctx = howe.build_context(which, n)
        for d in range(7):
            ok = True
            for e in monomials_of_degree(len(ctx.variables), d):
                f = ctx.monomial(e)
                ok = ok and howe.fischer_decompose(ctx, f).recompose(ctx) == f
            out[f"roundtrip:{ctx.name}:deg{d}"] = ok
        for label in ctx.labels_up_to(6):
            total, size = howe.slice_tally(ctx, label)
            out[f"tally:{ctx.name}:{label}"] = total == size
    return out


def criterion_6() -> dict[str, bool]:
    out = {}
    for s in range(1, 9):
        r1, r2 = commutator_identities(s)
        out[f"s={s}"] = r1.is_zero() and r2.is_zero()
    return out


def criterion_7() -> dict[str, bool]:
    out = {}
    pair = verma.weight_pair("generic", "generic")
    out.update(verma.realization_checks(pair))
    lam = verma.Weight.generic()
    out["casimir:generic"] = all(r.is_zero() for r in verma.casimir_diag(lam, 8))
    for m in range(6):
        out[f"casimir:{m}"] = all(r.is_zero() for r in verma.casimir_diag(verma.Weight.integral(m), 8))
        out[f"embedding:{m}"] = verma.embedding_check(m).passed
    res = verma.embedding_check(lam)
    out["embedding:generic-fails"] = not res.passed and res.witness is not None and not res.witness.is_zero()
    return out


def criterion_8() -> dict[str, bool]:
    out = {}
    pairs = [("generic", "generic", 8)]
    pairs += [("generic", f"sum={N}", 8) for N in range(7)]
    pairs += [(l, m, 10) for l in range(5) for m in range(5)]
    for lam, mu, top in pairs:
        pair = verma.weight_pair(lam, mu)
        out[f"({lam},{mu})"] = all(verma.closed_form_agreement(pair, n) for n in range(top + 1))
    return out


PLAN_PAIRS = [("generic", "generic")] + [("generic", f"sum={N}") for N in range(5)] \
    + [(0, 0), (0, 2), (1, 1), (1, 3), (2, 4)]


def criterion_9() -> dict[str, bool]:
    out = {}
    for lam, mu in PLAN_PAIRS:
        report = verma.verify_plan(verma.weight_pair(lam, mu), depth=8)
        out[f"({lam},{mu})"] = report.passed
    return out


def criterion_10() -> dict[str, bool]:
    out = {}
    for l in range(4):
        report = verma.check_pq_module(verma.pq_module(l, 8))
        out[f"relations:{l}"] = not report.failures and report.checked > 0
        out[f"character:{l}"] = report.character_ok
    return out


def criterion_11() -> dict[str, bool]:
    out = {}
    rings = [("xyz_sl2", None), ("x_n", 3), ("y_n", 3), ("xy_n", 2), ("xy_n", 3)]
    for i, (kind, n) in enumerate(rings):
        out[f"assoc:{kind}:{n}"] = not associativity_fuzz(make_ring(kind, n), 10_000, max_degree=5, seed=i)
    for var in ("x", "y"):
        for name, r in {**identity_residues(var), **fourier_residues(var)}.items():
            out[f"weyl:{var}:{name}"] = r.is_zero()
    out["weyl:action-fuzz"] = not action_fuzz(500, seed=1, variables=("x", "y", "z"))
    # every representation used above, relation by relation through the action alone
    for which, n in CONTEXTS:
        ctx = howe.build_context(which, n, verify=False)
        samples = [ctx.monomial(e) for d in range(4) for e in monomials_of_degree(len(ctx.variables), d)]
        out[f"action:{ctx.name}:sigma"] = not relations_by_action(ctx.sigma, ctx.sigma_pres, samples)
        out[f"action:{ctx.name}:pi"] = not relations_by_action(ctx.pi, ctx.pi_pres, samples)
    pres = sl2_presentation(1)
    for lam, mu in (("generic", "generic"), ("generic", "sum=2"), (1, 3)):
        pair = verma.weight_pair(lam, mu)
        samples = [CommPoly.monomial({"x": a, "y": b}) for a in range(4) for b in range(4)]
        reps = [verma.tensor_action(pair), verma.pi_lambda(pair.lam, "x"), verma.pi_hat_lambda(pair.mu, "y")]
        out[f"action:verma({lam},{mu})"] = all(not relations_by_action(r, pres, samples) for r in reps)
    out["scalars:field-axioms"] = not field_axiom_fuzz(300, seed=2)
    return out


CRITERIA = [
    (1, "relation certificates for both dualities", criterion_1),
    (2, "harmonic dimension formulas", criterion_2),
    (3, "Bernstein-Sato polynomials", criterion_3),
    (4, "centers and invariants", criterion_4),
    (5, "Fischer decomposition round-trip", criterion_5),
    (6, "sl2 commutator identities", criterion_6),
    (7, "Verma realizations, Casimir and embeddings", criterion_7),
    (8, "singular vectors against closed forms", criterion_8),
    (9, "tensor product decomposition plans", criterion_9),
    (10, "the nonsplit extension module", criterion_10),
    (11, "property fuzz suites", criterion_11),
]


@pytest.mark.parametrize("number,title,fn", CRITERIA, ids=[f"criterion_{c[0]:02d}" for c in CRITERIA])
def test_criterion(number, title, fn, capsys):
    results = fn()
    with capsys.disabled():
        print()
        _report(number, title, results)


if __name__ == "__main__":
    bad = 0
    for number, title, fn in CRITERIA:
        try:
            _report(number, title, fn())
        except AssertionError:
            bad += 1
    raise SystemExit(1 if bad else 0)

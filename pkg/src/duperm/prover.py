"""Machine verification of the construction's claims.

Each claim runs as an independent check and returns a ClaimResult with
a stable id, a pass/fail/skipped status and a witness.  A failing
claim always carries a counterexample or a computed-vs-expected pair;
a passing symbolic step carries the transcript of the polynomials it
compared.  Claims are deterministic given (claim_id, seed).

The no-solution lemma for (x+1)^d + x^d = b over the subfield
complement is verified through two independent channels: an exhaustive
scan of the field, and a symbolic replay of the resultant elimination
chain that derives it, step by step, against the published factored
forms.
"""

from __future__ import annotations

import itertools
import random
import time
import warnings
from dataclasses import dataclass
from fnmatch import fnmatch

import numpy as np

from . import analyzer, gf2n
from .construct import (
    AffinePerm,
    affine_eval,
    build_f,
    build_g,
    dobbertin_exponent,
    parse_affine_expr,
)
from .polysym import MultiPoly, exact_divide, resultant_wrt

__all__ = [
    "ClaimResult",
    "lemma1_exhaustive",
    "lemma1_replay",
    "coset_intersection_check",
    "theorem1_check",
    "remark2_degrees",
    "prop2_bound_check",
    "prop1_hypothesis_search",
    "claim_ids",
    "run_claims",
]

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"


@dataclass(frozen=True)
class ClaimResult:
    claim_id: str
    status: str
    witness: dict | None
    elapsed_ms: float

    def to_json_dict(self) -> dict:
        return {
            "claim_id": self.claim_id,
            "status": self.status,
            "witness": self.witness,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }


def _result(claim_id: str, status: str, witness, t0: float) -> ClaimResult:
    if status == FAIL and witness is None:
        raise ValueError("failing claim must carry a witness")
    return ClaimResult(claim_id, status, witness, (time.perf_counter() - t0) * 1e3)


# ---------------------------------------------------------------------------
# Exhaustive channel
# ---------------------------------------------------------------------------

def lemma1_exhaustive(k: int) -> ClaimResult:
    """Scan GF(2^n) \\ GF(2^k) for solutions of (x+1)^d + x^d = b, b in GF(2^k)*."""
    t0 = time.perf_counter()
    claim_id = f"lemma1.exhaustive.k{k}"
    ctx = gf2n.mk_field(k)
    d = dobbertin_exponent(k)
    powd = gf2n.vec_pow_all(ctx, d)
    lhs = powd[np.arange(ctx.order) ^ 1] ^ powd
    outside = ~ctx.subfield_mask
    vals = lhs[outside]
    stars = [b for b in ctx.subfield_elems if b]
    per_b = {str(b): int(np.count_nonzero(vals == b)) for b in stars}
    if any(per_b.values()):
        bad_b = next(b for b in stars if per_b[str(b)])
        xs = np.nonzero(outside & (lhs == bad_b))[0]
        return _result(
            claim_id,
            FAIL,
            {"b": int(bad_b), "x": int(xs[0]), "solutions_per_b": per_b},
            t0,
        )
    return _result(
        claim_id,
        PASS,
        {"candidates": int(outside.sum()), "solutions_per_b": per_b},
        t0,
    )


# ---------------------------------------------------------------------------
# Symbolic channel: replay of the elimination chain
# ---------------------------------------------------------------------------

def _conjugate_system() -> dict:
    """The five conjugate equations and every published factored form."""
    x, y, z, u, v, b = (MultiPoly.var(n) for n in "xyzuvb")
    one = MultiPoly.one()

    eq_a = y * z * u * v * (x + one) + x * (y + one) * (z + one) * (u + one) * (v + one) + b * x * (x + one)
    eq_b = z * u * v * x * (y + one) + y * (z + one) * (u + one) * (v + one) * (x + one) + b * y * (y + one)
    eq_c = u * v * x * y * (z + one) + z * (u + one) * (v + one) * (x + one) * (y + one) + b * z * (z + one)
    eq_d = v * x * y * z * (u + one) + u * (v + one) * (x + one) * (y + one) * (z + one) + b * u * (u + one)
    eq_e = x * y * z * u * (v + one) + v * (x + one) * (y + one) * (z + one) * (u + one) + b * v * (v + one)

    cof_b = (
        b * x * y * z + b * x * y * u + b * x * z * u + b * x * u
        + y ** 2 * z ** 2 + y ** 2 * z + y * z ** 2 + b * y * z * u + b * y * z + y * z
    )
    cof_c = (
        x ** 2 * z ** 2 + x ** 2 * z + b * x * y * z + b * x * y * u + x * z ** 2
        + b * x * z * u + b * x * z + x * z + b * y * z * u + b * y * u
    )
    cof_d = (
        x ** 2 * y ** 2 + x ** 2 * y + x * y ** 2 + b * x * y * z + b * x * y * u
        + b * x * y + x * y + b * x * z * u + b * y * z * u + b * z * u
    )
    shared = x * y + x * z + y * z + x + y + z + b + one
    tail = (
        x * y * z + x * y * u + x * z * u + y * z * u + x * u + y * u + z * u
        + b * u ** 2 + b * u + u
    )
    lin = b * x * y * z * (x + one) * (y + one) * (z + one)
    return {
        "eqs": (eq_a, eq_b, eq_c, eq_d, eq_e),
        "factors_2": ((x + u) ** 2, (y + u) ** 2, (z + u) ** 2, u * (u + one)),
        "cofactors_2": (cof_b, cof_c, cof_d, shared ** 2 * tail),
        "published_3": (
            lin * (y + z + b + one) ** 2 * shared ** 2,
            lin * (x + z + b + one) ** 2 * shared ** 2,
            lin * (x + y + b + one) ** 2 * shared ** 2,
        ),
        "shared": shared,
        "published_4": y * z + y * u + z * u + y + z + u + b + one,
        "published_5": (x + u) * (y ** 2 + y + b),
    }


def lemma1_replay() -> list:
    """Replay all eight resultant/factorisation identities of the proof chain."""
    sysd = _conjugate_system()
    eq_a, eq_b, eq_c, eq_d, eq_e = sysd["eqs"]
    results = []

    round1 = (
        ("lemma1.replay.step1.2b", eq_a, 0),
        ("lemma1.replay.step1.2c", eq_b, 1),
        ("lemma1.replay.step1.2d", eq_c, 2),
        ("lemma1.replay.step1.2a", eq_e, 3),
    )
    reduced = [None] * 4
    for claim_id, eq, i in round1:
        t0 = time.perf_counter()
        computed = resultant_wrt(eq, eq_d, "v")
        published = sysd["factors_2"][i] * sysd["cofactors_2"][i]
        witness = {"computed": str(computed), "published": str(published)}
        if computed == published:
            reduced[i] = exact_divide(computed, sysd["factors_2"][i])
            witness["cofactor"] = str(reduced[i])
            results.append(_result(claim_id, PASS, witness, t0))
        else:
            reduced[i] = sysd["cofactors_2"][i]
            results.append(_result(claim_id, FAIL, witness, t0))

    for claim_id, i in (
        ("lemma1.replay.step1.3a", 0),
        ("lemma1.replay.step1.3b", 1),
        ("lemma1.replay.step1.3c", 2),
    ):
        t0 = time.perf_counter()
        computed = resultant_wrt(reduced[i], reduced[3], "u")
        published = sysd["published_3"][i]
        witness = {"computed": str(computed), "published": str(published)}
        results.append(
            _result(claim_id, PASS if computed == published else FAIL, witness, t0)
        )

    t0 = time.perf_counter()
    shared = sysd["shared"]
    image = shared.substitute_variables({"x": "y", "y": "z", "z": "u", "u": "v", "v": "x"})
    computed = resultant_wrt(shared, image, "z")
    witness = {
        "computed": str(computed),
        "published": str(sysd["published_5"]),
        "frobenius_image": str(image),
        "image_matches_published": image == sysd["published_4"],
    }
    ok = computed == sysd["published_5"] and image == sysd["published_4"]
    results.append(_result("lemma1.replay.step1.5", PASS if ok else FAIL, witness, t0))
    return results


# ---------------------------------------------------------------------------
# Coset intersection bound from the uniformity proof
# ---------------------------------------------------------------------------

def coset_intersection_check(k: int, trials: int = 64, seed: int = 0) -> ClaimResult:
    """|(a + GF(2^k))^d meet (b + GF(2^k))| <= 1 for a outside the subfield.

    Exhaustive over a for k <= 2, seed-deterministic sample otherwise.
    """
    t0 = time.perf_counter()
    claim_id = f"theorem1.coset.k{k}"
    ctx = gf2n.mk_field(k)
    d = dobbertin_exponent(k)
    powd = gf2n.vec_pow_all(ctx, d)
    sub = np.array(ctx.subfield_elems)
    outside = [a for a in range(ctx.order) if not ctx.subfield_mask[a]]
    if k > 2:
        rng = random.Random(seed)
        outside = rng.sample(outside, min(trials, len(outside)))
    for a in outside:
        vals = powd[a ^ sub]
        reps = {gf2n.subfield_coset_rep(ctx, int(v)) for v in vals}
        if len(reps) != len(sub):
            return _result(
                claim_id,
                FAIL,
                {"a": int(a), "images": [int(v) for v in vals]},
                t0,
            )
    return _result(
        claim_id,
        PASS,
        {"a_checked": len(outside), "max_intersection": 1, "exhaustive": k <= 2},
        t0,
    )


# ---------------------------------------------------------------------------
# Uniformity, degree and nonlinearity claims
# ---------------------------------------------------------------------------

def _subfield_delta(ctx: gf2n.FieldCtx, table) -> int:
    """Brute-force differential uniformity of a map on the subfield."""
    sub = gf2n.subfield_elements(ctx)
    best = 0
    for a in sub:
        if a == 0:
            continue
        counts: dict[int, int] = {}
        for c in sub:
            out = int(table[c ^ a]) ^ int(table[c])
            counts[out] = counts.get(out, 0) + 1
        best = max(best, max(counts.values()))
    return best


def _is_subfield_perm(ctx: gf2n.FieldCtx, table) -> bool:
    sub = gf2n.subfield_elements(ctx)
    return len({int(table[c]) for c in sub}) == len(sub)


def theorem1_check(k: int, m: int, l1: str, l2: str = "x", workers: int = 1) -> ClaimResult:
    """delta_f stays within the bound set by delta_g, and f permutes for odd k."""
    t0 = time.perf_counter()
    claim_id = f"theorem1.check.k{k}.m{m}.{l1.replace(' ', '')}"
    if k % 2 == 0:
        return _result(claim_id, SKIPPED, {"note": "statement requires odd k"}, t0)
    ctx = gf2n.mk_field(k)
    L1 = parse_affine_expr(ctx, l1)
    L2 = parse_affine_expr(ctx, l2)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        g = build_g(ctx, k, m, L1, L2)
    if not _is_subfield_perm(ctx, g.table):
        return _result(claim_id, SKIPPED, {"note": "g is not a subfield permutation"}, t0)
    delta_g = _subfield_delta(ctx, g.table)
    if delta_g > 6:
        return _result(claim_id, SKIPPED, {"note": f"delta_g = {delta_g} outside statement"}, t0)
    bound = 4 if delta_g <= 4 else 6
    f = build_f(ctx, k, g)
    perm = analyzer.is_permutation(f)
    ds = analyzer.differential_spectrum(f, workers)
    witness = {
        "delta_g": delta_g,
        "delta_f": ds.delta,
        "bound": bound,
        "attained": ds.delta == bound,
        "permutation": perm,
    }
    status = PASS if perm and ds.delta <= bound else FAIL
    return _result(claim_id, status, witness, t0)


def remark2_degrees(workers: int = 1) -> list:
    """Algebraic degrees of the identity-map instances for k in {1, 3}."""
    results = []
    for k, expected in ((1, 4), (3, 14)):
        ms = sorted({k - 1, (k + 1) // 2, 2})
        for m in ms:
            t0 = time.perf_counter()
            claim_id = f"prop1.remark2.k{k}.m{m}"
            if m < 1:
                results.append(
                    _result(
                        claim_id,
                        SKIPPED,
                        {"note": "inner map degenerates to a constant"},
                        t0,
                    )
                )
                continue
            ctx = gf2n.mk_field(k)
            ident = parse_affine_expr(ctx, "x")
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                g = build_g(ctx, k, m, ident, ident)
            f = build_f(ctx, k, g)
            degree = analyzer.algebraic_degree(f)
            witness = {"expected": expected, "computed": degree}
            results.append(
                _result(claim_id, PASS if degree == expected else FAIL, witness, t0)
            )
    return results


def prop2_bound_check(f, k: int, label: str, workers: int = 1) -> ClaimResult:
    """nl(f) must clear the parity-branch lower bound."""
    t0 = time.perf_counter()
    claim_id = f"prop2.bound.k{k}.{label.replace(' ', '')}"
    nl = analyzer.nonlinearity(f, workers)
    bound = analyzer.nl_lower_bound(k)
    witness = {"nl": nl, "bound": bound}
    return _result(claim_id, PASS if nl >= bound else FAIL, witness, t0)


def prop1_hypothesis_search(max_examples: int = 3, workers: int = 1) -> ClaimResult:
    """Search k = 3 affine maps L1 with deg(g + x^3) = 2 and measure deg(f).

    Reporting claim: it never asserts existence, it lists what it found.
    """
    t0 = time.perf_counter()
    claim_id = "prop1.hypothesis.k3"
    k = 3
    ctx = gf2n.mk_field(k)
    sub = gf2n.subfield_elements(ctx)
    beta = ctx.subfield_generator
    basis = [gf2n.pow(ctx, beta, i) for i in range(k)]
    coord = {}
    for bits in range(1 << k):
        e = 0
        for i in range(k):
            if (bits >> i) & 1:
                e ^= basis[i]
        coord[e] = bits

    def sub_degree(func: dict) -> int:
        anf = [0] * (1 << k)
        for e, val in func.items():
            anf[coord[e]] = val
        h = 1
        while h < len(anf):
            for i in range(0, len(anf), 2 * h):
                for j in range(i + h, i + 2 * h):
                    anf[j] ^= anf[j - h]
            h *= 2
        return max(
            (bin(s).count("1") for s, c in enumerate(anf) if c),
            default=0,
        )

    cube = {c: gf2n.pow(ctx, c, 3) for c in sub}
    satisfying = []
    for coeffs in itertools.product(sub, repeat=k):
        for const in sub:
            try:
                L1 = AffinePerm(ctx, k, coeffs, const)
            except ValueError:
                continue
            diff = {c: affine_eval(L1, cube[c]) ^ cube[c] for c in sub}
            if any(diff.values()) and sub_degree(diff) == 2:
                satisfying.append(L1)

    examples = []
    ident = parse_affine_expr(ctx, "x")
    for L1 in satisfying[:max_examples]:
        g = build_g(ctx, k, 2, L1, ident)
        f = build_f(ctx, k, g)
        examples.append(
            {
                "coeffs": [int(c) for c in L1.linear_coeffs],
                "constant": int(L1.constant),
                "deg_f": analyzer.algebraic_degree(f),
            }
        )
    witness = {
        "satisfying_l1_count": len(satisfying),
        "found": bool(satisfying),
        "examples": examples,
    }
    return _result(claim_id, PASS, witness, t0)


# ---------------------------------------------------------------------------
# Claim registry
# ---------------------------------------------------------------------------

_REPLAY_IDS = tuple(
    "lemma1.replay.step" + s
    for s in ("1.2a", "1.2b", "1.2c", "1.2d", "1.3a", "1.3b", "1.3c", "1.5")
)
_REMARK2_IDS = (
    "prop1.remark2.k1.m0",
    "prop1.remark2.k1.m1",
    "prop1.remark2.k1.m2",
    "prop1.remark2.k3.m2",
)


def _prop2_instance(k: int, m: int, l1: str, workers: int):
    ctx = gf2n.mk_field(k)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        g = build_g(ctx, k, m, parse_affine_expr(ctx, l1), parse_affine_expr(ctx, "x"))
    f = build_f(ctx, k, g)
    return prop2_bound_check(f, k, f"m{m}.{l1}", workers)


def _registry(seed: int, trials: int, walsh: bool, workers: int) -> list:
    entries = [
        (("lemma1.exhaustive.k1",), lambda: [lemma1_exhaustive(1)]),
        (("lemma1.exhaustive.k2",), lambda: [lemma1_exhaustive(2)]),
        (("lemma1.exhaustive.k3",), lambda: [lemma1_exhaustive(3)]),
        (_REPLAY_IDS, lemma1_replay),
        (("theorem1.coset.k1",), lambda: [coset_intersection_check(1, trials, seed)]),
        (("theorem1.coset.k2",), lambda: [coset_intersection_check(2, trials, seed)]),
        (("theorem1.coset.k3",), lambda: [coset_intersection_check(3, trials, seed)]),
        (
            ("theorem1.check.k1.m1.x+1",),
            lambda: [theorem1_check(1, 1, "x+1", workers=workers)],
        ),
        (
            ("theorem1.check.k1.m1.x",),
            lambda: [theorem1_check(1, 1, "x", workers=workers)],
        ),
        (
            ("theorem1.check.k3.m2.x",),
            lambda: [theorem1_check(3, 2, "x", workers=workers)],
        ),
        (_REMARK2_IDS, lambda: remark2_degrees(workers)),
        (("prop1.hypothesis.k3",), lambda: [prop1_hypothesis_search(workers=workers)]),
        (
            ("prop2.bound.k1.m1.x+1",),
            lambda: [_prop2_instance(1, 1, "x+1", workers)],
        ),
        (
            ("prop2.bound.k2.m2.b^2*x^2",),
            lambda: [_prop2_instance(2, 2, "b^2*x^2", workers)],
        ),
    ]
    if walsh:
        entries.append(
            (("prop2.bound.k3.m2.x",), lambda: [_prop2_instance(3, 2, "x", workers)])
        )
    return entries


def claim_ids(walsh: bool = False) -> list:
    out = []
    for ids, _ in _registry(0, 64, walsh, 1):
        out.extend(ids)
    return sorted(out)


def run_claims(
    pattern: str = "*",
    seed: int = 0,
    trials: int = 64,
    walsh: bool = False,
    workers: int = 1,
) -> list:
    """Run every registered claim whose id matches the glob pattern."""
    results = []
    for ids, producer in _registry(seed, trials, walsh, workers):
        if any(fnmatch(cid, pattern) for cid in ids):
            results.extend(r for r in producer() if fnmatch(r.claim_id, pattern))
    return sorted(results, key=lambda r: r.claim_id)

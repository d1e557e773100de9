"""Criteria computations on lookup-table functions.

Everything here is an exhaustive scan over the 2^n inputs:

* differential spectrum: one difference-distribution row per nonzero a
  (2^n counters live at a time, never the full 2^n x 2^n matrix), with
  the per-row histograms aggregated into the omega_i counts;
* Walsh spectrum: per component v, the sign table of Tr(v f(x)) is run
  through a fast transform over u; the u axis of the transform output
  is related to the definition's u by the nondegenerate bilinear form
  Tr(ux), a fixed bit-linear reindexing that does not change maxima;
* algebraic degree: subset-XOR (Moebius) transform of the whole table,
  all output coordinates in parallel, degree = max bit count over the
  support of the transform;
* permutation status: bijectivity scan.

Rows and components partition cleanly, so the heavy scans accept a
workers count and fan out over processes; counters merge by summation
and results do not depend on the worker count.
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import gf2n
from .construct import LutFunction

__all__ = [
    "DdtRow",
    "DiffSpectrum",
    "WalshSpectrum",
    "CriteriaReport",
    "ddt_row",
    "differential_spectrum",
    "walsh_spectrum",
    "walsh_max_abs",
    "nonlinearity",
    "algebraic_degree",
    "is_permutation",
    "nl_lower_bound",
    "fingerprint",
    "analyze",
]

_WALSH_TABLE_MAX_N = 12
_V_BLOCK = 256


@dataclass(frozen=True, eq=False)
class DdtRow:
    """Difference-distribution counts for one nonzero input difference."""

    a: int
    counts: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class DiffSpectrum:
    spectrum: dict
    delta: int


@dataclass(frozen=True, eq=False)
class WalshSpectrum:
    max_abs: int
    table: np.ndarray = field(repr=False, default=None)


def ddt_row(f: LutFunction, a: int) -> DdtRow:
    """counts[b] = #{x : f(x + a) + f(x) = b}."""
    if a == 0:
        raise ValueError("input difference a must be nonzero")
    q = f.ctx.order
    tab = f.table
    row = np.bincount(tab[np.arange(q) ^ a] ^ tab, minlength=q)
    return DdtRow(a, row)


def _spectrum_chunk(args) -> np.ndarray:
    tab, q, a_lo, a_hi = args
    idx = np.arange(q)
    omega = np.zeros(q + 1, dtype=np.int64)
    for a in range(a_lo, a_hi):
        row = np.bincount(tab[idx ^ a] ^ tab, minlength=q)
        hist = np.bincount(row)
        omega[: len(hist)] += hist
    return omega


def differential_spectrum(f: LutFunction, workers: int = 1) -> DiffSpectrum:
    """omega_i counts over all (a, b) pairs with a != 0, plus the maximum."""
    q = f.ctx.order
    if workers > 1:
        bounds = np.linspace(1, q, workers * 4 + 1, dtype=int)
        jobs = [
            (f.table, q, int(lo), int(hi))
            for lo, hi in zip(bounds[:-1], bounds[1:])
            if lo < hi
        ]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            omega = sum(pool.map(_spectrum_chunk, jobs))
    else:
        omega = _spectrum_chunk((f.table, q, 1, q))
    delta = int(np.nonzero(omega[1:])[0].max()) + 1
    spectrum = {i: int(omega[i]) for i in range(0, delta + 1, 2)}
    return DiffSpectrum(spectrum, delta)


# ---------------------------------------------------------------------------
# Walsh spectrum
# ---------------------------------------------------------------------------

def _fwht_lastaxis(a: np.ndarray) -> np.ndarray:
    """In-place fast transform along the last axis (length a power of two)."""
    q = a.shape[-1]
    h = 1
    while h < q:
        view = a.reshape(a.shape[:-1] + (q // (2 * h), 2, h))
        top = view[..., 0, :].copy()
        view[..., 0, :] += view[..., 1, :]
        view[..., 1, :] = top - view[..., 1, :]
        h *= 2
    return a


def _sign_block(ctx: gf2n.FieldCtx, tab: np.ndarray, vs: np.ndarray) -> np.ndarray:
    """Sign matrix (-1)^Tr(v f(x)) for a block of components v."""
    q = ctx.order
    q1 = q - 1
    logs_f = ctx.log[tab]
    prod = np.zeros((len(vs), q), dtype=np.int64)
    nz = tab != 0
    prod[:, nz] = ctx.exp[(logs_f[nz][None, :] + ctx.log[vs][:, None]) % q1]
    return 1 - 2 * ctx.trace_bits[prod].astype(np.int32)


def _walsh_chunk(args) -> int:
    ctx, tab, v_lo, v_hi = args
    best = 0
    for lo in range(v_lo, v_hi, _V_BLOCK):
        vs = np.arange(lo, min(lo + _V_BLOCK, v_hi))
        block = _sign_block(ctx, tab, vs)
        _fwht_lastaxis(block)
        best = max(best, int(np.abs(block).max()))
    return best


def walsh_max_abs(f: LutFunction, workers: int = 1) -> int:
    """max |W(u, v)| over all u and nonzero v, without storing the table."""
    q = f.ctx.order
    if workers > 1:
        bounds = np.linspace(1, q, workers * 2 + 1, dtype=int)
        jobs = [
            (f.ctx, f.table, int(lo), int(hi))
            for lo, hi in zip(bounds[:-1], bounds[1:])
            if lo < hi
        ]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return max(pool.map(_walsh_chunk, jobs))
    return _walsh_chunk((f.ctx, f.table, 1, q))


def _psi_table(ctx: gf2n.FieldCtx) -> np.ndarray:
    """Bit-linear reindexing with Tr(u x) = <psi(u), x> in the standard basis."""
    q = ctx.order
    idx = np.arange(q)
    psi = np.zeros(q, dtype=np.int64)
    for i in range(ctx.n):
        psi |= ctx.trace_bits[gf2n.vec_mul_scalar(ctx, idx, 1 << i)].astype(np.int64) << i
    return psi


def walsh_spectrum(f: LutFunction) -> WalshSpectrum:
    """Full table W[v-1, u] of the transform, plus its maximum magnitude.

    Materialising the table is quadratic in the field size and is
    refused above n = 12; use walsh_max_abs / nonlinearity for the
    large fields.
    """
    ctx = f.ctx
    if ctx.n > _WALSH_TABLE_MAX_N:
        raise ValueError(
            f"full Walsh table refused for n = {ctx.n} > {_WALSH_TABLE_MAX_N}"
        )
    q = ctx.order
    block = _sign_block(ctx, f.table, np.arange(1, q))
    _fwht_lastaxis(block)
    table = block[:, _psi_table(ctx)]
    return WalshSpectrum(int(np.abs(table).max()), table)


def nonlinearity(f: LutFunction, workers: int = 1) -> int:
    return (f.ctx.order >> 1) - walsh_max_abs(f, workers) // 2


# ---------------------------------------------------------------------------
# Algebraic degree and permutation status
# ---------------------------------------------------------------------------

def algebraic_degree(f: LutFunction) -> int:
    """Max monomial degree of the algebraic normal form, all coordinates at once."""
    q = f.ctx.order
    anf = f.table.astype(np.int64).copy()
    h = 1
    while h < q:
        view = anf.reshape(q // (2 * h), 2, h)
        view[:, 1, :] ^= view[:, 0, :]
        h *= 2
    support = np.nonzero(anf)[0]
    if len(support) == 0:
        return 0
    return int(np.bitwise_count(support.astype(np.uint64)).max())


def is_permutation(f: LutFunction) -> bool:
    q = f.ctx.order
    seen = np.zeros(q, dtype=bool)
    seen[f.table] = True
    return bool(seen.all())


def nl_lower_bound(k: int) -> int:
    """Nonlinearity floor for the subfield-modified Dobbertin functions.

    Odd k:  2^(n-1) - 2^((3n-3)/4) - 2^((k-1)/2) - 2^(k-1)
    Even k: 2^(n-1) - 2^((3n-2)/4) - 2^(k/2)     - 2^(k-1)
    Fractional powers of two are floored to report an integer.
    """
    if k < 1:
        raise ValueError("k must be positive")
    n = 5 * k
    if k % 2:
        big = math.isqrt(math.isqrt(1 << (3 * n - 3)))
        small = 1 << ((k - 1) // 2)
    else:
        big = math.isqrt(math.isqrt(1 << (3 * n - 2)))
        small = 1 << (k // 2)
    return (1 << (n - 1)) - big - small - (1 << (k - 1))


def fingerprint(f: LutFunction, workers: int = 1) -> tuple:
    """Invariant tuple (spectrum, nl, degree-if-nonaffine).

    Differing fingerprints witness inequivalence under coordinate
    changes that preserve the graph; equal fingerprints prove nothing.
    """
    ds = differential_spectrum(f, workers)
    nl = nonlinearity(f, workers)
    deg = algebraic_degree(f)
    return (
        tuple(sorted(ds.spectrum.items())),
        nl,
        deg if deg > 1 else None,
    )


# ---------------------------------------------------------------------------
# Aggregate report
# ---------------------------------------------------------------------------

@dataclass
class CriteriaReport:
    n: int
    k: int | None
    construction: str | None
    spectrum: dict
    delta: int
    nl: int | None
    walsh_max_abs: int | None
    degree: int
    is_permutation: bool
    lb: int | None
    runtime_ms: dict

    def to_json_dict(self, include_runtime: bool = False) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "construction": self.construction,
            "spectrum": {str(i): self.spectrum[i] for i in sorted(self.spectrum)},
            "delta": self.delta,
            "nl": self.nl,
            "degree": self.degree,
            "permutation": self.is_permutation,
            "lb": self.lb,
            "runtime_ms": self.runtime_ms if include_runtime else None,
        }

    def to_json(self, include_runtime: bool = False) -> str:
        return json.dumps(self.to_json_dict(include_runtime))

    def spectrum_triple(self) -> tuple:
        return (
            self.spectrum.get(0, 0),
            self.spectrum.get(2, 0),
            self.spectrum.get(4, 0),
        )

    def csv_row(self, label: str) -> list:
        w0, w2, w4 = self.spectrum_triple()
        return [
            label,
            "{%d, %d, %d}" % (w0, w2, w4),
            str(self.degree),
            str(self.nl) if self.nl is not None else "",
            str(self.lb) if self.lb is not None else "",
        ]


def analyze(
    f: LutFunction,
    k: int | None = None,
    construction: str | None = None,
    walsh: bool = True,
    workers: int = 1,
) -> CriteriaReport:
    """Compute every criterion on f, timing each one."""
    runtime: dict[str, float] = {}

    t0 = time.perf_counter()
    ds = differential_spectrum(f, workers)
    runtime["spectrum"] = (time.perf_counter() - t0) * 1e3

    nl = wmax = None
    if walsh:
        t0 = time.perf_counter()
        wmax = walsh_max_abs(f, workers)
        nl = (f.ctx.order >> 1) - wmax // 2
        runtime["walsh"] = (time.perf_counter() - t0) * 1e3

    t0 = time.perf_counter()
    degree = algebraic_degree(f)
    runtime["degree"] = (time.perf_counter() - t0) * 1e3

    t0 = time.perf_counter()
    perm = is_permutation(f)
    runtime["permutation"] = (time.perf_counter() - t0) * 1e3

    return CriteriaReport(
        n=f.ctx.n,
        k=k,
        construction=construction,
        spectrum=ds.spectrum,
        delta=ds.delta,
        nl=nl,
        walsh_max_abs=wmax,
        degree=degree,
        is_permutation=perm,
        lb=nl_lower_bound(k) if k is not None else None,
        runtime_ms=runtime,
    )

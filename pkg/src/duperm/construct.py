"""Builders for the analysed functions over GF(2^(5k)).

Three families are materialised as full lookup tables:

* power maps x^d, in particular the Dobbertin exponent
  d = 2^(4k) + 2^(3k) + 2^(2k) + 2^k - 1;
* subfield maps g = L1 o x^(2^m - 1) o L2 for affine permutations
  L1, L2 of GF(2^k), stored in big-field coordinates with the
  non-subfield slots zeroed;
* the piecewise modification f that agrees with g on the subfield and
  with x^d everywhere else.  The closed form
  f(x) = g(x) + (g(x) + x^d) (x + x^(2^k))^(2^n - 1)
  is implemented as an independent evaluation path and cross-checked
  against the piecewise table on a fixed sample of points.

Tables are immutable once built and serialise to a binary format
(magic "SBLUT1\\0\\0", one byte n, 2^n little-endian 8-byte values).
"""

from __future__ import annotations

import math
import random
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import gf2n

__all__ = [
    "LutFunction",
    "AffinePerm",
    "DobbertinInfo",
    "dobbertin_exponent",
    "dobbertin_diagnostics",
    "power_function",
    "affine_eval",
    "random_affine_perm",
    "parse_affine_expr",
    "build_g",
    "build_f",
    "closed_form_eval",
    "write_lut",
    "read_lut",
    "LUT_MAGIC",
]

LUT_MAGIC = b"SBLUT1\x00\x00"


@dataclass(frozen=True, eq=False)
class LutFunction:
    """A function GF(2^n) -> GF(2^n) materialised as a table of 2^n values."""

    ctx: gf2n.FieldCtx
    table: np.ndarray = field(repr=False)
    subfield_only: bool = False

    def __post_init__(self):
        if len(self.table) != self.ctx.order:
            raise ValueError("table length must be 2^n")

    def __call__(self, x: int) -> int:
        return int(self.table[x])


@dataclass(frozen=True)
class AffinePerm:
    """Affine permutation of the subfield GF(2^k): sum c_i x^(2^i) + constant."""

    ctx: gf2n.FieldCtx
    k: int
    linear_coeffs: tuple
    constant: int
    label: str = ""

    def __post_init__(self):
        if len(self.linear_coeffs) != self.k:
            raise ValueError(f"need exactly {self.k} linear coefficients")
        for c in (*self.linear_coeffs, self.constant):
            if not gf2n.in_subfield(self.ctx, c):
                raise ValueError(f"coefficient {c} lies outside GF(2^{self.k})")
        sub = gf2n.subfield_elements(self.ctx)
        image = {affine_eval(self, a) for a in sub}
        if len(image) != len(sub):
            raise ValueError("affine map is not a bijection of the subfield")


def affine_eval(L: AffinePerm, a: int) -> int:
    if not gf2n.in_subfield(L.ctx, a):
        raise ValueError(f"{a} is not a subfield element")
    acc = L.constant
    for i, c in enumerate(L.linear_coeffs):
        if c:
            acc ^= gf2n.mul(L.ctx, c, gf2n.frobenius(L.ctx, a, i))
    return acc


def random_affine_perm(ctx: gf2n.FieldCtx, k: int, seed: int) -> AffinePerm:
    """Seed-deterministic affine permutation of GF(2^k)."""
    rng = random.Random(seed)
    sub = gf2n.subfield_elements(ctx)
    for _ in range(4096):
        coeffs = tuple(rng.choice(sub) for _ in range(k))
        constant = rng.choice(sub)
        try:
            return AffinePerm(ctx, k, coeffs, constant, label=f"seed={seed}")
        except ValueError:
            continue
    raise RuntimeError("could not draw a bijective affine map within budget")


def parse_affine_expr(ctx: gf2n.FieldCtx, text: str) -> AffinePerm:
    """Parse 'c*x^(2^i)' sums like "x+1", "b*x+b" or "b^2*x^2 + b".

    Coefficients are 0, 1 or powers b^j of the canonical subfield
    generator; x exponents must be powers of two below 2^k.
    """
    k = ctx.k
    beta = ctx.subfield_generator

    def const_value(tok: str) -> int:
        if tok == "0":
            return 0
        if tok == "1":
            return 1
        if tok == "b":
            return beta
        if tok.startswith("b^"):
            return gf2n.pow(ctx, beta, int(tok[2:]))
        raise ValueError(f"cannot parse coefficient {tok!r} in {text!r}")

    coeffs = [0] * k
    constant = 0
    for term in text.replace(" ", "").split("+"):
        if not term:
            raise ValueError(f"empty term in affine expression {text!r}")
        if "x" not in term:
            constant ^= const_value(term)
            continue
        head, _, tail = term.partition("x")
        coef = const_value(head.rstrip("*")) if head else 1
        if tail == "":
            exp = 1
        elif tail.startswith("^"):
            exp = int(tail[1:])
        else:
            raise ValueError(f"cannot parse term {term!r} in {text!r}")
        i = exp.bit_length() - 1
        if exp <= 0 or (1 << i) != exp or i >= k:
            raise ValueError(
                f"x exponent {exp} is not a power of two below 2^{k} in {text!r}"
            )
        coeffs[i] ^= coef
    return AffinePerm(ctx, k, tuple(coeffs), constant, label=text)


_DOB_TERMS = (4, 3, 2, 1)


def dobbertin_exponent(k: int) -> int:
    if k < 1:
        raise ValueError("k must be positive")
    return sum(1 << (j * k) for j in _DOB_TERMS) - 1


@dataclass(frozen=True)
class DobbertinInfo:
    d: int
    residue_mod_subfield: int
    gcd_with_group_order: int


def dobbertin_diagnostics(k: int) -> DobbertinInfo:
    """d together with d mod (2^k - 1) and gcd(d, 2^(5k) - 1)."""
    d = dobbertin_exponent(k)
    sub_order = (1 << k) - 1
    residue = d % sub_order if sub_order > 1 else 0
    return DobbertinInfo(d, residue, math.gcd(d, (1 << (5 * k)) - 1))


def power_function(ctx: gf2n.FieldCtx, d: int) -> LutFunction:
    """The power map x^d as a full table; 0^0 = 1 only when d = 0."""
    return LutFunction(ctx, gf2n.vec_pow_all(ctx, d))


def build_g(
    ctx: gf2n.FieldCtx,
    k: int,
    m: int,
    L1: AffinePerm,
    L2: AffinePerm,
) -> LutFunction:
    """g = L1 o x^(2^m - 1) o L2 on the subfield, zero elsewhere.

    gcd(k, m) != 1 breaks the permutation guarantee for the inner power
    map; the construction still proceeds (with a warning) because the
    non-bijective instances are analysed too.
    """
    if k != ctx.k:
        raise ValueError("k does not match the field context")
    if m < 1:
        raise ValueError("m must be positive")
    if math.gcd(k, m) != 1:
        warnings.warn(
            f"gcd(k={k}, m={m}) != 1: inner power map is not a subfield permutation",
            stacklevel=2,
        )
    e = (1 << m) - 1
    table = np.zeros(ctx.order, dtype=np.int64)
    for a in gf2n.subfield_elements(ctx):
        table[a] = affine_eval(L1, gf2n.pow(ctx, affine_eval(L2, a), e))
    return LutFunction(ctx, table, subfield_only=True)


def closed_form_eval(ctx: gf2n.FieldCtx, k: int, g: LutFunction, x: int) -> int:
    """f(x) = g(x) + (g(x) + x^d)(x + x^(2^k))^(2^n - 1), evaluated directly."""
    d = dobbertin_exponent(k)
    indicator = gf2n.pow(ctx, x ^ gf2n.frobenius(ctx, x, k), ctx.order - 1)
    gap = int(g.table[x]) ^ gf2n.pow(ctx, x, d)
    return int(g.table[x]) ^ gf2n.mul(ctx, gap, indicator)


def build_f(ctx: gf2n.FieldCtx, k: int, g: LutFunction) -> LutFunction:
    """Piecewise function: g on the subfield, x^d elsewhere.

    Cross-checks the table against the closed-form evaluation on 64
    deterministic sample points.
    """
    if k != ctx.k:
        raise ValueError("k does not match the field context")
    d = dobbertin_exponent(k)
    table = np.where(ctx.subfield_mask, g.table, gf2n.vec_pow_all(ctx, d))
    rng = random.Random(0x5B0C)
    for _ in range(64):
        x = rng.randrange(ctx.order)
        if int(table[x]) != closed_form_eval(ctx, k, g, x):
            raise RuntimeError(f"piecewise and closed-form paths disagree at {x}")
    return LutFunction(ctx, table)


# ---------------------------------------------------------------------------
# Binary lookup-table format
# ---------------------------------------------------------------------------

def write_lut(f: LutFunction, path) -> None:
    data = LUT_MAGIC + bytes([f.ctx.n]) + f.table.astype("<u8").tobytes()
    with open(path, "wb") as fh:
        fh.write(data)


def read_lut(path, ctx: gf2n.FieldCtx) -> LutFunction:
    with open(path, "rb") as fh:
        blob = fh.read()
    if blob[: len(LUT_MAGIC)] != LUT_MAGIC:
        raise ValueError("bad magic; not a lookup-table file")
    n = blob[len(LUT_MAGIC)]
    if n != ctx.n:
        raise ValueError(f"table is over GF(2^{n}), context is GF(2^{ctx.n})")
    body = blob[len(LUT_MAGIC) + 1 :]
    if len(body) != (1 << n) * 8:
        raise ValueError("truncated lookup-table file")
    table = np.frombuffer(body, dtype="<u8").astype(np.int64)
    if table.max(initial=0) >= (1 << n):
        raise ValueError("table entry outside the field")
    return LutFunction(ctx, table)

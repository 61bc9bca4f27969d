"""Minimizing |sum_k b_k sin((2k+1) pi/n)| over sign vectors b, and solving for delta.

Three engines share one selection rule so their answers are comparable
bit for bit:

* ``exhaustive`` enumerates every canonical sign vector,
* ``meet_in_middle`` enumerates two halves and pairs them by binary search,
* ``block_pattern`` expands an optimum for n/4 into blocks of (-1, 1, 1, -1).
  It is not guaranteed optimal and is flagged as such.

Selection rule: gather every vector whose fast sum is within ``CANDIDATE_WINDOW``
of the best, recompute each with :func:`objective` (ascending k, plain float
addition), keep those within ``TIE_TOL`` of the smallest, return the
lexicographically smallest with +1 ordered before -1.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import brentq

from .errors import CapacityError, NumericalFailure, ParameterError

CANDIDATE_WINDOW = 1e-12
TIE_TOL = 1e-15
EXHAUSTIVE_MAX_TERMS = 32
AUTO_EXHAUSTIVE_MAX_TERMS = 20
AUTO_MITM_MAX_TERMS = 40
MITM_MAX_TERMS = 64
DEFAULT_MITM_BUDGET_MB = 2048
# per enumerated half-sum: value, mask, sort copy, search scratch
_MITM_BYTES_PER_ENTRY = 40
_CHUNK_BITS = 16

ENGINES = ("exhaustive", "meet_in_middle", "block_pattern")
ENGINE_ALIASES = {
    "exhaustive": "exhaustive",
    "mitm": "meet_in_middle",
    "meet_in_middle": "meet_in_middle",
    "block": "block_pattern",
    "block_pattern": "block_pattern",
}


def is_power_of_two(n: int) -> bool:
    return isinstance(n, (int, np.integer)) and n > 0 and (n & (n - 1)) == 0


def check_n(n: int, min_n: int = 4) -> int:
    if not is_power_of_two(n) or n < min_n:
        raise ParameterError(f"n must be a power of two >= {min_n}, got {n!r}")
    return int(n)


@dataclass(frozen=True)
class SignVector:
    """A +-1 vector of length n/4. Canonical when the first entry is +1."""

    n: int
    b: tuple[int, ...]

    def __post_init__(self):
        check_n(self.n)
        b = tuple(int(x) for x in self.b)
        if len(b) != self.n // 4:
            raise ParameterError(f"sign vector for n={self.n} needs {self.n // 4} entries, got {len(b)}")
        if any(x not in (1, -1) for x in b):
            raise ParameterError("sign vector entries must be +1 or -1")
        object.__setattr__(self, "b", b)

    @property
    def is_canonical(self) -> bool:
        return self.b[0] == 1

    def __neg__(self) -> SignVector:
        return SignVector(self.n, tuple(-x for x in self.b))

    def canonical(self) -> SignVector:
        return self if self.is_canonical else -self

    def __len__(self):
        return len(self.b)

    def __iter__(self):
        return iter(self.b)


@dataclass(frozen=True)
class SignSearchResult:
    best: SignVector
    m_value: float
    sigma: float
    engine: str
    optimal: bool

    @property
    def n(self) -> int:
        return self.best.n


@dataclass(frozen=True)
class DeltaSolution:
    n: int
    sigma: float
    delta: float
    residual: float


def sine_weights(n: int) -> list[float]:
    return [math.sin((2 * k + 1) * math.pi / n) for k in range(n // 4)]


def signed_sum(n: int, b: SignVector | Sequence[int]) -> float:
    """sum_k b_k sin((2k+1) pi/n), accumulated left to right in k."""
    signs = b.b if isinstance(b, SignVector) else tuple(b)
    if len(signs) != n // 4:
        raise ParameterError(f"sign vector for n={n} needs {n // 4} entries, got {len(signs)}")
    total = 0.0
    for k, bk in enumerate(signs):
        total += bk * math.sin((2 * k + 1) * math.pi / n)
    return total


def objective(n: int, b: SignVector | Sequence[int]) -> float:
    return abs(signed_sum(n, b))


def sigma_from_m(n: int, m_value: float) -> float:
    # uses sum_k cos((2k+1) pi/n) = 1 / (2 sin(pi/n))
    return 2.0 * math.sin(math.pi / n) * m_value


# -- selection shared by all exact engines -----------------------------------

def _mask_to_signs(mask: int, m: int) -> tuple[int, ...]:
    return tuple(-1 if (mask >> i) & 1 else 1 for i in range(m))


def _weighted_sum(weights: Sequence[float], signs: Sequence[int]) -> float:
    total = 0.0
    for w, s in zip(weights, signs):
        total += s * w
    return total


def select_best(weights: Sequence[float], masks: Sequence[int]) -> tuple[tuple[int, ...], float]:
    """Apply the tie-break rule to candidate masks (bit i set means b_i = -1)."""
    m = len(weights)
    scored = []
    for mask in set(int(x) for x in masks):
        signs = _mask_to_signs(mask, m)
        scored.append((abs(_weighted_sum(weights, signs)), signs))
    if not scored:
        raise NumericalFailure("no candidate sign vectors survived the search")
    floor = min(v for v, _ in scored)
    tied = [(tuple(0 if s == 1 else 1 for s in signs), v, signs) for v, signs in scored if v <= floor + TIE_TOL]
    _, value, signs = min(tied)
    return signs, value


def _enumerate_half(weights: Sequence[float], offset: int, fix_first: bool):
    """All signed sums over ``weights``; masks use bit positions from ``offset``.

    With ``fix_first`` the first weight always enters with +1.
    """
    sums = np.zeros(1)
    masks = np.zeros(1, dtype=np.int64)
    for i, w in enumerate(weights):
        if fix_first and i == 0:
            sums = sums + w
            continue
        bit = np.int64(1) << np.int64(offset + i)
        sums = np.concatenate([sums + w, sums - w])
        masks = np.concatenate([masks, masks | bit])
    return sums, masks


def closest_to_zero_exhaustive(weights: Sequence[float]) -> tuple[tuple[int, ...], float]:
    """Every sign vector with b_0 = +1, scanned in chunks of 2**16 low-bit patterns."""
    m = len(weights)
    if m == 0:
        raise ParameterError("need at least one weight")
    if m > EXHAUSTIVE_MAX_TERMS:
        raise CapacityError(f"exhaustive search handles at most {EXHAUSTIVE_MAX_TERMS} terms, got {m}")
    low = min(m, _CHUNK_BITS)
    low_sums, low_masks = _enumerate_half(weights[:low], 0, fix_first=True)
    high_w = weights[low:]
    best = math.inf
    cands: list[tuple[float, int]] = []
    for h in range(1 << len(high_w)):
        offset = 0.0
        for i, w in enumerate(high_w):
            offset += -w if (h >> i) & 1 else w
        vals = np.abs(low_sums + offset)
        cmin = float(vals.min())
        if cmin > best + CANDIDATE_WINDOW:
            continue
        if cmin < best:
            best = cmin
            cands = [c for c in cands if c[0] <= best + CANDIDATE_WINDOW]
        hit = np.nonzero(vals <= best + CANDIDATE_WINDOW)[0]
        hmask = h << low
        cands.extend((float(vals[i]), int(low_masks[i]) | hmask) for i in hit)
    return select_best(weights, [c[1] for c in cands if c[0] <= best + CANDIDATE_WINDOW])


def mitm_bytes(m: int) -> int:
    left = m // 2
    return ((1 << max(left - 1, 0)) + (1 << (m - left))) * _MITM_BYTES_PER_ENTRY


def closest_to_zero_mitm(weights: Sequence[float], budget_mb: float | None = None) -> tuple[tuple[int, ...], float]:
    """Split in halves, sort the right half sums, binary-search for each left sum."""
    m = len(weights)
    if m == 0:
        raise ParameterError("need at least one weight")
    if budget_mb is None:
        budget_mb = default_mitm_budget_mb()
    if m > MITM_MAX_TERMS or mitm_bytes(m) > budget_mb * 2**20:
        raise CapacityError(
            f"meet-in-the-middle over {m} terms needs ~{mitm_bytes(m) / 2**20:.0f} MB, budget {budget_mb} MB"
        )
    left = max(m // 2, 1)
    lsums, lmasks = _enumerate_half(weights[:left], 0, fix_first=True)
    rsums, rmasks = _enumerate_half(weights[left:], left, fix_first=False)
    order = np.argsort(rsums, kind="stable")
    rsums, rmasks = rsums[order], rmasks[order]

    pos = np.searchsorted(rsums, -lsums)
    best = math.inf
    for shift in (-1, 0):
        j = np.clip(pos + shift, 0, len(rsums) - 1)
        best = min(best, float(np.abs(lsums + rsums[j]).min()))

    reach = best + CANDIDATE_WINDOW
    lo = np.searchsorted(rsums, -lsums - reach, side="left")
    hi = np.searchsorted(rsums, -lsums + reach, side="right")
    counts = hi - lo
    li = np.repeat(np.arange(len(lsums)), counts)
    starts = np.repeat(lo - np.concatenate([[0], np.cumsum(counts)[:-1]]), counts)
    ri = starts + np.arange(counts.sum())
    keep = np.abs(lsums[li] + rsums[ri]) <= reach
    masks = lmasks[li[keep]] | rmasks[ri[keep]]
    return select_best(weights, masks.tolist())


def default_mitm_budget_mb() -> float:
    env = os.environ.get("SMALLGON_MITM_BUDGET_MB")
    return float(env) if env else DEFAULT_MITM_BUDGET_MB


# -- public engines -----------------------------------------------------------

def _result(n: int, signs: Sequence[int], engine: str, optimal: bool) -> SignSearchResult:
    best = SignVector(n, tuple(signs)).canonical()
    m_value = objective(n, best)
    return SignSearchResult(best, m_value, sigma_from_m(n, m_value), engine, optimal)


def search_exhaustive(n: int) -> SignSearchResult:
    check_n(n)
    if n // 4 > EXHAUSTIVE_MAX_TERMS:
        raise CapacityError(f"exhaustive search supports n <= {4 * EXHAUSTIVE_MAX_TERMS}; use meet_in_middle")
    signs, _ = closest_to_zero_exhaustive(sine_weights(n))
    return _result(n, signs, "exhaustive", True)


def search_mitm(n: int, budget_mb: float | None = None) -> SignSearchResult:
    check_n(n)
    signs, _ = closest_to_zero_mitm(sine_weights(n), budget_mb=budget_mb)
    return _result(n, signs, "meet_in_middle", True)


def derive_block_pattern(n: int, base: SignVector | Sequence[int]) -> SignVector:
    """Sign vector for 4n: entry b'_k becomes the block b'_k * (-1, 1, 1, -1)."""
    check_n(n)
    base = base if isinstance(base, SignVector) else SignVector(n, tuple(base))
    if base.n != n:
        raise ParameterError(f"base vector is for n={base.n}, not {n}")
    out: list[int] = []
    for bk in base.b:
        out.extend((-bk, bk, bk, -bk))
    return SignVector(4 * n, tuple(out))


def block_recursion_vector(n: int) -> SignVector:
    """Expand the exact n=4 or n=8 optimum by repeated block substitution up to n."""
    check_n(n)
    if n <= 8:
        return search_exhaustive(n).best
    return derive_block_pattern(n // 4, block_recursion_vector(n // 4))


def search_block(n: int) -> SignSearchResult:
    check_n(n)
    if n <= 8:
        return search_exhaustive(n)
    return _result(n, block_recursion_vector(n).b, "block_pattern", False)


def search(n: int, engine: str = "auto", budget_mb: float | None = None) -> SignSearchResult:
    """Dispatch by engine name; ``auto`` picks by problem size."""
    check_n(n)
    m = n // 4
    if engine == "auto":
        if m <= AUTO_EXHAUSTIVE_MAX_TERMS:
            return search_exhaustive(n)
        if m <= AUTO_MITM_MAX_TERMS:
            try:
                return search_mitm(n, budget_mb=budget_mb)
            except CapacityError:
                pass
        return search_block(n)
    name = ENGINE_ALIASES.get(engine)
    if name == "exhaustive":
        return search_exhaustive(n)
    if name == "meet_in_middle":
        return search_mitm(n, budget_mb=budget_mb)
    if name == "block_pattern":
        return search_block(n)
    raise ParameterError(f"unknown engine {engine!r}")


def m_upper_bound(s: int) -> float:
    """2^(s-2) * prod_{k=1..s} sin(pi / 2^k)."""
    if not isinstance(s, (int, np.integer)) or s < 2:
        raise ParameterError(f"s must be an integer >= 2, got {s!r}")
    prod = 1.0
    for k in range(1, s + 1):
        prod *= math.sin(math.pi / 2**k)
    return 2.0 ** (s - 2) * prod


def m_upper_bound_closed(s: int) -> float:
    """The looser (sqrt 2 / pi^2) * pi^s / n^((s-1)/2) with n = 2^s."""
    if not isinstance(s, (int, np.integer)) or s < 2:
        raise ParameterError(f"s must be an integer >= 2, got {s!r}")
    n = 2.0**s
    return math.sqrt(2) / math.pi**2 * math.pi**s / n ** ((s - 1) / 2)


# -- delta ----------------------------------------------------------------------

def closure_residual(n: int, sigma: float, x: float) -> float:
    """sigma (cos x - cos(pi/n)) - sin x, with the cosine difference in product form."""
    h = math.pi / n
    return -2.0 * sigma * math.sin((x + h) / 2) * math.sin((x - h) / 2) - math.sin(x)


def delta_closed_form(n: int, sigma: float) -> float:
    c = sigma / math.sqrt(1.0 + sigma * sigma)
    return math.acos(c * math.cos(math.pi / n)) - math.acos(c)


def solve_delta(n: int, sigma: float, tol: float = 1e-14, max_newton: int = 5) -> DeltaSolution:
    """Root of sigma (cos x - cos(pi/n)) = sin x in [0, pi/n).

    Closed form first; Newton polish absorbs the cancellation in the
    arccos difference when sigma is tiny.
    """
    if not isinstance(n, (int, np.integer)) or n < 4:
        raise ParameterError(f"n must be an integer >= 4, got {n!r}")
    if not math.isfinite(sigma) or sigma < 0:
        raise ParameterError(f"sigma must be finite and >= 0, got {sigma!r}")
    h = math.pi / n
    x = delta_closed_form(n, sigma)
    for _ in range(max_newton):
        # stop on relative step: |f| is tiny for tiny x whether or not x is accurate
        step = closure_residual(n, sigma, x) / (-sigma * math.sin(x) - math.cos(x))
        x -= step
        if abs(step) <= 2 * np.finfo(float).eps * abs(x):
            break
    if not 0.0 <= x < h or abs(closure_residual(n, sigma, x)) > tol:
        # f is strictly decreasing on [0, pi/n] with f(0) >= 0 > f(pi/n)
        if sigma == 0.0:
            x = 0.0
        else:
            x = brentq(lambda t: closure_residual(n, sigma, t), 0.0, h, xtol=1e-300, rtol=4 * np.finfo(float).eps)
    residual = abs(closure_residual(n, sigma, x))
    if not 0.0 <= x < h or residual > tol:
        raise NumericalFailure(f"no root in [0, pi/{n}) for sigma={sigma!r} (residual {residual!r})")
    return DeltaSolution(int(n), float(sigma), float(x), residual)

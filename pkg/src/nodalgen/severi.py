"""Plane Severi degrees via the Caporaso-Harris recursion on relative degrees.

N(d, delta, alpha, beta) is the number of degree-d plane curves with delta
nodes (reducible curves included) meeting a fixed line with contact orders
recorded by two multiplicity profiles: alpha at fixed points of the line,
beta at unassigned points.  The recursion is

    N(d, delta, alpha, beta)
        = sum_{k: beta_k > 0} k * N(d, delta, alpha + e_k, beta - e_k)
        + sum_{alpha' <= alpha, beta' >= beta}
              prod_k k^{beta'_k - beta_k}
            * prod_k C(alpha_k, alpha'_k) * prod_k C(beta'_k, beta_k)
            * N(d-1, delta', alpha', beta')

with I(alpha') + I(beta') = d - 1 in the second sum and the cogenus
bookkeeping delta' = delta + |beta' - beta| + 1 - d.  Base case d = 1:
a line, so 1 when delta = 0 and 0 otherwise.  Guards: 0 unless
0 <= delta <= d(d-1)/2 (no reduced degree-d curve has more nodes than a
union of d lines).

The plain Severi degree N^{d,delta} is the alpha = (), beta = d*e_1 case.

Since the recursion never increases delta, all values for delta = 0..hi at
a fixed (d, alpha, beta) are computed in one pass over the transitions and
memoized together; the public cache still addresses one integer per
(d, delta, alpha, beta) key and that is the unit of the persistent file
format.
"""

from __future__ import annotations

import logging
from math import comb

from .errors import (
    CacheConsistencyError,
    FormatVersionMismatch,
    InvalidProfile,
    IoFailure,
)

log = logging.getLogger(__name__)

CACHE_HEADER = "nodalgen-severi-cache v1 delta-convention=cogenus:d'=d-1,delta'=delta+|beta'-beta|+1-d"


# --- tangency profiles -------------------------------------------------------
#
# A profile is a tuple of multiplicities (m_1, m_2, ...): m_k contacts of
# order k, trailing zeros trimmed.  Weight I = sum k*m_k, length = sum m_k.

def profile(ms) -> tuple:
    """Normalize a multiplicity sequence to a trimmed tuple."""
    ms = list(ms)
    if any(m < 0 or m != int(m) for m in ms):
        raise InvalidProfile("multiplicities must be nonnegative integers")
    ms = [int(m) for m in ms]
    while ms and ms[-1] == 0:
        ms.pop()
    return tuple(ms)


def profile_weight(p) -> int:
    return sum((k + 1) * m for k, m in enumerate(p))


def profile_length(p) -> int:
    return sum(p)


def _with_part(p, k):
    """p + e_k (k is a 1-based contact order)."""
    out = list(p) + [0] * (k - len(p))
    out[k - 1] += 1
    return tuple(out)


def _without_part(p, k):
    out = list(p)
    out[k - 1] -= 1
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


_partition_cache = {}


def partitions_mult(n):
    """All partitions of n as multiplicity tuples, with part count and the
    product of parts: a list of (gamma, |gamma|, prod_k k^{gamma_k})."""
    hit = _partition_cache.get(n)
    if hit is not None:
        return hit
    out = []

    def rec(remaining, max_part, counts):
        if remaining == 0:
            gamma = profile(counts)
            parts = sum(gamma)
            weight = 1
            for k, m in enumerate(gamma, start=1):
                if m:
                    weight *= k ** m
            out.append((gamma, parts, weight))
            return
        for k in range(min(max_part, remaining), 0, -1):
            for c in range(remaining // k, 0, -1):
                counts[k - 1] = c
                rec(remaining - c * k, k - 1, counts)
                counts[k - 1] = 0

    rec(n, n, [0] * max(n, 1))
    _partition_cache[n] = out
    return out


def _subprofiles(alpha):
    """All alpha' <= alpha with prod_k C(alpha_k, alpha'_k); memoized."""
    hit = _subprofile_cache.get(alpha)
    if hit is not None:
        return hit
    out = [((), 1, 0)]
    for k, m in enumerate(alpha, start=1):
        nxt = []
        for prefix, ways, wt in out:
            for c in range(m + 1):
                nxt.append((prefix + (c,), ways * comb(m, c), wt + k * c))
        out = nxt
    out = [(profile(p), ways, wt) for p, ways, wt in out]
    _subprofile_cache[alpha] = out
    return out


_subprofile_cache = {}


# --- memo cache ----------------------------------------------------------------

def _max_nodes(d):
    return d * (d - 1) // 2


class MemoCache:
    """Write-once store of relative Severi degrees, optionally file-backed.

    Internally values are grouped per (d, alpha, beta) as a vector over
    delta = 0..hi; `get`/`items` expose the per-key integer view.
    """

    def __init__(self):
        self._vec = {}

    def get(self, d, delta, alpha, beta):
        vec = self._vec.get((d, alpha, beta))
        if vec is not None and 0 <= delta < len(vec):
            return vec[delta]
        return None

    def get_vector(self, d, alpha, beta):
        return self._vec.get((d, alpha, beta))

    def store_vector(self, d, alpha, beta, values):
        key = (d, alpha, beta)
        old = self._vec.get(key)
        if old is not None:
            if list(old[:len(values)]) != list(values[:len(old)]):
                raise CacheConsistencyError(
                    "recomputed values disagree with cached ones at d=%d "
                    "alpha=%s beta=%s" % (d, alpha, beta))
            if len(old) >= len(values):
                return
        if any(v < 0 for v in values):
            raise CacheConsistencyError(
                "negative count at d=%d alpha=%s beta=%s; all terms of the "
                "recursion are nonnegative" % (d, alpha, beta))
        self._vec[key] = tuple(values)

    def entry_count(self):
        return sum(len(v) for v in self._vec.values())

    def items(self):
        """Iterate (d, delta, alpha, beta) -> value in deterministic order."""
        for (d, alpha, beta) in sorted(self._vec):
            vec = self._vec[(d, alpha, beta)]
            for delta, val in enumerate(vec):
                yield (d, delta, alpha, beta), val

    # --- persistence -------------------------------------------------------

    @staticmethod
    def _format_key(d, delta, alpha, beta):
        return "%d:%d:%s|%s" % (d, delta,
                                ",".join(map(str, alpha)),
                                ",".join(map(str, beta)))

    def save(self, path):
        try:
            with open(path, "w", encoding="ascii") as fh:
                fh.write(CACHE_HEADER + "\n")
                for (d, delta, alpha, beta), val in self.items():
                    fh.write("%s=%d\n" % (self._format_key(d, delta, alpha, beta), val))
        except OSError as exc:
            raise IoFailure("cannot write cache file %s: %s" % (path, exc))

    @classmethod
    def load(cls, path):
        try:
            with open(path, "r", encoding="ascii") as fh:
                lines = fh.read().splitlines()
        except OSError as exc:
            raise IoFailure("cannot read cache file %s: %s" % (path, exc))
        cache = cls()
        if not lines:
            return cache
        if lines[0] != CACHE_HEADER:
            raise FormatVersionMismatch(
                "cache header %r does not match %r" % (lines[0], CACHE_HEADER))
        staged = {}
        for lineno, line in enumerate(lines[1:], start=2):
            if not line:
                continue
            try:
                key, val = line.split("=")
                dd, delta, profs = key.split(":")
                alpha_s, beta_s = profs.split("|")
                alpha = profile(int(x) for x in alpha_s.split(",") if x)
                beta = profile(int(x) for x in beta_s.split(",") if x)
                entry = (int(dd), int(delta), alpha, beta, int(val))
            except (ValueError, InvalidProfile):
                raise FormatVersionMismatch(
                    "%s:%d: malformed cache line %r" % (path, lineno, line))
            d, delta, alpha, beta, value = entry
            staged.setdefault((d, alpha, beta), {})[delta] = value
        # a vector is usable only as a contiguous prefix from delta = 0
        for (d, alpha, beta), by_delta in staged.items():
            vec = []
            while len(vec) in by_delta:
                vec.append(by_delta[len(vec)])
            if vec:
                cache._vec[(d, alpha, beta)] = tuple(vec)
        return cache


def cache_save(cache: MemoCache, path):
    cache.save(path)


def cache_load(path) -> MemoCache:
    return MemoCache.load(path)


# --- the recursion ---------------------------------------------------------------

def _vector(d, alpha, beta, hi, cache):
    """Values N(d, delta, alpha, beta) for delta = 0..min(hi, d(d-1)/2)."""
    hi = min(hi, _max_nodes(d))
    cached = cache.get_vector(d, alpha, beta)
    if cached is not None and len(cached) > hi:
        return cached
    if d == 1:
        vals = [1]
    else:
        vals = [0] * (hi + 1)
        # move one unassigned contact of order k to a fixed point
        for k, m in enumerate(beta, start=1):
            if m <= 0:
                continue
            child = _vector(d, _with_part(alpha, k), _without_part(beta, k),
                            hi, cache)
            for delta in range(min(hi + 1, len(child))):
                vals[delta] += k * child[delta]
        # split off the line: degree drops to d-1, profiles (alpha', beta+gamma)
        w_beta = profile_weight(beta)
        for aprime, ways_a, w_aprime in _subprofiles(alpha):
            rest = (d - 1) - w_beta - w_aprime
            if rest < 0:
                continue
            for gamma, parts, kweight in partitions_mult(rest):
                shift = (d - 1) - parts
                if shift > hi:
                    continue
                betap = list(beta) + [0] * (len(gamma) - len(beta))
                ways_b = 1
                for k, g in enumerate(gamma):
                    if g:
                        betap[k] += g
                        ways_b *= comb(betap[k], g)
                child = _vector(d - 1, aprime, profile(betap), hi - shift, cache)
                mult = kweight * ways_a * ways_b
                for dp in range(min(len(child), hi + 1 - shift)):
                    if child[dp]:
                        vals[dp + shift] += mult * child[dp]
    cache.store_vector(d, alpha, beta, vals)
    return cache.get_vector(d, alpha, beta)


def severi_rel(d, delta, alpha, beta, cache=None):
    """Relative Severi degree N(d, delta, alpha, beta).

    Requires I(alpha) + I(beta) = d; returns 0 outside 0 <= delta <= d(d-1)/2.
    """
    if d < 1:
        raise InvalidProfile("degree must be positive")
    alpha = profile(alpha)
    beta = profile(beta)
    if profile_weight(alpha) + profile_weight(beta) != d:
        raise InvalidProfile(
            "profile weights I(alpha) + I(beta) = %d do not match degree %d"
            % (profile_weight(alpha) + profile_weight(beta), d))
    if delta < 0 or delta > _max_nodes(d):
        return 0
    if cache is None:
        cache = MemoCache()
    return _vector(d, alpha, beta, delta, cache)[delta]


def severi_degree(d, delta, cache=None):
    """The Severi degree N^{d,delta}: degree-d plane curves with delta nodes
    through (d^2+3d)/2 - delta general points, reducible curves included."""
    beta = profile([d])
    return severi_rel(d, delta, (), beta, cache)


def severi_table(d_max, delta_max, cache=None):
    """All N^{d,delta} for d <= d_max, delta <= delta_max as a dict."""
    if cache is None:
        cache = MemoCache()
    table = {}
    for d in range(1, d_max + 1):
        hi = min(delta_max, _max_nodes(d))
        vec = _vector(d, (), profile([d]), hi, cache)
        for delta in range(delta_max + 1):
            table[(d, delta)] = vec[delta] if delta < len(vec) else 0
        log.info("severi degrees d=%d done (delta <= %d, %d cache entries)",
                 d, hi, cache.entry_count())
    return table

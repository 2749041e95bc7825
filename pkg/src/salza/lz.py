"""Longest-match Lempel-Ziv factorization against configurable reference regions.

A target string is scanned greedily left to right.  At each position the
longest match (length >= 3) anywhere in the currently permitted reference
regions is emitted as a reference symbol; otherwise a single literal is
emitted.  Which regions are permitted depends on the conditioning mode.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

MIN_MATCH = 3

# Region id used for the target's own past.
SELF = -1


class Mode(enum.Enum):
    """Which parts of the context may be referenced at lookahead position t."""

    #: The position-aligned past of the single source: source[0 : min(t, len(source))).
    SOURCE_PAST = "past"
    #: Every byte of every source (cross parsing); the target's past is excluded.
    SOURCE_ALL = "all"
    #: The target's own past plus the aligned past of every source.
    PAST_OF_BOTH = "both"
    #: The target's own past plus every byte of every source.
    PAST_AND_SOURCES = "past-all"


_OWN_PAST_MODES = (Mode.PAST_OF_BOTH, Mode.PAST_AND_SOURCES)
_WHOLE_SOURCE_MODES = (Mode.SOURCE_ALL, Mode.PAST_AND_SOURCES)


@dataclass(frozen=True)
class Context:
    """Ordered reference sources plus the conditioning mode."""

    sources: tuple[bytes, ...]
    mode: Mode

    def __post_init__(self):
        object.__setattr__(self, "sources", tuple(bytes(s) for s in self.sources))
        if self.mode is Mode.SOURCE_PAST and len(self.sources) != 1:
            raise ValueError("mode expects single source")
        if self.mode in (Mode.SOURCE_PAST, Mode.SOURCE_ALL) and not self.sources:
            raise ValueError("mode requires at least one source")
        for s in self.sources:
            if len(s) == 0:
                raise ValueError("empty source string")

    @property
    def uses_own_past(self) -> bool:
        return self.mode in _OWN_PAST_MODES

    @property
    def uses_whole_sources(self) -> bool:
        return self.mode in _WHOLE_SOURCE_MODES

    def region_length(self, target_len: int) -> int:
        """Total referenceable length at the end of encoding a target of this size."""
        if self.uses_whole_sources:
            total = sum(len(s) for s in self.sources)
        else:
            total = sum(min(target_len, len(s)) for s in self.sources)
        if self.uses_own_past:
            total += target_len
        return total

    def alphabet(self, target: bytes) -> frozenset[int]:
        """Union alphabet of the reference regions.

        Modes that include the target's own past contribute the target's
        alphabet as well.
        """
        values: set[int] = set()
        for s in self.sources:
            values.update(s)
        if self.uses_own_past:
            values.update(target)
        return frozenset(values)


@dataclass(frozen=True)
class Symbol:
    """One factorizer output: a reference (length, source, offset) or a literal."""

    length: int
    literal: int | None = None
    source: int | None = None  # SELF for the target's own past, else source index
    offset: int | None = None

    @property
    def is_literal(self) -> bool:
        return self.literal is not None


@dataclass(frozen=True)
class Factorization:
    symbols: tuple[Symbol, ...]
    target_length: int
    mode: Mode


def _extend(a: bytes, i: int, b: bytes, j: int, known: int, limit: int) -> int:
    """Longest L <= limit with a[i:i+L] == b[j:j+L], given the first `known` bytes match.

    Galloping then binary search, so long matches cost O(L log L) slice
    compares at C speed instead of a Python byte loop.
    """
    cur = known
    step = 1
    while cur + step <= limit and a[i : i + cur + step] == b[j : j + cur + step]:
        cur += step
        step *= 2
    lo, hi = cur, min(limit, cur + step - 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if a[i : i + mid] == b[j : j + mid]:
            lo = mid
        else:
            hi = mid - 1
    return lo


def _best_match(target: bytes, t: int, s: bytes, pmax: int, limit: int, need: int):
    """Longest match of target[t:] starting at a position <= pmax in s.

    Returns (length, position) with length >= need, or (0, -1).  A match may
    run past pmax (self-overlap / causally revealed bytes); only its start is
    constrained.  Equal-length candidates resolve to the smallest position:
    each find() call returns the leftmost occurrence of a needle one byte
    longer than the best so far, so the final position is the leftmost among
    the maximal matches.
    """
    best = need - 1
    pos = -1
    while best < limit:
        needle = target[t : t + best + 1]
        p = s.find(needle, 0, pmax + best + 1)
        if p < 0:
            break
        best = _extend(target, t, s, p, best + 1, min(limit, len(s) - p))
        pos = p
    if pos < 0:
        return 0, -1
    return best, pos


def factorize(target: bytes, context: Context) -> Factorization:
    """Greedy longest-match factorization of target against the context regions.

    Deterministic tie-break among equal-length matches: the target's own past
    first, then sources in list order, then the smallest start position.
    Matches never span two distinct source strings.
    """
    target = bytes(target)
    n = len(target)
    if n == 0:
        raise ValueError("empty input")
    sources = context.sources
    own_past = context.uses_own_past
    whole = context.uses_whole_sources

    # Trigram prefilters: skip the find() machinery when no length-3 match
    # can exist in a region.  Whole-source filters are built up front; past
    # regions grow with t and are filled in incrementally.
    if whole:
        src_tris = [{s[i : i + 3] for i in range(len(s) - 2)} for s in sources]
        src_ptr = [len(s) for s in sources]
    else:
        src_tris = [set() for _ in sources]
        src_ptr = [0] * len(sources)
    own_tris: set[bytes] = set()
    own_ptr = 0

    symbols: list[Symbol] = []
    t = 0
    while t < n:
        best_len = 0
        best_src = None
        best_off = None
        limit = n - t
        if limit >= MIN_MATCH:
            tri = target[t : t + 3]
            if own_past and t > 0:
                while own_ptr < t:
                    if own_ptr + 3 <= n:
                        own_tris.add(target[own_ptr : own_ptr + 3])
                    own_ptr += 1
                if tri in own_tris:
                    length, p = _best_match(target, t, target, t - 1, limit, MIN_MATCH)
                    if length >= MIN_MATCH:
                        best_len, best_src, best_off = length, SELF, p
            for k, s in enumerate(sources):
                if whole:
                    avail = len(s)
                else:
                    avail = min(t, len(s))
                    while src_ptr[k] < avail:
                        p0 = src_ptr[k]
                        if p0 + 3 <= len(s):
                            src_tris[k].add(s[p0 : p0 + 3])
                        src_ptr[k] += 1
                if avail == 0 or tri not in src_tris[k]:
                    continue
                need = best_len + 1 if best_len else MIN_MATCH
                length, p = _best_match(target, t, s, avail - 1, limit, need)
                if length >= need:
                    best_len, best_src, best_off = length, k, p
        if best_len >= MIN_MATCH:
            symbols.append(Symbol(length=best_len, source=best_src, offset=best_off))
            t += best_len
        else:
            symbols.append(Symbol(length=1, literal=target[t]))
            t += 1
    return Factorization(symbols=tuple(symbols), target_length=n, mode=context.mode)


def decode(f: Factorization, context: Context) -> bytes:
    """Reproduce the target from a factorization and the context it was built against."""
    out = bytearray()
    for sym in f.symbols:
        t = len(out)
        if sym.is_literal:
            if sym.length != 1:
                raise ValueError("corrupt factorization")
            out.append(sym.literal)
        elif sym.source == SELF:
            if not context.uses_own_past or not 0 <= sym.offset < t:
                raise ValueError("corrupt factorization")
            for k in range(sym.length):  # byte-wise: overlapped copies
                out.append(out[sym.offset + k])
        else:
            if not 0 <= sym.source < len(context.sources):
                raise ValueError("corrupt factorization")
            s = context.sources[sym.source]
            avail = len(s) if context.uses_whole_sources else min(t, len(s))
            if not 0 <= sym.offset < avail or sym.offset + sym.length > len(s):
                raise ValueError("corrupt factorization")
            out += s[sym.offset : sym.offset + sym.length]
    if len(out) != f.target_length:
        raise ValueError("corrupt factorization")
    return bytes(out)


def reference_lengths(f: Factorization) -> list[int]:
    """Multiset of all symbol lengths; literals contribute 1."""
    return [sym.length for sym in f.symbols]

"""Directed algorithmic information over a set of strings and DAG extraction.

The influence of string i on string j is the drop in j's conditional
complexity when i joins the conditioning set: both terms condition on j's
own past plus every other string in the set, once without i and once with it.
"Causal" uses the position-aligned pasts of the conditioning strings,
"full" uses them in their entirety.
"""

from __future__ import annotations

import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .estimators import FunctionLike, conditional_complexity
from .lz import Context, Mode

DEFAULT_THRESHOLD = 5e-3

_KIND_MODES = {"causal": Mode.PAST_OF_BOTH, "full": Mode.PAST_AND_SOURCES}


@dataclass(frozen=True)
class StringSet:
    """Uniquely labeled, non-empty byte strings."""

    labels: tuple[str, ...]
    strings: tuple[bytes, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.strings):
            raise ValueError("labels and strings differ in length")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("labels must be unique")
        for label, s in zip(self.labels, self.strings):
            if len(s) == 0:
                raise ValueError(f"empty string: {label!r}")

    def __len__(self):
        return len(self.strings)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, bytes]]) -> "StringSet":
        labels, strings = zip(*pairs)
        return cls(tuple(labels), tuple(bytes(s) for s in strings))


@dataclass
class DirectedInfoMatrix:
    """Asymmetric pairwise influence values; the diagonal is zero by convention.

    Off-diagonal entries may be slightly negative (estimation noise) and are
    never clamped.
    """

    labels: tuple[str, ...]
    values: np.ndarray
    kind: str
    threshold: float = DEFAULT_THRESHOLD


def _term(X: StringSet, j: int, exclude: set[int], kind: str, f: FunctionLike) -> float:
    sources = tuple(s for k, s in enumerate(X.strings) if k != j and k not in exclude)
    ctx = Context(sources, _KIND_MODES[kind])
    return conditional_complexity(X.strings[j], ctx, f).value


def _directed_info(X: StringSet, i: int, j: int, kind: str, f: FunctionLike) -> float:
    if i == j:
        raise ValueError("directed information is undefined for i == j")
    if len(X) < 2:
        raise ValueError("need at least two strings")
    return _term(X, j, {i}, kind, f) - _term(X, j, set(), kind, f)


def causal_directed_info(X: StringSet, i: int, j: int, f: FunctionLike = None) -> float:
    """Influence of string i on string j using aligned pasts (online data)."""
    return _directed_info(X, i, j, "causal", f)


def full_directed_info(X: StringSet, i: int, j: int, f: FunctionLike = None) -> float:
    """Influence of string i on string j with full access to the conditioning
    strings (offline data)."""
    return _directed_info(X, i, j, "full", f)


def directed_info_matrix(
    X: StringSet,
    kind: str = "causal",
    f: FunctionLike = None,
    threshold: float = DEFAULT_THRESHOLD,
    threads: int | None = None,
) -> DirectedInfoMatrix:
    """All ordered-pair influence values.

    Cells are independent and may be computed in parallel; results are merged
    by index so the output does not depend on scheduling.  The subtrahend
    term (j conditioned on everything but itself) is shared across a column
    and computed once.
    """
    if kind not in _KIND_MODES:
        raise ValueError(f"unknown kind: {kind}")
    n = len(X)
    if n < 2:
        raise ValueError("need at least two strings")

    def base(j: int) -> float:
        return _term(X, j, set(), kind, f)

    def cell(ij: tuple[int, int]) -> float:
        i, j = ij
        return _term(X, j, {i}, kind, f)

    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    if threads == 1:
        bases = [base(j) for j in range(n)]
        raw = [cell(ij) for ij in pairs]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            bases = list(pool.map(base, range(n)))
            raw = list(pool.map(cell, pairs))
    values = np.zeros((n, n))
    for (i, j), v in zip(pairs, raw):
        values[i, j] = v - bases[j]
    return DirectedInfoMatrix(labels=X.labels, values=values, kind=kind, threshold=threshold)


def extract_dag(m: DirectedInfoMatrix, threshold: float | None = None) -> list[tuple[int, int, float]]:
    """Edges (i, j, weight) with m[i][j] >= threshold.

    Cycles are possible under estimation noise; they trigger a warning, not
    an error.
    """
    thr = m.threshold if threshold is None else threshold
    if thr < 0:
        raise ValueError("threshold must be nonnegative")
    n = len(m.labels)
    edges = [
        (i, j, float(m.values[i, j]))
        for i in range(n)
        for j in range(n)
        if i != j and m.values[i, j] >= thr
    ]
    if _has_cycle(n, edges):
        warnings.warn("extracted graph contains a cycle", stacklevel=2)
    return edges


def _has_cycle(n: int, edges: Sequence[tuple[int, int, float]]) -> bool:
    adj: list[list[int]] = [[] for _ in range(n)]
    for i, j, _ in edges:
        adj[i].append(j)
    state = [0] * n  # 0 unseen, 1 on stack, 2 done
    for start in range(n):
        if state[start]:
            continue
        stack = [(start, iter(adj[start]))]
        state[start] = 1
        while stack:
            node, it = stack[-1]
            for nxt in it:
                if state[nxt] == 1:
                    return True
                if state[nxt] == 0:
                    state[nxt] = 1
                    stack.append((nxt, iter(adj[nxt])))
                    break
            else:
                state[node] = 2
                stack.pop()
    return False


def to_dot(m: DirectedInfoMatrix, threshold: float | None = None) -> str:
    """Graphviz rendering of the thresholded graph.

    Edge thickness scales linearly with the influence value; the raw value is
    also emitted as a plain `weight` attribute for machine reading.
    """
    edges = extract_dag(m, threshold)
    wmax = max((w for _, _, w in edges), default=0.0)
    lines = ["digraph directed_information {"]
    for label in m.labels:
        lines.append(f'  "{_dot_escape(label)}";')
    for i, j, w in edges:
        pen = 0.5 + (3.5 * w / wmax if wmax > 0 else 0.0)
        lines.append(
            f'  "{_dot_escape(m.labels[i])}" -> "{_dot_escape(m.labels[j])}" '
            f'[weight="{w:.9g}", penwidth={pen:.3f}];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dot_escape(label: str) -> str:
    return label.replace("\\", "\\\\").replace('"', '\\"')

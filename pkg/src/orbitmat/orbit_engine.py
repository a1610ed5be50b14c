"""Functional-graph analysis of a local function.

Every ``x`` in ``1..n`` has exactly one successor ``phi_n(x)`` in ``0..n`` and 0
is absorbing, so the graph is a forest hanging off 0 plus, possibly, some
cycles. One iterative pass classifies every node and, when there is no cycle,
assigns heights ``h(x) = min{k : phi_n^k(x) = 0}``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CyclePresentError, IndexOutOfRange
from .function_model import LocalFunction


@dataclass(frozen=True)
class CycleReport:
    found: bool
    elements: tuple[int, ...] = ()

    @property
    def length_m(self) -> int:
        return len(self.elements)


@dataclass(frozen=True, eq=False)
class HeightProfile:
    """Heights of ``1..n`` (``heights[x - 1] = h(x)``) and the height partition."""

    heights: np.ndarray
    partition_pi: tuple[int, ...]
    degree_m: int

    @property
    def n(self) -> int:
        return len(self.heights)

    @property
    def weighted_sum(self) -> int:
        """``sum_x h(x) = sum_nu nu * p_nu``."""
        return int(self.heights.sum())

    def bound_holds(self) -> bool:
        n, m = self.n, self.degree_m
        return self.weighted_sum <= n * m - m * (m - 1) // 2


@dataclass(frozen=True, eq=False)
class OrbitDecomposition:
    """Equivalence classes of ``1..n`` and their labeled trees.

    ``class_root[x - 1]`` is the root of the class of ``x``. ``children`` maps
    every node to its ascending tuple of preimages under ``phi_n``.
    """

    class_root: np.ndarray
    classes: dict[int, tuple[int, ...]]
    children: dict[int, tuple[int, ...]]
    heights: np.ndarray
    parents: np.ndarray

    def parent(self, y: int) -> int:
        """Parent of ``y`` in its tree, 0 for a root."""
        return int(self.parents[y - 1])

    def label(self, y: int) -> tuple[int, int]:
        return (y, int(self.heights[y - 1]))

    def tree_levels(self, root: int) -> list[list[int]]:
        """Nodes of the tree under ``root`` grouped by depth (depth 1 is the root)."""
        levels = [[root]]
        while True:
            nxt = [c for y in levels[-1] for c in self.children.get(y, ())]
            if not nxt:
                return levels
            levels.append(sorted(nxt))

    def level_counts(self) -> tuple[int, ...]:
        """Number of tree nodes at each depth, summed over all classes."""
        counts: list[int] = []
        for root in self.classes:
            for depth, level in enumerate(self.tree_levels(root)):
                if depth == len(counts):
                    counts.append(0)
                counts[depth] += len(level)
        return tuple(counts)


def _walk(lf: LocalFunction):
    """Single pass: (heights or None, list of all cycles)."""
    cached = lf._cache.get("walk")
    if cached is not None:
        return cached
    n = lf.n
    succ = [0] + lf.table.tolist()
    state = bytearray(n + 1)  # 0 new, 1 on current path, 2 finished
    state[0] = 2
    height = [0] * (n + 1)
    cycles = []
    for start in range(1, n + 1):
        if state[start]:
            continue
        path = []
        x = start
        while not state[x]:
            state[x] = 1
            path.append(x)
            x = succ[x]
        if state[x] == 1:
            cycles.append(path[path.index(x):])
            for y in path:
                state[y] = 2
            continue
        h = height[x]
        for y in reversed(path):
            h += 1
            height[y] = h
            state[y] = 2
    heights = None
    if not cycles:
        heights = np.array(height[1:], dtype=np.int64)
        heights.setflags(write=False)
    result = (heights, cycles)
    lf._cache["walk"] = result
    return result


def find_cycles(lf: LocalFunction) -> list[tuple[int, ...]]:
    """All cycles of ``phi_n``, each as a set-like tuple sorted ascending."""
    return sorted(tuple(sorted(c)) for c in _walk(lf)[1])


def detect_cycle(lf: LocalFunction) -> CycleReport:
    """Report the cycle containing the smallest on-cycle element, if any.

    Elements are listed as ``(phi(x), phi^2(x), ..., phi^m(x) = x)`` where
    ``x`` is that smallest element.
    """
    cycles = _walk(lf)[1]
    if not cycles:
        return CycleReport(False)
    x = min(min(c) for c in cycles)
    elements = []
    y = x
    while True:
        y = lf(y)
        elements.append(y)
        if y == x:
            break
    return CycleReport(True, tuple(elements))


def _require_heights(lf: LocalFunction) -> np.ndarray:
    heights, cycles = _walk(lf)
    if heights is None:
        raise CyclePresentError(detect_cycle(lf).elements)
    return heights


def heights(lf: LocalFunction) -> HeightProfile:
    h = _require_heights(lf)
    counts = np.bincount(h, minlength=2)[1:]
    m = int(h.max())
    return HeightProfile(h, tuple(int(c) for c in counts[:m]), m)


def orbit(lf: LocalFunction, x: int) -> tuple[int, ...]:
    """``(x, phi_n(x), ..., phi_n^{h(x)-1}(x))``."""
    _require_heights(lf)
    if not 1 <= x <= lf.n:
        raise IndexOutOfRange(f"x={x} outside 1..{lf.n}")
    out = []
    while x:
        out.append(x)
        x = lf(x)
    return tuple(out)


def decompose(lf: LocalFunction) -> OrbitDecomposition:
    h = _require_heights(lf)
    succ = lf.table
    root = np.zeros(lf.n, dtype=np.int64)
    # ascending height guarantees the parent's root is known first
    for i in np.argsort(h, kind="stable").tolist():
        s = int(succ[i])
        root[i] = i + 1 if s == 0 else root[s - 1]
    classes: dict[int, list[int]] = {}
    children: dict[int, list[int]] = {}
    for x, (r, s) in enumerate(zip(root.tolist(), succ.tolist()), start=1):
        classes.setdefault(r, []).append(x)
        if s:
            children.setdefault(s, []).append(x)
    root.setflags(write=False)
    return OrbitDecomposition(
        class_root=root,
        classes={r: tuple(v) for r, v in sorted(classes.items())},
        children={p: tuple(v) for p, v in sorted(children.items())},
        heights=h,
        parents=succ,
    )


def j_nk(lf: LocalFunction, k: int) -> int:
    """``|{x in 1..n : phi_n^k(x) in 1..n}|``, i.e. the number of ``x`` with ``h(x) > k``."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return int(np.count_nonzero(_require_heights(lf) > k))

"""Fixed-point-free integer functions and their local restrictions.

A function here maps the non-negative integers to themselves with ``phi(0) = 0``
and no fixed point among the positive integers. Functions are described by a
small text DSL::

    shift:t=1                       x -> x + 1
    shift:t=-7                      x -> x - 7 on x > 7, else 0
    nextprime                       p -> next prime on primes, else 0
    collatz                         rcwa:mod=2;0:1,0;1:3,1;cut=2
    chapman                         rcwa:mod=2;0:3,2;1:1,-1;cut=0
    rcwa:mod=3;0:1,0;1:2,1;2:5,-1;cut=1
    table:1>2,2>1

An ``rcwa`` branch ``j:a,b`` sends ``x = j (mod d)`` to ``(a*x + b)/d``.
Inputs ``x <= cut`` and non-positive branch values map to 0.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np
from sympy import isprime, nextprime

from .errors import (
    EmptyBranchError,
    EmptyInput,
    FixedPointError,
    IntegralityError,
    SpecSyntaxError,
)

INT64_MAX = 2**63 - 1


class Kind(enum.Enum):
    SHIFT = "shift"
    NEXT_PRIME = "nextprime"
    COLLATZ_VARIANT = "collatz"
    CHAPMAN_PSI = "chapman"
    RCWA = "rcwa"
    TABLE = "table"


_RCWA_KINDS = (Kind.RCWA, Kind.COLLATZ_VARIANT, Kind.CHAPMAN_PSI)

# (modulus, branches, cut) of the sugared rcwa families
COLLATZ_PARAMS = (2, ((1, 0), (3, 1)), 2)
CHAPMAN_PARAMS = (2, ((3, 2), (1, -1)), 0)


@dataclass(frozen=True)
class FunctionSpec:
    """Validated description of a function in the class Phi.

    Construct through :func:`parse_spec` or the classmethods; the constructor
    validates integrality and the absence of fixed points and raises a
    :class:`~orbitmat.errors.SpecError` subclass otherwise.
    """

    kind: Kind
    shift_t: int | None = None
    rcwa_modulus: int | None = None
    rcwa_branches: tuple[tuple[int, int], ...] = ()
    rcwa_cut: int = 0
    table_entries: tuple[tuple[int, int], ...] = ()
    _lookup: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.kind is Kind.SHIFT:
            _validate_shift(self.shift_t)
        elif self.kind in _RCWA_KINDS:
            object.__setattr__(self, "rcwa_branches",
                               tuple((int(a), int(b)) for a, b in self.rcwa_branches))
            _validate_rcwa(self.rcwa_modulus, self.rcwa_branches, self.rcwa_cut)
        elif self.kind is Kind.TABLE:
            entries = tuple(sorted((int(k), int(v)) for k, v in self.table_entries))
            object.__setattr__(self, "table_entries", entries)
            self._lookup.update(_validate_table(entries))

    @classmethod
    def shift(cls, t: int) -> FunctionSpec:
        return cls(Kind.SHIFT, shift_t=int(t))

    @classmethod
    def next_prime(cls) -> FunctionSpec:
        return cls(Kind.NEXT_PRIME)

    @classmethod
    def collatz(cls) -> FunctionSpec:
        d, branches, cut = COLLATZ_PARAMS
        return cls(Kind.COLLATZ_VARIANT, rcwa_modulus=d, rcwa_branches=branches, rcwa_cut=cut)

    @classmethod
    def chapman(cls) -> FunctionSpec:
        d, branches, cut = CHAPMAN_PARAMS
        return cls(Kind.CHAPMAN_PSI, rcwa_modulus=d, rcwa_branches=branches, rcwa_cut=cut)

    @classmethod
    def rcwa(cls, modulus: int, branches: Iterable[tuple[int, int]], cut: int = 0) -> FunctionSpec:
        return cls(Kind.RCWA, rcwa_modulus=int(modulus),
                   rcwa_branches=tuple(branches), rcwa_cut=int(cut))

    @classmethod
    def table(cls, entries: Mapping[int, int]) -> FunctionSpec:
        return cls(Kind.TABLE, table_entries=tuple(dict(entries).items()))

    @property
    def text(self) -> str:
        """Canonical DSL text; ``parse_spec(spec.text) == spec``."""
        if self.kind is Kind.SHIFT:
            return f"shift:t={self.shift_t}"
        if self.kind in (Kind.NEXT_PRIME, Kind.COLLATZ_VARIANT, Kind.CHAPMAN_PSI):
            return self.kind.value
        if self.kind is Kind.RCWA:
            branches = ";".join(f"{j}:{a},{b}" for j, (a, b) in enumerate(self.rcwa_branches))
            return f"rcwa:mod={self.rcwa_modulus};{branches};cut={self.rcwa_cut}"
        return "table:" + ",".join(f"{k}>{v}" for k, v in self.table_entries)

    def __call__(self, x: int) -> int:
        return evaluate(self, x)


def _validate_shift(t):
    if t is None:
        raise SpecSyntaxError("shift needs t")
    if t == 0:
        raise EmptyBranchError(1, "shift by 0 fixes every x")
    if abs(t) > INT64_MAX:
        raise OverflowError(f"shift t={t} exceeds the 64-bit range")


def _validate_rcwa(d, branches, cut):
    if d is None or d < 2:
        raise SpecSyntaxError(f"rcwa modulus must be >= 2, got {d}")
    if len(branches) != d:
        raise SpecSyntaxError(f"rcwa mod={d} needs {d} branches, got {len(branches)}")
    if cut < 0:
        raise SpecSyntaxError(f"cut must be >= 0, got {cut}")
    for j, (a, b) in enumerate(branches):
        if a < 0:
            raise SpecSyntaxError(f"branch {j}: multiplier must be >= 0, got {a}")
        if abs(a) > INT64_MAX or abs(b) > INT64_MAX:
            raise OverflowError(f"branch {j} coefficients exceed the 64-bit range")
    for j, (a, b) in enumerate(branches):
        if (a * j + b) % d:
            raise IntegralityError(j, a, b, d)
    for j, (a, b) in enumerate(branches):
        # fixed point of branch j solves (d - a) x = b
        if a == d:
            if b == 0:
                lo = max(cut + 1, 1)
                first = lo + (j - lo) % d
                raise EmptyBranchError(first, f"branch {j} is the identity on its class "
                                              f"(first fixed point x={first})")
            continue
        den = d - a
        if b % den == 0:
            x = b // den
            if x >= 1 and x % d == j and x > cut:
                raise FixedPointError(x)


def _validate_table(entries):
    lookup = {}
    for k, v in entries:
        if k < 1:
            raise SpecSyntaxError(f"table key must be >= 1, got {k}")
        if v < 1:
            raise SpecSyntaxError(f"table value must be >= 1, got {k}>{v}")
        if k in lookup:
            raise SpecSyntaxError(f"duplicate table key {k}")
        if k == v:
            raise FixedPointError(k)
        if v > INT64_MAX or k > INT64_MAX:
            raise OverflowError(f"table entry {k}>{v} exceeds the 64-bit range")
        lookup[k] = v
    if not lookup:
        raise SpecSyntaxError("empty table")
    return lookup


_INT = r"[+-]?\d+"
_SHIFT_RE = re.compile(rf"shift:t=({_INT})")
_RCWA_RE = re.compile(r"rcwa:mod=(\d+);(.+?)(?:;cut=(\d+))?")
_BRANCH_RE = re.compile(rf"(\d+):({_INT}),({_INT})")
_PAIR_RE = re.compile(r"(\d+)>(\d+)")


def parse_spec(text: str) -> FunctionSpec:
    """Parse DSL text into a validated :class:`FunctionSpec`.

    >>> parse_spec("shift:t=1").shift_t
    1
    >>> parse_spec("table:1>2,2>1").table_entries
    ((1, 2), (2, 1))
    """
    s = "".join(text.split())
    if s == "nextprime":
        return FunctionSpec.next_prime()
    if s == "collatz":
        return FunctionSpec.collatz()
    if s == "chapman":
        return FunctionSpec.chapman()
    if m := _SHIFT_RE.fullmatch(s):
        return FunctionSpec.shift(int(m.group(1)))
    if m := _RCWA_RE.fullmatch(s):
        d = int(m.group(1))
        by_residue = {}
        for part in m.group(2).split(";"):
            bm = _BRANCH_RE.fullmatch(part)
            if bm is None:
                raise SpecSyntaxError(f"bad rcwa branch {part!r} in {text!r}")
            j, a, b = (int(g) for g in bm.groups())
            if j >= d or j in by_residue:
                raise SpecSyntaxError(f"residue {j} repeated or not below mod={d}")
            by_residue[j] = (a, b)
        if sorted(by_residue) != list(range(d)):
            missing = sorted(set(range(d)) - set(by_residue))
            raise SpecSyntaxError(f"rcwa mod={d} is missing residues {missing}")
        cut = int(m.group(3)) if m.group(3) is not None else 0
        return FunctionSpec.rcwa(d, [by_residue[j] for j in range(d)], cut)
    if s.startswith("table:"):
        entries = []
        for part in s[len("table:"):].split(","):
            pm = _PAIR_RE.fullmatch(part)
            if pm is None:
                raise SpecSyntaxError(f"bad table pair {part!r} in {text!r}")
            entries.append((int(pm.group(1)), int(pm.group(2))))
        keys = [k for k, _ in entries]
        if len(set(keys)) != len(keys):
            raise SpecSyntaxError(f"duplicate table key in {text!r}")
        return FunctionSpec.table(dict(entries))
    raise SpecSyntaxError(f"cannot parse function spec {text!r}")


def _checked(value: int) -> int:
    if not -INT64_MAX - 1 <= value <= INT64_MAX:
        raise OverflowError(f"value {value} leaves the 64-bit range; reduce n or x")
    return value


def evaluate(spec: FunctionSpec, x: int) -> int:
    """Return ``phi(x)``; 0 outside the effective domain or for non-positive values."""
    if x < 0:
        raise ValueError(f"x must be >= 0, got {x}")
    _checked(x)
    if x == 0:
        return 0
    kind = spec.kind
    if kind is Kind.SHIFT:
        t = spec.shift_t
        if t < 0 and x <= -t:
            return 0
        y = _checked(x + t)
    elif kind is Kind.NEXT_PRIME:
        if not isprime(x):
            return 0
        y = _checked(int(nextprime(x)))
    elif kind is Kind.TABLE:
        return spec._lookup.get(x, 0)
    else:
        if x <= spec.rcwa_cut:
            return 0
        d = spec.rcwa_modulus
        a, b = spec.rcwa_branches[x % d]
        y = _checked(a * x + b) // d
    return y if y > 0 else 0


@dataclass(frozen=True, eq=False)
class LocalFunction:
    """``phi_n``: ``phi`` restricted to ``{0..n}``, pairs leaving ``{1..n}^2`` sent to 0.

    ``table[x - 1]`` holds ``phi_n(x)`` for ``x`` in ``1..n``. The array is
    read-only.
    """

    n: int
    table: np.ndarray
    spec: FunctionSpec | None = None
    _cache: dict = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        table = np.array(self.table, dtype=np.int64)
        if table.shape != (self.n,):
            raise ValueError(f"table must have shape ({self.n},), got {table.shape}")
        if table.size and (table.min() < 0 or table.max() > self.n):
            raise ValueError("table values must lie in 0..n")
        fixed = np.flatnonzero(table == np.arange(1, self.n + 1))
        if fixed.size:
            raise FixedPointError(int(fixed[0]) + 1)
        table.setflags(write=False)
        object.__setattr__(self, "table", table)

    def __call__(self, x: int) -> int:
        if x == 0:
            return 0
        if not 1 <= x <= self.n:
            raise IndexError(f"x={x} outside 0..{self.n}")
        return int(self.table[x - 1])

    @property
    def padded(self) -> np.ndarray:
        """Successor array indexed by ``x`` in ``0..n`` with ``padded[0] == 0``."""
        return np.concatenate(([0], self.table))

    def tolist(self) -> list[int]:
        return self.table.tolist()

    def __eq__(self, other):
        if not isinstance(other, LocalFunction):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.table, other.table)

    def __repr__(self):
        head = self.table[:10].tolist()
        more = ", ..." if self.n > 10 else ""
        return f"LocalFunction(n={self.n}, table={head}{more})"


def _prime_sieve(n: int) -> np.ndarray:
    is_prime = np.ones(n + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, int(n**0.5) + 1):
        if is_prime[p]:
            is_prime[p * p::p] = False
    return np.flatnonzero(is_prime)


def localize(spec: FunctionSpec, n: int) -> LocalFunction:
    """Tabulate ``phi_n`` for ``x = 1..n`` (vectorized, int64 with range checks)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    _checked(n)
    kind = spec.kind
    if kind is Kind.SHIFT:
        _checked(n + abs(spec.shift_t))
    elif kind in _RCWA_KINDS:
        _checked(max(a for a, _ in spec.rcwa_branches) * n
                 + max(abs(b) for _, b in spec.rcwa_branches))
    x = np.arange(1, n + 1, dtype=np.int64)
    if kind is Kind.SHIFT:
        t = spec.shift_t
        y = x + t
        if t < 0:
            y[x <= -t] = 0
    elif kind is Kind.NEXT_PRIME:
        y = np.zeros(n, dtype=np.int64)
        primes = _prime_sieve(n)
        y[primes[:-1] - 1] = primes[1:]
    elif kind is Kind.TABLE:
        y = np.zeros(n, dtype=np.int64)
        for k, v in spec.table_entries:
            if k <= n:
                y[k - 1] = v
    else:
        d = spec.rcwa_modulus
        a = np.array([ab[0] for ab in spec.rcwa_branches], dtype=np.int64)
        b = np.array([ab[1] for ab in spec.rcwa_branches], dtype=np.int64)
        r = x % d
        y = (a[r] * x + b[r]) // d
        y[x <= spec.rcwa_cut] = 0
    y[(y <= 0) | (y > n)] = 0
    return LocalFunction(n, y, spec)


def cycle_threshold(cycle: Iterable[int]) -> int:
    """Smallest ``n`` for which a cycle of ``phi`` survives in ``phi_n``."""
    members = list(cycle)
    if not members:
        raise EmptyInput("cycle is empty")
    return max(members)

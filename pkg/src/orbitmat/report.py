"""Analysis orchestration, JSON reports, SVG sparsity plots and n-range scans."""

from __future__ import annotations

import json
import logging
import time
from dataclasses import dataclass, field, fields
from pathlib import Path

import numpy as np

from . import matrix_engine as me
from .errors import OracleError, SizeLimitExceeded
from .exact_oracle import ORACLE_LIMIT, indicator_det, verify_inverse
from .function_model import localize, parse_spec
from .orbit_engine import decompose, detect_cycle, find_cycles, heights

log = logging.getLogger(__name__)

SVG_LIMIT = 4096
CELL = 10
POSITIVE_COLOR = "#d62728"
NEGATIVE_COLOR = "#1f77b4"


@dataclass
class AnalysisReport:
    spec_text: str
    n: int
    has_cycle: bool
    cycle_elements: tuple[int, ...] | None = None
    det: int | None = None
    degree_m: int | None = None
    partition_pi: tuple[int, ...] | None = None
    jnk_counts: tuple[int, ...] | None = None
    inverse_nnz: int | None = None
    class_count: int | None = None
    bound_check: bool | None = None
    timings: dict[str, float] = field(default_factory=dict, compare=False)

    def to_dict(self, timings: bool = True) -> dict:
        """Fields in declaration order; absent (``None``) fields are omitted."""
        out = {}
        for f in fields(self):
            value = getattr(self, f.name)
            if value is None or (f.name == "timings" and not timings):
                continue
            out[f.name] = list(value) if isinstance(value, tuple) else value
        return out

    def to_json(self, timings: bool = True) -> str:
        return json.dumps(self.to_dict(timings), indent=2) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> AnalysisReport:
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown report fields {sorted(unknown)}")
        kwargs = {k: tuple(v) if isinstance(v, list) else v for k, v in data.items()}
        return cls(**kwargs)

    @classmethod
    def from_json(cls, text: str) -> AnalysisReport:
        return cls.from_dict(json.loads(text))


class _Timer:
    def __init__(self):
        self.timings: dict[str, float] = {}
        self._start = time.perf_counter()
        self._last = self._start

    def lap(self, name: str):
        now = time.perf_counter()
        self.timings[name] = round((now - self._last) * 1e3, 3)
        self._last = now

    def finish(self) -> dict[str, float]:
        self.timings["total"] = round((time.perf_counter() - self._start) * 1e3, 3)
        return self.timings


def run_analyze(
    spec_text: str,
    n: int,
    *,
    verify: bool = False,
    materialize_inverse: bool = True,
    json_path: str | Path | None = None,
    svg_ihat: str | Path | None = None,
    svg_inv: str | Path | None = None,
    oracle_limit: int = ORACLE_LIMIT,
) -> AnalysisReport:
    """Analyze ``phi_n`` for the function given by ``spec_text``.

    With ``materialize_inverse=False`` the inverse is only counted (O(n)
    memory), which is the mode meant for large ``n``. With ``verify=True`` and
    ``n <= oracle_limit`` the dense exact oracle recomputes the determinant and
    checks the inverse; any disagreement raises :class:`OracleError`.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    timer = _Timer()
    spec = parse_spec(spec_text)
    lf = localize(spec, n)
    timer.lap("localize")
    cyc = detect_cycle(lf)
    timer.lap("cycle")
    m_mat = me.build_m(lf)
    report = AnalysisReport(spec_text=spec_text, n=n, has_cycle=cyc.found)
    ihat = None
    inv = None

    if cyc.found:
        report.cycle_elements = cyc.elements
        me.cycle_eigenvector(m_mat, cyc)
        timer.lap("eigenvector")
    else:
        hp = heights(lf)
        timer.lap("heights")
        report.degree_m = hp.degree_m
        report.partition_pi = hp.partition_pi
        report.bound_check = hp.bound_holds()
        if materialize_inverse:
            jnk = tuple(me.nnz(p) for p in me.iter_powers(m_mat, hp.degree_m))
            degree = me.nilpotency_degree(m_mat)
            inv = me.inverse_via_orbits(lf, hp)
            report.class_count = len(decompose(lf).classes)
            report.inverse_nnz = inv.nnz
            if degree != hp.degree_m or inv.nnz != hp.weighted_sum:
                raise OracleError("matrix and height computations disagree")
        else:
            cumulative = np.cumsum(hp.partition_pi)
            jnk = tuple(int(n - c) for c in cumulative)
            report.class_count = int(np.count_nonzero(lf.table == 0))
            report.inverse_nnz = me.inverse_nnz(hp)
        report.jnk_counts = jnk
        timer.lap("matrix")

    if verify:
        if n > oracle_limit:
            log.warning("n=%d exceeds the oracle limit %d; skipping exact verification",
                        n, oracle_limit)
        else:
            ihat = me.build_ihat(lf)
            report.det = indicator_det(ihat, oracle_limit)
            if report.det != (0 if cyc.found else 1):
                raise OracleError(f"det={report.det} contradicts the cycle verdict")
            if not cyc.found:
                if inv is None:
                    inv = me.inverse_via_orbits(lf)
                if me.inverse_via_neumann(m_mat) != inv:
                    raise OracleError("closed-form and Neumann inverses differ")
                if not verify_inverse(ihat, inv, oracle_limit):
                    raise OracleError("(I - M) times the inverse is not the identity")
            timer.lap("oracle")

    if svg_ihat is not None:
        render_svg(ihat if ihat is not None else me.build_ihat(lf), svg_ihat)
    if svg_inv is not None:
        if cyc.found:
            log.warning("I - M is singular; not writing %s", svg_inv)
        else:
            render_svg(inv if inv is not None else me.inverse_via_orbits(lf), svg_inv)
    report.timings = timer.finish()
    if json_path is not None:
        Path(json_path).write_text(report.to_json(), encoding="utf-8")
    return report


def svg_text(matrix) -> str:
    """Sparsity plot: row 1 on top, 10-unit cells, +1 red, -1 blue, white ground."""
    if matrix.n > SVG_LIMIT:
        raise SizeLimitExceeded(f"plots are capped at n={SVG_LIMIT}, got {matrix.n}")
    size = matrix.n * CELL
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="#ffffff"/>',
    ]
    for r, c, v in sorted(matrix.entries(), key=lambda e: (e[0], e[1])):
        if v == 0:
            continue
        color = POSITIVE_COLOR if v > 0 else NEGATIVE_COLOR
        lines.append(f'<rect x="{(c - 1) * CELL}" y="{(r - 1) * CELL}" '
                     f'width="{CELL}" height="{CELL}" fill="{color}"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_svg(matrix, path: str | Path) -> Path:
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(svg_text(matrix))
    return path


def scan_for_cycle(spec_text: str, n_min: int, n_max: int, samples: int = 16) -> int | None:
    """Smallest ``n`` in ``[n_min, n_max]`` for which ``phi_n`` has a cycle.

    A cycle of ``phi_n`` is a cycle of ``phi`` whose largest element is at most
    ``n``, so the answer comes from the cycles of ``phi_{n_max}``. It is then
    confirmed by direct detection on both sides of the threshold and on evenly
    spaced ``n`` across the range.
    """
    if not 1 <= n_min <= n_max:
        raise ValueError(f"need 1 <= n_min <= n_max, got {n_min}, {n_max}")
    spec = parse_spec(spec_text)
    cycles = find_cycles(localize(spec, n_max))
    first = max(n_min, min(max(c) for c in cycles)) if cycles else None

    probes = {n_min, n_max}
    probes.update(int(v) for v in np.linspace(n_min, n_max, samples))
    if first is not None:
        probes.update(v for v in (first - 1, first, first + 1) if n_min <= v <= n_max)
    for n in sorted(probes):
        found = detect_cycle(localize(spec, n)).found
        if found != (first is not None and n >= first):
            raise OracleError(f"cycle indicator not monotone at n={n}")
    return first

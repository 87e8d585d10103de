"""Sweeps over subgraph families and empirical checks of the eigenvalue bounds.

Three statements are checked on the records of a sweep:
  * the Han-Hua reciprocal-sum lower bound on integer lattices, with the
    explicit constants (64 d^3 omega_d^(1/d))^(-1) and 1/(32 d);
  * decay of sigma_1 (and higher sigma_k) at rate |B|^(-1/(d-1)), as a
    log-log slope fit;
  * a no-blow-up certificate for the normalized ratios
    r_k = sigma_k * |B|^(1/(d-1)) * k^(-(d+2)/d), standing in for the
    existential constant of the k-th eigenvalue bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .groups import LATTICE, GroupSpec
from .solver import assemble, dtn_matrix, steklov_spectrum
from .subgraph import ShapeFamily, induce, instantiate_family, isoperimetric_ratio


class CheckScopeError(ValueError):
    """A check was requested outside the scope of the theorem it verifies."""


@dataclass(frozen=True)
class HanHuaConstants:
    d: int
    omega_d: float
    c_bar: float
    c_prime: float

    @classmethod
    def for_order(cls, d: int) -> "HanHuaConstants":
        omega_d = math.pi ** (d / 2) / math.gamma(d / 2 + 1)
        c_bar = 1.0 / (64 * d**3 * omega_d ** (1.0 / d))
        return cls(d=d, omega_d=omega_d, c_bar=c_bar, c_prime=1.0 / (32 * d))

    def lower_bound(self, omega_size: int) -> float:
        return self.c_bar * omega_size ** (1.0 / self.d) - self.c_prime / omega_size


@dataclass
class ExperimentRecord:
    family: str
    n: int
    size_interior: int
    size_closure: int
    size_boundary: int
    sigmas: list[float]  # sigma_1 .. sigma_K
    normalized_main: list[float]  # r_k for k = 1..K
    perrin_ratio: float
    hh_lhs: float | None
    hh_rhs: float | None
    iso_ratio: float
    sigma0: float = 0.0


@dataclass
class CheckResult:
    check: str
    family: str
    k: int | None
    value: float
    threshold: float | None
    verdict: bool
    unconditional: bool = False
    detail: str = ""


def run_sweep(
    spec: GroupSpec,
    family: ShapeFamily,
    n_range: range,
    k_count: int,
) -> list[ExperimentRecord]:
    """One record per family parameter, in increasing-n order."""
    if k_count < 1:
        raise ValueError("K must be >= 1")
    d = spec.growth_order
    records = []
    for n in n_range:
        try:
            omega = instantiate_family(spec, family, n)
            sub = induce(spec, omega)
            spectrum = steklov_spectrum(dtn_matrix(assemble(sub)), with_vectors=False)
        except Exception as exc:
            raise RuntimeError(f"sweep failed at (family={family.kind.value}, n={n})") from exc
        k_eff = min(k_count, sub.n_boundary - 1)
        vals = spectrum.eigenvalues
        sigmas = [float(vals[k]) for k in range(1, k_eff + 1)]
        b_pow = sub.n_boundary ** (1.0 / (d - 1))
        r_main = [s * b_pow * (k + 1) ** (-(d + 2) / d) for k, s in enumerate(sigmas)]
        if all(b.kind == LATTICE for b in spec.blocks):
            consts = HanHuaConstants.for_order(d)
            hh_lhs = sum(1.0 / float(vals[l]) for l in range(1, d + 1)) if k_eff >= 1 and sub.n_boundary > d else None
            hh_rhs = consts.lower_bound(sub.n_interior)
        else:
            hh_lhs = hh_rhs = None
        records.append(
            ExperimentRecord(
                family=family.kind.value,
                n=n,
                size_interior=sub.n_interior,
                size_closure=sub.n_closure,
                size_boundary=sub.n_boundary,
                sigmas=sigmas,
                normalized_main=r_main,
                perrin_ratio=sigmas[0] * b_pow if sigmas else float("nan"),
                hh_lhs=hh_lhs,
                hh_rhs=hh_rhs,
                iso_ratio=isoperimetric_ratio(sub, d),
                sigma0=float(vals[0]),
            )
        )
    return records


def check_han_hua(
    records: list[ExperimentRecord], consts: HanHuaConstants, spec: GroupSpec
) -> list[CheckResult]:
    """The reciprocal-sum bound must hold on every integer-lattice record."""
    if any(b.kind != LATTICE for b in spec.blocks):
        raise CheckScopeError("the Han-Hua bound is stated for integer lattices only")
    results = []
    margins = []
    for rec in records:
        if rec.hh_lhs is None:
            continue
        margins.append((rec.n, rec.hh_lhs - rec.hh_rhs))
    if not margins:
        raise ValueError("no records carry Han-Hua data (need K >= d)")
    worst_n, worst = min(margins, key=lambda t: t[1])
    results.append(
        CheckResult(
            check="han_hua",
            family=records[0].family,
            k=None,
            value=worst,
            threshold=0.0,
            verdict=worst >= 0.0,
            unconditional=True,
            detail=f"min margin at n={worst_n} over {len(margins)} records",
        )
    )
    return results


def check_decay(
    records: list[ExperimentRecord], d: int, slope_tolerance: float = 0.15
) -> list[CheckResult]:
    """Log-log slope of sigma_k against |B| for each k, compared to the
    theorem rate -1/(d-1)."""
    if len(records) < 5:
        raise ValueError("need at least 5 records for a slope fit")
    threshold = -1.0 / (d - 1) + slope_tolerance
    k_count = min(len(r.sigmas) for r in records)
    results = []
    log_b = np.log([r.size_boundary for r in records])
    for k in range(1, k_count + 1):
        log_s = np.log([r.sigmas[k - 1] for r in records])
        slope, _ = np.polyfit(log_b, log_s, 1)
        results.append(
            CheckResult(
                check="decay",
                family=records[0].family,
                k=k,
                value=float(slope),
                threshold=threshold,
                verdict=float(slope) <= threshold,
            )
        )
    return results


def check_main_bound(records: list[ExperimentRecord]) -> list[CheckResult]:
    """No-blow-up certificate for r_k(n): the supremum is attained early in
    the n-range, or the tail of the sequence is nonincreasing."""
    if not records:
        raise ValueError("no records")
    k_count = min(len(r.normalized_main) for r in records)
    results = []
    ns = [r.n for r in records]
    first_third_cut = ns[0] + (ns[-1] - ns[0]) / 3.0
    half = len(records) // 2
    for k in range(1, k_count + 1):
        series = [r.normalized_main[k - 1] for r in records]
        sup = max(series)
        n_at_sup = ns[int(np.argmax(series))]
        tail = series[half:]
        tail_ok = all(b <= a * (1 + 1e-12) for a, b in zip(tail, tail[1:]))
        verdict = (n_at_sup <= first_third_cut) or tail_ok
        results.append(
            CheckResult(
                check="main_bound",
                family=records[0].family,
                k=k,
                value=sup,
                threshold=None,
                verdict=verdict,
                detail=f"sup at n={n_at_sup}, tail nonincreasing={tail_ok}",
            )
        )
    return results


def check_spectrum_invariants(records: list[ExperimentRecord]) -> list[CheckResult]:
    """sigma_0 = 0 and sigma_1 > 0 on every record, an unconditional check."""
    worst0 = max(abs(r.sigma0) for r in records)
    worst1 = min(r.sigmas[0] for r in records if r.sigmas)
    ok = worst0 <= 1e-9 and worst1 > 1e-9
    return [
        CheckResult(
            check="spectrum",
            family=records[0].family,
            k=None,
            value=worst0,
            threshold=1e-9,
            verdict=ok,
            unconditional=True,
            detail=f"max |sigma_0|={worst0:.3e}, min sigma_1={worst1:.3e}",
        )
    ]


RECORDS_HEADER = "family,n,omega,omega_bar,b,k,sigma,r_main,perrin_ratio,hh_lhs,hh_rhs,iso_ratio"
CHECKS_HEADER = "check,family,k,value,threshold,verdict"


def _fmt(x: float | None) -> str:
    return "" if x is None else f"{x:.17g}"


def records_to_csv(records: list[ExperimentRecord]) -> str:
    """Long format, one row per (record, k)."""
    lines = [RECORDS_HEADER]
    for r in records:
        for k, (sigma, r_main) in enumerate(zip(r.sigmas, r.normalized_main), start=1):
            lines.append(
                ",".join(
                    [
                        r.family,
                        str(r.n),
                        str(r.size_interior),
                        str(r.size_closure),
                        str(r.size_boundary),
                        str(k),
                        _fmt(sigma),
                        _fmt(r_main),
                        _fmt(r.perrin_ratio),
                        _fmt(r.hh_lhs),
                        _fmt(r.hh_rhs),
                        _fmt(r.iso_ratio),
                    ]
                )
            )
    return "\n".join(lines) + "\n"


def checks_to_csv(checks: list[CheckResult]) -> str:
    lines = [CHECKS_HEADER]
    for c in checks:
        lines.append(
            ",".join(
                [
                    c.check,
                    c.family,
                    "" if c.k is None else str(c.k),
                    _fmt(c.value),
                    _fmt(c.threshold),
                    "PASS" if c.verdict else "FAIL",
                ]
            )
        )
    return "\n".join(lines) + "\n"


def emit_report(
    out_dir: str | Path,
    records: list[ExperimentRecord],
    checks: list[CheckResult],
    d: int,
) -> list[Path]:
    """Write records.csv, checks.csv (only if checks ran) and a log-log
    scatter plot of the spectrum prefix against |B| as SVG."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    records_path = out / "records.csv"
    records_path.write_text(records_to_csv(records), encoding="utf-8")
    written.append(records_path)
    if checks:
        checks_path = out / "checks.csv"
        checks_path.write_text(checks_to_csv(checks), encoding="utf-8")
        written.append(checks_path)
    plot_path = out / "decay.svg"
    _plot_decay(plot_path, records, d)
    written.append(plot_path)
    return written


def _plot_decay(path: Path, records: list[ExperimentRecord], d: int) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    matplotlib.rcParams["svg.fonttype"] = "none"
    k_count = min(len(r.sigmas) for r in records) if records else 0
    fig, ax = plt.subplots(figsize=(6, 4.5))
    bs = np.array([r.size_boundary for r in records], dtype=float)
    for k in range(1, k_count + 1):
        sig = [r.sigmas[k - 1] for r in records]
        ax.plot(bs, sig, "o-", ms=4, label=f"k={k}")
    if len(bs) >= 2 and k_count >= 1:
        ref = records[0].sigmas[0] * (bs / bs[0]) ** (-1.0 / (d - 1))
        ax.plot(bs, ref, "k--", lw=1, label=f"slope -1/{d - 1}")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("|B|")
    ax.set_ylabel("sigma_k")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)

"""Bundled empirical replication frequencies and comparison reports."""
from __future__ import annotations

import csv
import hashlib
import io
from dataclasses import dataclass
from importlib import resources

import numpy as np

from . import replication as rep
from ._format import round_half_up, to_csv
from .normal import quantile

COCHRANE_ASSET = "cochrane_replication.csv"
OSC_ASSET = "osc_replication.csv"

# sha256 of each asset with its comment lines removed
_CHECKSUMS = {
    COCHRANE_ASSET: "a665f013f4886f082ed2577eb7e5e568bcc6d3676384f63a5ff93995cb7be6a9",
    OSC_ASSET: "21299db633ce5a1f094c3665cb38b70e082706e9f714c60f2b71c25db38f968d",
}


class ChecksumError(RuntimeError):
    pass


@dataclass(frozen=True)
class EmpiricalRow:
    p_two_sided: float
    cochrane_freq: float
    goodman_freq: float


@dataclass(frozen=True)
class ComparisonRow:
    p_two_sided: float
    empirical: float
    predicted_eq5: float
    predicted_rival: float
    abs_error_eq5: float
    abs_error_rival: float
    goodman: float | None = None


@dataclass(frozen=True)
class ComparisonReport:
    rows: tuple[ComparisonRow, ...]
    max_abs_error_eq5: float
    mean_abs_error_eq5: float
    max_abs_error_rival: float
    mean_abs_error_rival: float

    columns = ("p_two_sided", "empirical", "goodman", "predicted_eq5",
               "predicted_rival", "abs_error_eq5", "abs_error_rival")

    def table(self) -> list[tuple]:
        return [(r.p_two_sided, r.empirical, r.goodman, r.predicted_eq5,
                 r.predicted_rival, r.abs_error_eq5, r.abs_error_rival) for r in self.rows]

    def as_dict(self) -> dict:
        return {
            "rows": [dict(zip(self.columns, t)) for t in self.table()],
            "summary": {
                "max_abs_error_eq5": self.max_abs_error_eq5,
                "mean_abs_error_eq5": self.mean_abs_error_eq5,
                "max_abs_error_rival": self.max_abs_error_rival,
                "mean_abs_error_rival": self.mean_abs_error_rival,
            },
        }


def _read_asset(name: str, verify: bool = True) -> list[dict[str, str]]:
    text = resources.files("replicalc").joinpath("data", name).read_text()
    return parse_asset(text, name if verify else None)


def parse_asset(text: str, checksum_key: str | None = None) -> list[dict[str, str]]:
    body = "".join(line for line in text.splitlines(keepends=True)
                   if not line.startswith("#"))
    if checksum_key is not None:
        digest = hashlib.sha256(body.encode()).hexdigest()
        if digest != _CHECKSUMS[checksum_key]:
            raise ChecksumError(f"{checksum_key}: checksum mismatch ({digest})")
    return list(csv.DictReader(io.StringIO(body)))


def rows_from_records(records: list[dict[str, str]]) -> list[EmpiricalRow]:
    rows = [EmpiricalRow(float(r["p_two_sided"]), float(r["cochrane"]), float(r["goodman"]))
            for r in records]
    for r in rows:
        for v in (r.p_two_sided, r.cochrane_freq, r.goodman_freq):
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"value {v} outside [0, 1]")
    ps = [r.p_two_sided for r in rows]
    if any(a <= b for a, b in zip(ps, ps[1:])):
        raise ValueError("P values must decrease down the table")
    return rows


def load_empirical() -> list[EmpiricalRow]:
    return rows_from_records(_read_asset(COCHRANE_ASSET))


def _err(a: float, b: float) -> float:
    return round_half_up(abs(a - b), 3)


def compare(rows: list[EmpiricalRow] | None = None) -> ComparisonReport:
    """Score same-size and rival predictions against empirical frequencies.

    Predictions are rounded half-up to 3 decimals before the errors are
    taken, which is the precision the frequencies are reported at.
    """
    if rows is None:
        rows = load_empirical()
    out = []
    for r in rows:
        same = round_half_up(rep.prob_replication_from_p(r.p_two_sided / 2).probability, 3)
        rival = round_half_up(rep.prob_replication_rival(r.p_two_sided).probability, 3)
        out.append(ComparisonRow(r.p_two_sided, r.cochrane_freq, same, rival,
                                 _err(same, r.cochrane_freq), _err(rival, r.cochrane_freq),
                                 r.goodman_freq))
    e5 = [r.abs_error_eq5 for r in out]
    er = [r.abs_error_rival for r in out]
    return ComparisonReport(tuple(out), max(e5), float(np.mean(e5)), max(er), float(np.mean(er)))


@dataclass(frozen=True)
class OSCPrediction:
    mean_p_two_sided: float
    predicted: float
    replicated: int
    studies: int
    observed: float
    ci_low: float
    ci_high: float

    @property
    def inside_ci(self) -> bool:
        return self.ci_low <= self.predicted <= self.ci_high

    def as_dict(self) -> dict:
        return {
            "mean_p_two_sided": self.mean_p_two_sided,
            "predicted": self.predicted,
            "replicated": self.replicated,
            "studies": self.studies,
            "observed": self.observed,
            "ci_low": self.ci_low,
            "ci_high": self.ci_high,
            "inside_ci": self.inside_ci,
        }


def osc_prediction() -> OSCPrediction:
    """Same-size replication probability at the mean original P value."""
    (r,) = _read_asset(OSC_ASSET)
    p = float(r["mean_p_two_sided"])
    k, n = int(r["replicated"]), int(r["studies"])
    pred = rep.prob_replication_from_p(p / 2).probability
    return OSCPrediction(p, pred, k, n, k / n, float(r["ci_low"]), float(r["ci_high"]))


CURVE_COLUMNS = ("kind", "z", "same_size", "rival", "infinite_n2", "empirical")


def curve_grid(z_lo: float = 0.0, z_hi: float = 4.0, step: float = 0.01) -> np.ndarray:
    if not z_lo < z_hi:
        raise ValueError("z_lo must be below z_hi")
    if not step > 0:
        raise ValueError("step must be positive")
    k = int(np.floor((z_hi - z_lo) / step + 1e-9))
    # round away representation noise so 0.07 prints as 0.07
    return np.round(z_lo + np.arange(k + 1) * step, 12)


def curve_rows(z_lo: float = 0.0, z_hi: float = 4.0, step: float = 0.01) -> list[tuple]:
    """Curve rows on the grid, then one marker row per empirical point."""
    z = curve_grid(z_lo, z_hi, step)
    curves = rep.figure3_curves(z)
    rows = [("curve", float(z[i]), float(curves["same_size"][i]), float(curves["rival"][i]),
             float(curves["infinite_n2"][i]), None) for i in range(z.size)]

    markers = [("cochrane", r.p_two_sided, r.cochrane_freq) for r in load_empirical()]
    osc = osc_prediction()
    markers.append(("osc", osc.mean_p_two_sided, osc.observed))
    mz = np.array([-quantile(p / 2) for _, p, _ in markers])
    mc = rep.figure3_curves(mz)
    for i, (kind, _, emp) in enumerate(markers):
        rows.append((kind, float(mz[i]), float(mc["same_size"][i]), float(mc["rival"][i]),
                     float(mc["infinite_n2"][i]), emp))
    return rows


def emit_figure3(z_lo: float = 0.0, z_hi: float = 4.0, step: float = 0.01,
                 path=None, precision: int | None = 6) -> str:
    text = to_csv(CURVE_COLUMNS, curve_rows(z_lo, z_hi, step), precision)
    if path is not None:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    return text

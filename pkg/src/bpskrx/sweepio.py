"""CSV schema for sweep results.

One fixed column set for every emitter (analytic sweeps, Monte Carlo runs):

    alpha_sq,receiver,eta,nu,tau,xi,p_error,beta_opt,r_opt,gamma_opt,provenance,std_err

Numbers are written with ``repr``, Python's shortest round-trip decimal. A
blank field means "this quantity does not enter that receiver's formula"
(never NaN): the quantum floor and the homodyne limit carry no detector
fields at all, the tau-attenuated homodyne carries only tau, ideal-coupling
click receivers carry eta and nu, the imperfect ones all four. ``std_err``
is filled only on Monte Carlo rows.

Metadata travels in ``#``-prefixed ``key=value`` lines before the header;
readers skip any ``#`` line. No timestamps are written anywhere, so equal
inputs give byte-equal files.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import CsvFormatError, RECEIVER_TAGS, ReceiverResult

__all__ = ["CSV_HEADER", "CsvRow", "row_from_result", "write_csv", "read_csv"]

CSV_HEADER = "alpha_sq,receiver,eta,nu,tau,xi,p_error,beta_opt,r_opt,gamma_opt,provenance,std_err"

_FIELDS = CSV_HEADER.split(",")

#: Detector columns that are meaningful for each receiver tag.
_DETECTOR_COLS = {
    "helstrom": (),
    "homodyne": (),
    "homodyne_tau": ("tau",),
    "kennedy": ("eta", "nu"),
    "kennedy_imperfect": ("eta", "nu", "tau", "xi"),
    "kennedy_raw": ("eta", "nu", "tau", "xi"),
    "type1": ("eta", "nu"),
    "type2": ("eta", "nu"),
    "type2_imperfect": ("eta", "nu", "tau", "xi"),
}


@dataclass(frozen=True)
class CsvRow:
    alpha_sq: float
    receiver: str
    eta: float | None
    nu: float | None
    tau: float | None
    xi: float | None
    p_error: float
    beta_opt: float | None
    r_opt: float | None
    gamma_opt: float | None
    provenance: str
    std_err: float | None


def row_from_result(
    alpha_sq: float, result: ReceiverResult, std_err: float | None = None
) -> CsvRow:
    """Serialize a receiver evaluation, blanking the unused columns."""
    cols = _DETECTOR_COLS[result.receiver]
    det = result.detector
    return CsvRow(
        alpha_sq=alpha_sq,
        receiver=result.receiver,
        eta=det.eta if "eta" in cols else None,
        nu=det.nu if "nu" in cols else None,
        tau=det.tau if "tau" in cols else None,
        xi=det.xi if "xi" in cols else None,
        p_error=result.p_error,
        beta_opt=result.beta_opt,
        r_opt=result.r_opt,
        gamma_opt=result.gamma_opt,
        provenance=result.provenance,
        std_err=std_err,
    )


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    return repr(float(x))


def write_csv(path, rows, metadata: dict | None = None) -> None:
    """Write rows (UTF-8, LF endings) with ``#`` metadata lines up front."""
    lines = []
    for key, value in (metadata or {}).items():
        lines.append(f"# {key}={value}")
    lines.append(CSV_HEADER)
    for row in rows:
        lines.append(",".join(_fmt(getattr(row, f)) for f in _FIELDS))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _parse_float(text: str, line_no: int, col: str) -> float | None:
    if text == "":
        return None
    try:
        return float(text)
    except ValueError:
        raise CsvFormatError(f"column {col!r} is not a number: {text!r}", line_no)


def read_csv(path) -> tuple[dict, list[CsvRow]]:
    """Parse a sweep CSV back into rows.

    Raises CsvFormatError naming the offending 1-based line on any schema
    violation: wrong header, wrong column count, non-numeric values, blank
    required fields, unknown receiver tags or provenance.
    """
    with open(path, encoding="utf-8") as fh:
        raw = fh.read().split("\n")
    metadata: dict = {}
    rows: list[CsvRow] = []
    header_seen = False
    for idx, line in enumerate(raw, start=1):
        if line == "" and idx == len(raw):
            break  # trailing newline
        if line.startswith("#"):
            body = line[1:].strip()
            if "=" in body:
                key, _, value = body.partition("=")
                metadata[key.strip()] = value.strip()
            continue
        if not header_seen:
            if line != CSV_HEADER:
                raise CsvFormatError(
                    f"expected header {CSV_HEADER!r}, got {line!r}", idx
                )
            header_seen = True
            continue
        parts = line.split(",")
        if len(parts) != len(_FIELDS):
            raise CsvFormatError(
                f"expected {len(_FIELDS)} columns, got {len(parts)}", idx
            )
        named = dict(zip(_FIELDS, parts))
        if named["receiver"] not in RECEIVER_TAGS:
            raise CsvFormatError(f"unknown receiver {named['receiver']!r}", idx)
        if named["provenance"] not in ("analytic", "fock", "montecarlo"):
            raise CsvFormatError(f"unknown provenance {named['provenance']!r}", idx)
        alpha_sq = _parse_float(named["alpha_sq"], idx, "alpha_sq")
        p_error = _parse_float(named["p_error"], idx, "p_error")
        if alpha_sq is None or p_error is None:
            raise CsvFormatError("alpha_sq and p_error must not be blank", idx)
        rows.append(
            CsvRow(
                alpha_sq=alpha_sq,
                receiver=named["receiver"],
                eta=_parse_float(named["eta"], idx, "eta"),
                nu=_parse_float(named["nu"], idx, "nu"),
                tau=_parse_float(named["tau"], idx, "tau"),
                xi=_parse_float(named["xi"], idx, "xi"),
                p_error=p_error,
                beta_opt=_parse_float(named["beta_opt"], idx, "beta_opt"),
                r_opt=_parse_float(named["r_opt"], idx, "r_opt"),
                gamma_opt=_parse_float(named["gamma_opt"], idx, "gamma_opt"),
                provenance=named["provenance"],
                std_err=_parse_float(named["std_err"], idx, "std_err"),
            )
        )
    if not header_seen:
        raise CsvFormatError("no header line found", max(len(raw), 1))
    return metadata, rows

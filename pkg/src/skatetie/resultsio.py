"""Official time strings, results CSV files and scenario files."""

from __future__ import annotations

import csv
import io
import os
from typing import IO, Union

from .mcsim import DISCRETIZATIONS, TIE_RULES, TRUNCATE, WINDOW, SimConfig
from .samalogue import HUNDREDTHS, THOUSANDTHS, RaceResult, SamalogueError
from .tieprob import TieScenario

Source = Union[str, os.PathLike, IO[str]]

RESULTS_HEADER = ("skater", "distance_m", "time")
MAX_MINUTES = 99


class TimeParseError(ValueError):
    def __init__(self, text: str, position: int, reason: str):
        super().__init__(f"{reason} at position {position} in {text!r}")
        self.text = text
        self.position = position
        self.reason = reason


class PrecisionError(ValueError):
    """A millisecond time cannot be shown at hundredths without loss."""


class ResultsFormatError(ValueError):
    def __init__(self, line: int, column: str, reason: str):
        super().__init__(f"line {line}, column {column}: {reason}")
        self.line = line
        self.column = column


class ScenarioError(ValueError):
    def __init__(self, key: str, reason: str, line: int | None = None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{key}: {reason}")
        self.key = key
        self.line = line


def _digits(text: str, pos: int) -> int:
    end = pos
    while end < len(text) and text[end] in "0123456789":
        end += 1
    return end


def parse_time(text: str) -> int:
    """Parse ``ss.cc``, ``m:ss.cc`` or ``mm:ss.cc`` (2 or 3 decimals) to ms."""
    if not isinstance(text, str):
        raise TypeError(f"expected str, got {type(text).__name__}")
    pos = 0
    end = _digits(text, pos)
    if end == pos:
        raise TimeParseError(text, pos, "expected digit")
    minutes = 0
    if end < len(text) and text[end] == ":":
        if end - pos > 2:
            raise TimeParseError(text, pos, "minutes field longer than 2 digits")
        minutes = int(text[pos:end])
        pos = end + 1
        end = _digits(text, pos)
        if end - pos != 2:
            raise TimeParseError(text, pos, "seconds field must have 2 digits after ':'")
    elif end - pos > 2:
        raise TimeParseError(text, pos, "seconds field longer than 2 digits")
    seconds = int(text[pos:end])
    if seconds >= 60:
        raise TimeParseError(text, pos, "seconds must be below 60")
    pos = end
    if pos >= len(text) or text[pos] != ".":
        raise TimeParseError(text, pos, "expected '.'")
    pos += 1
    end = _digits(text, pos)
    ndec = end - pos
    if ndec not in (2, 3):
        raise TimeParseError(text, pos, "expected 2 or 3 decimals")
    frac = int(text[pos:end]) * (10 if ndec == 2 else 1)
    if end != len(text):
        raise TimeParseError(text, end, "trailing characters")
    return minutes * 60_000 + seconds * 1000 + frac


def format_time(t: int, precision: str = HUNDREDTHS) -> str:
    if t < 0:
        raise ValueError(f"negative time {t}")
    if t >= (MAX_MINUTES + 1) * 60_000:
        raise ValueError(f"time {t} ms exceeds {MAX_MINUTES} minutes")
    minutes, rest = divmod(t, 60_000)
    seconds, ms = divmod(rest, 1000)
    if precision == HUNDREDTHS:
        if ms % 10:
            raise PrecisionError(f"{t} ms has a nonzero thousandth; not representable in hundredths")
        frac = f"{ms // 10:02d}"
    elif precision == THOUSANDTHS:
        frac = f"{ms:03d}"
    else:
        raise ValueError(f"unknown precision {precision!r}")
    if minutes:
        return f"{minutes}:{seconds:02d}.{frac}"
    return f"{seconds}.{frac}"


def _open(source: Source):
    if hasattr(source, "read"):
        return source, False
    return open(source, newline="", encoding="utf-8-sig"), True


def read_results(source: Source) -> list[RaceResult]:
    """Read a ``skater,distance_m,time[,session]`` CSV into race results."""
    fh, close = _open(source)
    try:
        reader = csv.reader(fh, skipinitialspace=True)
        header = next(reader, None)
        if header is None:
            return []
        header = [h.strip() for h in header]
        if tuple(header[:3]) != RESULTS_HEADER or len(header) > 4 or (
                len(header) == 4 and header[3] != "session"):
            raise ResultsFormatError(1, "header",
                                     f"expected skater,distance_m,time[,session], got {','.join(header)}")
        out = []
        for row in reader:
            line = reader.line_num
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) not in (3, len(header)):
                raise ResultsFormatError(line, "row", f"expected {len(header)} fields, got {len(row)}")
            name = row[0].strip()
            if not name:
                raise ResultsFormatError(line, "skater", "empty skater name")
            try:
                dist = int(row[1].strip())
            except ValueError:
                raise ResultsFormatError(line, "distance_m", f"not an integer: {row[1]!r}") from None
            try:
                ms = parse_time(row[2].strip())
            except TimeParseError as exc:
                raise ResultsFormatError(line, "time", str(exc)) from None
            session = row[3].strip() if len(row) > 3 else ""
            try:
                out.append(RaceResult(name, dist, ms, session))
            except SamalogueError as exc:
                col = "distance_m" if "distance" in str(exc) else "time"
                raise ResultsFormatError(line, col, str(exc)) from None
        return out
    finally:
        if close:
            fh.close()


def group_by_skater(results: list[RaceResult]) -> dict[str, list[RaceResult]]:
    groups: dict[str, list[RaceResult]] = {}
    for r in results:
        groups.setdefault(r.skater, []).append(r)
    return groups


_FLOAT_KEYS = ("delta", "sigma", "tau", "epsilon")
_INT_KEYS = ("n_distances", "n_trials", "seed")
_CHOICE_KEYS = {"discretization": DISCRETIZATIONS, "tie_rule": TIE_RULES}
# short spellings accepted on the command line and in files
ALIASES = {"truncate": TRUNCATE, "round": "round_to_hundredths", "exact": "exact_pointsum_equality"}
SCENARIO_DEFAULTS = {
    "delta": 0.0, "sigma": 0.5, "tau": 0.0, "epsilon": 0.005, "n_distances": 4,
    "n_trials": 1_000_000, "seed": 42, "discretization": TRUNCATE, "tie_rule": WINDOW,
}


def parse_scenario_values(raw: dict[str, str], lines: dict[str, int] | None = None) -> dict:
    """Type-check ``key -> text`` pairs, raising :class:`ScenarioError` per key."""
    lines = lines or {}
    values = {}
    for key, text in raw.items():
        line = lines.get(key)
        if key in _FLOAT_KEYS:
            try:
                values[key] = float(text)
            except ValueError:
                raise ScenarioError(key, f"not a number: {text!r}", line) from None
        elif key in _INT_KEYS:
            try:
                values[key] = int(text, 0)
            except ValueError:
                raise ScenarioError(key, f"not an integer: {text!r}", line) from None
        elif key in _CHOICE_KEYS:
            v = ALIASES.get(text, text)
            if v not in _CHOICE_KEYS[key]:
                raise ScenarioError(key, f"must be one of {_CHOICE_KEYS[key]}", line)
            values[key] = v
        else:
            raise ScenarioError(key, "unknown key", line)
    return values


def build_config(values: dict, lines: dict[str, int] | None = None, **extra) -> SimConfig:
    lines = lines or {}
    v = {**SCENARIO_DEFAULTS, **values}
    try:
        scenario = TieScenario(sigma=v["sigma"], epsilon=v["epsilon"], delta=v["delta"],
                               tau=v["tau"], n_distances=v["n_distances"])
        return SimConfig(scenario=scenario, n_trials=v["n_trials"], seed=v["seed"],
                         discretization=v["discretization"], tie_rule=v["tie_rule"], **extra)
    except ValueError as exc:
        key = str(exc).split()[0]
        raise ScenarioError(key, str(exc), lines.get(key)) from None


def read_scenario(source: Source) -> SimConfig:
    """Read a flat ``key=value`` scenario file into a validated config."""
    fh, close = _open(source)
    try:
        text = fh.read()
    finally:
        if close:
            fh.close()
    raw, lines = {}, {}
    for num, line in enumerate(io.StringIO(text), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ScenarioError(line, "expected key=value", num)
        key, val = (s.strip() for s in line.split("=", 1))
        if key in raw:
            raise ScenarioError(key, "duplicate key", num)
        raw[key], lines[key] = val, num
    return build_config(parse_scenario_values(raw, lines), lines)

"""Exact samalogue arithmetic on integer milli-units.

Times are integers in milliseconds (``MilliTime``) or hundredths
(``CentiTime``); points are integers in thousandths of a point
(``MilliPoints``).  No floating point is used anywhere in this module, so
pointsum ties are detected bit-exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, NewType, Sequence

CentiTime = NewType("CentiTime", int)
MilliTime = NewType("MilliTime", int)
MilliPoints = NewType("MilliPoints", int)

HUNDREDTHS = "hundredths"
THOUSANDTHS = "thousandths"
PRECISIONS = (HUNDREDTHS, THOUSANDTHS)


class SamalogueError(ValueError):
    """Domain error in samalogue arithmetic."""


class ProgramMismatch(SamalogueError):
    """A skater's results do not line up with the program."""


class Infeasible(SamalogueError):
    """No positive time on the last distance reaches the target."""


@dataclass(frozen=True)
class RaceResult:
    skater: str
    distance: int
    time: int  # milliseconds
    session: str = ""

    def __post_init__(self):
        if self.distance <= 0:
            raise SamalogueError(f"distance must be positive, got {self.distance}")
        if self.time <= 0:
            raise SamalogueError(f"time must be positive, got {self.time}")


@dataclass(frozen=True)
class Program:
    distances: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "distances", tuple(int(d) for d in self.distances))
        if not self.distances:
            raise SamalogueError("program needs at least one distance")
        for d in self.distances:
            if d <= 0:
                raise SamalogueError(f"distance must be positive, got {d}")

    def __len__(self):
        return len(self.distances)

    @classmethod
    def parse(cls, text: str) -> "Program":
        """Build a program from ``"500,1000,500,1000"`` or ``"sprint"``."""
        if text.strip().lower() in NAMED_PROGRAMS:
            return NAMED_PROGRAMS[text.strip().lower()]
        try:
            return cls(tuple(int(p) for p in text.replace("-", ",").split(",") if p.strip()))
        except ValueError as exc:
            raise SamalogueError(f"bad program {text!r}: {exc}") from None


SPRINT = Program((500, 1000, 500, 1000))
NAMED_PROGRAMS = {
    "sprint": SPRINT,
    "allround": Program((500, 5000, 1500, 10000)),
    "small-allround": Program((500, 3000, 1500, 5000)),
}


def centi_to_milli(t: int) -> MilliTime:
    if t < 0:
        raise SamalogueError(f"negative time {t}")
    return MilliTime(t * 10)


def to_points(time: int, distance: int) -> MilliPoints:
    """Milli-points for ``time`` ms over ``distance`` metres, truncated."""
    if time <= 0:
        raise SamalogueError(f"time must be positive, got {time}")
    if distance <= 0:
        raise SamalogueError(f"distance must be positive, got {distance}")
    return MilliPoints(time * 500 // distance)


def pointsum(results: Sequence[RaceResult], program: Program) -> MilliPoints:
    """Sum of per-distance points; each contribution is truncated first."""
    if len(results) != len(program):
        raise ProgramMismatch(
            f"{len(results)} results for a {len(program)}-distance program")
    total = 0
    for i, (res, dist) in enumerate(zip(results, program.distances)):
        if res.distance != dist:
            raise ProgramMismatch(
                f"race {i + 1}: expected {dist} m, got {res.distance} m")
        total += to_points(res.time, res.distance)
    return MilliPoints(total)


def deficit(a: int, b: int) -> int:
    return a - b


class Margin(NamedTuple):
    time: int  # milliseconds, signed, truncated toward zero
    exact: bool


def margin_time(points_deficit: int, distance: int) -> Margin:
    """Time margin over ``distance`` worth ``points_deficit`` milli-points."""
    if distance <= 0:
        raise SamalogueError(f"distance must be positive, got {distance}")
    num = points_deficit * distance
    q = abs(num) // 500
    return Margin(q if num >= 0 else -q, num % 500 == 0)


def required_time(target_total: int, own_current: int, last_distance: int,
                  precision: str = HUNDREDTHS) -> MilliTime:
    """Largest time on the last distance that lands exactly on ``target_total``.

    With ``precision="hundredths"`` only official (centisecond) times are
    considered, which is what a skater can actually be credited with.
    """
    if precision not in PRECISIONS:
        raise SamalogueError(f"unknown precision {precision!r}")
    if last_distance <= 0:
        raise SamalogueError(f"distance must be positive, got {last_distance}")
    need = target_total - own_current
    if need <= 0:
        raise Infeasible(
            f"target {target_total} not above current {own_current}: "
            "no positive time can tie")
    step = 10 if precision == HUNDREDTHS else 1
    # to_points(t) == need  <=>  need*d <= 500*t < (need+1)*d
    hi = ((need + 1) * last_distance - 1) // 500
    hi -= hi % step
    if hi <= 0 or hi * 500 < need * last_distance:
        raise Infeasible(
            f"no {precision} time on {last_distance} m gives exactly "
            f"{need} milli-points")
    return MilliTime(hi)


def truncate_to_centi(t: int) -> MilliTime:
    return MilliTime(t - t % 10)


def compare_at_precision(a: int, b: int, precision: str = HUNDREDTHS) -> int:
    """Return -1, 0 or 1 comparing two millisecond times at ``precision``."""
    if precision == HUNDREDTHS:
        a, b = truncate_to_centi(a), truncate_to_centi(b)
    elif precision != THOUSANDTHS:
        raise SamalogueError(f"unknown precision {precision!r}")
    return (a > b) - (a < b)


def standings(totals: Iterable[tuple[str, int]]) -> list[tuple[int, str, int]]:
    """Competition ranking (1, 1, 3) ascending by pointsum.

    Returns ``(rank, skater, points)`` rows; input order breaks display ties.
    """
    ordered = sorted(enumerate(totals), key=lambda it: (it[1][1], it[0]))
    rows = []
    for pos, (_, (name, pts)) in enumerate(ordered):
        if rows and rows[-1][2] == pts:
            rank = rows[-1][0]
        else:
            rank = pos + 1
        rows.append((rank, name, pts))
    return rows


def format_points(p: int) -> str:
    sign = "-" if p < 0 else ""
    p = abs(p)
    return f"{sign}{p // 1000}.{p % 1000:03d}"


def to_points_array(times, distance: int):
    """Vectorised :func:`to_points` for integer arrays (no positivity scan)."""
    if distance <= 0:
        raise SamalogueError(f"distance must be positive, got {distance}")
    return times * 500 // distance

"""Growth schedules: how many vertices Builder receives each turn.

Besides the plain constant/poly/linear kinds there are three
history-adaptive kinds that alternate growth regimes based on the
running vertex total, plus an explicit table kind for ad-hoc runs.
Adaptive kinds record their phase thresholds (N0, N1, N2) per cycle so
harness runs can check densities at cycle ends.
"""

from __future__ import annotations

import math

from ._util import ceil_mul, ceil_sqrt, floor_pow
from .errors import InvalidParams, NonMonotoneQuery


class GrowthSchedule:
    """Base class; subclasses implement `_value(turn, cumulative)`.

    Turns must be queried in strictly increasing order; the adaptive
    kinds additionally require contiguous turns since they mutate phase
    state as the history unfolds.
    """

    kind = "abstract"
    adaptive = False

    def __init__(self):
        self._last_turn = 0

    def next_count(self, turn: int, cumulative_total: int) -> int:
        if turn <= self._last_turn:
            raise NonMonotoneQuery(f"turn {turn} after turn {self._last_turn}")
        if self.adaptive and turn != self._last_turn + 1:
            raise NonMonotoneQuery(
                f"adaptive schedule queried at turn {turn}, expected {self._last_turn + 1}"
            )
        self._last_turn = turn
        return self._value(turn, cumulative_total)

    def _value(self, turn, cumulative):
        raise NotImplementedError

    def clone(self) -> "GrowthSchedule":
        return make_schedule(self.descriptor())

    def descriptor(self) -> dict:
        raise NotImplementedError


class ConstantSchedule(GrowthSchedule):
    kind = "constant"

    def __init__(self, value):
        super().__init__()
        if not isinstance(value, int) or value < 1:
            raise InvalidParams("constant schedule needs an integer value >= 1")
        self.value = value

    def _value(self, turn, cumulative):
        return self.value

    def descriptor(self):
        return {"kind": "constant", "value": self.value}


class PolySchedule(GrowthSchedule):
    """f(n) = max(1, floor(c * n**alpha))."""

    kind = "poly"

    def __init__(self, c, alpha):
        super().__init__()
        if c <= 0:
            raise InvalidParams("poly schedule needs c > 0")
        self.c = float(c)
        self.alpha = float(alpha)

    def _value(self, turn, cumulative):
        return max(1, floor_pow(turn, self.alpha, self.c))

    def descriptor(self):
        return {"kind": "poly", "c": self.c, "alpha": self.alpha}


class LinearSchedule(GrowthSchedule):
    """f(n) = max(1, floor(c * n))."""

    kind = "linear"

    def __init__(self, c):
        super().__init__()
        if c <= 0:
            raise InvalidParams("linear schedule needs c > 0")
        self.c = float(c)

    def _value(self, turn, cumulative):
        t = self.c * turn
        if abs(t - round(t)) < 1e-9:
            return max(1, int(round(t)))
        return max(1, math.floor(t))

    def descriptor(self):
        return {"kind": "linear", "c": self.c}


class _CycleSchedule(GrowthSchedule):
    """Shared bookkeeping for the adaptive two-phase kinds."""

    adaptive = True

    def __init__(self):
        super().__init__()
        self.cycle_start = 0          # N0 of the running cycle
        self.pending_n1 = None        # N1 once the trigger fires
        self.pending_n2 = None        # N2 = scheduled end of the cycle
        self.cycles: list[tuple[int, int, int]] = []   # completed (N0, N1, N2)

    def _complete_cycle(self):
        self.cycles.append((self.cycle_start, self.pending_n1, self.pending_n2))
        self.cycle_start = self.pending_n2
        self.pending_n1 = None
        self.pending_n2 = None

    @property
    def phase_state(self):
        return {
            "phase": self.phase,
            "N0": self.cycle_start,
            "N1": self.pending_n1,
            "N2": self.pending_n2,
            "completed_cycles": len(self.cycles),
        }


class Example1Schedule(_CycleSchedule):
    """Alternates f(n) = 0 with f(n) = floor(n**alpha), alpha < 1/2.

    The zero phase lasts until the vertex total drops below n**alpha;
    that turn is N1 and the growth phase then runs for
    floor(N1**(alpha/2)) turns, ending at N2.
    """

    kind = "example1"

    def __init__(self, alpha, eps=None):
        super().__init__()
        if not 0 < alpha < 0.5:
            raise InvalidParams("example1 needs 0 < alpha < 1/2")
        if eps is not None and eps <= 0:
            raise InvalidParams("example1 eps must be positive when given")
        self.alpha = float(alpha)
        self.eps = eps
        self.phase = "zero"
        self._grow_left = 0

    def _value(self, turn, cumulative):
        if self.phase == "zero":
            if cumulative < math.pow(turn, self.alpha):
                self.pending_n1 = turn
                self._grow_left = floor_pow(turn, self.alpha / 2.0)
                self.pending_n2 = turn + self._grow_left
                self.phase = "grow"
            return 0
        f = floor_pow(turn, self.alpha)
        self._grow_left -= 1
        if self._grow_left == 0:
            self._complete_cycle()
            self.phase = "zero"
        return f

    def descriptor(self):
        d = {"kind": "example1", "alpha": self.alpha}
        if self.eps is not None:
            d["eps"] = self.eps
        return d


class Example2Schedule(_CycleSchedule):
    """Alternates floor(n**(2a-1)) with floor(n**a) for 1/2 <= a < 1.

    The slow phase holds until the vertex total is within eps*n**(2a)
    of n**(2a)/(2a); that turn is N1 and the fast phase runs for
    floor(N1**a) turns.
    """

    kind = "example2"

    def __init__(self, alpha, eps):
        super().__init__()
        if not 0.5 <= alpha < 1:
            raise InvalidParams("example2 needs 1/2 <= alpha < 1")
        if not 0 < eps < 0.125:
            raise InvalidParams("example2 needs 0 < eps < 1/8")
        self.alpha = float(alpha)
        self.eps = float(eps)
        self.phase = "slow"
        self._fast_left = 0

    def _value(self, turn, cumulative):
        if self.phase == "slow":
            f = floor_pow(turn, 2 * self.alpha - 1)
            post = cumulative + f
            target = math.pow(turn, 2 * self.alpha) / (2 * self.alpha)
            if abs(post - target) <= self.eps * math.pow(turn, 2 * self.alpha):
                self.pending_n1 = turn
                self._fast_left = floor_pow(turn, self.alpha)
                self.pending_n2 = turn + self._fast_left
                self.phase = "fast"
            return f
        f = floor_pow(turn, self.alpha)
        self._fast_left -= 1
        if self._fast_left == 0:
            self._complete_cycle()
            self.phase = "slow"
        return f

    def descriptor(self):
        return {"kind": "example2", "alpha": self.alpha, "eps": self.eps}


class Example3Schedule(_CycleSchedule):
    """Alternates a strict linear majorant with floor(n**alpha).

    The linear phase (f(n) = ceil(beta*n) + 1) holds until the vertex
    total exceeds ((1-eps)*beta/2)*n**2; that turn is N1 and the slow
    phase runs for ceil(sqrt(2*|V_N1|)) turns, long enough for a full
    burn of the linear-phase graph.
    """

    kind = "example3"

    def __init__(self, alpha, beta, eps):
        super().__init__()
        if not 0 < alpha < 1:
            raise InvalidParams("example3 needs 0 < alpha < 1")
        if beta <= 0:
            raise InvalidParams("example3 needs beta > 0")
        if not 0 < eps < 0.5:
            raise InvalidParams("example3 needs 0 < eps < 1/2")
        self.alpha = float(alpha)
        self.beta = float(beta)
        self.eps = float(eps)
        self.phase = "linear"
        self._slow_left = 0

    def _value(self, turn, cumulative):
        if self.phase == "linear":
            f = ceil_mul(self.beta, turn) + 1
            post = cumulative + f
            if post > ((1 - self.eps) * self.beta / 2.0) * turn * turn:
                self.pending_n1 = turn
                self._slow_left = ceil_sqrt(2 * post)
                self.pending_n2 = turn + self._slow_left
                self.phase = "slow"
            return f
        f = floor_pow(turn, self.alpha)
        self._slow_left -= 1
        if self._slow_left == 0:
            self._complete_cycle()
            self.phase = "linear"
        return f

    def descriptor(self):
        return {
            "kind": "example3",
            "alpha": self.alpha,
            "beta": self.beta,
            "eps": self.eps,
        }


class TableSchedule(GrowthSchedule):
    """Explicit per-turn counts with a tail rule past the table."""

    kind = "table"

    def __init__(self, values, tail="repeat-last", c=None, alpha=None):
        super().__init__()
        values = [int(v) for v in values]
        if not values or any(v < 0 for v in values):
            raise InvalidParams("table schedule needs nonnegative counts")
        if tail not in ("repeat-last", "poly"):
            raise InvalidParams("table tail must be 'repeat-last' or 'poly'")
        if tail == "poly" and (c is None or alpha is None or c <= 0):
            raise InvalidParams("poly tail needs c > 0 and alpha")
        self.values = values
        self.tail = tail
        self.c = c
        self.alpha = alpha

    def _value(self, turn, cumulative):
        if turn <= len(self.values):
            return self.values[turn - 1]
        if self.tail == "repeat-last":
            return self.values[-1]
        return max(1, floor_pow(turn, self.alpha, self.c))

    def descriptor(self):
        d = {"kind": "table", "values": list(self.values), "tail": self.tail}
        if self.tail == "poly":
            d["c"] = self.c
            d["alpha"] = self.alpha
        return d


_KINDS = {
    "constant": lambda d: ConstantSchedule(d["value"]),
    "poly": lambda d: PolySchedule(d["c"], d["alpha"]),
    "linear": lambda d: LinearSchedule(d["c"]),
    "example1": lambda d: Example1Schedule(d["alpha"], d.get("eps")),
    "example2": lambda d: Example2Schedule(d["alpha"], d["eps"]),
    "example3": lambda d: Example3Schedule(d["alpha"], d["beta"], d["eps"]),
    "table": lambda d: TableSchedule(
        d["values"], d.get("tail", "repeat-last"), d.get("c"), d.get("alpha")
    ),
}


def make_schedule(descriptor: dict) -> GrowthSchedule:
    """Build a schedule from its JSON descriptor."""
    try:
        kind = descriptor["kind"]
        factory = _KINDS[kind]
    except KeyError as exc:
        raise InvalidParams(f"unknown schedule kind in {descriptor!r}") from exc
    try:
        return factory(descriptor)
    except KeyError as exc:
        raise InvalidParams(f"missing field {exc} for schedule kind '{kind}'") from exc


def cumulative_through(schedule, n: int) -> int:
    """Sum of f(1..n), replayed on a fresh copy of the schedule."""
    if isinstance(schedule, dict):
        schedule = make_schedule(schedule)
    else:
        schedule = schedule.clone()
    total = 0
    for turn in range(1, n + 1):
        total += schedule.next_count(turn, total)
    return total


def replay_cycles(descriptor: dict, cycles: int, max_turns: int = 50_000_000):
    """Replay an adaptive schedule until `cycles` cycles complete.

    Returns (completed cycle list, turns played). Used to size harness
    runs that must cover a given number of growth cycles.
    """
    sched = make_schedule(descriptor)
    total = 0
    turn = 0
    while len(getattr(sched, "cycles", ())) < cycles and turn < max_turns:
        turn += 1
        total += sched.next_count(turn, total)
    return list(sched.cycles), turn

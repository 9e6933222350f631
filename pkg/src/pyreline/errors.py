"""Exception types raised across the package."""


class PyrelineError(Exception):
    """Base class for all package errors."""


# -- graph construction ------------------------------------------------------

class GraphError(PyrelineError):
    pass


class EdgeBetweenOldVertices(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class UnknownEndpoint(GraphError):
    pass


class UnknownVertex(GraphError):
    pass


# -- growth schedules --------------------------------------------------------

class ScheduleError(PyrelineError):
    pass


class NonMonotoneQuery(ScheduleError):
    pass


class InvalidParams(ScheduleError):
    pass


# -- engine / moves ----------------------------------------------------------

class MoveError(PyrelineError):
    pass


class WrongCount(MoveError):
    pass


class ResultDisconnected(MoveError):
    pass


class StrategyError(PyrelineError):
    pass


class StrategyReturnedBurnedVertex(StrategyError):
    pass


class StrategyReturnedUnknownVertex(StrategyError):
    pass


class StrategyPassedWithUnburnedVertices(StrategyError):
    pass


class HumanMoveRequired(PyrelineError):
    """Raised when a `human` strategy slot is asked to auto-play."""


# -- burning number ----------------------------------------------------------

class BurningError(PyrelineError):
    pass


class GraphTooLarge(BurningError):
    pass


class GraphDisconnected(BurningError):
    pass


class EmptyGraph(BurningError):
    pass


# -- spanning-tree reduction -------------------------------------------------

class PrefixDisconnected(PyrelineError):
    pass


class DominanceViolated(PyrelineError):
    """A spanning tree burned more vertices than its host graph: engine bug."""


class InvalidSource(PyrelineError):
    pass


# -- metrics -----------------------------------------------------------------

class EmptySeries(PyrelineError):
    pass


class OutOfRange(PyrelineError):
    pass


# -- harness / service -------------------------------------------------------

class ScenarioError(PyrelineError):
    pass


class UnknownGame(PyrelineError):
    pass


class NotYourTurn(PyrelineError):
    pass


class BadSchedule(PyrelineError):
    pass


class BadStrategy(PyrelineError):
    pass


class RoleMismatch(PyrelineError):
    pass

"""Session events and the line-oriented script format.

Script grammar, one event per line (blank lines and ``#`` comments ignored):

    knob <1-4> <+1|-1>
    button <1-4>
    pressure <segment> <psi>
    load <tip|connector> <newtons>
"""

from dataclasses import dataclass

from ..actuation import KnobEvent

LOAD_POINTS = ("tip", "connector")


@dataclass(frozen=True)
class PressureEvent:
    """Set one segment's vacuum pressure (psi); segment is 1-based."""

    segment: int
    psi: float


@dataclass(frozen=True)
class LoadEvent:
    """Hang a load (N) at the segment-2 tip or at the connector."""

    point: str
    newtons: float


@dataclass(frozen=True)
class ResetEvent:
    """Return the session to its initial state (wire-protocol only)."""


class ScriptError(ValueError):
    """Raised for unparseable script lines, with the line number."""


def parse_script(text: str):
    """Parse script text into a list of events, validating syntax per line."""
    events = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        kind, args = tokens[0], tokens[1:]
        try:
            if kind == "knob":
                if len(args) != 2:
                    raise ValueError("knob takes exactly 2 arguments")
                events.append(KnobEvent(int(args[0]), int(args[1])))
            elif kind == "button":
                if len(args) != 1:
                    raise ValueError("button takes exactly 1 argument")
                events.append(KnobEvent(int(args[0]), button=True))
            elif kind == "pressure":
                if len(args) != 2:
                    raise ValueError("pressure takes exactly 2 arguments")
                events.append(PressureEvent(int(args[0]), float(args[1])))
            elif kind == "load":
                if len(args) != 2:
                    raise ValueError("load takes exactly 2 arguments")
                if args[0] not in LOAD_POINTS:
                    raise ValueError(f"load point must be one of {LOAD_POINTS}")
                events.append(LoadEvent(args[0], float(args[1])))
            else:
                raise ValueError(f"unknown event {kind!r}")
        except (ValueError, IndexError) as exc:
            raise ScriptError(f"line {lineno}: {raw.strip()!r}: {exc}") from None
    return events


def parse_script_file(path):
    with open(path) as fh:
        return parse_script(fh.read())

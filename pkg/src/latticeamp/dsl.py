"""Plain-text setup descriptions.

One statement per line, ``#`` starts a comment::

    lattice M=8 tau=0.1 boundary=periodic
    source x=3 t=0
    filter t=2 holes=1,4
    detect x=3 t=5

Exactly one ``lattice``, ``source`` and ``detect`` line; any number of
``filter`` lines.  ``boundary`` is optional and defaults to periodic.
"""

from __future__ import annotations

import re

from .errors import SetupSemanticError, SetupSyntaxError
from .setups import (
    BOUNDARIES,
    Filter,
    LatticeSpec,
    Setup,
    SpacetimePoint,
    _unchecked_setup,
    validate_setup,
)

__all__ = ["parse_setup_dsl", "render_setup_dsl", "load_setup_file"]

_INT = r"[+-]?\d+"
_FLOAT = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_VALUE_PATTERNS = {
    "M": _INT,
    "tau": _FLOAT,
    "boundary": "|".join(BOUNDARIES),
    "x": _INT,
    "t": _INT,
    "holes": rf"{_INT}(?:,{_INT})*",
}
_STATEMENTS = {
    "lattice": (("M", "tau"), ("boundary",)),
    "source": (("x", "t"), ()),
    "detect": (("x", "t"), ()),
    "filter": (("t", "holes"), ()),
}
_TOKEN = re.compile(r"\S+")


def _parse_line(lineno, line):
    tokens = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(line)]
    keyword, kcol = tokens[0]
    if keyword not in _STATEMENTS:
        raise SetupSyntaxError(f"unknown statement {keyword!r}", lineno, kcol)
    required, optional = _STATEMENTS[keyword]
    args = {}
    for token, col in tokens[1:]:
        key, eq, value = token.partition("=")
        if not eq:
            raise SetupSyntaxError(f"expected key=value, got {token!r}", lineno, col)
        if key not in required and key not in optional:
            raise SetupSyntaxError(f"{keyword!r} takes no argument {key!r}", lineno, col)
        if key in args:
            raise SetupSyntaxError(f"argument {key!r} given twice", lineno, col)
        vcol = col + len(key) + 1
        if not value:
            raise SetupSyntaxError(f"empty value for {key!r}", lineno, vcol)
        if not re.fullmatch(_VALUE_PATTERNS[key], value):
            raise SetupSyntaxError(f"bad value {value!r} for {key!r}", lineno, vcol)
        args[key] = value
    missing = [k for k in required if k not in args]
    if missing:
        raise SetupSyntaxError(
            f"{keyword!r} is missing {', '.join(missing)}", lineno, len(line.rstrip()) + 1
        )
    return keyword, args


def parse_setup_dsl(text: str) -> tuple[LatticeSpec, Setup]:
    """Parse and validate a setup description.

    Raises
    ------
    SetupSyntaxError
        Malformed text; ``line``/``column`` point at the offending token.
    SetupSemanticError
        Well-formed text whose setup breaks an invariant.  ``violations``
        lists every problem found, not just the first.
    """
    statements = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if line.strip():
            statements.append((lineno,) + _parse_line(lineno, line))

    counts = {k: sum(1 for _, kw, _ in statements if kw == k) for k in _STATEMENTS}
    problems = [
        f"expected exactly one {k!r} statement, found {counts[k]}"
        for k in ("lattice", "source", "detect")
        if counts[k] != 1
    ]
    if problems:
        raise SetupSemanticError("; ".join(problems), problems)

    lattice = source = detector = None
    filters = []
    for lineno, keyword, args in statements:
        if keyword == "lattice":
            try:
                lattice = LatticeSpec(
                    int(args["M"]), float(args["tau"]), args.get("boundary", "periodic")
                )
            except ValueError as exc:
                raise SetupSemanticError(f"line {lineno}: {exc}", [exc]) from None
        elif keyword in ("source", "detect"):
            point = _point(lineno, int(args["x"]), int(args["t"]))
            if keyword == "source":
                source = point
            else:
                detector = point
        else:
            holes = [int(h) for h in args["holes"].split(",")]
            if len(set(holes)) != len(holes):
                raise SetupSemanticError(f"line {lineno}: repeated hole in {holes}")
            try:
                filters.append(Filter(int(args["t"]), holes))
            except Exception as exc:
                raise SetupSemanticError(f"line {lineno}: {exc}", [exc]) from None

    setup = _unchecked_setup(source, detector, filters)
    violations = validate_setup(setup, lattice)
    if violations:
        raise SetupSemanticError("; ".join(str(v) for v in violations), violations)
    # re-enter through the checked constructor so the returned value is canonical
    return lattice, Setup(source, detector, tuple(filters))


def _point(lineno, site, tick):
    try:
        return SpacetimePoint(site, tick)
    except Exception as exc:
        raise SetupSemanticError(f"line {lineno}: {exc}", [exc]) from None


def render_setup_dsl(lattice: LatticeSpec, setup: Setup) -> str:
    """Canonical text for ``(lattice, setup)``; inverse of :func:`parse_setup_dsl`."""
    lines = [
        f"lattice M={lattice.M} tau={lattice.tau!r} boundary={lattice.boundary}",
        f"source x={setup.source.site} t={setup.source.tick}",
    ]
    for f in setup.filters:
        lines.append(f"filter t={f.tick} holes={','.join(map(str, f.sorted_holes()))}")
    lines.append(f"detect x={setup.detector.site} t={setup.detector.tick}")
    return "\n".join(lines) + "\n"


def load_setup_file(path) -> tuple[LatticeSpec, Setup]:
    with open(path, encoding="utf-8") as fh:
        return parse_setup_dsl(fh.read())

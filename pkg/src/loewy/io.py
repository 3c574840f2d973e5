"""
Plain-text lattice files, DOT export and JSON helpers.

File grammar, one statement per line::

    # comment
    lattice <name>
    elem <id>
    cover <lower> <upper>
    end

Blank lines and ``#`` lines are ignored anywhere. Canonical files list
elements in canonical lattice order and covers sorted by identifier pair.
"""

from __future__ import annotations

import json

from .analysis import loewy_series
from .core import FiniteLattice, build_from_covers, heights
from .errors import E_SYNTAX, LatticeError


def _syntax(lineno: int, message: str):
    return LatticeError(E_SYNTAX, f"line {lineno}: {message}")


def parse_lattice(text: str) -> FiniteLattice:
    name = None
    elements: list[str] = []
    declared: set[str] = set()
    covers: list[tuple[str, str]] = []
    ended = False
    lineno = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if ended:
            raise _syntax(lineno, "expected end of file after 'end'")
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        if name is None:
            if keyword != "lattice" or not rest:
                raise _syntax(lineno, "expected 'lattice <name>'")
            name = rest
            continue
        if keyword == "elem":
            parts = rest.split()
            if len(parts) != 1 or not parts[0].isascii():
                raise _syntax(lineno, "expected 'elem <id>' with one ASCII identifier")
            elements.append(parts[0])
            declared.add(parts[0])
        elif keyword == "cover":
            parts = rest.split()
            if len(parts) != 2:
                raise _syntax(lineno, "expected 'cover <lower> <upper>'")
            for p in parts:
                if p not in declared:
                    raise _syntax(lineno, f"cover uses undeclared identifier {p!r}")
            covers.append((parts[0], parts[1]))
        elif keyword == "end":
            if rest:
                raise _syntax(lineno, "expected bare 'end'")
            ended = True
        else:
            raise _syntax(lineno, f"expected 'elem', 'cover' or 'end', got {keyword!r}")
    if name is None:
        raise _syntax(lineno + 1, "expected 'lattice <name>'")
    if not ended:
        raise _syntax(lineno + 1, "expected 'end'")
    if not elements:
        raise _syntax(lineno, "expected at least one 'elem'")
    return build_from_covers(elements, covers, name=name)


def write_lattice(L: FiniteLattice) -> str:
    lines = [f"lattice {L.name}"]
    lines += [f"elem {e}" for e in L.elements]
    lines += [f"cover {a} {b}" for a, b in sorted(L.cover_labels())]
    lines.append("end")
    return "\n".join(lines) + "\n"


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(L: FiniteLattice, with_loewy: bool = False) -> str:
    """
    DOT digraph of the cover relation, drawn bottom-up with one rank per height.

    With ``with_loewy`` the Loewy series members get a double border and the
    steps S_i -> S_{i+1} are drawn in red; a step that is not a cover gets an
    extra dashed edge.
    """
    h = heights(L)
    series = loewy_series(L).chain if with_loewy else ()
    members = set(series)
    steps = set(zip(series, series[1:]))
    out = [f"digraph {_quote(L.name)} {{", "  rankdir=BT;", "  node [shape=ellipse];"]
    for x in L:
        attrs = [f"label={_quote(f'{L.label(x)} (h={h[x]})')}"]
        if x in members:
            attrs.append("peripheries=2")
        out.append(f"  {_quote(L.label(x))} [{', '.join(attrs)}];")
    for level in sorted(set(h.tolist())):
        nodes = " ".join(_quote(L.label(x)) for x in L if h[x] == level)
        out.append(f"  {{ rank=same; {nodes} }}")
    cover_set = set(L.covers)
    for a, b in L.covers:
        style = " [color=red, penwidth=2]" if (a, b) in steps else ""
        out.append(f"  {_quote(L.label(a))} -> {_quote(L.label(b))}{style};")
    for a, b in sorted(steps - cover_set):
        out.append(f"  {_quote(L.label(a))} -> {_quote(L.label(b))} [color=red, style=dashed, constraint=false];")
    out.append("}")
    return "\n".join(out) + "\n"


def to_json(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2)

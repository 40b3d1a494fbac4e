"""Line-oriented instance and coloring files.

Instance directives (vertices 0-based, ``#`` starts a comment line)::

    graph <n>
    mode <d3|d4>
    edge <u> <v>
    list <v> <c>...
    forbid <v> <c>...
    precolor <v> <c>

Colorings are ``color <v> <c>`` lines.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from listbrooks.coloring import DISTANCE3, DISTANCE4, Coloring, Lists, lists_from_forbidden, palette
from listbrooks.graph import Graph, build_graph

MODE_NAMES = {"d3": DISTANCE3, "d4": DISTANCE4, DISTANCE3: DISTANCE3, DISTANCE4: DISTANCE4}
SHORT_MODE = {DISTANCE3: "d3", DISTANCE4: "d4"}


class ParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass
class InstanceFile:
    n: int
    edges: list[tuple[int, int]] = field(default_factory=list)
    lists: dict[int, tuple[int, ...]] = field(default_factory=dict)
    forbids: dict[int, tuple[int, ...]] = field(default_factory=dict)
    precolors: dict[int, int] = field(default_factory=dict)
    mode: str | None = None
    comments: list[str] = field(default_factory=list)

    def graph(self) -> Graph:
        return build_graph(self.n, self.edges)

    def list_assignment(self, g: Graph | None = None) -> Lists:
        """Explicit lists, forbidden sets against ``{1..Delta}``, and ``{1..Delta}`` elsewhere."""
        g = g or self.graph()
        lists = lists_from_forbidden(g, self.forbids)
        for v, colors in self.lists.items():
            lists[v] = frozenset(colors)
        return lists

    def short_list_vertices(self, g: Graph | None = None) -> frozenset[int]:
        g = g or self.graph()
        lists = self.list_assignment(g)
        return frozenset(v for v in range(g.n) if len(lists[v]) < g.max_degree)


def _ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(lineno, f"expected integers, got {' '.join(tokens)!r}") from None


def parse_instance(text: str) -> InstanceFile:
    inst: InstanceFile | None = None
    seen_edges: set[tuple[int, int]] = set()

    def vertex(v: int, lineno: int) -> int:
        assert inst is not None
        if not 0 <= v < inst.n:
            raise ParseError(lineno, f"vertex {v} out of range [0, {inst.n})")
        return v

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            continue
        head, *rest = line.split()
        if head == "graph":
            if inst is not None:
                raise ParseError(lineno, "duplicate graph header")
            (n,) = _ints(rest, lineno) if len(rest) == 1 else (None,)
            if n is None or n < 0:
                raise ParseError(lineno, "usage: graph <n>")
            inst = InstanceFile(n)
            continue
        if inst is None:
            raise ParseError(lineno, f"{head!r} before the graph header")
        if head == "edge":
            if len(rest) != 2:
                raise ParseError(lineno, "usage: edge <u> <v>")
            u, v = (vertex(x, lineno) for x in _ints(rest, lineno))
            if u == v:
                raise ParseError(lineno, f"self-loop at vertex {u}")
            key = (min(u, v), max(u, v))
            if key in seen_edges:
                raise ParseError(lineno, f"duplicate edge {u} {v}")
            seen_edges.add(key)
            inst.edges.append((u, v))
        elif head in ("list", "forbid"):
            if len(rest) < 2 and head == "list":
                raise ParseError(lineno, "usage: list <v> <c>...")
            if not rest:
                raise ParseError(lineno, "usage: forbid <v> <c>...")
            v, *colors = _ints(rest, lineno)
            vertex(v, lineno)
            if v in inst.lists or v in inst.forbids:
                raise ParseError(lineno, f"vertex {v} already has a list or forbid record")
            if any(c < 1 for c in colors):
                raise ParseError(lineno, "colors must be at least 1")
            if len(set(colors)) != len(colors):
                raise ParseError(lineno, "repeated color")
            (inst.lists if head == "list" else inst.forbids)[v] = tuple(sorted(colors))
        elif head == "precolor":
            if len(rest) != 2:
                raise ParseError(lineno, "usage: precolor <v> <c>")
            v, c = _ints(rest, lineno)
            vertex(v, lineno)
            if c < 1:
                raise ParseError(lineno, "colors must be at least 1")
            if v in inst.precolors:
                raise ParseError(lineno, f"vertex {v} precolored twice")
            inst.precolors[v] = c
        elif head == "mode":
            if len(rest) != 1 or rest[0] not in MODE_NAMES:
                raise ParseError(lineno, "usage: mode <d3|d4>")
            inst.mode = MODE_NAMES[rest[0]]
        else:
            raise ParseError(lineno, f"unknown directive {head!r}")
    if inst is None:
        raise ParseError(0, "missing graph header")
    inst.comments = [raw.strip()[1:].strip() for raw in text.splitlines() if raw.strip().startswith("#")]
    return inst


def format_instance(inst: InstanceFile) -> str:
    out = [f"# {c}" if c else "#" for c in inst.comments]
    out.append(f"graph {inst.n}")
    if inst.mode is not None:
        out.append(f"mode {SHORT_MODE[inst.mode]}")
    out += [f"edge {u} {v}" for u, v in inst.edges]
    out += [f"list {v} {' '.join(map(str, cs))}" for v, cs in sorted(inst.lists.items())]
    out += [f"forbid {v} {' '.join(map(str, cs))}" for v, cs in sorted(inst.forbids.items())]
    out += [f"precolor {v} {c}" for v, c in sorted(inst.precolors.items())]
    return "\n".join(out) + "\n"


def instance_file_from(
    g: Graph,
    lists: Lists | None = None,
    precoloring: Coloring | None = None,
    mode: str | None = None,
    comments: list[str] | None = None,
) -> InstanceFile:
    """Only lists that differ from ``{1..Delta}`` are written out."""
    pal = palette(g.max_degree)
    explicit = {v: tuple(sorted(L)) for v, L in (lists or {}).items() if frozenset(L) != pal}
    return InstanceFile(g.n, g.edges(), explicit, {}, dict(precoloring or {}), mode, list(comments or []))


def parse_coloring(text: str) -> Coloring:
    out: Coloring = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] != "color" or len(parts) != 3:
            raise ParseError(lineno, "expected: color <v> <c>")
        v, c = _ints(parts[1:], lineno)
        if v in out:
            raise ParseError(lineno, f"vertex {v} colored twice")
        out[v] = c
    return out


def format_coloring(c: Coloring) -> str:
    return "".join(f"color {v} {col}\n" for v, col in sorted(c.items()))

"""Reading and writing the ``.cg`` graph and ``.chain`` text formats.

Graph files::

    # optional comments
    nodes: A B C D
    A -> B
    B -- C
    D -> C

Chain files list one block per line, in order::

    block: A D
    block: B C
"""

from __future__ import annotations

from .errors import GraphFormatError
from .graph import NAME_RE, Chain, MixedGraph, _pair


def _content_lines(text: str):
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield i, line


def _names(tokens, lineno):
    for t in tokens:
        if not NAME_RE.match(t):
            raise GraphFormatError(f"invalid node name {t!r}", lineno)
    return tokens


def parse_graph(text: str) -> MixedGraph:
    lines = _content_lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise GraphFormatError("missing 'nodes:' line") from None
    if not header.startswith("nodes:"):
        raise GraphFormatError("first line must be 'nodes: ...'", lineno)
    nodes = _names(header[len("nodes:"):].split(), lineno)
    if len(set(nodes)) != len(nodes):
        raise GraphFormatError("duplicate node in 'nodes:' line", lineno)
    known = set(nodes)
    directed, undirected, pairs = set(), set(), set()
    for lineno, line in lines:
        tokens = line.split()
        if len(tokens) != 3 or tokens[1] not in ("->", "--"):
            raise GraphFormatError(f"malformed edge line {line!r}", lineno)
        u, mark, v = tokens
        for n in (u, v):
            if n not in known:
                raise GraphFormatError(f"unknown node {n!r}", lineno)
        if u == v:
            raise GraphFormatError(f"self-loop at {u}", lineno)
        p = _pair(u, v)
        if p in pairs:
            raise GraphFormatError(f"duplicate edge between {p[0]} and {p[1]}", lineno)
        pairs.add(p)
        if mark == "->":
            directed.add((u, v))
        else:
            undirected.add(p)
    return MixedGraph(tuple(nodes), frozenset(directed), frozenset(undirected))


def format_graph(g: MixedGraph) -> str:
    lines = ["nodes: " + " ".join(g.nodes)]
    lines += [f"{u} {mark} {v}" for u, mark, v in g.edges()]
    return "\n".join(lines) + "\n"


def parse_chain(text: str) -> Chain:
    blocks = []
    seen = set()
    for lineno, line in _content_lines(text):
        if not line.startswith("block:"):
            raise GraphFormatError("expected 'block: ...'", lineno)
        names = _names(line[len("block:"):].split(), lineno)
        if not names:
            raise GraphFormatError("empty block", lineno)
        if seen & set(names) or len(set(names)) != len(names):
            raise GraphFormatError("node listed in more than one block", lineno)
        seen |= set(names)
        blocks.append(frozenset(names))
    if not blocks:
        raise GraphFormatError("chain has no blocks")
    return Chain(tuple(blocks))


def format_chain(alpha: Chain) -> str:
    return "".join("block: " + " ".join(sorted(b)) + "\n" for b in alpha.blocks)

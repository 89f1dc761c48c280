"""Text file format for oriented hypergraphs.

The format is line oriented, UTF-8 with LF endings, and bit-exact so that
generated fixtures can serve as golden files:

    # optional comment lines start with '#'
    k 3
    n 6
    e 0 1 2
    e 2 0 4
    ...

The two header lines give the uniformity and the vertex count, in that
order; every following ``e`` line lists one edge's 0-based vertex indices
in orientation order.  Serialisation writes no comments and no trailing
whitespace, and preserves edge order, which is semantically irrelevant but
part of the golden-file contract.
"""

from __future__ import annotations

from .core import OrientedHypergraph, validate


class HypergraphFormatError(ValueError):
    """Malformed hypergraph text; the message carries line numbers."""


def serialize_hypergraph(graph: OrientedHypergraph) -> str:
    lines = [f"k {graph.k}", f"n {graph.n}"]
    for edge in graph.edges:
        lines.append("e " + " ".join(str(v) for v in edge))
    return "\n".join(lines) + "\n"


def parse_hypergraph(text: str) -> OrientedHypergraph:
    """Parse and validate; malformed or invalid data raises with line numbers."""
    k: int | None = None
    n: int | None = None
    edges: list[tuple[int, ...]] = []
    edge_lines: list[int] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        tag = fields[0]
        if tag == "k":
            if k is not None:
                raise HypergraphFormatError(f"duplicate k header, line {lineno}")
            if n is not None or edges:
                raise HypergraphFormatError(f"k header out of order, line {lineno}")
            k = _int_field(fields, 1, lineno, expected=2)
            if k < 2:
                raise HypergraphFormatError(f"k must be at least 2, line {lineno}")
        elif tag == "n":
            if n is not None:
                raise HypergraphFormatError(f"duplicate n header, line {lineno}")
            if k is None or edges:
                raise HypergraphFormatError(f"n header out of order, line {lineno}")
            n = _int_field(fields, 1, lineno, expected=2)
            if n < 0:
                raise HypergraphFormatError(f"n must be non-negative, line {lineno}")
        elif tag == "e":
            if k is None or n is None:
                raise HypergraphFormatError(
                    f"edge before k and n headers, line {lineno}"
                )
            if len(fields) - 1 != k:
                raise HypergraphFormatError(
                    f"edge has {len(fields) - 1} vertices, expected {k}, line {lineno}"
                )
            try:
                edge = tuple(int(f) for f in fields[1:])
            except ValueError:
                raise HypergraphFormatError(
                    f"non-integer vertex index, line {lineno}"
                ) from None
            edges.append(edge)
            edge_lines.append(lineno)
        else:
            raise HypergraphFormatError(f"unknown line tag {tag!r}, line {lineno}")

    if k is None or n is None:
        raise HypergraphFormatError("missing k or n header")

    graph = OrientedHypergraph(k, n, tuple(edges))
    result = validate(graph)
    if not result.ok:
        messages = []
        for violation in result.violations:
            lineno = None
            if violation.startswith("edge "):
                index = int(violation.split(":", 1)[0].split()[1])
                lineno = edge_lines[index]
            elif violation.startswith("edges "):
                index = int(
                    violation.split(":", 1)[0].replace("edges ", "").split(" and ")[1]
                )
                lineno = edge_lines[index]
            suffix = f", line {lineno}" if lineno is not None else ""
            messages.append(violation + suffix)
        raise HypergraphFormatError("; ".join(messages))
    return graph


def _int_field(fields: list[str], index: int, lineno: int, expected: int) -> int:
    if len(fields) != expected:
        raise HypergraphFormatError(
            f"header needs exactly one value, line {lineno}"
        )
    try:
        return int(fields[index])
    except ValueError:
        raise HypergraphFormatError(f"non-integer header value, line {lineno}") from None


def read_hypergraph(path: str) -> OrientedHypergraph:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_hypergraph(handle.read())


def write_hypergraph(graph: OrientedHypergraph, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(serialize_hypergraph(graph))

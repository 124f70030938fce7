"""Graph and profile codecs: graph6, plain edge lists and profile JSON.

graph6 decoding goes through networkx after a byte-level pass that pins
malformed input to the offending character and its offset.
"""

import json
import math
from pathlib import Path

import networkx as nx
import numpy as np

from ngbound.models.staircase import StaircaseMatrix
from ngbound.services import staircase
from ngbound.utils.errors import GraphFormatError, ProfileError

GRAPH6_HEADER = ">>graph6<<"


def read_source(value: str) -> str:
    """Contents of value when it names an existing file, else value itself."""
    path = Path(value)
    try:
        if path.is_file():
            return path.read_text()
    except OSError:
        pass
    return value


# ── graph6 ─────────────────────────────────────────────────────────────


def _graph6_order(data: str, base: int) -> tuple[int, int]:
    """(n, header length) from the size prefix of a graph6 body."""

    def word(start: int, length: int) -> int:
        chunk = data[start : start + length]
        if len(chunk) < length:
            raise GraphFormatError("truncated graph6 size prefix", token=chunk, offset=base + len(data))
        value = 0
        for ch in chunk:
            value = (value << 6) | (ord(ch) - 63)
        return value

    if data[0] != "~":
        return ord(data[0]) - 63, 1
    if len(data) > 1 and data[1] != "~":
        return word(1, 3), 4
    return word(2, 6), 8


def parse_graph6(text: str) -> np.ndarray:
    """Decode one graph6 string into a 0/1 adjacency matrix."""
    raw = text.strip()
    base = 0
    if raw.startswith(GRAPH6_HEADER):
        base = len(GRAPH6_HEADER)
        raw = raw[base:]
    if not raw:
        raise GraphFormatError("empty graph6 string", token="", offset=base)
    for i, ch in enumerate(raw):
        if not 63 <= ord(ch) <= 126:
            raise GraphFormatError(f"byte {ch!r} outside the graph6 range 63..126", token=ch, offset=base + i)

    n, head = _graph6_order(raw, base)
    expected = head + math.ceil(n * (n - 1) // 2 / 6)
    if len(raw) != expected:
        token = raw[expected:] if len(raw) > expected else raw[-1]
        raise GraphFormatError(
            f"graph6 body for n={n} needs {expected} bytes, got {len(raw)}",
            token=token,
            offset=base + min(len(raw), expected),
        )
    try:
        graph = nx.from_graph6_bytes(raw.encode("ascii"))
    except (nx.NetworkXError, ValueError) as exc:
        raise GraphFormatError(f"graph6 decode failed: {exc}", token=raw, offset=base) from exc
    return nx.to_numpy_array(graph, nodelist=range(n), dtype=int).astype(np.int8)


def to_graph6(adjacency) -> str:
    graph = nx.from_numpy_array(np.asarray(adjacency))
    return nx.to_graph6_bytes(graph, header=False).decode("ascii").strip()


def parse_graph6_lines(text: str) -> list[np.ndarray]:
    """One adjacency matrix per nonblank line."""
    out = []
    offset = 0
    for line in text.splitlines(keepends=True):
        if line.strip():
            try:
                out.append(parse_graph6(line))
            except GraphFormatError as exc:
                raise GraphFormatError(exc.message, token=exc.token, offset=offset + exc.offset) from exc
        offset += len(line.encode("utf-8"))
    if not out:
        raise GraphFormatError("no graph6 strings found", token="", offset=0)
    return out


# ── Edge lists ─────────────────────────────────────────────────────────


def parse_edge_list(text: str) -> np.ndarray:
    """One "u v" pair per line, 1-indexed; n is the largest id.

    A single-token first line declares n explicitly, which is how trailing
    isolated vertices are kept.
    """
    declared = None
    edges: list[tuple[int, int]] = []
    offset = 0
    for line in text.splitlines(keepends=True):
        tokens = line.split("#", 1)[0].split()
        if tokens:
            if len(tokens) == 1 and declared is None and not edges:
                if not tokens[0].isdigit() or int(tokens[0]) < 1:
                    raise GraphFormatError("order line must be a positive integer", token=tokens[0], offset=offset)
                declared = int(tokens[0])
            elif len(tokens) != 2:
                raise GraphFormatError("edge lines hold two vertex ids", token=line.strip(), offset=offset)
            else:
                for tok in tokens:
                    if not tok.isdigit() or int(tok) < 1 or (declared is not None and int(tok) > declared):
                        limit = declared if declared is not None else "n"
                        raise GraphFormatError(f"vertex id outside [1, {limit}]", token=tok, offset=offset + line.index(tok))
                u, v = int(tokens[0]), int(tokens[1])
                if u == v:
                    raise GraphFormatError("loops are not allowed", token=line.strip(), offset=offset)
                edges.append((u - 1, v - 1))
        offset += len(line.encode("utf-8"))
    if declared is None and not edges:
        raise GraphFormatError("empty edge list", token="", offset=0)
    n = declared if declared is not None else max(max(e) for e in edges) + 1
    graph = nx.Graph()
    graph.add_nodes_from(range(n))
    graph.add_edges_from(edges)
    return nx.to_numpy_array(graph, nodelist=range(n), dtype=int).astype(np.int8)


def to_edge_list(adjacency) -> str:
    """Emit a symmetric adjacency matrix as 1-indexed "u v" lines.

    The order line is written only when vertex n is isolated.
    """
    a = np.asarray(adjacency.to_array() if isinstance(adjacency, StaircaseMatrix) else adjacency)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or not np.array_equal(a, a.T):
        raise GraphFormatError("edge lists encode symmetric matrices only", token="", offset=0)
    n = a.shape[0]
    graph = nx.from_numpy_array(a)
    lines = [f"{u + 1} {v + 1}" for u, v in sorted(tuple(sorted(e)) for e in graph.edges())]
    if not a[n - 1].any():
        lines.insert(0, str(n))
    return "\n".join(lines) + "\n"


# ── Profile JSON ───────────────────────────────────────────────────────


def _profile_item(item) -> StaircaseMatrix:
    if isinstance(item, dict):
        if "mu" not in item:
            raise ProfileError("profile object needs a 'mu' field", index=0)
        return staircase.from_profile(item["mu"], item.get("n"))
    if isinstance(item, list):
        return staircase.from_profile(item)
    raise ProfileError(f"expected a profile list or object, got {type(item).__name__}", index=0)


def parse_profiles(text: str) -> list[StaircaseMatrix]:
    """A profile list, an {"n", "mu"} object, or a JSON array of either."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        token = text[exc.pos : exc.pos + 1]
        raise GraphFormatError(f"invalid profile JSON: {exc.msg}", token=token, offset=exc.pos) from exc
    if isinstance(data, list) and data and all(isinstance(x, (list, dict)) for x in data):
        return [_profile_item(x) for x in data]
    return [_profile_item(data)]


def profile_json(A: StaircaseMatrix) -> dict:
    return {"n": A.n, "mu": list(A.mu)}


def parse_staircases(text: str, kind: str) -> list[StaircaseMatrix]:
    """Staircase matrices from text of the given kind.

    Graph inputs must be threshold graphs; they are reordered by degree.
    """
    if kind == "profile":
        return parse_profiles(text)
    if kind == "graph6":
        return [staircase.from_graph(a) for a in parse_graph6_lines(text)]
    if kind == "edges":
        return [staircase.from_graph(parse_edge_list(text))]
    raise GraphFormatError(f"unknown input kind {kind!r}", token=kind, offset=0)


def load_staircases(value: str, kind: str) -> list[StaircaseMatrix]:
    """Like parse_staircases, but value may also name a file."""
    return parse_staircases(read_source(value), kind)

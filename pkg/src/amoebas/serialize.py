"""JSON, JSONL and DOT formats.

Trees are {"vertices": n, "edges": [[u,v],...]} with u < v and edges
sorted; amoebas add "mult"; colonies are {"members": [amoeba,...]}.  A
sequence log is JSON lines: a header naming the amoeba (or colony), ell
and the start tree, then one line per step with the copy and the new
edges.  Serializing and reparsing any of these is the identity.
"""

from __future__ import annotations

import json
from typing import Iterable

from .engine import Colony, LogStep, SequenceLog
from .errors import MalformedInput
from .model import Amoeba, CopyEmbedding, parse_amoeba
from .trees import Tree, parse_tree


def _int(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise MalformedInput(f"{what} must be an integer, got {value!r}")
    return value


def _pair(value, what: str) -> tuple[int, int]:
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise MalformedInput(f"{what} must be a pair, got {value!r}")
    return _int(value[0], what), _int(value[1], what)


def colony_to_json(colony: Colony) -> dict:
    return {"members": [m.to_json() for m in colony.members]}


def parse_colony(obj) -> Colony:
    if not isinstance(obj, dict) or "members" not in obj:
        raise MalformedInput("colony document needs a members list")
    members = obj["members"]
    if not isinstance(members, list) or not members:
        raise MalformedInput("members must be a non-empty list")
    return Colony(tuple(parse_amoeba(m) for m in members))


def parse_input(obj) -> Tree | Amoeba | Colony:
    """Read any of the three document kinds, telling them apart by key."""
    if not isinstance(obj, dict):
        raise MalformedInput("input document must be a JSON object")
    if "members" in obj:
        return parse_colony(obj)
    if "mult" in obj:
        return parse_amoeba(obj)
    return parse_tree(obj)


def parse_copy(obj) -> CopyEmbedding:
    if not isinstance(obj, dict):
        raise MalformedInput("copy must be a JSON object")
    for key in ("copy_edges", "copy_mult"):
        if key not in obj or not isinstance(obj[key], list):
            raise MalformedInput(f"copy needs a {key} list")
    edges = []
    for e in obj["copy_edges"]:
        u, v = _pair(e, "copy edge")
        if u == v:
            raise MalformedInput(f"copy edge {e!r} is a self-loop")
        edges.append((min(u, v), max(u, v)))
    if len(set(edges)) != len(edges):
        raise MalformedInput("duplicate copy edge")
    mult = []
    for p in obj["copy_mult"]:
        v, m = _pair(p, "copy mult entry")
        if m < 0:
            raise MalformedInput(f"negative multiplicity at vertex {v}")
        mult.append((v, m))
    if len({v for v, _ in mult}) != len(mult):
        raise MalformedInput("duplicate vertex in copy_mult")
    return CopyEmbedding(tuple(sorted(edges)), tuple(sorted(mult)))


# --- sequence logs ----------------------------------------------------------


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), sort_keys=True)


def log_lines(log: SequenceLog) -> list[str]:
    header: dict = {"ell": log.ell, "start": log.start.to_json()}
    if log.colony is not None:
        header["colony"] = colony_to_json(log.colony)
    elif log.amoeba is not None:
        header["amoeba"] = log.amoeba.to_json()
    else:
        raise MalformedInput("log names neither an amoeba nor a colony")
    lines = [_dumps(header)]
    for step in log.steps:
        rec = step.copy.to_json()
        rec["new_edges"] = [list(e) for e in step.new_edges]
        if log.colony is not None:
            rec["member"] = step.member
        lines.append(_dumps(rec))
    return lines


def log_to_jsonl(log: SequenceLog) -> str:
    return "\n".join(log_lines(log)) + "\n"


def parse_log(text: str | Iterable[str]) -> SequenceLog:
    raw = text.splitlines() if isinstance(text, str) else list(text)
    lines = [ln for ln in raw if ln.strip()]
    if not lines:
        raise MalformedInput("empty log")
    try:
        records = [json.loads(ln) for ln in lines]
    except json.JSONDecodeError as e:
        raise MalformedInput(f"log line is not JSON: {e}") from e
    header = records[0]
    if not isinstance(header, dict) or "ell" not in header or "start" not in header:
        raise MalformedInput("log header needs ell and start")
    ell = _int(header["ell"], "ell")
    if ell < 1:
        raise MalformedInput("ell must be at least 1")
    start = parse_tree(header["start"])
    amoeba = colony = None
    if "colony" in header:
        colony = parse_colony(header["colony"])
    elif "amoeba" in header:
        amoeba = parse_amoeba(header["amoeba"])
    else:
        raise MalformedInput("log header needs an amoeba or a colony")
    steps = []
    for i, rec in enumerate(records[1:]):
        if not isinstance(rec, dict) or "new_edges" not in rec:
            raise MalformedInput(f"step {i} needs new_edges")
        copy = parse_copy(rec)
        new_edges = []
        for e in rec["new_edges"]:
            u, v = _pair(e, f"step {i} new edge")
            new_edges.append((min(u, v), max(u, v)))
        member = None
        if colony is not None:
            if "member" not in rec:
                raise MalformedInput(f"step {i} of a colony log needs a member index")
            member = _int(rec["member"], f"step {i} member")
        steps.append(LogStep(copy, tuple(new_edges), member))
    return SequenceLog(ell=ell, start=start, amoeba=amoeba, colony=colony, steps=tuple(steps))


# --- DOT --------------------------------------------------------------------


def dot_graph(
    tree: Tree,
    mult: Iterable[int] | None = None,
    copy_vertices: Iterable[int] = (),
    new_edges: Iterable[tuple[int, int]] = (),
    name: str = "T",
) -> str:
    """Graphviz text for a tree; copy vertices are shaded grey and new
    edges dashed.  Output is byte-stable for equal inputs."""
    shaded = set(copy_vertices)
    dashed = {(min(u, v), max(u, v)) for u, v in new_edges}
    ms = list(mult) if mult is not None else None
    if ms is not None and len(ms) != tree.vertex_count:
        raise MalformedInput("mult length does not match the tree")
    out = [f"graph {name} {{", "  node [shape=circle];"]
    for v in range(tree.vertex_count):
        attrs = []
        if ms is not None and ms[v] > 0:
            attrs.append(f'label="{v} ({ms[v]})"')
        if v in shaded:
            attrs.append("style=filled")
            attrs.append("fillcolor=grey80")
        out.append(f"  {v} [{', '.join(attrs)}];" if attrs else f"  {v};")
    for u, v in tree.edges:
        if (u, v) in dashed:
            out.append(f"  {u} -- {v} [style=dashed];")
        else:
            out.append(f"  {u} -- {v};")
    out.append("}")
    return "\n".join(out) + "\n"

"""Text and JSON formats for instances and solutions.

Both text formats are line oriented: a versioned header, then one record per
line as a keyword followed by integers.  ``#`` starts a comment.  The grammar
is written out in ``docs/format.md``.  Emitting is canonical, so
``emit_instance(parse_instance(s)) == s`` for any canonically laid out ``s``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .errors import FormatError, InstanceError
from .kernel import PriorityRelation
from .tree import DirectedTree, Dipath, build_tree, make_dipath, resolve_dipath

INSTANCE_HEADER = "dipath-instance 1"
SOLUTION_HEADER = "dipath-solution 1"
KINDS = ("coloring", "multicut", "kernel")


@dataclass
class Instance:
    """An instance as written, before validation against the tree.

    ``paths`` holds ``("path", vertices)`` or ``("pair", (source, sink))``.
    """

    n: int
    arcs: list[tuple[int, int]]
    paths: list[tuple[str, tuple[int, ...]]] = field(default_factory=list)
    root: int | None = None
    ranking: tuple[int, ...] | None = None
    orders: dict[int, tuple[int, ...]] | None = None
    path_lines: list[int | None] = field(default_factory=list, compare=False, repr=False)

    @classmethod
    def from_problem(
        cls,
        tree: DirectedTree,
        paths: Sequence[Dipath],
        rel: PriorityRelation | None = None,
        root: int | None = None,
    ) -> Instance:
        inst = cls(tree.n, list(tree.arcs), [("path", p.vertices) for p in paths], root)
        if rel is not None:
            if rel.global_rank is not None:
                inst.ranking = tuple(rel.global_rank)
            else:
                inst.orders = {a: tuple(o) for a, o in sorted((rel.per_arc_order or {}).items())}
        return inst

    def build(self) -> tuple[DirectedTree, list[Dipath]]:
        """Validate into a tree and dipaths; dipath errors carry the source line."""
        tree = build_tree(self.n, self.arcs)
        paths = []
        for i, (kind, verts) in enumerate(self.paths):
            try:
                if kind == "pair":
                    paths.append(resolve_dipath(tree, verts[0], verts[1], i))
                else:
                    paths.append(make_dipath(tree, verts, i))
            except InstanceError as exc:
                line = self.path_lines[i] if i < len(self.path_lines) else None
                if line is None:
                    raise
                raise type(exc)(f"line {line}: {exc}") from None
        return tree, paths

    def relation(self) -> PriorityRelation | None:
        if self.ranking is not None:
            return PriorityRelation.ranking(self.ranking)
        if self.orders is not None:
            return PriorityRelation.per_arc(self.orders)
        return None


@dataclass
class Solution:
    kind: str
    color: dict[int, int] = field(default_factory=dict)
    num_colors: int | None = None
    omega: int | None = None
    packed: set[int] = field(default_factory=set)
    cut: set[int] = field(default_factory=set)
    kernel: set[int] = field(default_factory=set)
    witness: dict[int, tuple[int, int]] = field(default_factory=dict)


# --------------------------------------------------------------------------
# text


def _records(text: str, header: str) -> Iterator[tuple[int, str, list[str]]]:
    seen_header = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not seen_header:
            if line.split() != header.split():
                raise FormatError(f"expected header {header!r}, got {line!r}", lineno)
            seen_header = True
            continue
        word, *rest = line.split()
        yield lineno, word, rest
    if not seen_header:
        raise FormatError(f"missing header {header!r}")


def _ints(lineno: int, word: str, fields: list[str], low: int, high: int | None = -1) -> list[int]:
    """Parse ``fields`` as non-negative integers; ``high=-1`` means unbounded, ``None`` means ``low``."""
    high = low if high is None else high
    if len(fields) < low or (high >= 0 and len(fields) > high):
        want = str(low) if low == high else f"at least {low}"
        raise FormatError(f"{word!r} takes {want} values, got {len(fields)}", lineno)
    try:
        values = [int(x) for x in fields]
    except ValueError:
        raise FormatError(f"non-integer field in {word!r} record", lineno) from None
    if any(v < 0 for v in values):
        raise FormatError(f"negative value in {word!r} record", lineno)
    return values


def parse_instance(text: str) -> Instance:
    if text.lstrip().startswith("{"):
        return instance_from_json(text)
    n = None
    root = None
    arcs: list[tuple[int, int]] = []
    paths: list[tuple[str, tuple[int, ...]]] = []
    lines: list[int | None] = []
    ranking = None
    orders: dict[int, tuple[int, ...]] | None = None
    for lineno, word, fields in _records(text, INSTANCE_HEADER):
        if word == "vertices":
            if n is not None:
                raise FormatError("'vertices' given twice", lineno)
            (n,) = _ints(lineno, word, fields, 1, None)
            if n == 0:
                raise FormatError("a tree needs at least one vertex", lineno)
        elif word == "root":
            if root is not None:
                raise FormatError("'root' given twice", lineno)
            (root,) = _ints(lineno, word, fields, 1, None)
        elif word == "arc":
            t, h = _ints(lineno, word, fields, 2, None)
            arcs.append((t, h))
        elif word == "path":
            verts = _ints(lineno, word, fields, 1)
            if len(verts) < 2:
                raise FormatError(f"dipath {len(paths)} has no arc", lineno)
            paths.append((word, tuple(verts)))
            lines.append(lineno)
        elif word == "pair":
            s, t = _ints(lineno, word, fields, 2, None)
            if s == t:
                raise FormatError(f"dipath {len(paths)} has no arc (source == sink)", lineno)
            paths.append((word, (s, t)))
            lines.append(lineno)
        elif word == "ranking":
            if ranking is not None or orders is not None:
                raise FormatError("only one priority block is allowed", lineno)
            ranking = tuple(_ints(lineno, word, fields, 0))
        elif word == "order":
            if ranking is not None:
                raise FormatError("'order' cannot be mixed with 'ranking'", lineno)
            a, *order = _ints(lineno, word, fields, 1)
            orders = {} if orders is None else orders
            if a in orders:
                raise FormatError(f"arc {a} ordered twice", lineno)
            orders[a] = tuple(order)
        else:
            raise FormatError(f"unknown record {word!r}", lineno)
    if n is None:
        raise FormatError("missing 'vertices' record")
    if root is not None and root >= n:
        raise FormatError(f"root {root} not in 0..{n - 1}")
    return Instance(n, arcs, paths, root, ranking, orders, lines)


def _line(*parts: object) -> str:
    return " ".join(map(str, parts))


def emit_instance(inst: Instance) -> str:
    out = [INSTANCE_HEADER, _line("vertices", inst.n)]
    if inst.root is not None:
        out.append(_line("root", inst.root))
    out += [_line("arc", t, h) for t, h in inst.arcs]
    out += [_line(kind, *verts) for kind, verts in inst.paths]
    if inst.ranking is not None:
        out.append(_line("ranking", *inst.ranking))
    if inst.orders is not None:
        out += [_line("order", a, *order) for a, order in sorted(inst.orders.items())]
    return "\n".join(out) + "\n"


def parse_solution(text: str) -> Solution:
    if text.lstrip().startswith("{"):
        return solution_from_json(text)
    sol: Solution | None = None
    for lineno, word, fields in _records(text, SOLUTION_HEADER):
        if word == "kind":
            if sol is not None:
                raise FormatError("'kind' given twice", lineno)
            if len(fields) != 1 or fields[0] not in KINDS:
                raise FormatError(f"kind must be one of {', '.join(KINDS)}", lineno)
            sol = Solution(fields[0])
            continue
        if sol is None:
            raise FormatError("first record must be 'kind'", lineno)
        if word == "colors":
            (sol.num_colors,) = _ints(lineno, word, fields, 1, None)
        elif word == "omega":
            (sol.omega,) = _ints(lineno, word, fields, 1, None)
        elif word == "color":
            p, c = _ints(lineno, word, fields, 2, None)
            if p in sol.color:
                raise FormatError(f"dipath {p} coloured twice", lineno)
            sol.color[p] = c
        elif word in ("packed", "cut", "kernel"):
            (x,) = _ints(lineno, word, fields, 1, None)
            getattr(sol, word).add(x)
        elif word == "witness":
            q, a, p = _ints(lineno, word, fields, 3, None)
            sol.witness[q] = (a, p)
        else:
            raise FormatError(f"unknown record {word!r}", lineno)
    if sol is None:
        raise FormatError("missing 'kind' record")
    return sol


def emit_solution(sol: Solution) -> str:
    out = [SOLUTION_HEADER, _line("kind", sol.kind)]
    if sol.kind == "coloring":
        if sol.num_colors is not None:
            out.append(_line("colors", sol.num_colors))
        if sol.omega is not None:
            out.append(_line("omega", sol.omega))
        out += [_line("color", p, c) for p, c in sorted(sol.color.items())]
    elif sol.kind == "multicut":
        out += [_line("packed", p) for p in sorted(sol.packed)]
        out += [_line("cut", a) for a in sorted(sol.cut)]
    else:
        out += [_line("kernel", p) for p in sorted(sol.kernel)]
        out += [_line("witness", q, a, p) for q, (a, p) in sorted(sol.witness.items())]
    return "\n".join(out) + "\n"


# --------------------------------------------------------------------------
# JSON


def instance_to_json(inst: Instance, indent: int | None = None) -> str:
    doc: dict = {"format": INSTANCE_HEADER, "vertices": inst.n, "arcs": [list(a) for a in inst.arcs]}
    doc["paths"] = [{kind: list(verts)} for kind, verts in inst.paths]
    if inst.root is not None:
        doc["root"] = inst.root
    if inst.ranking is not None:
        doc["ranking"] = list(inst.ranking)
    if inst.orders is not None:
        doc["orders"] = {str(a): list(o) for a, o in sorted(inst.orders.items())}
    return json.dumps(doc, indent=indent) + "\n"


def _load(text: str, header: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or doc.get("format") != header:
        raise FormatError(f"JSON document must have \"format\": {header!r}")
    return doc


def instance_from_json(text: str) -> Instance:
    doc = _load(text, INSTANCE_HEADER)
    try:
        paths = []
        for entry in doc.get("paths", []):
            ((kind, verts),) = entry.items()
            if kind not in ("path", "pair"):
                raise FormatError(f"unknown dipath kind {kind!r}")
            paths.append((kind, tuple(int(v) for v in verts)))
        orders = doc.get("orders")
        return Instance(
            int(doc["vertices"]),
            [(int(t), int(h)) for t, h in doc.get("arcs", [])],
            paths,
            doc.get("root"),
            None if doc.get("ranking") is None else tuple(doc["ranking"]),
            None if orders is None else {int(a): tuple(o) for a, o in orders.items()},
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"malformed JSON instance: {exc}") from None


def solution_to_json(sol: Solution, indent: int | None = None) -> str:
    doc: dict = {"format": SOLUTION_HEADER, "kind": sol.kind}
    if sol.kind == "coloring":
        doc.update(colors=sol.num_colors, omega=sol.omega)
        doc["color"] = {str(p): c for p, c in sorted(sol.color.items())}
    elif sol.kind == "multicut":
        doc.update(packed=sorted(sol.packed), cut=sorted(sol.cut))
    else:
        doc["kernel"] = sorted(sol.kernel)
        doc["witness"] = {str(q): list(w) for q, w in sorted(sol.witness.items())}
    return json.dumps(doc, indent=indent) + "\n"


def solution_from_json(text: str) -> Solution:
    doc = _load(text, SOLUTION_HEADER)
    if doc.get("kind") not in KINDS:
        raise FormatError(f"kind must be one of {', '.join(KINDS)}")
    try:
        return Solution(
            doc["kind"],
            color={int(p): int(c) for p, c in doc.get("color", {}).items()},
            num_colors=doc.get("colors"),
            omega=doc.get("omega"),
            packed=set(doc.get("packed", [])),
            cut=set(doc.get("cut", [])),
            kernel=set(doc.get("kernel", [])),
            witness={int(q): (int(w[0]), int(w[1])) for q, w in doc.get("witness", {}).items()},
        )
    except (TypeError, ValueError, IndexError) as exc:
        raise FormatError(f"malformed JSON solution: {exc}") from None

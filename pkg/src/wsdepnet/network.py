"""Directed parameter dependency networks: construction and serialization.

A link src -> dst means some operation consumes a member of archetype src
as an input and yields a member of archetype dst as an output. The graph
is simple: parallel dependencies accumulate in the link weight, and
self-dependencies are suppressed (counted, not stored), since all the
downstream metrics assume a loop-free unweighted graph.
"""

from __future__ import annotations

import json
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from pathlib import Path
from xml.sax.saxutils import escape

from .errors import CollectionError
from .matching import Archetype, MatcherKind, build_archetypes
from .model import ParameterInstance, Role, ServiceCollection


@dataclass
class Link:
    weight: int
    witness_operations: list[str]


@dataclass
class DependencyNetwork:
    nodes: list[Archetype]
    links: dict[tuple[int, int], Link]
    matcher: MatcherKind
    self_loop_count: int = 0

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def link_count(self) -> int:
        return len(self.links)

    def sorted_links(self) -> list[tuple[int, int]]:
        return sorted(self.links)

    def out_adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.nodes]
        for src, dst in self.sorted_links():
            adj[src].append(dst)
        return adj

    def in_adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.nodes]
        for src, dst in self.sorted_links():
            adj[dst].append(src)
        return adj

    def undirected_adjacency(self) -> list[list[int]]:
        """Simple undirected projection; neighbor lists sorted, no duplicates."""
        neighbor_sets: list[set[int]] = [set() for _ in self.nodes]
        for src, dst in self.links:
            neighbor_sets[src].add(dst)
            neighbor_sets[dst].add(src)
        return [sorted(s) for s in neighbor_sets]


@dataclass
class NetworkSummary:
    nodes: int
    links: int
    isolated_nodes: int
    isolated_fraction: float
    self_loop_count: int


def build_network(
    c: ServiceCollection,
    kind: MatcherKind,
    casefold: bool = False,
) -> DependencyNetwork:
    """Archetypes become nodes; every (input, output) instance pair of every
    operation contributes one directed dependency between their archetypes."""
    archetypes, instance_map = build_archetypes(c, kind, casefold=casefold)
    links: dict[tuple[int, int], Link] = {}
    self_loops = 0
    for op in c.iter_operations():
        for input_inst in op.inputs:
            src = instance_map[id(input_inst)]
            for output_inst in op.outputs:
                dst = instance_map[id(output_inst)]
                if src == dst:
                    self_loops += 1
                    continue
                link = links.get((src, dst))
                if link is None:
                    links[(src, dst)] = Link(weight=1, witness_operations=[op.id])
                else:
                    link.weight += 1
                    link.witness_operations.append(op.id)
    return DependencyNetwork(nodes=archetypes, links=links, matcher=kind, self_loop_count=self_loops)


def network_summary(n: DependencyNetwork) -> NetworkSummary:
    degree = [0] * n.node_count
    for src, dst in n.links:
        degree[src] += 1
        degree[dst] += 1
    isolated = sum(1 for d in degree if d == 0)
    return NetworkSummary(
        nodes=n.node_count,
        links=n.link_count,
        isolated_nodes=isolated,
        isolated_fraction=isolated / n.node_count if n.node_count else 0.0,
        self_loop_count=n.self_loop_count,
    )


def network_from_edges(
    num_nodes: int,
    edges: list[tuple[int, int]],
    matcher: MatcherKind = MatcherKind.SYNTACTIC_EQUAL,
    labels: list[str] | None = None,
) -> DependencyNetwork:
    """Build a network from raw directed edges with synthetic single-member nodes."""
    nodes = []
    for i in range(num_nodes):
        label = labels[i] if labels else f"n{i}"
        inst = ParameterInstance(name=label, role=Role.INPUT, operation_id="synthetic")
        nodes.append(Archetype(id=i, label=label, key=label, members=[inst]))
    links: dict[tuple[int, int], Link] = {}
    self_loops = 0
    for src, dst in edges:
        if src == dst:
            self_loops += 1
            continue
        link = links.get((src, dst))
        if link is None:
            links[(src, dst)] = Link(weight=1, witness_operations=["synthetic"])
        else:
            link.weight += 1
            link.witness_operations.append("synthetic")
    return DependencyNetwork(nodes=nodes, links=links, matcher=matcher, self_loop_count=self_loops)


# -- serialization ------------------------------------------------------------

GRAPHML_NS = "http://graphml.graphdrawing.org/xmlns"


def to_edgelist(n: DependencyNetwork) -> str:
    """TSV `source<TAB>target<TAB>weight`, sorted by (source, target)."""
    lines = [f"{src}\t{dst}\t{n.links[(src, dst)].weight}" for src, dst in n.sorted_links()]
    return "".join(line + "\n" for line in lines)


def to_graphml(n: DependencyNetwork) -> str:
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>\n',
        f'<graphml xmlns="{GRAPHML_NS}">\n',
        '  <key id="label" for="node" attr.name="label" attr.type="string"/>\n',
        '  <key id="instance_count" for="node" attr.name="instance_count" attr.type="int"/>\n',
        '  <key id="weight" for="edge" attr.name="weight" attr.type="int"/>\n',
        '  <graph id="G" edgedefault="directed">\n',
    ]
    for node in n.nodes:
        out.append(
            f'    <node id="n{node.id}">'
            f'<data key="label">{escape(node.label)}</data>'
            f'<data key="instance_count">{node.instance_count}</data>'
            "</node>\n"
        )
    for src, dst in n.sorted_links():
        out.append(
            f'    <edge source="n{src}" target="n{dst}">'
            f'<data key="weight">{n.links[(src, dst)].weight}</data>'
            "</edge>\n"
        )
    out.append("  </graph>\n</graphml>\n")
    return "".join(out)


def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(n: DependencyNetwork) -> str:
    out = ["digraph dependencies {\n"]
    for node in n.nodes:
        out.append(f"  n{node.id} [label={_dot_quote(node.label)}];\n")
    for src, dst in n.sorted_links():
        out.append(f"  n{src} -> n{dst} [weight={n.links[(src, dst)].weight}];\n")
    out.append("}\n")
    return "".join(out)


EXPORT_FORMATS = {"graphml": to_graphml, "dot": to_dot, "edgelist": to_edgelist}


def export(n: DependencyNetwork, format: str) -> str:
    try:
        renderer = EXPORT_FORMATS[format]
    except KeyError:
        raise ValueError(f"unknown export format {format!r}") from None
    return renderer(n)


def sidecar_path(path: str | Path) -> Path:
    return Path(str(path) + ".meta.json")


def save_network(n: DependencyNetwork, path: str | Path) -> None:
    """Write the GraphML file plus a sidecar with matcher and archetype membership."""
    path = Path(path)
    path.write_text(to_graphml(n), encoding="utf-8")
    meta = {
        "matcher": n.matcher.value,
        "self_loop_count": n.self_loop_count,
        "archetypes": [
            {
                "id": node.id,
                "key": node.key,
                "label": node.label,
                "members": [
                    {
                        "name": inst.name,
                        "role": inst.role.value,
                        "operation": inst.operation_id,
                        "type": inst.xsd_type,
                        "concept": inst.concept,
                    }
                    for inst in node.members
                ],
            }
            for node in n.nodes
        ],
        "links": [
            {"source": src, "target": dst, "witnesses": n.links[(src, dst)].witness_operations}
            for src, dst in n.sorted_links()
        ],
    }
    sidecar_path(path).write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def load_network(path: str | Path) -> DependencyNetwork:
    """Read a network written by save_network (GraphML + sidecar)."""
    path = Path(path)
    meta_path = sidecar_path(path)
    if not path.exists():
        raise CollectionError(f"network file not found: {path}")
    if not meta_path.exists():
        raise CollectionError(f"missing network sidecar: {meta_path}")
    try:
        tree = ET.parse(path)
    except ET.ParseError as exc:
        raise CollectionError(f"{path}: malformed GraphML: {exc}") from exc
    try:
        meta = json.loads(meta_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise CollectionError(f"{meta_path}: parse error: {exc}") from exc

    nodes: list[Archetype] = []
    for entry in meta["archetypes"]:
        members = [
            ParameterInstance(
                name=m["name"],
                role=Role(m["role"]),
                operation_id=m["operation"],
                xsd_type=m.get("type"),
                concept=m.get("concept"),
            )
            for m in entry["members"]
        ]
        nodes.append(Archetype(id=entry["id"], label=entry["label"], key=entry["key"], members=members))
    nodes.sort(key=lambda a: a.id)
    if [a.id for a in nodes] != list(range(len(nodes))):
        raise CollectionError(f"{meta_path}: archetype ids are not dense")

    weights: dict[tuple[int, int], int] = {}
    graph = tree.getroot().find(f"{{{GRAPHML_NS}}}graph")
    if graph is None:
        raise CollectionError(f"{path}: no graph element")
    for edge in graph.findall(f"{{{GRAPHML_NS}}}edge"):
        src = int(edge.get("source").lstrip("n"))
        dst = int(edge.get("target").lstrip("n"))
        weight = 1
        for data in edge.findall(f"{{{GRAPHML_NS}}}data"):
            if data.get("key") == "weight":
                weight = int(data.text)
        weights[(src, dst)] = weight

    links: dict[tuple[int, int], Link] = {}
    for entry in meta["links"]:
        key = (entry["source"], entry["target"])
        if key not in weights:
            raise CollectionError(f"{meta_path}: link {key} not present in GraphML")
        links[key] = Link(weight=weights[key], witness_operations=list(entry["witnesses"]))
    if set(links) != set(weights):
        raise CollectionError(f"{path}: GraphML links and sidecar links disagree")
    return DependencyNetwork(
        nodes=nodes,
        links=links,
        matcher=MatcherKind(meta["matcher"]),
        self_loop_count=meta["self_loop_count"],
    )

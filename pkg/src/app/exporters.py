import json
from enum import Enum

import networkx as nx
import pandas as pd

from src.models.anneal import TRACE_COLUMNS
from src.models.pattern import MeasurementPattern
from src.models.resource import CompiledResource, VertexRole
from src.tools.serialization import SimpleDict


class ExportFormat(Enum):
    JSON = "json"
    DOT = "dot"
    CSV_TRACE = "csv-trace"


def export(
    resource: CompiledResource,
    pattern: MeasurementPattern,
    fmt: ExportFormat | str,
    trace: pd.DataFrame | None = None,
) -> str:
    """
    Renders compiled artifacts as text. Identical inputs give byte-identical output.
    :param resource: Compiled resource
    :param pattern: Its measurement pattern
    :param fmt: json, dot or csv-trace
    :param trace: Annealing steps for csv-trace; an empty trace is written when missing
    :raises ValueError: On an unknown format
    """
    try:
        fmt = ExportFormat(fmt)
    except ValueError:
        known = ", ".join(f.value for f in ExportFormat)
        raise ValueError(f"Unknown export format {fmt!r}; known: {known}") from None

    if fmt is ExportFormat.JSON:
        return export_json(resource, pattern)
    if fmt is ExportFormat.DOT:
        return export_dot(resource)
    return export_trace_csv(pd.DataFrame(columns=TRACE_COLUMNS) if trace is None else trace)


def artifacts_to_simple_dict(resource: CompiledResource, pattern: MeasurementPattern) -> SimpleDict:
    return {"resource": resource.to_simple_dict(), "pattern": pattern.to_simple_dict()}


def export_json(resource: CompiledResource, pattern: MeasurementPattern) -> str:
    return json.dumps(artifacts_to_simple_dict(resource, pattern), indent=2) + "\n"


def load_artifacts(text: str) -> tuple[CompiledResource, MeasurementPattern]:
    simple_dict = json.loads(text)
    return (
        CompiledResource.from_simple_dict(simple_dict["resource"]),
        MeasurementPattern.from_simple_dict(simple_dict["pattern"]),
    )


def labelled_graph(resource: CompiledResource) -> nx.Graph:
    """
    :return: The resource graph with a label, shape and role per vertex and a style per edge.
    Ladder CNOTs are added as dashed edges.
    """
    g = resource.graph.to_networkx()
    for info in resource.roles:
        v = int(info.id)
        mnemonic = resource.vops[v].mnemonic
        if info.role is VertexRole.MAIN:
            name, shape = f"main({info.term})", "box"
        else:
            name, shape = f"aux({info.step},{info.term})", "circle"
        label = name if mnemonic == "I" else f"{name} {mnemonic}"
        g.nodes[v].update(label=label, shape=shape, role=info.role.value)
    nx.set_edge_attributes(g, "solid", "style")
    if resource.ladder is not None:
        for control, target in resource.ladder.edges:
            # CNOTs on an existing graph edge are drawn bold
            g.add_edge(control, target, style="dashed" if not g.has_edge(control, target) else "bold")
    return g


def export_dot(resource: CompiledResource) -> str:
    g = labelled_graph(resource)
    lines = ["graph resource {", "\tgraph [overlap=false];"]
    for v in sorted(g.nodes):
        attrs = g.nodes[v]
        lines.append(f'\t"{v}" [label="{attrs["label"]}", shape={attrs["shape"]}];')
    for a, b in sorted(tuple(sorted(e)) for e in g.edges):
        style = g.edges[a, b]["style"]
        lines.append(f'\t"{a}" -- "{b}" [style={style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_trace_csv(trace: pd.DataFrame) -> str:
    """
    :param trace: Annealing steps; an optional run column is kept in front
    """
    columns = (["run"] if "run" in trace.columns else []) + TRACE_COLUMNS
    return trace[columns].to_csv(index=False, lineterminator="\n")

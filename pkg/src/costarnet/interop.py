"""Graph-library interop helpers for co-starring networks.

Networks convert to :mod:`networkx` (a required dependency) and to
``igraph`` (optional extra). The ``igraph`` import error is raised lazily
when the helper is actually called.

Example:
    >>> from costarnet.interop import write_graph
    >>> write_graph(network, "1990-1993.graphml")
"""

from __future__ import annotations

from pathlib import Path
from typing import TYPE_CHECKING, Any, Literal

import networkx as nx

from ._exceptions import ConfigError

if TYPE_CHECKING:
    from .graph import CollabNetwork

GraphFormat = Literal["graphml", "gexf"]

_SUFFIX_FORMATS: dict[str, GraphFormat] = {".graphml": "graphml", ".gexf": "gexf"}


def to_networkx(g: CollabNetwork, *, drop_missing: bool = False) -> nx.Graph:
    """Return ``g`` as a :class:`networkx.Graph`.

    Args:
        g: The network
        drop_missing: Omit attributes whose value is ``None`` (file formats
            such as GraphML cannot store them)
    """
    graph = g.to_networkx()
    if drop_missing:
        for _, data in graph.nodes(data=True):
            for key in [k for k, v in data.items() if v is None]:
                del data[key]
    return graph


def write_graph(
    g: CollabNetwork,
    path: str | Path,
    format: GraphFormat | None = None,
) -> Path:
    """Write ``g`` as GraphML or GEXF for external visualization tools.

    Args:
        g: The network
        path: Output file
        format: ``"graphml"`` or ``"gexf"``; inferred from the suffix by default

    Returns:
        The written path.

    Raises:
        ConfigError: Unknown format or unwritable path.
    """
    path = Path(path)
    fmt = format or _SUFFIX_FORMATS.get(path.suffix.lower())
    if fmt is None:
        raise ConfigError(
            f"Cannot infer graph format from '{path.name}'; use .graphml or .gexf"
        )
    graph = to_networkx(g, drop_missing=True)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        if fmt == "graphml":
            nx.write_graphml(graph, path)
        else:
            nx.write_gexf(graph, path)
    except OSError as exc:
        raise ConfigError(f"Cannot write {path}: {exc}") from exc
    return path


def to_igraph(g: CollabNetwork) -> Any:
    """Return ``g`` as an ``igraph.Graph`` with node attributes and weights.

    Requires the ``igraph`` package. Install with::

        pip install costarnet[igraph]

    Raises:
        ImportError: if ``igraph`` is not installed.
    """
    try:
        import igraph  # type: ignore[import-not-found, unused-ignore]
    except ImportError as e:  # pragma: no cover - import guard
        raise ImportError(
            "igraph is required for igraph interop. "
            "Install with: pip install costarnet[igraph]"
        ) from e
    graph = igraph.Graph(n=g.n_nodes, edges=list(g.edges))
    graph.vs["star_id"] = list(g.star_ids)
    for name in g.attributes[0] if g.n_nodes else ():
        graph.vs[name] = g.attribute_values(name)
    graph.es["weight"] = list(g.weights)
    return graph

"""
Life Ontology Schemas

An individual's ontology at a life stage is a disjoint map of per-dimension
weighted digraphs. The same node / edge types serve the ideal and the actual
side; ideal-only attributes (phi, rho, edge weight) are optional and are
checked by `analysis.ontology_core.validate(..., role="ideal")`.

JSON layout:

    {"individual": "i-1", "stage": 2, "stage_label": "mid-career",
     "background": {"age": 41.0},
     "dimensions": {"health": {"nodes": [{"id": "sleep", "weight": 1.0}],
                               "edges": []}}}
"""

from enum import Enum
from typing import Any, Dict, Iterator, List, Optional, Tuple

from pydantic import ConfigDict, Field, model_validator

from .base import EdgeRef, FrozenModel, NodeRef

DimensionId = str


class ConceptNode(FrozenModel):
    model_config = ConfigDict(extra="forbid", frozen=True, populate_by_name=True, serialize_by_alias=True)

    id: str
    weight: float
    omega: Optional[float] = None
    phi: Optional[float] = None
    tau_optimal: Optional[float] = None
    delta_tau_max: Optional[float] = None
    c0: Optional[float] = None
    lambda_: Optional[float] = Field(default=None, alias="lambda")
    tau_acquire: Optional[float] = None
    transferability: Optional[float] = None


class CausalEdge(FrozenModel):
    source: str
    target: str
    weight: Optional[float] = None
    rho: Optional[float] = None

    @property
    def key(self) -> Tuple[str, str]:
        return (self.source, self.target)


class DimensionGraph(FrozenModel):
    # Filled from the owning Ontology's map key; not part of the file format.
    dimension: DimensionId = Field(default="", exclude=True)
    nodes: Tuple[ConceptNode, ...] = ()
    edges: Tuple[CausalEdge, ...] = ()

    def node_map(self) -> Dict[str, ConceptNode]:
        return {node.id: node for node in self.nodes}

    def edge_map(self) -> Dict[Tuple[str, str], CausalEdge]:
        return {edge.key: edge for edge in self.edges}


class Ontology(FrozenModel):
    individual: str
    stage: int
    stage_label: str
    background: Dict[str, float] = Field(default_factory=dict)
    dimensions: Dict[DimensionId, DimensionGraph] = Field(default_factory=dict)

    @model_validator(mode="before")
    @classmethod
    def _label_dimensions(cls, data: Any) -> Any:
        if not isinstance(data, dict) or not isinstance(data.get("dimensions"), dict):
            return data
        labelled = {}
        for label, graph in data["dimensions"].items():
            if isinstance(graph, DimensionGraph):
                graph = graph.model_copy(update={"dimension": label})
            elif isinstance(graph, dict):
                graph = {**graph, "dimension": label}
            labelled[label] = graph
        return {**data, "dimensions": labelled}

    def graph(self, dimension: DimensionId) -> Optional[DimensionGraph]:
        return self.dimensions.get(dimension)

    def iter_nodes(self) -> Iterator[Tuple[NodeRef, ConceptNode]]:
        for label in sorted(self.dimensions):
            for node in self.dimensions[label].nodes:
                yield (label, node.id), node

    def iter_edges(self) -> Iterator[Tuple[EdgeRef, CausalEdge]]:
        for label in sorted(self.dimensions):
            for edge in self.dimensions[label].edges:
                yield (label, edge.source, edge.target), edge

    def node(self, ref: NodeRef) -> Optional[ConceptNode]:
        graph = self.dimensions.get(ref[0])
        return graph.node_map().get(ref[1]) if graph else None

    def edge(self, ref: EdgeRef) -> Optional[CausalEdge]:
        graph = self.dimensions.get(ref[0])
        return graph.edge_map().get((ref[1], ref[2])) if graph else None

    def node_refs(self) -> set:
        return {ref for ref, _ in self.iter_nodes()}

    def edge_refs(self) -> set:
        return {ref for ref, _ in self.iter_edges()}


class ViolationKind(str, Enum):
    NORMALIZATION = "normalization"
    EDGE_NORMALIZATION = "edge_normalization"
    PARTIAL_EDGE_WEIGHTS = "partial_edge_weights"
    OUT_OF_RANGE = "out_of_range"
    DANGLING_EDGE = "dangling_edge"
    DUPLICATE_NODE = "duplicate_node"
    DUPLICATE_EDGE = "duplicate_edge"
    NEGATIVE_STAGE = "negative_stage"
    DIMENSION_LABEL = "dimension_label"
    MISSING_IDEAL_FIELD = "missing_ideal_field"
    OMEGA_MISMATCH = "omega_mismatch"


class Violation(FrozenModel):
    kind: ViolationKind
    dimension: Optional[DimensionId] = None
    location: Optional[str] = None
    message: str


class ValidationReport(FrozenModel):
    violations: Tuple[Violation, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.violations

    def of_kind(self, kind: ViolationKind) -> List[Violation]:
        return [v for v in self.violations if v.kind == kind]

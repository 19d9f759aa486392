"""LWF and AMP chain graphs: separation, decomposition into DAGs with
selection nodes, and consensus construction from several DAG models."""

__version__ = "0.1.0"

from .errors import (CapExceededError, ChainGraphError, ConsensusError, ContractViolation,
                     GraphFormatError, InvalidGraphError, NonGraphoidError, UnknownNodeError,
                     UnsatisfiableTemplateError)
from .graph import (Chain, MixedGraph, chain_consistent, connectivity_components, induced_subgraph,
                    relatives, validate_cg)
from .formats import format_chain, format_graph, parse_chain, parse_graph
from .structure import Complex, Triplex, complexes, markov_equivalent, triplexes
from .enumeration import consistent_chains, enumerate_cgs
from .separation import SeparationQuery, elementary_model, separated, separated_oracle
from .models import (ExplicitModel, GraphBacked, Intersection, ModelView, Transformed, Triple,
                     check_axioms, materialize, member, model_subset)
from .decomposition import DecompositionResult, decompose, target_model, verify_theorem1
from .consensus import (ConsensusTrace, DagSpec, amp_consensus, consensus_from_dags,
                        find_smallest_subset, lwf_consensus)

__all__ = [
    "CapExceededError",
    "Chain",
    "ChainGraphError",
    "Complex",
    "ConsensusError",
    "ConsensusTrace",
    "ContractViolation",
    "DagSpec",
    "DecompositionResult",
    "ExplicitModel",
    "GraphBacked",
    "GraphFormatError",
    "Intersection",
    "InvalidGraphError",
    "MixedGraph",
    "ModelView",
    "NonGraphoidError",
    "SeparationQuery",
    "Transformed",
    "Triple",
    "Triplex",
    "UnknownNodeError",
    "UnsatisfiableTemplateError",
    "amp_consensus",
    "chain_consistent",
    "check_axioms",
    "complexes",
    "connectivity_components",
    "consensus_from_dags",
    "consistent_chains",
    "decompose",
    "elementary_model",
    "enumerate_cgs",
    "find_smallest_subset",
    "format_chain",
    "format_graph",
    "induced_subgraph",
    "lwf_consensus",
    "markov_equivalent",
    "materialize",
    "member",
    "model_subset",
    "parse_chain",
    "parse_graph",
    "relatives",
    "separated",
    "separated_oracle",
    "target_model",
    "triplexes",
    "validate_cg",
    "verify_theorem1",
]

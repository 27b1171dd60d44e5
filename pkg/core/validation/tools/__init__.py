from .constraint_checker import ConstraintChecker, validate, flow_graph, topological_order

__all__ = ['ConstraintChecker', 'validate', 'flow_graph', 'topological_order']

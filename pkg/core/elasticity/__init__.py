"""Closed-loop elasticity policy."""
from .schemas import PolicyConfig, Action, ActionKind
from .tools import ElasticityController, decide

__all__ = ['PolicyConfig', 'Action', 'ActionKind', 'ElasticityController', 'decide']

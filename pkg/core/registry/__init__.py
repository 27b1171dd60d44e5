"""Model registry with best-model selection."""
from .schemas import ModelRecord, EvalStrategy, ModelStore, Direction
from .tools import ModelRegistry, register, select_best, resolve, load_store, serialize_store

__all__ = [
    'ModelRecord',
    'EvalStrategy',
    'ModelStore',
    'Direction',
    'ModelRegistry',
    'register',
    'select_best',
    'resolve',
    'load_store',
    'serialize_store',
]

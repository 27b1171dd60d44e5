from .model_registry import (
    ModelRegistry,
    register,
    select_best,
    resolve,
    load_store,
    serialize_store,
)

__all__ = ['ModelRegistry', 'register', 'select_best', 'resolve', 'load_store', 'serialize_store']

from .policy import PolicyConfig, Action, ActionKind

__all__ = ['PolicyConfig', 'Action', 'ActionKind']

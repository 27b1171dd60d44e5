from .model_record import ModelRecord, Direction, EvalStrategy, ModelStore

__all__ = ['ModelRecord', 'Direction', 'EvalStrategy', 'ModelStore']

from .elasticity_controller import ElasticityController, decide

__all__ = ['ElasticityController', 'decide']

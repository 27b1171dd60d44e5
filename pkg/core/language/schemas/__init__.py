from .pipeline_spec import (
    ComponentKind,
    GpuDemand,
    TierHint,
    ModelRef,
    Component,
    Flow,
    PipelineSpec,
    IDENTIFIER_RE,
    VERSION_RE,
    LATEST,
)

__all__ = [
    'ComponentKind',
    'GpuDemand',
    'TierHint',
    'ModelRef',
    'Component',
    'Flow',
    'PipelineSpec',
    'IDENTIFIER_RE',
    'VERSION_RE',
    'LATEST',
]

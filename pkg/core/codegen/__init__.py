"""Infrastructure-as-code generation from placement plans."""
from .schemas import DeploymentManifest, DeploymentUnit, WiringEntry, ManifestIndex
from .tools import generate, build_index, render_tree, write_tree

__all__ = [
    'DeploymentManifest',
    'DeploymentUnit',
    'WiringEntry',
    'ManifestIndex',
    'generate',
    'build_index',
    'render_tree',
    'write_tree',
]

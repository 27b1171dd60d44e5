from .manifest_generator import ManifestGenerator, generate, build_index
from .manifest_writer import render_manifest, render_index, render_tree, write_tree

__all__ = [
    'ManifestGenerator',
    'generate',
    'build_index',
    'render_manifest',
    'render_index',
    'render_tree',
    'write_tree',
]

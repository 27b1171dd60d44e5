"""YAML rendering of manifests and the output directory writer."""
from pathlib import Path
from typing import Dict, List

import yaml

from core.services.logging import setup_logger
from core.services.storage import ensure_directory, json_codec, write_text_atomic
from core.settings import MANIFEST_INDEX
from ..schemas.deployment_manifest import DeploymentManifest, ManifestIndex

logger = setup_logger(__name__)


class IndentDumper(yaml.SafeDumper):
    """Indents block sequences under their parent key."""

    def increase_indent(self, flow=False, indentless=False):
        return super().increase_indent(flow, False)


def render_yaml(document: dict) -> str:
    """Keys in insertion order, two-space indent, decimals as plain numbers."""
    return yaml.dump(
        json_codec.to_plain(document),
        Dumper=IndentDumper,
        sort_keys=False,
        default_flow_style=False,
        indent=2,
        allow_unicode=True,
    )


def render_manifest(manifest: DeploymentManifest) -> str:
    return render_yaml(manifest.to_document())


def render_index(index: ManifestIndex) -> str:
    return render_yaml(index.to_document())


def render_tree(manifests: List[DeploymentManifest], index: ManifestIndex) -> Dict[str, str]:
    """File name -> content for the whole output directory."""
    tree = {m.file_name: render_manifest(m) for m in manifests}
    tree[MANIFEST_INDEX] = render_index(index)
    return tree


async def write_tree(out_dir: str, tree: Dict[str, str]) -> List[Path]:
    directory = await ensure_directory(out_dir)
    written = []
    for name in sorted(tree):
        path = directory / name
        await write_text_atomic(path, tree[name])
        written.append(path)
    logger.info(f"Wrote {len(written)} files to {directory}")
    return written

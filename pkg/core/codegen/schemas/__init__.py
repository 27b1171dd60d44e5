from .deployment_manifest import DeploymentUnit, WiringEntry, DeploymentManifest, ManifestIndex

__all__ = ['DeploymentUnit', 'WiringEntry', 'DeploymentManifest', 'ManifestIndex']

"""Core settings for the Stratum lifecycle manager."""
from decimal import Decimal
import os
import logging

from dotenv import load_dotenv

load_dotenv()

# Environment overrides
STRATUM_REGISTRY = os.getenv("STRATUM_REGISTRY", "registry.json")
STRATUM_DEFAULT_STRATEGY = os.getenv("STRATUM_DEFAULT_STRATEGY", "maximize:accuracy")

# Spec language
DEFAULT_SERVICE_RATE = Decimal("10")
DEFAULT_RATE = Decimal("0")
DEFAULT_REPLICAS = 1
DEFAULT_GPU = "none"
DEFAULT_TIER_HINT = "any"

# Placement
EXACT_ENUMERATION_LIMIT = 10 ** 6  # |nodes| ** |components| ceiling for auto mode

# Elasticity policy defaults
POLICY_HIGH_UTIL = Decimal("0.8")
POLICY_LOW_UTIL = Decimal("0.3")
POLICY_HIGH_WINDOW = 3
POLICY_LOW_WINDOW = 10
POLICY_COOLDOWN = 5
POLICY_MIN_REPLICAS = 1

# Output Settings
MANIFEST_SUFFIX = ".deploy.yaml"
MANIFEST_INDEX = "index.yaml"
METRICS_CSV = "metrics.csv"
FLOWS_CSV = "flows.csv"
ACTION_LOG = "actions.log"

# Logging Settings
# WARNING by default so stderr stays reproducible between identical runs
LOG_LEVEL = getattr(logging, os.getenv("STRATUM_LOG_LEVEL", "WARNING").upper(), logging.WARNING)

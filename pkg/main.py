"""Main entry point for the Stratum pipeline lifecycle manager."""
import sys
import asyncio
from pathlib import Path

# Add project root to Python path
sys.path.append(str(Path(__file__).resolve().parent))

from core.cli import main

if __name__ == "__main__":
    sys.exit(asyncio.run(main(sys.argv[1:])))

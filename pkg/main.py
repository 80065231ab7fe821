#!/usr/bin/env python3
"""
condalg entry point
"""
import sys
from pathlib import Path

# Add the project root to Python path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

import load_env  # noqa: E402,F401

from src.cli.main import cli  # noqa: E402


def main():
    cli(prog_name="condalg")


if __name__ == "__main__":
    main()

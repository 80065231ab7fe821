"""
Load environment variables from .env.local and config.env
"""
from pathlib import Path

from dotenv import load_dotenv

ENV_FILES = (".env.local", "config.env")


def load_env(root: Path = Path(".")):
    """Load the env files that exist; variables already set are kept"""
    for name in ENV_FILES:
        env_file = root / name
        if env_file.exists():
            load_dotenv(env_file, override=False)


# Load environment variables when this module is imported
load_env()

#!/usr/bin/env python3
"""ngbound launcher. Prepares the working directory and runs the CLI."""

import sys

from ngbound.config import CONFIG_PATH, NGBOUND_DIR
from ngbound.utils.storage import atomic_write_json


def ensure_directories() -> None:
    """Create NGBOUND_HOME and an empty config.json on first launch."""
    NGBOUND_DIR.mkdir(parents=True, exist_ok=True)
    if not CONFIG_PATH.exists():
        atomic_write_json(CONFIG_PATH, {})


def main() -> int:
    ensure_directories()

    from ngbound.cli import main as cli_main

    return cli_main(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())

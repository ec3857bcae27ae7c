"""Command-line entry point: python main.py generate --dim 4."""

import sys

from mubkit.commands import main

if __name__ == "__main__":
    sys.exit(main())

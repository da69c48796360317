"""Module entry point: python -m expanderlab <subcommand> ..."""

from .cli import main

if __name__ == "__main__":
    raise SystemExit(main())

#!/usr/bin/env python3
"""RIESZ - Entry point."""

from riesz.cli.main import main


if __name__ == "__main__":
    main()

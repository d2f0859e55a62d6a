"""Module entry point: python -m toricarr ..."""

from .cli import main

main()

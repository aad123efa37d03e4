"""Allow `python -m hybc` as an alternative to the installed console script."""

from .cli import main

main()

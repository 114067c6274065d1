"""Shared store for acceptance outcomes, printed at the end of the pytest run."""

RESULTS: dict[int, tuple[str, str]] = {}

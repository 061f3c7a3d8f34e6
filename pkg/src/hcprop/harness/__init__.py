"""CLI, experiment drivers, oracle and reports."""

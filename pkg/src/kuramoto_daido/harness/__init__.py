"""Command-line harness: configuration, experiments and reporting."""

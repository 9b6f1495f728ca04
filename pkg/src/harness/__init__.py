"""Experiment harness: settings, experiment configs, replicate runners and the verification suites.

Submodules are imported directly (``from harness.experiments import ...``) because the
measures read their defaults from ``harness.settings``.
"""

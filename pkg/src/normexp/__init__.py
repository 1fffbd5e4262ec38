"""Defeasible reasoning, argumentation, normative explanations and neighbourhood models."""

__version__ = "0.1.0"

"""Ports between use cases and infrastructure."""

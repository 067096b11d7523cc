"""Use cases orchestrating the engine through ports."""

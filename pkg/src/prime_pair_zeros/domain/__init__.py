"""Domain layer: entities, value objects, errors and numeric policies."""

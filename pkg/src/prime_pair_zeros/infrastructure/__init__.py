"""Infrastructure layer: adapters for logging, metrics, files and configuration."""

"""Core components (config, logging, exceptions)."""

"""Interactive wizards for benchmark configuration."""

"""A module for utility functions. This should not depend on other internal modules."""

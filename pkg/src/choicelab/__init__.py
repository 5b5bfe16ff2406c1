"""Choice functions on model sets versus nonmonotonic consequence operations."""

__version__ = "0.1.0"

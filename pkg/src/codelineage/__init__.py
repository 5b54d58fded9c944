"""codelineage: source-level software genealogy toolkit."""

__version__ = "0.1.0"

class InputError(ValueError):
    """Invalid input: unknown identifier, out-of-range value, malformed file."""

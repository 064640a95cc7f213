"""Exception types shared across the package."""


class GridFormatError(Exception):
    """Raised when a serialized grid cannot be decoded.

    ``offset`` is the byte position at which decoding failed.
    """

    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (at byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class SearchLimitError(Exception):
    """Raised when a game-tree query exceeds the configured search bounds."""


class ResourceLimitError(Exception):
    """Raised when a requested grid would exceed addressable cell limits."""

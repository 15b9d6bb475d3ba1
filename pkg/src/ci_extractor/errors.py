class CiExtractorError(Exception):
    """Base class for errors raised by this package."""


class FormatError(CiExtractorError):
    """A file, record, or argument does not conform to its documented contract."""

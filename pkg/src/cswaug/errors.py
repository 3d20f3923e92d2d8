"""Exception hierarchy. Every error carries a machine-readable ``code`` used by the CLI."""


class CswError(Exception):
    code = "E_GENERIC"


class UsageError(CswError, ValueError):
    """Bad argument value or unsupported combination of options."""

    code = "E_USAGE"


class StructuralError(CswError, ValueError):
    """Inputs disagree with each other (line counts, lengths, index ranges)."""

    code = "E_STRUCTURE"


class FormatError(CswError, ValueError):
    """A file line could not be parsed."""

    code = "E_FORMAT"

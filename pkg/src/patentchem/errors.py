"""Exceptions shared across the pipeline."""


class PatentChemError(Exception):
    """Base class for library errors."""


class WidthMismatch(PatentChemError, ValueError):
    """Fingerprints of different width or radius were compared."""


class DegenerateLabels(PatentChemError, ValueError):
    """Training labels contain fewer than two classes."""


class TooFewRows(PatentChemError, ValueError):
    pass


class ColumnMismatch(PatentChemError, ValueError):
    """Feature columns differ from the ones a model was trained on."""

    def __init__(self, missing, extra):
        self.missing = tuple(missing)
        self.extra = tuple(extra)
        super().__init__(f"column mismatch: missing={list(self.missing)} extra={list(self.extra)}")


class EmptySpace(PatentChemError, ValueError):
    pass


class SchemaVersionError(PatentChemError, ValueError):
    pass


class UnlabeledReport(PatentChemError, ValueError):
    pass


class ConfigError(PatentChemError, ValueError):
    """Invalid configuration file; the message names the offending location."""


class CsvFormat(PatentChemError, ValueError):
    def __init__(self, line_no: int, message: str):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")


class DuplicateCompoundId(PatentChemError, ValueError):
    pass


class MultipleCores(PatentChemError, ValueError):
    def __init__(self, patent_id: str, message: str | None = None):
        self.patent_id = patent_id
        super().__init__(message or f"patent {patent_id!r} marks more than one core compound")

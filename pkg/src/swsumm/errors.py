"""Exception types shared across the pipeline."""


class SummarizerError(Exception):
    """Base class for every error raised by swsumm."""


class DomainError(SummarizerError, ValueError):
    """An argument lies outside the domain of the operation."""


class EmptyDocument(SummarizerError):
    pass


class SchemaError(SummarizerError, ValueError):
    pass


class DuplicateSentenceIndex(SchemaError):
    pass


class EmptyConceptSpace(SummarizerError):
    """No sentence of the document carries a concept."""


class EmptyInput(SummarizerError, ValueError):
    pass

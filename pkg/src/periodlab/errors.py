class PeriodlabError(Exception):
    """Base class for domain errors raised by periodlab."""


class DomainError(PeriodlabError, ValueError):
    """Input outside the region where the requested operation is defined."""


class DivergentSymbolError(DomainError):
    """A divergent MZV index reached an operation that needs convergent ones."""

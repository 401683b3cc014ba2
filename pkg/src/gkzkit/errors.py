"""Exception hierarchy shared by all gkzkit modules.

Exit-code contract for the CLI: ParseError -> 2, PreconditionError -> 3,
SearchBoundError -> 4.
"""


class GkzError(Exception):
    code = "error"


class ParseError(GkzError):
    code = "parse_error"


class PreconditionError(GkzError):
    code = "precondition"


class RankDeficient(PreconditionError):
    code = "rank_deficient"


class NotPointed(PreconditionError):
    code = "not_pointed"


class NotFullDimensional(PreconditionError):
    code = "not_full_dimensional"


class NotFullLattice(PreconditionError):
    """Columns do not generate the full integer lattice."""

    code = "not_full_lattice"


class NotHomogeneous(PreconditionError):
    code = "not_homogeneous"


class ParameterResonant(PreconditionError):
    code = "parameter_resonant"


class FirstRowNotOnes(PreconditionError):
    code = "first_row_not_ones"


class VariableMismatch(PreconditionError):
    code = "variable_mismatch"


class DimensionUnsupported(PreconditionError):
    code = "dimension_unsupported"


class TooManyColumns(PreconditionError):
    """Face enumeration is capped at 12 columns."""

    code = "too_many_columns"


class DegenerateColumn(PreconditionError):
    """A zero column was passed where a nonzero grading degree is required."""

    code = "degenerate_column"


class SearchBoundError(GkzError):
    code = "search_bound"


class FiltrationBoundExceeded(SearchBoundError):
    code = "filtration_bound_exceeded"


class SectionSearchFailed(SearchBoundError):
    code = "section_search_failed"


class CertificateNotFound(SearchBoundError):
    """Raised by the CLI when a bounded membership search comes back empty."""

    code = "certificate_not_found"

class BdivError(ValueError):
    """Validation or domain error carrying a machine-readable code.

    Codes used across the package: EMPTY, NEGATIVE_ENTRY, ENTRY_ABOVE_ONE,
    SUM_NOT_ONE, SIZE_MISMATCH, MARGINAL_MISMATCH, INVALID_SIGMA,
    NONPOSITIVE_K, NONPOSITIVE_SCALE, MISSING_JOINT, UNKNOWN_MEASURE,
    UNSUPPORTED_KIND, ZERO_PROBABILITY_LETTER, EPSILON_OUT_OF_RANGE,
    NO_CROSSING, INVALID_GRID, INVALID_ALPHA, PARSE_ERROR.
    """

    def __init__(self, code: str, message: str = ""):
        self.code = code
        self.message = message or code
        super().__init__(f"{code}: {self.message}")

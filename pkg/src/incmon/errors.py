"""Exception hierarchy. Every domain error carries a stable machine-readable ``code``."""


class IncmonError(ValueError):
    code = "error"

    def to_json(self):
        return {"error": self.code, "message": str(self)}


class CycleDetected(IncmonError):
    code = "cycle_detected"


class DuplicateLabel(IncmonError):
    code = "duplicate_label"


class UnknownLabel(IncmonError):
    code = "unknown_label"


class IndexOutOfRange(IncmonError):
    code = "index_out_of_range"


class NotAnAntichain(IncmonError):
    code = "not_an_antichain"


class DimensionMismatch(IncmonError):
    code = "dimension_mismatch"


class FieldMismatch(IncmonError):
    code = "field_mismatch"


class NotPrime(IncmonError):
    code = "not_prime"


class FieldTooLarge(IncmonError):
    code = "field_too_large"


class SizeLimitExceeded(IncmonError):
    code = "size_limit_exceeded"


class NotInMonoid(IncmonError):
    code = "not_in_monoid"


class NotIdempotentSeed(IncmonError):
    code = "not_idempotent_seed"


class NotBipartite(IncmonError):
    code = "not_bipartite"


class NotIdempotent(IncmonError):
    code = "not_idempotent"


class BadDiagonal(IncmonError):
    code = "bad_diagonal"


class ComponentAbsent(IncmonError):
    code = "component_absent"


class WrongContext(IncmonError):
    code = "wrong_context"


class WrongPosetClass(IncmonError):
    code = "wrong_poset_class"


class SearchSpaceTooLarge(IncmonError):
    code = "search_space_too_large"


class NotInHClass(IncmonError):
    code = "not_in_h_class"


class NotUnit(IncmonError):
    code = "not_unit"


class DifferentGroups(IncmonError):
    code = "different_groups"


class ElementNotInMonoid(IncmonError):
    code = "element_not_in_monoid"


class ColumnRuleViolation(IncmonError):
    code = "column_rule_violation"


class WitnessFailure(IncmonError):
    code = "witness_failure"

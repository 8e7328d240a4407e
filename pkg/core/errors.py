# core/errors.py

"""
Error hierarchy shared by every module.

Each error carries a short machine-readable `code`; the CLI maps the
family of an error to its exit code (see execution/execution_config.py).
"""


class ClockRGError(Exception):
    code = "clockrg_error"
    family = "numeric"

    def __init__(self, message: str, **context):
        super().__init__(message)
        self.message = message
        self.context = context

    def to_dict(self) -> dict:
        out = {"error": self.code, "message": self.message}
        if self.context:
            out["context"] = {k: repr(v) for k, v in sorted(self.context.items())}
        return out


# -------- parameter / input errors --------

class DomainError(ClockRGError):
    code = "domain_error"
    family = "config"


class RangeError(ClockRGError):
    code = "range_error"
    family = "config"


class SpecError(ClockRGError):
    code = "spec_error"
    family = "config"


class ConfigError(ClockRGError):
    code = "config_error"
    family = "config"


class UsageError(ClockRGError):
    code = "usage_error"
    family = "config"


# -------- numerical failures --------

class NumericError(ClockRGError):
    code = "numeric_error"


class StiffnessError(NumericError):
    code = "stiffness_error"


class RootFindError(NumericError):
    code = "root_find_error"


class EigensolverError(NumericError):
    code = "eigensolver_error"


class PTBrokenError(NumericError):
    code = "pt_broken_error"


class FitError(NumericError):
    code = "fit_error"


# -------- orchestration --------

class SweepError(ClockRGError):
    code = "sweep_error"
    family = "sweep"

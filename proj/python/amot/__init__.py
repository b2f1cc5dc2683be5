"""A-motives over finite fields: Tate modules, Frobenius reports and period kernels."""

from ._core import (
    CapExhausted,
    InternalError,
    Motive,
    ValidationError,
    report,
    routes_agree,
    sigma_quotient,
    tate_check,
    tate_module,
    verdict,
    vx,
)

__all__ = [
    "CapExhausted",
    "InternalError",
    "Motive",
    "ValidationError",
    "report",
    "routes_agree",
    "sigma_quotient",
    "tate_check",
    "tate_module",
    "verdict",
    "vx",
]

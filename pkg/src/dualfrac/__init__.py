"""Exact fraction arithmetic with the standard and "dual" operations.

Besides ``+`` and ``*`` the package implements the mediant-style dual
multiplication ``(a+alpha)/(b+beta)`` and two dual additions obtained by
swapping ``+`` and ``*`` in the addition rule.  All of them act on
unreduced representations; see :mod:`dualfrac.core`.
"""

from .core import (
    DomainError,
    FracRep,
    FractionError,
    OpKind,
    Value,
    ZeroDenominator,
    ZeroScale,
    apply,
    frac_eq,
    make_rep,
    rep,
    rescale,
    scale_value,
    value_of,
)
from .relations import (
    UNAVAILABLE,
    UNDEFINED,
    Agreement,
    Commutes,
    Kernel,
    Proportional,
    RelationId,
    agrees,
    commutes,
    harmonic_mean,
    kernel,
    printed_condition,
    proportional,
    solve_partner,
)

__version__ = "0.1.0"

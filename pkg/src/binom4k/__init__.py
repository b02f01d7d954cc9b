"""Rigorous verifier for series identities involving C(4k,k) and harmonic numbers.

Exact rational / number-field arithmetic certifies the symbolic claims;
directed-rounded enclosure arithmetic with certified tail bounds evaluates
every infinite series to a requested number of digits.
"""

from .exact import (
    AlgebraicReal,
    NFElem,
    NumberField,
    Poly,
    RatFunc,
    ZeroDivisorError,
    nf_reduce,
    sqrt_in_field,
    sturm_isolate,
)
from .balls import Ball, QuadResult, const_log, const_pi, const_sqrt, quad_integrate
from .series import SeriesSpec, TermState, harmonic, sum_series, tail_bound, term_value
from .genfunc import (
    AlphaContext,
    BetaContext,
    TruncSeries,
    coeffs_f,
    eval_f,
    make_alpha,
    make_beta,
)
from .catalog import (
    ClosedForm,
    IdentityEntry,
    builtin_catalog,
    eval_closed_form,
    parse_catalog,
    serialize_catalog,
)

__version__ = "0.1.0"

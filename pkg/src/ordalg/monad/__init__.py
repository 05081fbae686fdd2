from .base import TruncatedMonad
from .catalog import (BoundedMonad, CtxPartialMonad, IdentityMonad, PlusStarMonad, TermMonad,
                      WordMonad, builtin_monads, get_monad, CATALOG_NAMES, STUDIED_MONADS,
                      VARIETY_MONAD)
from .checks import (Report, check_lifting, check_monad_laws, check_power_functor,
                     check_strongly_finitary, sf_data, PASS, FAIL, PRESERVES, FAILS,
                     INCONCLUSIVE)
from .morphisms import (AlgebraLawError, ContinuationMonad, MonadMorphism, QuotientMonad,
                        algebra_to_morphism, check_algebra, check_continuation_square,
                        check_monad_morphism, check_quotient, omega_signature,
                        term_monad_morphism, unfold, variety_quotient_morphism)
from .presentation import associated_presentation, check_duality

__all__ = [
    "TruncatedMonad",
    "BoundedMonad",
    "CtxPartialMonad",
    "IdentityMonad",
    "PlusStarMonad",
    "TermMonad",
    "WordMonad",
    "builtin_monads",
    "get_monad",
    "CATALOG_NAMES",
    "STUDIED_MONADS",
    "VARIETY_MONAD",
    "Report",
    "check_lifting",
    "check_monad_laws",
    "check_power_functor",
    "check_strongly_finitary",
    "sf_data",
    "PASS",
    "FAIL",
    "PRESERVES",
    "FAILS",
    "INCONCLUSIVE",
    "AlgebraLawError",
    "ContinuationMonad",
    "MonadMorphism",
    "QuotientMonad",
    "algebra_to_morphism",
    "check_algebra",
    "check_continuation_square",
    "check_monad_morphism",
    "check_quotient",
    "omega_signature",
    "term_monad_morphism",
    "unfold",
    "variety_quotient_morphism",
    "associated_presentation",
    "check_duality",
]

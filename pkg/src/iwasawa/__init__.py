"""Invariants of finitely presented Iwasawa modules, computed exactly."""

from .errors import (
    DomainError,
    FormatError,
    HypothesisError,
    IwasawaError,
    NotTorsionError,
    UnsupportedGroupError,
    UnsupportedPresentationError,
)
from .padic_core import PrimeContext, WeierstrassData, ZpModuleShape
from .lambda_modules import LambdaModule, HomologyProfile, make_module
from .omega_modules import ElementaryModule, OmegaModule, make_omega_module
from .group_euler import EigenModule, GDescriptor
from .arithmetic import ArchPlaceDatum, IsogenyData, PAdicPlaceDatum

__version__ = "0.1.0"

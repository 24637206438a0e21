"""Exact enveloping-algebra computations for universal derivations and endomorphisms."""

from .envelope import EnvElement, Envelope, ModeError, PMapError, validate_pmap
from .freeprod import FPElement, FreeProduct
from .hopf import TensorElement, coproduct, is_primitive, primitive_subspace, primitivity_defect
from .liealg import (GF, QQ, FieldSpec, LiePresentation, PresentationError, lyndon_basis,
                     make_presentation, validate_presentation, witt_dimension)
from .linalg import SubspaceBasis

__version__ = "0.1.0"

"""Exact homology of Tits buildings, Steinberg modules and the rank differential over prime fields."""

from .errors import (BadLine, CapExceeded, CompositionMismatch, DimMismatch, NotACover, NotACycle,
                     NotASimplicialMap, NotInvertible, ParseError, SignConventionUnset, SteinbergError,
                     WindowError, ZeroGenerator)
from .exactalg import ChainComplex, HomologyGroup, IntMatrix, homology, smith_normal_form
from .gfgeom import Layer, LayerPoset, Subspace, span
from .rankdiff import (SymbolSum, d1_chain, d1_coeff, d1_epi, d1_mono, d1_square_check, e1_coinvariants)
from .rng import SplitMix64
from .scx import SimplicialComplex, SimplicialMap
from .symbols import (ExtendedSymbol, GLElement, ModularSymbol, compare_to_steinberg, extended_symbol_class,
                      gl_act, modular_symbol_class, steinberg)

__version__ = "0.1.0"

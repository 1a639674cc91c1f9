"""Redei symbols [a,b,c], 2/4/8-ranks of narrow quadratic class groups, and an
independent binary-quadratic-form oracle."""

from .arith import (
    INFINITY,
    SignedPrimeDecomposition,
    discriminant,
    factor,
    hilbert,
    hilbert_product,
    kronecker,
    signed_prime_decomposition,
    square_class,
)
from .conic import ConicSolution, enumerate_solutions, is_solvable, solve
from .oracle import ClassGroup, FormClass, compose, enumerate_classes, narrow_ranks
from .quadfield import (
    INERT,
    RAMIFIED,
    SPLIT,
    DegreeOnePrime,
    DyadicUnitClass,
    QuadElt,
    dyadic_embedding,
    dyadic_unit_class,
    is_conductor_two,
    primes_above,
    residue_symbol,
)
from .redeimatrix import (
    RedeiMatrixR4,
    RedeiMatrixR8,
    SecondKindDecomposition,
    build_R4,
    build_R8,
    fundamental_discriminant,
    governing_r4_check,
    r2,
    r4,
    r8,
    ranks,
    second_kind_decompositions,
)
from .symbol import (
    MinRamWitness,
    ReciprocityReport,
    SymbolTrace,
    SymbolTriple,
    TwistingGroup,
    minimally_ramified_witness,
    p_part,
    redei_symbol,
    twist_witness,
    twisting_group,
    validate_triple,
    verify_reciprocity,
    witness_from_solution,
)

__all__ = [name for name in dir() if not name.startswith("_")]

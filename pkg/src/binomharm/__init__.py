"""binomharm: rigorous verification of central-binomial harmonic series.

The package checks closed-form evaluations of series built from central
binomial coefficients, Catalan numbers, harmonic numbers, and
Fibonacci/Lucas numbers.  Every numerical statement is backed by ball
arithmetic with explicit error accounting, so a PASS certifies genuine
agreed digits rather than floating-point coincidence.

Layering (no cycles):

    exact_core    integers, rationals, Q(sqrt5) surds, Binet identities
    ball_arith    directed-rounding balls and verified constants
    series_engine term streams, tail strategies, rigorous summation
    _emtail       Euler-Maclaurin asymptotic tail enclosures
    genfunc       generating-function closed forms and series streams
    registry      the identity catalog (closed forms, streams, tails)
    verifier      pass/fail verdicts with agreed-digit counts
    cli           command-line front end
"""

__version__ = "1.0.0"

__all__ = ["__version__"]

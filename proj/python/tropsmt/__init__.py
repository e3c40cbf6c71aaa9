# Copyright (c) tropsmt contributors.
# SPDX-License-Identifier: Apache-2.0
"""Exact solver for tropical prevarieties.

Problems, polynomial systems and results are plain dicts in the JSON shapes
used by the ``tropsmt`` command-line tool. Rationals are ints or "p/q" strings.
"""

from ._tropsmt import (
    InvalidArgument,
    ParseError,
    baseline,
    export_smt,
    parse_problem,
    solve,
    tropicalize,
    unions_equal,
)

__all__ = [
    "InvalidArgument",
    "ParseError",
    "baseline",
    "export_smt",
    "parse_problem",
    "solve",
    "tropicalize",
    "unions_equal",
]
__version__ = "0.1.0"

"""Rename-refactoring toolkit for a mini-C subset.

The heavy lifting lives in the compiled extension; this package re-exports
its operations: parse, pretty, rename, check, run, diff, proptest and
is_c_keyword.
"""

from ._core import (  # noqa: F401
    Program,
    check,
    diff,
    is_c_keyword,
    parse,
    pretty,
    proptest,
    rename,
    run,
)

__all__ = [
    "Program",
    "check",
    "diff",
    "is_c_keyword",
    "parse",
    "pretty",
    "proptest",
    "rename",
    "run",
]

"""Reading and writing theories, reports and graphs."""

from .syntax import (ParseError, SourceSpan, TheorySyntaxError, load_theory, parse_theory,
                     serialize_theory)

__all__ = ["ParseError", "SourceSpan", "TheorySyntaxError", "load_theory", "parse_theory",
           "serialize_theory"]

"""Command-line front end."""

from .evaluate import EvalError, evaluate
from .main import build_parser, main
from .parser import ParseError, parse, render

__all__ = ["EvalError", "ParseError", "build_parser", "evaluate", "main", "parse", "render"]

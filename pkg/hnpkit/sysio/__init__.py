from hnpkit.sysio.parser import parse_polynomial, parse_system
from hnpkit.sysio.render import render_coefficient, render_param, render_polynomial, render_system
from hnpkit.sysio.reports import to_csv, to_json

__all__ = [
    "parse_polynomial",
    "parse_system",
    "render_coefficient",
    "render_param",
    "render_polynomial",
    "render_system",
    "to_csv",
    "to_json",
]

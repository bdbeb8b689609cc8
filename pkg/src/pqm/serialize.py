"""JSON encodings shared by the modules and the CLI.

Rationals are ``{"num": int, "den": int}``, complex numbers ``[re, im]``.
Text output prints rationals as ``num/den`` and complex numbers as
``re+imi`` with 12 significant digits.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Integral

import numpy as np


def rational_to_json(x) -> dict:
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator}


def rational_from_json(obj) -> Fraction:
    if isinstance(obj, dict):
        return Fraction(int(obj["num"]), int(obj["den"]))
    if isinstance(obj, float):
        raise TypeError(f"expected an exact rational, got float {obj!r}")
    return Fraction(obj)


def value_to_json(v):
    if isinstance(v, (Fraction, Integral)) and not isinstance(v, bool):
        return rational_to_json(v)
    return str(v)


def value_from_json(obj):
    if isinstance(obj, dict):
        return rational_from_json(obj)
    if isinstance(obj, int) and not isinstance(obj, bool):
        return Fraction(obj)
    return obj


def complex_to_json(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def complex_from_json(obj) -> complex:
    if isinstance(obj, (list, tuple)):
        return complex(float(obj[0]), float(obj[1]))
    if isinstance(obj, dict):
        return complex(float(rational_from_json(obj)))
    if isinstance(obj, str):
        return parse_complex(obj)
    return complex(obj)


def parse_complex(text: str) -> complex:
    """Accept ``1+2j``, ``1+2i``, ``0.5`` and rational strings like ``1/3``."""
    text = text.strip().replace(" ", "")
    if "/" in text and not any(c in text for c in "ij"):
        return complex(float(Fraction(text)))
    return complex(text.replace("i", "j"))


def format_rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def format_complex(z) -> str:
    z = complex(z)
    re = float(f"{z.real:.12g}") + 0.0
    im = float(f"{z.imag:.12g}") + 0.0
    sign = "-" if im < 0 else "+"
    return f"{re:.12g}{sign}{abs(im):.12g}i"


def complex_matrix_to_json(m) -> list:
    m = np.asarray(m, dtype=complex)
    return [[complex_to_json(z) for z in row] for row in m]


def complex_matrix_from_json(obj) -> np.ndarray:
    return np.array([[complex_from_json(z) for z in row] for row in obj], dtype=complex)

"""Coefficient arithmetic for the two supported modes.

Mode ``"exact"`` works over the Gaussian rationals Q(i): coefficients
are :class:`GaussianRational` instances and every comparison is exact.
Mode ``"float"`` uses the builtin ``complex`` type and toleranced
comparisons.  An object never changes mode after construction; mixing
modes raises :class:`~fockboundary.errors.ModeMixError`.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from .errors import ModeMixError

EXACT = "exact"
FLOAT = "float"

MODES = (EXACT, FLOAT)


def check_mode(mode):
    if mode not in MODES:
        raise ValueError("unknown mode %r, expected 'exact' or 'float'" % (mode,))
    return mode


def common_mode(a, b):
    if a != b:
        raise ModeMixError("cannot combine mode %r with mode %r" % (a, b))
    return a


class GaussianRational:
    """A Gaussian rational ``re + im*i`` with exact Fraction parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @staticmethod
    def _coerce(value):
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, Rational):
            return GaussianRational(value)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / n,
            (self.im * o.re - self.re * o.im) / n,
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __complex__(self):
        return complex(self.re, self.im)

    def __abs__(self):
        return abs(complex(self))

    def __repr__(self):
        if self.im == 0:
            return "GaussianRational(%s)" % (self.re,)
        return "GaussianRational(%s, %s)" % (self.re, self.im)


def one(mode):
    return GaussianRational(1) if mode == EXACT else complex(1.0)


def zero(mode):
    return GaussianRational(0) if mode == EXACT else complex(0.0)


def coerce_scalar(value, mode):
    """Bring ``value`` into the coefficient domain of ``mode``."""
    if mode == EXACT:
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, Rational):
            return GaussianRational(value)
        if isinstance(value, complex):
            raise ModeMixError("float coefficient %r in exact mode" % (value,))
        raise TypeError("cannot coerce %r to an exact coefficient" % (value,))
    if isinstance(value, GaussianRational):
        return complex(value)
    if isinstance(value, Rational):
        return complex(float(value))
    return complex(value)


def conj(value):
    return value.conjugate()


def is_zero_scalar(value, mode, tol=1e-12):
    if mode == EXACT:
        return not bool(value)
    return abs(value) <= tol


def scalars_equal(a, b, mode, tol=1e-12):
    if mode == EXACT:
        return a == b
    return abs(a - b) <= tol


def to_complex(value):
    return complex(value)


def scalar_to_json(value, mode):
    if mode == EXACT:
        v = GaussianRational._coerce(value)
        return {"re": str(v.re), "im": str(v.im)}
    c = complex(value)
    return {"re": c.real, "im": c.imag}


def scalar_from_json(obj, mode):
    if mode == EXACT:
        return GaussianRational(Fraction(str(obj["re"])), Fraction(str(obj["im"])))
    return complex(float(obj["re"]), float(obj["im"]))

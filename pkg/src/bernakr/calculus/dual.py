"""Second-order forward-mode dual numbers.

A Dual2 carries (value, d1, d2): the function value and its first and second
derivative with respect to the single seeded variable.  Arithmetic follows
the second-order product/chain rules, e.g. for multiplication
d2(uv) = u.d2*v.value + 2*u.d1*v.d1 + u.value*v.d2.
"""

import math

from bernakr.errors import DomainEvalError


class Dual2:
    __slots__ = ("value", "d1", "d2")

    def __init__(self, value, d1=0.0, d2=0.0):
        self.value = float(value)
        self.d1 = float(d1)
        self.d2 = float(d2)

    @staticmethod
    def constant(c):
        return Dual2(c, 0.0, 0.0)

    @staticmethod
    def variable(x):
        """Seed the differentiation variable: d1 = 1, d2 = 0."""
        return Dual2(x, 1.0, 0.0)

    def __repr__(self):
        return f"Dual2({self.value!r}, {self.d1!r}, {self.d2!r})"

    def _coerce(self, other):
        if isinstance(other, Dual2):
            return other
        return Dual2.constant(other)

    def __add__(self, other):
        o = self._coerce(other)
        return Dual2(self.value + o.value, self.d1 + o.d1, self.d2 + o.d2)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return Dual2(self.value - o.value, self.d1 - o.d1, self.d2 - o.d2)

    def __rsub__(self, other):
        return self._coerce(other).__sub__(self)

    def __neg__(self):
        return Dual2(-self.value, -self.d1, -self.d2)

    def __mul__(self, other):
        o = self._coerce(other)
        return Dual2(
            self.value * o.value,
            self.d1 * o.value + self.value * o.d1,
            self.d2 * o.value + 2.0 * self.d1 * o.d1 + self.value * o.d2,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.value == 0.0:
            raise DomainEvalError("division by zero")
        w0 = self.value / o.value
        w1 = (self.d1 - w0 * o.d1) / o.value
        w2 = (self.d2 - 2.0 * w1 * o.d1 - w0 * o.d2) / o.value
        return Dual2(w0, w1, w2)

    def __rtruediv__(self, other):
        return self._coerce(other).__truediv__(self)

    def _chain(self, g0, g1, g2):
        # w = g(u): w' = g'(u) u', w'' = g''(u) u'^2 + g'(u) u''
        return Dual2(g0, g1 * self.d1, g2 * self.d1 * self.d1 + g1 * self.d2)

    def sin(self):
        s, c = math.sin(self.value), math.cos(self.value)
        return self._chain(s, c, -s)

    def cos(self):
        s, c = math.sin(self.value), math.cos(self.value)
        return self._chain(c, -s, -c)

    def tan(self):
        t = math.tan(self.value)
        sec2 = 1.0 + t * t
        return self._chain(t, sec2, 2.0 * t * sec2)

    def exp(self):
        e = math.exp(self.value)
        return self._chain(e, e, e)

    def ln(self):
        if self.value <= 0.0:
            raise DomainEvalError("ln of non-positive value")
        v = self.value
        return self._chain(math.log(v), 1.0 / v, -1.0 / (v * v))

    def sqrt(self):
        if self.value < 0.0:
            raise DomainEvalError("sqrt of negative value")
        if self.value == 0.0 and (self.d1 != 0.0 or self.d2 != 0.0):
            raise DomainEvalError("sqrt derivative singular at 0")
        r = math.sqrt(self.value)
        if self.value == 0.0:
            return Dual2(0.0, 0.0, 0.0)
        return self._chain(r, 0.5 / r, -0.25 / (r * self.value))

    def pow_const(self, c):
        """self ** c for a constant real exponent c."""
        c = float(c)
        v = self.value
        if c == 0.0:
            return Dual2(1.0, 0.0, 0.0)
        if v == 0.0 and c < 2.0 and (self.d1 != 0.0 or self.d2 != 0.0):
            # derivative of x^c singular at 0 unless c is 0, 1 or >= 2
            if c == 1.0:
                return Dual2(self.value, self.d1, self.d2)
            raise DomainEvalError(f"derivative of x^{c:g} singular at 0")
        if v < 0.0:
            if c != int(c):
                raise DomainEvalError("negative base with non-integer exponent")
            g0 = math.pow(v, c)
            g1 = c * math.pow(v, c - 1.0)
            g2 = c * (c - 1.0) * math.pow(v, c - 2.0) if c != 1.0 else 0.0
            return self._chain(g0, g1, g2)
        g0 = math.pow(v, c)
        g1 = c * math.pow(v, c - 1.0) if v != 0.0 or c >= 1.0 else 0.0
        if v == 0.0:
            g2 = 0.0 if c != 2.0 else 2.0
        else:
            g2 = c * (c - 1.0) * math.pow(v, c - 2.0)
        return self._chain(g0, g1, g2)

    def pow(self, other):
        """General power; non-constant exponents require a positive base."""
        o = self._coerce(other)
        if o.d1 == 0.0 and o.d2 == 0.0:
            return self.pow_const(o.value)
        if self.value <= 0.0:
            raise DomainEvalError("non-constant exponent needs positive base")
        return (o * self.ln()).exp()

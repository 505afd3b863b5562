"""Built-in function catalog.

Each entry is an expression-backed function with AD derivative channels, so
table and figure reproduction never routes through finite differences.  Keys
``ex3.1`` .. ``ex4.6`` name the worked examples this package reproduces;
``generator(key)`` returns the generating data (phi/psi/tau/omega and the
exponent j) the example was constructed from.
"""

from functools import lru_cache

from bernakr.calculus import BivariateFunction, ScalarFunction

_EXPRESSIONS_1D = {
    "ex3.1": "-(2/pi)*x*cos(pi*x/2)+(4/pi^2)*sin(pi*x/2)",
    "ex3.2": "-24+(x^4-4*x^3+12*x^2-24*x+24)*exp(x)",
    "ex3.4": "cos(pi*(x+1)/4)^2",
}

_EXPRESSIONS_2D = {
    "ex4.3": "(x^2+y^2)^2/4",
    "ex4.4": "exp(x^2*y^2)-1",
    "ex4.5": "tan((pi/4)*(2^(x^2)-1)*y^6)",
    "ex4.6": "(-64*pi*(y+x)*cos(pi*(y+x)/4)+(-16*pi^2*x*y+256)*sin(pi*(y+x)/4)"
             "+64*pi*x*cos(pi*x/4)+64*pi*y*cos(pi*y/4)"
             "-256*sin(pi*x/4)-256*sin(pi*y/4))/pi^4",
}

# Generating data: f' = x^(j-1) phi(x) in 1-D; in 2-D either a (phi, psi)
# pair with the mixed-derivative compatibility identity, a tau integrated
# twice, or an omega/a/b composition.
_GENERATORS = {
    "ex3.1": {"j": 2, "phi": "sin(pi*x/2)"},
    "ex3.2": {"j": 5, "phi": "exp(x)"},
    "ex4.3": {"j": 2, "phi": "x^2+y^2", "psi": "x^2+y^2"},
    "ex4.4": {"j": 2, "phi": "2*y^2*exp(x^2*y^2)", "psi": "2*x^2*exp(x^2*y^2)",
              "tau": "4*(1+x^2*y^2)*exp(x^2*y^2)"},
    "ex4.5": {"j": 2, "omega": "tan(pi*x*y/4)", "a": "2^x-1", "b": "x^3"},
    "ex4.6": {"j": 2, "tau": "sin(pi*(x+y)/4)"},
}

CATALOG_KEYS = tuple(sorted(_EXPRESSIONS_1D) + sorted(_EXPRESSIONS_2D))


def dimension(key) -> int:
    if key in _EXPRESSIONS_1D:
        return 1
    if key in _EXPRESSIONS_2D:
        return 2
    raise KeyError(key)


def expression(key) -> str:
    return _EXPRESSIONS_1D.get(key) or _EXPRESSIONS_2D[key]


@lru_cache(maxsize=None)
def get(key, finite_diff=False):
    """Catalog function by key ('ex3.1', ..., 'ex4.6')."""
    if key in _EXPRESSIONS_1D:
        return ScalarFunction.from_expression(
            _EXPRESSIONS_1D[key], finite_diff=finite_diff, name=key
        )
    if key in _EXPRESSIONS_2D:
        return BivariateFunction.from_expression(
            _EXPRESSIONS_2D[key], finite_diff=finite_diff, name=key
        )
    raise KeyError(f"no catalog function named {key!r}")


def generator(key) -> dict:
    """Generating data (j plus phi/psi/tau/omega/a/b expressions) for a key."""
    return dict(_GENERATORS[key])


def default_j(key) -> int:
    return _GENERATORS.get(key, {}).get("j", 2)


# Test battery: 12 smooth functions, 7 univariate and 5 bivariate, used by
# the bound-soundness and ranking checks.
_BATTERY_1D = (
    ("e1", "x"),
    ("e2", "x^2"),
    ("e3", "x^3"),
    ("expx", "exp(x)"),
    ("ex3.1", _EXPRESSIONS_1D["ex3.1"]),
    ("ex3.2", _EXPRESSIONS_1D["ex3.2"]),
    ("ex3.4", _EXPRESSIONS_1D["ex3.4"]),
)

_BATTERY_2D = (
    ("x_plus_y", "x+y"),
    ("sum_sq", "x^2+y^2"),
    ("prod_sq", "x^2*y^2"),
    ("ex4.4", _EXPRESSIONS_2D["ex4.4"]),
    ("ex4.6", _EXPRESSIONS_2D["ex4.6"]),
)


@lru_cache(maxsize=None)
def battery_1d():
    return tuple(
        ScalarFunction.from_expression(src, name=name) for name, src in _BATTERY_1D
    )


@lru_cache(maxsize=None)
def battery_2d():
    return tuple(
        BivariateFunction.from_expression(src, name=name) for name, src in _BATTERY_2D
    )


def battery():
    """The full 12-function battery (univariate first)."""
    return battery_1d() + battery_2d()

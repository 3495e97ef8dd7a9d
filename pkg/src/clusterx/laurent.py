"""
Exact multivariate Laurent polynomials over the integers, ratios of them,
and their tropicalization.

Values are immutable. Two polynomials over different variable lists are
combined over the union of the lists (first operand's variables first).
"""

import logging
import re
from fractions import Fraction
from types import MappingProxyType

import sympy
from sympy.parsing.sympy_parser import (convert_xor, parse_expr,
                                        standard_transformations)
from sympy.polys.domains import ZZ
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import PolyRing

from clusterx.errors import InputError, LaurentError
from clusterx.math import log_sum_exp, log_weighted_terms

log = logging.getLogger(__name__)

_IDENT = re.compile(r'[A-Za-z_][A-Za-z0-9_]*')


def natural_key(name):
    'Sort key so that X2 < X10'
    return [int(s) if s.isdigit() else s for s in re.split(r'(\d+)', name)]


def _union_vars(a, b):
    if a == b:
        return tuple(a)
    return tuple(a) + tuple(v for v in b if v not in a)


class LaurentPoly:
    """
    Laurent polynomial with integer coefficients.

    Parameter ``terms`` (dict or iterable of pairs):
        Map from exponent tuples (one integer per variable) to integer
        coefficients. Coefficients of repeated exponents are summed and zero
        coefficients are dropped.

    Parameter ``vars`` (sequence of str):
        Ordered variable names.
    """

    __slots__ = ('_vars', '_terms')

    def __init__(self, terms=None, vars=()):
        vars = tuple(vars)
        if len(set(vars)) != len(vars):
            raise LaurentError("LaurentPoly: duplicate variable in %s"
                               % (vars,))
        if terms is None:
            terms = {}
        items = terms.items() if hasattr(terms, 'items') else terms
        acc = {}
        for exp, coef in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != len(vars):
                raise LaurentError("LaurentPoly: exponent %s does not match "
                                   "variables %s" % (exp, vars))
            if isinstance(coef, Fraction):
                if coef.denominator != 1:
                    raise LaurentError("LaurentPoly: non-integral "
                                       "coefficient %s" % coef)
                coef = coef.numerator
            acc[exp] = acc.get(exp, 0) + int(coef)
        self._vars = vars
        self._terms = {e: acc[e] for e in sorted(acc) if acc[e] != 0}

    # ------------------------------------------------------------------ #
    #  Constructors
    # ------------------------------------------------------------------ #

    @classmethod
    def constant(cls, c, vars=()):
        vars = tuple(vars)
        return cls({(0,) * len(vars): c}, vars)

    @classmethod
    def monomial(cls, exp, coef=1, vars=()):
        return cls({tuple(exp): coef}, vars)

    @classmethod
    def variable(cls, name, vars=None):
        vars = (name,) if vars is None else tuple(vars)
        exp = tuple(1 if v == name else 0 for v in vars)
        if name not in vars:
            raise LaurentError("LaurentPoly.variable: %s not in %s"
                               % (name, vars))
        return cls({exp: 1}, vars)

    @classmethod
    def from_text(cls, text, vars=None):
        """
        Parse the text form (``-1*X1^-1*X2^2 + 3``; any expression sympy
        expands to a Laurent polynomial is accepted).
        """
        expr = _parse(text)
        return cls._from_sympy(expr, _resolve_vars(expr, vars), text)

    @classmethod
    def _from_sympy(cls, expr, vars, text=None):
        symbols = {sympy.Symbol(v): i for i, v in enumerate(vars)}
        terms = {}
        expanded = sympy.expand(expr)
        for term, coef in expanded.as_coefficients_dict().items():
            if not coef.is_Integer:
                raise InputError("not an integral Laurent polynomial: %r"
                                 % (text if text is not None else expr))
            exp = [0] * len(vars)
            if term != 1:
                for base, e in term.as_powers_dict().items():
                    if base not in symbols or not e.is_Integer:
                        raise InputError("not a Laurent monomial: %s in %r"
                                         % (term, text))
                    exp[symbols[base]] += int(e)
            exp = tuple(exp)
            terms[exp] = terms.get(exp, 0) + int(coef)
        return cls(terms, vars)

    @classmethod
    def from_json(cls, obj):
        try:
            vars = obj['vars']
            terms = {tuple(t['exp']): int(t['coef']) for t in obj['terms']}
        except (KeyError, TypeError, ValueError) as e:
            raise InputError("invalid Laurent polynomial JSON (%s)" % e)
        return cls(terms, vars)

    # ------------------------------------------------------------------ #
    #  Accessors
    # ------------------------------------------------------------------ #

    @property
    def vars(self):
        return self._vars

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    def is_zero(self):
        return not self._terms

    def is_one(self):
        return self._terms == {(0,) * len(self._vars): 1}

    def is_monomial(self):
        return len(self._terms) == 1

    def is_positive(self):
        'True if nonzero and every coefficient is > 0'
        return bool(self._terms) and all(c > 0 for c in self._terms.values())

    def is_nonnegative(self):
        return all(c > 0 for c in self._terms.values())

    def max_coefficient(self):
        return max((abs(c) for c in self._terms.values()), default=0)

    def variables_used(self):
        'Names of variables with a nonzero exponent in some term'
        used = set()
        for exp in self._terms:
            used.update(v for v, e in zip(self._vars, exp) if e != 0)
        return tuple(v for v in self._vars if v in used)

    def monomial_content(self):
        'Componentwise minimum exponent (zero vector for the zero polynomial)'
        if not self._terms:
            return (0,) * len(self._vars)
        return tuple(min(col) for col in zip(*self._terms)) \
            if self._vars else ()

    # ------------------------------------------------------------------ #
    #  Variable handling
    # ------------------------------------------------------------------ #

    def with_vars(self, vars):
        """
        Re-express over another variable list. Variables that disappear must
        not occur with a nonzero exponent.
        """
        vars = tuple(vars)
        if vars == self._vars:
            return self
        index = {v: i for i, v in enumerate(vars)}
        for v in self.variables_used():
            if v not in index:
                raise LaurentError("with_vars: variable %s is used but "
                                   "missing from %s" % (v, vars))
        terms = {}
        for exp, c in self._terms.items():
            new = [0] * len(vars)
            for v, e in zip(self._vars, exp):
                if e:
                    new[index[v]] = e
            terms[tuple(new)] = c
        return LaurentPoly(terms, vars)

    def _aligned(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other, self._vars)
        if not isinstance(other, LaurentPoly):
            return None, None
        vars = _union_vars(self._vars, other._vars)
        return self.with_vars(vars), other.with_vars(vars)

    # ------------------------------------------------------------------ #
    #  Arithmetic
    # ------------------------------------------------------------------ #

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms.items()},
                           self._vars)

    def __add__(self, other):
        a, b = self._aligned(other)
        if a is None:
            return NotImplemented
        terms = dict(a._terms)
        for e, c in b._terms.items():
            terms[e] = terms.get(e, 0) + c
        return LaurentPoly(terms, a._vars)

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._aligned(other)
        if a is None:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._aligned(other)
        if a is None:
            return NotImplemented
        terms = {}
        for e1, c1 in a._terms.items():
            for e2, c2 in b._terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return LaurentPoly(terms, a._vars)

    __rmul__ = __mul__

    def __pow__(self, k):
        k = int(k)
        if k < 0:
            if not self.is_monomial():
                raise LaurentError("negative power of a non-monomial")
            (exp, c), = self._terms.items()
            if abs(c) != 1:
                raise LaurentError("negative power of a monomial with "
                                   "coefficient %i" % c)
            return LaurentPoly({tuple(e * k for e in exp): c ** -k},
                               self._vars)
        result = LaurentPoly.constant(1, self._vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        return PosRational(self, other)

    def shift(self, exp):
        'Multiply by the monomial X^exp'
        exp = tuple(exp)
        return LaurentPoly({tuple(a + b for a, b in zip(e, exp)): c
                            for e, c in self._terms.items()}, self._vars)

    def divide_monomial(self, m):
        """
        Exact division by a monomial ``m`` whose coefficient is a unit;
        returns a LaurentPoly.
        """
        a, m = self._aligned(m)
        if not m.is_monomial():
            raise LaurentError("divide_monomial: %s is not a monomial" % m)
        (exp, c), = m._terms.items()
        if any(t % c for t in a._terms.values()):
            return None
        return LaurentPoly({tuple(x - y for x, y in zip(e, exp)): t // c
                            for e, t in a._terms.items()}, a._vars)

    # ------------------------------------------------------------------ #
    #  Comparison
    # ------------------------------------------------------------------ #

    def _named_terms(self):
        return frozenset(
            (tuple((v, e) for v, e in zip(self._vars, exp) if e), c)
            for exp, c in self._terms.items())

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other, self._vars)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._named_terms() == other._named_terms()

    def __hash__(self):
        return hash(self._named_terms())

    # ------------------------------------------------------------------ #
    #  Evaluation and substitution
    # ------------------------------------------------------------------ #

    def evaluate(self, point):
        """
        Exact value at a point given as a mapping from variable name to a
        number, or as a sequence aligned with ``vars``.
        """
        values = _point_values(self._vars, point)
        total = Fraction(0)
        for exp, c in self._terms.items():
            term = Fraction(c)
            for x, e in zip(values, exp):
                if e:
                    if x == 0 and e < 0:
                        raise ZeroDivisionError("negative power of zero")
                    term *= x ** e
            total += term
        return total

    def substitute(self, subs):
        return lp_substitute(self, subs)

    # ------------------------------------------------------------------ #
    #  Text and JSON forms
    # ------------------------------------------------------------------ #

    def to_text(self):
        if not self._terms:
            return '0'
        parts = []
        for exp, c in self._terms.items():
            factors = [str(c)]
            for v, e in zip(self._vars, exp):
                if e == 1:
                    factors.append(v)
                elif e:
                    factors.append('%s^%i' % (v, e))
            parts.append('*'.join(factors))
        return ' + '.join(parts)

    def to_json(self):
        return {'vars': list(self._vars),
                'terms': [{'exp': list(e), 'coef': str(c)}
                          for e, c in self._terms.items()]}

    def to_sympy(self):
        syms = [sympy.Symbol(v) for v in self._vars]
        return sympy.Add(*[c * sympy.Mul(*[s ** e for s, e in zip(syms, exp)])
                           for exp, c in self._terms.items()])

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return 'LaurentPoly(%r, vars=%r)' % (self.to_text(), self._vars)


class PosRational:
    """
    Ratio of two Laurent polynomials, kept unreduced apart from monomial
    content. The presentation is subtraction-free when both parts have
    positive coefficients (see ``is_subtraction_free``); tropical operations
    require that.
    """

    __slots__ = ('numerator', 'denominator')

    def __init__(self, numerator, denominator=None):
        if isinstance(numerator, int):
            numerator = LaurentPoly.constant(numerator)
        if denominator is None:
            denominator = LaurentPoly.constant(1, numerator.vars)
        elif isinstance(denominator, int):
            denominator = LaurentPoly.constant(denominator, numerator.vars)
        if denominator.is_zero():
            raise LaurentError("PosRational: zero denominator")
        vars = _union_vars(numerator.vars, denominator.vars)
        self.numerator = numerator.with_vars(vars)
        self.denominator = denominator.with_vars(vars)

    @classmethod
    def from_text(cls, text, vars=None):
        expr = _parse(text)
        vars = _resolve_vars(expr, vars)
        num, den = sympy.fraction(expr)
        return cls(LaurentPoly._from_sympy(num, vars, text),
                   LaurentPoly._from_sympy(den, vars, text))

    @property
    def vars(self):
        return self.numerator.vars

    def with_vars(self, vars):
        return PosRational(self.numerator.with_vars(vars),
                           self.denominator.with_vars(vars))

    def is_subtraction_free(self):
        return self.numerator.is_positive() and self.denominator.is_positive()

    def is_polynomial(self):
        return self.denominator.is_one()

    def reduce_content(self):
        """
        Move the monomial content of both parts into the numerator, so that
        the denominator is divisible by no variable.
        """
        b = tuple(-y for y in self.denominator.monomial_content())
        return PosRational(self.numerator.shift(b), self.denominator.shift(b))

    def cancel(self):
        """
        Full gcd reduction (sympy). The result keeps positive coefficients
        whenever a subtraction-free presentation with the reduced parts
        exists for the input.
        """
        r = self.reduce_content()
        vars = r.vars
        if not vars:
            f = Fraction(r.numerator.evaluate(()), r.denominator.evaluate(()))
            return PosRational(LaurentPoly.constant(f.numerator),
                               LaurentPoly.constant(f.denominator))
        shift_n = r.numerator.monomial_content()
        p = _to_ring(r.numerator.shift(tuple(-e for e in shift_n)))
        q = _to_ring(r.denominator)
        p, q = p.cancel(q)
        return PosRational(_from_ring(p, vars).shift(shift_n),
                           _from_ring(q, vars))

    def _aligned(self, other):
        if isinstance(other, (int, LaurentPoly)):
            other = PosRational(other)
        if not isinstance(other, PosRational):
            return None, None
        vars = _union_vars(self.vars, other.vars)
        return self.with_vars(vars), other.with_vars(vars)

    def __mul__(self, other):
        a, b = self._aligned(other)
        if a is None:
            return NotImplemented
        return PosRational(a.numerator * b.numerator,
                           a.denominator * b.denominator)

    __rmul__ = __mul__

    def __truediv__(self, other):
        a, b = self._aligned(other)
        if a is None:
            return NotImplemented
        return PosRational(a.numerator * b.denominator,
                           a.denominator * b.numerator)

    def __add__(self, other):
        a, b = self._aligned(other)
        if a is None:
            return NotImplemented
        if a.denominator == b.denominator:
            return PosRational(a.numerator + b.numerator, a.denominator)
        return PosRational(a.numerator * b.denominator
                           + b.numerator * a.denominator,
                           a.denominator * b.denominator)

    __radd__ = __add__

    def __pow__(self, k):
        k = int(k)
        if k < 0:
            return PosRational(self.denominator ** -k, self.numerator ** -k)
        return PosRational(self.numerator ** k, self.denominator ** k)

    def __eq__(self, other):
        'Equality as rational functions'
        a, b = self._aligned(other)
        if a is None:
            return NotImplemented
        return a.numerator * b.denominator == b.numerator * a.denominator

    __hash__ = None

    def evaluate(self, point):
        den = self.denominator.evaluate(point)
        if den == 0:
            raise ZeroDivisionError("PosRational: denominator vanishes")
        return self.numerator.evaluate(point) / den

    def substitute(self, subs):
        n = lp_substitute(self.numerator, subs)
        d = lp_substitute(self.denominator, subs)
        return (n / d).reduce_content()

    def to_text(self):
        if self.is_polynomial():
            return self.numerator.to_text()
        return '(%s)/(%s)' % (self.numerator.to_text(),
                              self.denominator.to_text())

    def to_json(self):
        return {'numerator': self.numerator.to_json(),
                'denominator': self.denominator.to_json()}

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return 'PosRational(%r)' % self.to_text()


# ---------------------------------------------------------------------- #
#  Tropical expressions
# ---------------------------------------------------------------------- #

class TropExpr:
    """
    Piecewise-linear expression built from linear forms with ``+``, integer
    multiples, ``max`` and ``min``. Calling an expression evaluates it exactly
    at a point (mapping from variable name to number).
    """

    def __call__(self, point):
        raise NotImplementedError

    def variables(self):
        raise NotImplementedError

    def __add__(self, other):
        return TropSum((self, _trop(other)))

    __radd__ = __add__

    def __neg__(self):
        return TropScale(-1, self)

    def __sub__(self, other):
        return TropSum((self, TropScale(-1, _trop(other))))

    def __rmul__(self, k):
        return TropScale(Fraction(k), self)

    __mul__ = __rmul__

    def at(self, vars, coords):
        return self(dict(zip(vars, coords)))


def _trop(x):
    if isinstance(x, TropExpr):
        return x
    return TropLinear((), Fraction(x))


def _fmt_var(name):
    return name.lower() if name[:1].isupper() else name


class TropLinear(TropExpr):
    __slots__ = ('coeffs', 'const')

    def __init__(self, coeffs, const=Fraction(0)):
        self.coeffs = tuple((v, c) for v, c in coeffs if c != 0)
        self.const = Fraction(const)

    def __call__(self, point):
        return self.const + sum((Fraction(point[v]) * c
                                 for v, c in self.coeffs), Fraction(0))

    def variables(self):
        return {v for v, _ in self.coeffs}

    def __str__(self):
        parts = []
        for v, c in self.coeffs:
            name = _fmt_var(v)
            if c == 1:
                term = name
            elif c == -1:
                term = '-' + name
            else:
                term = '%s*%s' % (c, name)
            parts.append(term)
        if self.const != 0 or not parts:
            parts.append(str(self.const))
        out = parts[0]
        for p in parts[1:]:
            out += ' - ' + p[1:] if p.startswith('-') else ' + ' + p
        return out


class TropMax(TropExpr):
    __slots__ = ('args',)

    def __init__(self, args):
        self.args = tuple(_trop(a) for a in args)
        if not self.args:
            raise LaurentError("max of an empty family")

    def __call__(self, point):
        return max(a(point) for a in self.args)

    def variables(self):
        return set().union(*(a.variables() for a in self.args))

    def __str__(self):
        return 'max(%s)' % ', '.join(str(a) for a in self.args)


class TropMin(TropMax):
    __slots__ = ()

    def __call__(self, point):
        return min(a(point) for a in self.args)

    def __str__(self):
        return 'min(%s)' % ', '.join(str(a) for a in self.args)


class TropSum(TropExpr):
    __slots__ = ('args',)

    def __init__(self, args):
        self.args = tuple(_trop(a) for a in args)

    def __call__(self, point):
        return sum((a(point) for a in self.args), Fraction(0))

    def variables(self):
        return set().union(*(a.variables() for a in self.args))

    def __str__(self):
        out = ''
        for i, a in enumerate(self.args):
            if isinstance(a, TropScale) and a.factor == -1:
                inner = a.arg
                text = str(inner)
                if isinstance(inner, (TropSum, TropLinear)) and \
                        len(getattr(inner, 'coeffs', (0, 0))) > 1:
                    text = '(%s)' % text
                out += ('-' if i == 0 else ' - ') + text
            else:
                out += ('' if i == 0 else ' + ') + str(a)
        return out


class TropScale(TropExpr):
    __slots__ = ('factor', 'arg')

    def __init__(self, factor, arg):
        self.factor = Fraction(factor)
        self.arg = _trop(arg)

    def __call__(self, point):
        return self.factor * self.arg(point)

    def variables(self):
        return self.arg.variables()

    def __str__(self):
        if self.factor == -1:
            return '-(%s)' % self.arg
        return '%s*(%s)' % (self.factor, self.arg)


def tropical_maximum(*args):
    return TropMax(args)


def tropical_minimum(*args):
    return TropMin(args)


# ---------------------------------------------------------------------- #
#  Module-level operations
# ---------------------------------------------------------------------- #

def lp_arith(a, b, op):
    """Exact ``add``, ``sub`` or ``mul`` of two Laurent polynomials."""
    if op == 'add':
        return a + b
    if op == 'sub':
        return a - b
    if op == 'mul':
        return a * b
    raise ValueError("lp_arith: unknown operation %r" % op)


def lp_substitute(f, subs):
    """
    Substitute a PosRational (or LaurentPoly) for every variable of ``f``.

    The result is presented over a common denominator built from the
    largest positive and negative exponent of each variable, then reduced by
    monomial content. Subtraction-free images give a subtraction-free result
    when ``f`` itself has positive coefficients.
    """
    used = f.variables_used()
    images = {}
    for v in used:
        if v not in subs:
            raise LaurentError("lp_substitute: no image for variable %s" % v)
        img = subs[v]
        if isinstance(img, (int, LaurentPoly)):
            img = PosRational(img)
        images[v] = img
    out_vars = ()
    for img in images.values():
        out_vars = _union_vars(out_vars, img.vars)
    if not used:
        c = f.terms.get((0,) * len(f.vars), 0)
        return PosRational(LaurentPoly.constant(c, out_vars))
    images = {v: img.with_vars(out_vars) for v, img in images.items()}

    idx = [f.vars.index(v) for v in used]
    e_plus = [max(0, max(exp[i] for exp in f.terms)) for i in idx]
    e_minus = [max(0, -min(exp[i] for exp in f.terms)) for i in idx]
    for v, em in zip(used, e_minus):
        if em and images[v].numerator.is_zero():
            raise LaurentError("lp_substitute: zero denominator from the "
                               "image of %s" % v)

    cache = {}

    def power(p, k):
        key = (id(p), k)
        if key not in cache:
            cache[key] = p ** k
        return cache[key]

    num = LaurentPoly.constant(0, out_vars)
    for exp, c in f:
        term = LaurentPoly.constant(c, out_vars)
        for j, i in enumerate(idx):
            n = images[used[j]].numerator
            d = images[used[j]].denominator
            term = term * power(n, exp[i] + e_minus[j]) \
                * power(d, e_plus[j] - exp[i])
        num = num + term
    den = LaurentPoly.constant(1, out_vars)
    for j, v in enumerate(used):
        den = den * power(images[v].denominator, e_plus[j]) \
            * power(images[v].numerator, e_minus[j])
    return PosRational(num, den).reduce_content()


def is_laurent(f):
    """
    Return the Laurent polynomial equal to ``f`` when the denominator
    divides the numerator in the Laurent ring, ``None`` otherwise.
    """
    if isinstance(f, LaurentPoly):
        return f
    r = f.reduce_content()
    num, den = r.numerator, r.denominator
    if den.is_monomial():
        return num.divide_monomial(den)
    vars = r.vars
    shift = num.monomial_content()
    p = _to_ring(num.shift(tuple(-e for e in shift)))
    q = _to_ring(den)
    try:
        h = p.exquo(q)
    except ExactQuotientFailed:
        return None
    return _from_ring(h, vars).shift(shift)


def tropicalize(f):
    """
    Tropicalization of a subtraction-free expression: sums become ``max``,
    products sums, quotients differences and coefficients vanish.
    """
    if isinstance(f, LaurentPoly):
        f = PosRational(f)
    if not f.is_subtraction_free():
        raise LaurentError("tropicalize: %s is not subtraction-free" % f)
    num = _trop_poly(f.numerator)
    if f.denominator.is_one():
        return num
    return num - _trop_poly(f.denominator)


def _trop_poly(p):
    forms = [TropLinear(tuple(zip(p.vars, exp))) for exp in p.terms]
    return forms[0] if len(forms) == 1 else TropMax(forms)


def numeric_limit_check(f, x, scales):
    """
    Return ``log f(exp(C x)) / C`` for every scale ``C``, evaluated in log
    space. The values approach ``tropicalize(f)(x)`` as ``C`` grows.

    Parameter ``x`` (mapping or sequence):
        Point, either by variable name or aligned with ``f.vars``.
    """
    if isinstance(f, LaurentPoly):
        f = PosRational(f)
    if not f.is_subtraction_free():
        raise LaurentError("numeric_limit_check: %s is not subtraction-free"
                           % f)
    point = _point_values(f.vars, x)
    previous = None
    out = []
    for c in scales:
        if c <= 0 or (previous is not None and c <= previous):
            raise LaurentError("numeric_limit_check: scales must be positive "
                               "and increasing")
        previous = c
        top = log_sum_exp(log_weighted_terms(f.numerator, point, c))
        bottom = log_sum_exp(log_weighted_terms(f.denominator, point, c))
        out.append((top - bottom) / c)
    return out


# ---------------------------------------------------------------------- #
#  Helpers
# ---------------------------------------------------------------------- #

def _parse(text):
    if not isinstance(text, str) or not text.strip():
        raise InputError("empty expression")
    local = {name: sympy.Symbol(name) for name in _IDENT.findall(text)}
    try:
        return parse_expr(text, local_dict=local,
                          transformations=standard_transformations
                          + (convert_xor,))
    except (SyntaxError, TypeError, sympy.SympifyError) as e:
        raise InputError("cannot parse %r (%s)" % (text, e))


def _resolve_vars(expr, vars):
    if vars is not None:
        return tuple(vars)
    return tuple(sorted((s.name for s in expr.free_symbols), key=natural_key))


def _point_values(vars, point):
    if hasattr(point, 'keys'):
        try:
            return [Fraction(point[v]) if not isinstance(point[v], float)
                    else point[v] for v in vars]
        except KeyError as e:
            raise LaurentError("no value for variable %s" % e)
    values = list(point)
    if len(values) != len(vars):
        raise LaurentError("point of length %i for %i variables"
                           % (len(values), len(vars)))
    return [Fraction(v) if not isinstance(v, float) else v for v in values]


def _to_ring(p):
    if any(e < 0 for exp in p.terms for e in exp):
        raise LaurentError("_to_ring: negative exponent")
    ring = PolyRing(p.vars, ZZ)
    return ring.from_dict(dict(p.terms))


def _from_ring(element, vars):
    return LaurentPoly({tuple(m): int(c) for m, c in element.items()}, vars)

"""Exact scalars and finitely supported linear algebra.

Three coefficient fields are supported:

* ``QQ`` -- rationals, elements are :class:`fractions.Fraction`;
* ``PrimeField(p)`` -- integers mod p, elements are :class:`Mod`;
* ``FunctionField(params)`` -- rational functions over QQ in named
  parameters, elements are :class:`RationalFunction`.

Python ``int`` coerces into every field.  Mixing elements of two different
fields raises :class:`FieldMismatchError`.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Mapping

from sympy.polys.domains import QQ as _SYMPY_QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import ring as _sympy_ring


class FieldMismatchError(TypeError):
    """Arithmetic between elements of different coefficient fields."""


class ScalarParseError(ValueError):
    pass


# ---------------------------------------------------------------------------
# prime fields


class Mod:
    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.p = p
        self.value = value % p

    def _coerce(self, other):
        if isinstance(other, Mod):
            if other.p != self.p:
                raise FieldMismatchError(f"F_{self.p} vs F_{other.p}")
            return other.value
        if isinstance(other, int):
            return other
        if isinstance(other, (Fraction, RationalFunction)):
            raise FieldMismatchError(f"F_{self.p} vs {type(other).__name__}")
        return None

    def __add__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return Mod(self.value + v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return Mod(self.value - v, self.p)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return Mod(v - self.value, self.p)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return Mod(self.value * v, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Mod(-self.value, self.p)

    def inverse(self) -> "Mod":
        if self.value == 0:
            raise ZeroDivisionError(f"inverse of 0 in F_{self.p}")
        return Mod(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return self * Mod(v, self.p).inverse()

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return Mod(v, self.p) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return Mod(pow(self.value, n, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Mod):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return (other - self.value) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((Mod, self.p, self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"Mod({self.value}, {self.p})"


# ---------------------------------------------------------------------------
# rational functions


class RationalFunction:
    """A reduced fraction num/den of polynomials with monic den (grlex)."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field: "FunctionField", num, den):
        # callers pass canonical (num, den); use FunctionField.fraction otherwise
        self.field = field
        self.num = num
        self.den = den

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.field.params != self.field.params:
                raise FieldMismatchError(f"{self.field.tag} vs {other.field.tag}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        if isinstance(other, Mod):
            raise FieldMismatchError(f"{self.field.tag} vs F_{other.p}")
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        F = self.field
        if self.den == o.den:
            if self.den == F.ring.one:
                return RationalFunction(F, self.num + o.num, self.den)
            return F.fraction(self.num + o.num, self.den)
        return F.fraction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(self.field, -self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        F = self.field
        one = F.ring.one
        if self.den == one and o.den == one:
            return RationalFunction(F, self.num * o.num, one)
        return F.fraction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        return self.field.fraction(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        F = self.field
        return RationalFunction(F, self.num**n, self.den**n)

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return (
                self.field.params == other.field.params
                and self.num == other.num
                and self.den == other.den
            )
        if isinstance(other, (int, Fraction)):
            return self == self.field(other)
        return NotImplemented

    def __hash__(self):
        if self.den == self.field.ring.one and self.num.is_ground:
            return hash(Fraction(_to_fraction(self.num.LC)) if self.num else 0)
        # PolyElement caches its hash, which can go stale on derived polys
        return hash((self.field.params, frozenset(self.num.items()), frozenset(self.den.items())))

    def __bool__(self):
        return bool(self.num)

    def __repr__(self):
        return f"RationalFunction({self.field.format(self)!r})"


def _to_fraction(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


# ---------------------------------------------------------------------------
# fields


class Field:
    tag: str
    characteristic: int

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, x):
        raise NotImplementedError

    def parse(self, text: str):
        return _Parser(text, self).parse()

    def format(self, x) -> str:
        raise NotImplementedError

    def param(self, name: str):
        raise ScalarParseError(f"field {self.tag} has no parameter {name!r}")

    def __eq__(self, other):
        return isinstance(other, Field) and other.tag == self.tag

    def __hash__(self):
        return hash(self.tag)

    def __repr__(self):
        return f"<Field {self.tag}>"


class RationalField(Field):
    tag = "Q"
    characteristic = 0

    def __call__(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return self.parse(x)
        raise FieldMismatchError(f"cannot coerce {x!r} into Q")

    def format(self, x) -> str:
        x = self(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class PrimeField(Field):
    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.tag = f"Fp:{p}"

    def __call__(self, x):
        if isinstance(x, Mod):
            if x.p != self.p:
                raise FieldMismatchError(f"F_{x.p} element into F_{self.p}")
            return x
        if isinstance(x, int):
            return Mod(x, self.p)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in F_{self.p}")
            return Mod(x.numerator, self.p) / Mod(x.denominator, self.p)
        if isinstance(x, str):
            return self.parse(x)
        raise FieldMismatchError(f"cannot coerce {x!r} into F_{self.p}")

    def format(self, x) -> str:
        return str(self(x).value)

    def elements(self) -> list[Mod]:
        return [Mod(i, self.p) for i in range(self.p)]


@lru_cache(maxsize=None)
def _poly_ring(params: tuple[str, ...]):
    R, *gens = _sympy_ring(",".join(params), _SYMPY_QQ, grlex)
    return R, tuple(gens)


class FunctionField(Field):
    """QQ(params) with parameters sorted by name."""

    characteristic = 0

    def __init__(self, params: Iterable[str]):
        params = tuple(sorted(set(params)))
        if not params:
            raise ValueError("FunctionField needs at least one parameter")
        for name in params:
            if not _IDENT.fullmatch(name):
                raise ValueError(f"bad parameter name {name!r}")
        self.params = params
        self.tag = "Qfunc:[" + ",".join(params) + "]"
        self.ring, self._gens = _poly_ring(params)
        self._one = RationalFunction(self, self.ring.one, self.ring.one)

    def fraction(self, num, den) -> RationalFunction:
        """Canonical form of num/den."""
        if not den:
            raise ZeroDivisionError("zero denominator")
        R = self.ring
        if not num:
            return RationalFunction(self, R.zero, R.one)
        if den.is_ground:
            c = den.LC
            return RationalFunction(self, num.quo_ground(c), R.one)
        g = num.gcd(den)
        if g != R.one:
            num = num.exquo(g)
            den = den.exquo(g)
        c = den.LC
        if c != 1:
            num = num.quo_ground(c)
            den = den.quo_ground(c)
        return RationalFunction(self, num, den)

    def __call__(self, x):
        if isinstance(x, RationalFunction):
            if x.field.params != self.params:
                raise FieldMismatchError(f"{x.field.tag} element into {self.tag}")
            return x
        if isinstance(x, (int, Fraction)):
            if x == 1:
                return self._one
            R = self.ring
            return RationalFunction(self, R(_SYMPY_QQ.convert(x)), R.one)
        if isinstance(x, str):
            return self.parse(x)
        raise FieldMismatchError(f"cannot coerce {x!r} into {self.tag}")

    def param(self, name: str) -> RationalFunction:
        try:
            i = self.params.index(name)
        except ValueError:
            raise ScalarParseError(f"unknown parameter {name!r} in {self.tag}") from None
        return RationalFunction(self, self._gens[i], self.ring.one)

    def _format_poly(self, poly) -> str:
        out = []
        for monom, coeff in poly.terms(order=grlex):
            c = _to_fraction(coeff)
            factors = []
            for name, e in zip(self.params, monom):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{e}")
            sign = "-" if c < 0 else "+"
            c = abs(c)
            cs = str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
            if not factors:
                body = cs
            elif c == 1:
                body = "*".join(factors)
            else:
                body = cs + "*" + "*".join(factors)
            out.append((sign, body))
        if not out:
            return "0"
        text = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            text += sign + body
        return text

    def format(self, x) -> str:
        x = self(x)
        num = self._format_poly(x.num)
        if x.den == self.ring.one:
            return num
        return f"({num})/({self._format_poly(x.den)})"


QQ = RationalField()


def field_from_tag(tag: str) -> Field:
    """Inverse of ``Field.tag``: "Q", "Fp:<p>", "Qfunc:[a,b,...]"."""
    tag = tag.strip()
    if tag == "Q":
        return QQ
    if tag.startswith("Fp:"):
        return PrimeField(int(tag[3:]))
    m = re.fullmatch(r"Qfunc:\[(.*)\]", tag)
    if m:
        return FunctionField(p.strip() for p in m.group(1).split(",") if p.strip())
    raise ValueError(f"unknown field tag {tag!r}")


def field_of(x) -> Field | None:
    if isinstance(x, Fraction):
        return QQ
    if isinstance(x, Mod):
        return PrimeField(x.p)
    if isinstance(x, RationalFunction):
        return x.field
    return None


# ---------------------------------------------------------------------------
# scalar literal grammar
#
#   expr   := term (('+'|'-') term)*
#   term   := unary (('*'|'/') unary)*
#   unary  := '-' unary | power
#   power  := atom ('^' '-'? INT)?
#   atom   := INT | IDENT | '(' expr ')'

_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(.))")


class _Parser:
    def __init__(self, text: str, field: Field):
        self.text = text
        self.field = field
        self.tokens = []
        for num, ident, op in _TOKEN.findall(text):
            if num:
                self.tokens.append(("int", int(num)))
            elif ident:
                self.tokens.append(("id", ident))
            elif op.strip():
                if op not in "+-*/^()":
                    raise ScalarParseError(f"unexpected character {op!r} in {text!r}")
                self.tokens.append(("op", op))
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self, op=None):
        tok = self.peek()
        if tok[0] is None or (op is not None and tok != ("op", op)):
            raise ScalarParseError(f"expected {op or 'token'} in {self.text!r}")
        self.pos += 1
        return tok

    def parse(self):
        if not self.tokens:
            raise ScalarParseError("empty scalar literal")
        value = self.expr()
        if self.pos != len(self.tokens):
            raise ScalarParseError(f"trailing input in {self.text!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            value = value * rhs if op == "*" else value / rhs
        return value

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            sign = 1
            if self.peek() == ("op", "-"):
                self.take()
                sign = -1
            kind, n = self.take()
            if kind != "int":
                raise ScalarParseError(f"integer exponent expected in {self.text!r}")
            return base ** (sign * n)
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "int":
            return self.field(val)
        if kind == "id":
            return self.field.param(val)
        if val == "(":
            value = self.expr()
            self.take(")")
            return value
        raise ScalarParseError(f"unexpected {val!r} in {self.text!r}")


def scalar_arith(op: str, x, y=None):
    """add | mul | neg | inv on field elements."""
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "neg":
        return -x
    if op == "inv":
        if isinstance(x, int):
            x = Fraction(x)
        if not x:
            raise ZeroDivisionError("inverse of zero")
        return 1 / x
    raise ValueError(f"unknown scalar op {op!r}")


# ---------------------------------------------------------------------------
# basis identifiers
#
# A basis element is a str, an int, or a tuple of basis elements.  Tuples of
# length two double as tensor/pair indices (A-side left).


def basis_key(b):
    """Total order on basis ids: names lexicographic, then indices."""
    if isinstance(b, str):
        return (1, b)
    if isinstance(b, bool) or not isinstance(b, (int, tuple)):
        raise TypeError(f"bad basis id {b!r}")
    if isinstance(b, int):
        return (0, b)
    return (2, tuple(basis_key(x) for x in b))


def label(b) -> str:
    if isinstance(b, str):
        return b
    if isinstance(b, int):
        return str(b)
    return "(" + ",".join(label(x) for x in b) + ")"


def basis_from_json(x):
    if isinstance(x, list):
        return tuple(basis_from_json(y) for y in x)
    return x


def basis_to_json(b):
    if isinstance(b, tuple):
        return [basis_to_json(x) for x in b]
    return b


# ---------------------------------------------------------------------------
# linear combinations


class LinComb(Mapping):
    """Finitely supported map basis -> scalar; zero coefficients are dropped."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        d = {}
        for b, c in items:
            if b in d:
                c = d[b] + c
            d[b] = c
        self._terms = {b: c for b, c in d.items() if c}
        self._hash = None

    @classmethod
    def basis(cls, b, coeff=1) -> "LinComb":
        return cls({b: coeff})

    @classmethod
    def _trusted(cls, d: dict) -> "LinComb":
        out = object.__new__(cls)
        out._terms = d
        out._hash = None
        return out

    def __getitem__(self, b):
        return self._terms.get(b, 0)

    def __iter__(self) -> Iterator:
        return iter(sorted(self._terms, key=basis_key))

    def __len__(self):
        return len(self._terms)

    def __contains__(self, b):
        return b in self._terms

    def items(self):
        return [(b, self._terms[b]) for b in self]

    @property
    def terms(self) -> dict:
        return self._terms

    def __add__(self, other):
        if not isinstance(other, LinComb):
            return NotImplemented
        d = dict(self._terms)
        for b, c in other._terms.items():
            v = d.get(b, 0) + c
            if v:
                d[b] = v
            else:
                d.pop(b, None)
        return LinComb._trusted(d)

    def __neg__(self):
        return LinComb._trusted({b: -c for b, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, LinComb):
            return NotImplemented
        return self + (-other)

    def scale(self, s) -> "LinComb":
        if not s:
            return LinComb()
        return LinComb((b, s * c) for b, c in self._terms.items())

    def __mul__(self, s):
        if isinstance(s, LinComb):
            return NotImplemented
        return self.scale(s)

    __rmul__ = __mul__

    def tensor(self, other: "LinComb") -> "LinComb":
        return LinComb._trusted(
            {(b1, b2): c1 * c2 for b1, c1 in self._terms.items() for b2, c2 in other._terms.items()}
        )

    def __eq__(self, other):
        if isinstance(other, LinComb):
            return self._terms == other._terms
        if isinstance(other, Mapping):
            return self == LinComb(other)
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def format(self, field: Field | None = None) -> str:
        if not self._terms:
            return "0"
        parts = []
        for b, c in self.items():
            cs = field.format(c) if field is not None else str(c)
            parts.append(f"({cs})*{label(b)}")
        return " + ".join(parts)

    def __repr__(self):
        return f"LinComb({self.format()})"


def lincomb_ops(op: str, u: LinComb, v) -> LinComb:
    if op == "add":
        return u + v
    if op == "scale":
        # scale(s, v): first argument is the scalar
        if isinstance(u, LinComb):
            return u.scale(v)
        return v.scale(u)
    if op == "tensor":
        return u.tensor(v)
    raise ValueError(f"unknown lincomb op {op!r}")


def raw_items(v: Mapping):
    """Unordered (basis, coeff) pairs; cheaper than LinComb.items()."""
    return v.terms.items() if isinstance(v, LinComb) else v.items()


def accumulate(target: dict, terms: Mapping, coeff=1) -> None:
    """target += coeff * terms, in place, dropping zeros."""
    if not coeff:
        return
    for b, c in raw_items(terms):
        v = target.get(b, 0) + coeff * c
        if v:
            target[b] = v
        else:
            target.pop(b, None)


# ---------------------------------------------------------------------------
# linear maps


class LinMap:
    """An n-ary multilinear map given on basis tuples.

    Either ``table`` (finite domain) or ``rule`` must be given.  A rule must
    come with ``bound``, a function of the inputs giving an upper bound on
    the support size of the output; evaluation enforces it.
    """

    def __init__(
        self,
        arity: int,
        *,
        table: Mapping | None = None,
        rule: Callable | None = None,
        bound: Callable | None = None,
        default: Callable | None = None,
        name: str = "",
    ):
        if (table is None) == (rule is None):
            raise ValueError("LinMap needs exactly one of table / rule")
        if rule is not None and bound is None:
            raise ValueError(f"rule-backed LinMap {name!r} needs a finiteness bound")
        self.arity = arity
        self.name = name
        self._table = None
        if table is not None:
            self._table = {k: v if isinstance(v, LinComb) else LinComb(v) for k, v in table.items()}
        self._rule = rule
        self._bound = bound
        self._default = default
        self._cache: dict = {}

    @property
    def table_backed(self) -> bool:
        return self._table is not None

    def __call__(self, *args) -> LinComb:
        key = args[0] if self.arity == 1 else args
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if self._table is not None:
            try:
                out = self._table[key]
            except KeyError:
                if self._default is None:
                    raise KeyError(f"{self.name or 'LinMap'} undefined at {key!r}") from None
                out = self._default(*args)
        else:
            out = self._rule(*args)
            if not isinstance(out, LinComb):
                out = LinComb(out)
            if len(out) > self._bound(*args):
                raise ValueError(f"{self.name}: output support exceeds declared bound at {key!r}")
        self._cache[key] = out
        return out

    def extend(self, *vecs: Mapping) -> LinComb:
        """Multilinear extension to linear combinations."""
        acc: dict = {}
        if self.arity == 1:
            (v,) = vecs
            for b, c in raw_items(v):
                accumulate(acc, self(b).terms, c)
        elif self.arity == 2:
            u, v = vecs
            vi = list(raw_items(v))
            for b1, c1 in raw_items(u):
                for b2, c2 in vi:
                    accumulate(acc, self(b1, b2).terms, c1 * c2)
        else:
            raise NotImplementedError("extend supports arity 1 and 2")
        return LinComb._trusted(acc)


# ---------------------------------------------------------------------------
# convolution of k-valued maps on a coalgebra


def convolve(f: Callable, g: Callable, comult: Callable) -> Callable:
    """(f*g)(c) = f(c_(1)) g(c_(2)).

    ``comult(c)`` returns a mapping {(c1, c2): coeff}.  The result is a
    memoised rule on basis elements.
    """

    @lru_cache(maxsize=None)
    def fg(c):
        total = 0
        for (c1, c2), k in comult(c).items():
            a = f(c1)
            if a:
                b = g(c2)
                if b:
                    total = total + k * a * b
        return total

    return fg


# ---------------------------------------------------------------------------
# dense exact linear algebra (small systems only)


def rref(rows: list[list], ncols: int, one=1) -> tuple[list[list], list[int]]:
    """Reduced row echelon form over any exact field.

    ``rows`` are lists of field elements (ints allowed).  Returns the nonzero
    reduced rows and the pivot column of each.
    """
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = one / m[r][col]
        m[r] = [inv * x for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                k = m[i][col]
                m[i] = [x - k * y for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def matrix_inverse(mat: list[list], one=1) -> list[list]:
    n = len(mat)
    aug = [list(row) + [one if i == j else 0 * one for j in range(n)] for i, row in enumerate(mat)]
    red, pivots = rref(aug, 2 * n, one)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]

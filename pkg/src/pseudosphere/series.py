"""Truncated multivariate formal power series over Gaussian rationals.

A series carries a *guaranteed order*: every coefficient of total degree
up to ``order`` is exact, and nothing is claimed beyond it.  Operations
propagate the worst-case guaranteed order of their output (a partial
derivative loses one degree, products and compositions take minima), so
a chain of operations always knows how far its result can be trusted.
"""

from __future__ import annotations

from .errors import (
    CompositionError,
    ContextMismatchError,
    InsufficientOrderError,
    NonUnitError,
    UnknownVariableError,
)
from .scalars import GaussianRational, ONE, ZERO, _coerce


class VariableContext:
    """An ordered tuple of distinct variable names.

    The order is significant: it fixes the positions of exponent
    multi-indices for every series sharing the context.
    """

    __slots__ = ("names", "_positions")

    def __init__(self, names):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in context: {names}")
        self.names = names
        self._positions = {name: k for k, name in enumerate(names)}

    @property
    def arity(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._positions[name]
        except KeyError:
            raise UnknownVariableError(
                f"variable {name!r} not in context {self.names}"
            ) from None

    def __contains__(self, name):
        return name in self._positions

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __eq__(self, other):
        return isinstance(other, VariableContext) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"VariableContext({self.names!r})"


def _check_same_context(a, b):
    if a.context != b.context:
        raise ContextMismatchError(
            f"contexts differ: {a.context.names} vs {b.context.names}"
        )


class TruncatedSeries:
    """A sparse formal power series truncated at a guaranteed total degree.

    ``terms`` maps exponent tuples (one entry per context variable) to
    nonzero :class:`GaussianRational` coefficients; every stored
    multi-index has total degree at most ``order``.
    """

    __slots__ = ("context", "order", "terms")

    def __init__(self, context: VariableContext, order: int, terms=None):
        if order < 0:
            raise InsufficientOrderError(f"series order must be >= 0, got {order}")
        self.context = context
        self.order = order
        clean = {}
        if terms:
            arity = context.arity
            for exps, coeff in terms.items():
                exps = tuple(exps)
                if len(exps) != arity:
                    raise ValueError(f"multi-index {exps} has wrong arity")
                if any(e < 0 for e in exps):
                    raise ValueError(f"negative exponent in {exps}")
                if sum(exps) > order:
                    continue
                coeff = _coerce(coeff)
                if coeff:
                    clean[exps] = coeff
        self.terms = clean

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def zero(cls, context, order):
        return cls(context, order)

    @classmethod
    def constant(cls, context, order, value):
        value = _coerce(value)
        if value is None:
            raise TypeError(f"cannot use {value!r} as a coefficient")
        return cls(context, order, {(0,) * context.arity: value})

    @classmethod
    def variable(cls, context, order, name):
        exps = [0] * context.arity
        exps[context.index(name)] = 1
        return cls(context, order, {tuple(exps): ONE})

    @classmethod
    def from_dict(cls, context, order, named_terms):
        """Build from ``{"z1*z1b": coeff}``-style {name: power} dicts.

        ``named_terms`` maps tuples of (name, power) pairs or dicts
        {name: power} to coefficients; mostly useful in tests.
        """
        terms = {}
        for mono, coeff in named_terms.items():
            exps = [0] * context.arity
            items = mono.items() if isinstance(mono, dict) else mono
            for name, power in items:
                exps[context.index(name)] += power
            terms[tuple(exps)] = coeff
        return cls(context, order, terms)

    # ------------------------------------------------------------------
    # inspection

    def constant_term(self) -> GaussianRational:
        return self.terms.get((0,) * self.context.arity, ZERO)

    def coefficient(self, exps) -> GaussianRational:
        return self.terms.get(tuple(exps), ZERO)

    def coefficient_of(self, **powers) -> GaussianRational:
        exps = [0] * self.context.arity
        for name, power in powers.items():
            exps[self.context.index(name)] = power
        return self.coefficient(exps)

    def is_zero(self, through_order=None) -> bool:
        if through_order is None:
            return not self.terms
        return all(sum(e) > through_order for e in self.terms)

    def agrees_with(self, other, through_order=None) -> bool:
        """Coefficientwise equality for all total degrees <= through_order.

        The default comparison order is the smaller of the two guaranteed
        orders, which is the largest jet on which both sides are exact.
        """
        _check_same_context(self, other)
        d = min(self.order, other.order)
        if through_order is not None:
            d = min(d, through_order)
        return (self - other).is_zero(through_order=d)

    def homogeneous_part(self, degree: int) -> dict:
        return {e: c for e, c in self.terms.items() if sum(e) == degree}

    def valuation(self):
        """Lowest total degree with a nonzero coefficient (None if zero)."""
        if not self.terms:
            return None
        return min(sum(e) for e in self.terms)

    # ------------------------------------------------------------------
    # ring operations

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.context == other.context and self.terms == other.terms

    __hash__ = None  # mutable-ish payload, keep unhashable

    def __neg__(self):
        return TruncatedSeries(
            self.context, self.order, {e: -c for e, c in self.terms.items()}
        )

    def __add__(self, other):
        scalar = _coerce(other)
        if scalar is not None:
            other = TruncatedSeries.constant(self.context, self.order, scalar)
        elif not isinstance(other, TruncatedSeries):
            return NotImplemented
        _check_same_context(self, other)
        order = min(self.order, other.order)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            acc = terms.get(e)
            acc = c if acc is None else acc + c
            if acc:
                terms[e] = acc
            else:
                terms.pop(e, None)
        return TruncatedSeries(self.context, order, terms)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, TruncatedSeries):
            return self + (-other)
        scalar = _coerce(other)
        if scalar is None:
            return NotImplemented
        return self + (-scalar)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, scalar) -> "TruncatedSeries":
        scalar = _coerce(scalar)
        if not scalar:
            return TruncatedSeries.zero(self.context, self.order)
        return TruncatedSeries(
            self.context, self.order, {e: c * scalar for e, c in self.terms.items()}
        )

    def __mul__(self, other):
        scalar = _coerce(other)
        if scalar is not None:
            return self.scale(scalar)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        _check_same_context(self, other)
        order = min(self.order, other.order)
        # Cauchy product; bucketing the right factor by degree lets each
        # left term skip everything that would overflow the truncation.
        buckets = {}
        for e, c in other.terms.items():
            buckets.setdefault(sum(e), []).append((e, c))
        out = {}
        for ea, ca in self.terms.items():
            da = sum(ea)
            if da > order:
                continue
            room = order - da
            for db, items in buckets.items():
                if db > room:
                    continue
                for eb, cb in items:
                    key = tuple(x + y for x, y in zip(ea, eb))
                    prod = ca * cb
                    acc = out.get(key)
                    acc = prod if acc is None else acc + prod
                    if acc:
                        out[key] = acc
                    else:
                        del out[key]
        return TruncatedSeries(self.context, order, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("series exponent must be a nonnegative integer")
        result = TruncatedSeries.constant(self.context, self.order, ONE)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base if exponent > 1 else base
            exponent >>= 1
        return result

    # ------------------------------------------------------------------
    # calculus

    def partial(self, name: str) -> "TruncatedSeries":
        """Formal partial derivative; the guaranteed order drops by one."""
        if self.order == 0:
            raise InsufficientOrderError(
                "cannot differentiate a series of guaranteed order 0"
            )
        i = self.context.index(name)
        terms = {}
        for e, c in self.terms.items():
            k = e[i]
            if not k:
                continue
            shifted = e[:i] + (k - 1,) + e[i + 1 :]
            terms[shifted] = c * k
        return TruncatedSeries(self.context, self.order - 1, terms)

    def partials(self, *names) -> "TruncatedSeries":
        out = self
        for name in names:
            out = out.partial(name)
        return out

    def truncate(self, order: int) -> "TruncatedSeries":
        """Restrict the guaranteed order (never raises it)."""
        if order > self.order:
            raise InsufficientOrderError(
                f"cannot extend guaranteed order {self.order} to {order}"
            )
        if order == self.order:
            return self
        return TruncatedSeries(self.context, order, self.terms)

    def rename_context(self, new_context: VariableContext) -> "TruncatedSeries":
        """Positional relabeling of variables; exponents are untouched."""
        if new_context.arity != self.context.arity:
            raise ContextMismatchError(
                f"cannot rename {self.context.names} to {new_context.names}"
            )
        return TruncatedSeries(new_context, self.order, self.terms)

    def substitute(self, assignment, target_context=None) -> "TruncatedSeries":
        """Formal composition self(v := assignment[v], ...).

        Variables absent from ``assignment`` pass through to the variable
        of the same name in the target context.  Every assigned series
        must share one context (the target) and have zero constant term;
        that keeps the truncation under control.
        """
        assignment = dict(assignment or {})
        for name in assignment:
            self.context.index(name)  # raises if undeclared
        if target_context is None:
            for s in assignment.values():
                target_context = s.context
                break
            else:
                raise ValueError("empty assignment requires an explicit target context")
        order = self.order
        for name, s in assignment.items():
            if s.context != target_context:
                raise ContextMismatchError(
                    f"assignment for {name!r} lives in {s.context.names}, "
                    f"expected {target_context.names}"
                )
            if s.constant_term():
                raise CompositionError(
                    f"assignment for {name!r} has a nonzero constant term"
                )
            order = min(order, s.order)

        values = []
        for name in self.context.names:
            if name in assignment:
                values.append(assignment[name].truncate(order))
            else:
                values.append(TruncatedSeries.variable(target_context, order, name))

        powers = [[TruncatedSeries.constant(target_context, order, ONE), v] for v in values]

        def power(i, k):
            cache = powers[i]
            while len(cache) <= k:
                cache.append(cache[-1] * cache[1])
            return cache[k]

        result = TruncatedSeries.zero(target_context, order)
        for exps, coeff in sorted(self.terms.items(), key=lambda item: sum(item[0])):
            if sum(exps) > order:
                continue  # valuation of the image would exceed the order
            term = TruncatedSeries.constant(target_context, order, coeff)
            for i, k in enumerate(exps):
                if k:
                    term = term * power(i, k)
            result = result + term
        return result

    def invert_unit(self) -> "TruncatedSeries":
        """Multiplicative inverse of a series with nonzero constant term."""
        c = self.constant_term()
        if not c:
            raise NonUnitError("cannot invert a series with zero constant term")
        # 1/a = (1/c) * sum_k u^k  with  u = 1 - a/c  of valuation >= 1.
        one = TruncatedSeries.constant(self.context, self.order, ONE)
        u = one - self.scale(ONE / c)
        acc = one
        upow = one
        for _ in range(self.order):
            upow = upow * u
            if upow.is_zero():
                break
            acc = acc + upow
        return acc.scale(ONE / c)

    # ------------------------------------------------------------------
    # rendering

    def monomial_text(self, exps) -> str:
        parts = []
        for name, k in zip(self.context.names, exps):
            if k == 1:
                parts.append(name)
            elif k > 1:
                parts.append(f"{name}^{k}")
        return "*".join(parts) if parts else "1"

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for exps in sorted(self.terms, key=lambda e: (sum(e), e)):
            coeff = self.terms[exps]
            mono = self.monomial_text(exps)
            text = str(coeff)
            plain = not coeff.im or not coeff.re  # single-component coefficient
            if mono == "1":
                piece = text if plain else f"({text})"
            elif coeff == ONE:
                piece = mono
            elif coeff == -ONE:
                piece = f"-{mono}"
            elif plain and "*" not in text:
                piece = f"{text}*{mono}"
            else:
                piece = f"({text})*{mono}"
            pieces.append(piece)
        out = pieces[0]
        for piece in pieces[1:]:
            if piece.startswith("-"):
                out += f" - {piece[1:]}"
            else:
                out += f" + {piece}"
        return out

    def __repr__(self):
        return f"<TruncatedSeries order={self.order} {self}>"

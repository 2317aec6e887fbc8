"""Truncated Laurent series with exact validity tracking.

TruncLaurent is a Laurent series in one variable known modulo var^trunc;
trunc = INF marks an exact Laurent polynomial.  TwoVarLaurent is a
Laurent series in t whose t-coefficients are Laurent series in w = z - q,
i.e. an element of k((z-q))((t)) at the point z = q.  Every operation
returns the validity it can prove, never padding with zeros, so an
identity that checks out on a window is a genuine partial verification.

The two derivations on k((z-q))((t)) come from d/dx via z = x/t and from
the parameter direction through a ramified root t = t0^(1/e):

    dx:      sum f_n t^n  ->  sum f_n' t^(n-1)
    dt0(e):  sum f_n t^n  ->  sum ((n/e) f_n - (z/e) f_n') t^(n-e)

with f_n' = d f_n / dw and z expanded as w + q.  dt0(1) restricted to
elements constant in w is plain d/dt.
"""

from __future__ import annotations

import os
from fractions import Fraction

from .errors import NonInvertibleLeadingTerm, TruncationExhausted
from .scalars import Scalar
from .rationals import RatFunc

INF = float("inf")

DEFAULT_ORDER = 10


def default_order() -> int:
    """Working order: identities are certified for exponents up to this."""
    env = os.environ.get("PPV_TRUNC")
    return int(env) if env else DEFAULT_ORDER


def _omin(*vals):
    return min(vals)


class TruncLaurent:
    """Laurent series in one variable, known modulo var^trunc."""

    __slots__ = ("var", "coeffs", "trunc")

    def __init__(self, var: str, coeffs: dict, trunc=INF):
        clean = {}
        for n, c in coeffs.items():
            if n < trunc and not c.is_zero():
                clean[n] = c
        object.__setattr__(self, "var", var)
        object.__setattr__(self, "coeffs", clean)
        object.__setattr__(self, "trunc", trunc)

    def __setattr__(self, *a):
        raise AttributeError("TruncLaurent is immutable")

    # constructors

    @classmethod
    def zero(cls, var: str, trunc=INF) -> "TruncLaurent":
        return cls(var, {}, trunc)

    @classmethod
    def monomial(cls, var: str, c, n: int = 0) -> "TruncLaurent":
        return cls(var, {n: c})

    @classmethod
    def from_list(cls, var: str, start: int, cs, trunc=INF) -> "TruncLaurent":
        return cls(var, {start + i: c for i, c in enumerate(cs)}, trunc)

    # structure

    def is_exact_zero(self) -> bool:
        return not self.coeffs and self.trunc == INF

    def stored_zero(self) -> bool:
        """True when no nonzero coefficient is stored (zero as far as known)."""
        return not self.coeffs

    def valuation(self):
        """Proven lower bound for the valuation (INF for the exact zero)."""
        return min(self.coeffs) if self.coeffs else self.trunc

    def coeff(self, n: int):
        if n >= self.trunc:
            raise TruncationExhausted(
                "coefficient of order %d requested; series only valid below %s" % (n, self.trunc)
            )
        return self.coeffs.get(n)

    def _sample(self):
        for c in self.coeffs.values():
            return c
        return None

    def _czero(self, other=None):
        s = self._sample()
        if s is None and other is not None:
            s = other._sample()
        if s is None:
            return Scalar(1, [])
        return s.zero_like()

    # arithmetic

    def __add__(self, other):
        if not isinstance(other, TruncLaurent):
            return NotImplemented
        trunc = _omin(self.trunc, other.trunc)
        out = dict(self.coeffs)
        for n, c in other.coeffs.items():
            cur = out.get(n)
            out[n] = c if cur is None else cur + c
        return TruncLaurent(self.var, out, trunc)

    def __neg__(self):
        return TruncLaurent(self.var, {n: -c for n, c in self.coeffs.items()}, self.trunc)

    def __sub__(self, other):
        if not isinstance(other, TruncLaurent):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TruncLaurent):
            return NotImplemented
        trunc = _omin(
            self.trunc + other.valuation() if self.trunc != INF else INF,
            other.trunc + self.valuation() if other.trunc != INF else INF,
        )
        out: dict = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                if i + j >= trunc:
                    continue
                cur = out.get(i + j)
                prod = a * b
                out[i + j] = prod if cur is None else cur + prod
        return TruncLaurent(self.var, out, trunc)

    def scale(self, c) -> "TruncLaurent":
        if isinstance(c, (int, Fraction)) and not c:
            return TruncLaurent.zero(self.var)
        return TruncLaurent(self.var, {n: a * c for n, a in self.coeffs.items()}, self.trunc)

    def shift(self, k: int) -> "TruncLaurent":
        return TruncLaurent(
            self.var,
            {n + k: c for n, c in self.coeffs.items()},
            self.trunc + k if self.trunc != INF else INF,
        )

    def truncate(self, upto) -> "TruncLaurent":
        return TruncLaurent(self.var, self.coeffs, _omin(self.trunc, upto))

    def inv(self, cap=None) -> "TruncLaurent":
        """Inverse; requires a nonzero leading coefficient in the window.

        Validity is trunc - 2*valuation.  Exact monomials invert exactly;
        any other exact input needs a cap for the geometric expansion.
        """
        if not self.coeffs:
            raise NonInvertibleLeadingTerm(
                "no nonzero coefficient stored below order %s" % self.trunc
            )
        v = min(self.coeffs)
        c = self.coeffs[v]
        cinv = c.one_like() / c
        if len(self.coeffs) == 1:
            # a stored monomial inverts exactly; the cap is only a bound
            # on expansion work, so it does not apply here
            out = TruncLaurent(self.var, {-v: cinv})
            if self.trunc != INF:
                out = out.truncate(self.trunc - 2 * v)
            return out
        validity = self.trunc - 2 * v if self.trunc != INF else INF
        if cap is not None:
            validity = _omin(validity, cap)
        if validity == INF:
            raise ValueError("cap required to invert an exact non-monomial series")
        rel = validity + v  # validity of the (1+u)^-1 factor
        u = TruncLaurent(
            self.var,
            {n - v: a * cinv for n, a in self.coeffs.items() if n != v},
            (self.trunc - v) if self.trunc != INF else INF,
        ).truncate(rel)
        acc = TruncLaurent(self.var, {0: c.one_like()}, rel)
        term = acc
        while True:
            term = (term * (-u)).truncate(rel)
            if term.stored_zero():
                break
            acc = acc + term
        return acc.shift(-v).scale(cinv).truncate(validity)

    def div(self, other: "TruncLaurent", cap=None) -> "TruncLaurent":
        return self * other.inv(cap=cap)

    # derivations

    def deriv(self) -> "TruncLaurent":
        """d/dvar, term by term; one order of validity is lost."""
        out = {n - 1: c * n for n, c in self.coeffs.items() if n != 0}
        return TruncLaurent(self.var, out, self.trunc - 1 if self.trunc != INF else INF)

    def dx(self) -> "TruncLaurent":
        # k((t)) consists of d/dx-constants; the unknown tail dies too
        return TruncLaurent.zero(self.var)

    def dt(self) -> "TruncLaurent":
        return self.dt0(1)

    def dt0(self, e: int) -> "TruncLaurent":
        out = {n - e: c * Fraction(n, e) for n, c in self.coeffs.items() if n != 0}
        return TruncLaurent(self.var, out, self.trunc - e if self.trunc != INF else INF)

    # comparisons

    def agree(self, other: "TruncLaurent", upto: int) -> int:
        """Exact coefficient comparison through order upto (inclusive).

        Returns the number of compared coefficients; raises if either
        side is not valid far enough or if any coefficient differs.
        """
        if self.trunc <= upto or other.trunc <= upto:
            raise TruncationExhausted(
                "cannot certify through order %d: validity %s vs %s" % (upto, self.trunc, other.trunc)
            )
        z = self._czero(other)
        exps = set(self.coeffs) | set(other.coeffs)
        count = 0
        for n in sorted(exps):
            if n > upto:
                continue
            a = self.coeffs.get(n, z)
            b = other.coeffs.get(n, z)
            count += 1
            if not (a - b).is_zero():
                raise AssertionError(
                    "series differ at order %d: %r vs %r" % (n, a, b)
                )
        return count

    def __eq__(self, other):
        if not isinstance(other, TruncLaurent):
            return NotImplemented
        return self.var == other.var and self.trunc == other.trunc and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.var, self.trunc, tuple(sorted(self.coeffs.items()))))

    def __repr__(self):
        from .render import format_trunc_laurent

        return "<%s>" % format_trunc_laurent(self)


class TwoVarLaurent:
    """Element of k((z-q))((t)) at the point z = q, bi-truncated.

    coeffs maps the t-exponent to a TruncLaurent in w = z - q.  A missing
    t-coefficient below the outer truncation is exactly zero; a stored
    zero-so-far coefficient keeps its own inner validity.
    """

    __slots__ = ("q", "coeffs", "trunc")

    def __init__(self, q: Scalar, coeffs: dict, trunc=INF):
        clean = {}
        for n, f in coeffs.items():
            if n < trunc and not f.is_exact_zero():
                clean[n] = f
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "coeffs", clean)
        object.__setattr__(self, "trunc", trunc)

    def __setattr__(self, *a):
        raise AttributeError("TwoVarLaurent is immutable")

    # constructors

    @classmethod
    def zero(cls, q: Scalar, trunc=INF) -> "TwoVarLaurent":
        return cls(q, {}, trunc)

    @classmethod
    def from_inner(cls, q: Scalar, inner: TruncLaurent, t_exp: int = 0) -> "TwoVarLaurent":
        return cls(q, {t_exp: inner})

    @classmethod
    def term(cls, q: Scalar, c, w_exp: int = 0, t_exp: int = 0) -> "TwoVarLaurent":
        """The exact term c * (z-q)^w_exp * t^t_exp."""
        return cls(q, {t_exp: TruncLaurent.monomial("w", c, w_exp)})

    @classmethod
    def z_elem(cls, q: Scalar) -> "TwoVarLaurent":
        """z itself, expanded as (z-q) + q."""
        inner = {1: q.one_like()}
        if not q.is_zero():
            inner[0] = q
        return cls(q, {0: TruncLaurent("w", inner)})

    @classmethod
    def from_k(cls, f: RatFunc, q: Scalar, order=None) -> "TwoVarLaurent":
        """Embed an element of K = k(t), constant in w."""
        if f.var != "t":
            raise ValueError("expected an element of the parameter field")

        def embed_poly(p):
            return cls(
                q,
                {n: TruncLaurent.monomial("w", p.coeff(n)) for n in range(p.degree() + 1)
                 if not p.coeff(n).is_zero()},
            )

        num = embed_poly(f.num)
        if f.den.degree() == 0:
            return num
        cap = (order if order is not None else default_order()) + 1
        return num * embed_poly(f.den).inv(cap=(cap, cap))

    # structure

    def _check_point(self, other: "TwoVarLaurent"):
        if not (self.q == other.q):
            raise ValueError("series live at different points: %r vs %r" % (self.q, other.q))

    def valuation(self):
        """Proven lower bound for the t-valuation."""
        live = [n for n, f in self.coeffs.items() if f.coeffs or f.trunc != INF]
        return min(live) if live else self.trunc

    def is_exact_zero(self) -> bool:
        return not self.coeffs and self.trunc == INF

    def stored_zero(self) -> bool:
        return all(f.stored_zero() for f in self.coeffs.values())

    def coeff(self, n: int) -> TruncLaurent:
        if n >= self.trunc:
            raise TruncationExhausted("t-order %d beyond validity %s" % (n, self.trunc))
        return self.coeffs.get(n, TruncLaurent.zero("w"))

    def inner_validity(self):
        """Smallest inner truncation among stored coefficients (INF if none)."""
        return min((f.trunc for f in self.coeffs.values()), default=INF)

    # arithmetic

    def __add__(self, other):
        if not isinstance(other, TwoVarLaurent):
            return NotImplemented
        self._check_point(other)
        trunc = _omin(self.trunc, other.trunc)
        out = dict(self.coeffs)
        for n, f in other.coeffs.items():
            cur = out.get(n)
            out[n] = f if cur is None else cur + f
        return TwoVarLaurent(self.q, out, trunc)

    def __neg__(self):
        return TwoVarLaurent(self.q, {n: -f for n, f in self.coeffs.items()}, self.trunc)

    def __sub__(self, other):
        if not isinstance(other, TwoVarLaurent):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TwoVarLaurent):
            return NotImplemented
        self._check_point(other)
        trunc = _omin(
            self.trunc + other.valuation() if self.trunc != INF else INF,
            other.trunc + self.valuation() if other.trunc != INF else INF,
        )
        out: dict = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                if i + j >= trunc:
                    continue
                prod = a * b
                cur = out.get(i + j)
                out[i + j] = prod if cur is None else cur + prod
        return TwoVarLaurent(self.q, out, trunc)

    def scale(self, c) -> "TwoVarLaurent":
        return TwoVarLaurent(self.q, {n: f.scale(c) for n, f in self.coeffs.items()}, self.trunc)

    def mul_k(self, f: RatFunc, order=None) -> "TwoVarLaurent":
        return self * TwoVarLaurent.from_k(f, self.q, order=order)

    def shift_t(self, k: int) -> "TwoVarLaurent":
        return TwoVarLaurent(
            self.q,
            {n + k: f for n, f in self.coeffs.items()},
            self.trunc + k if self.trunc != INF else INF,
        )

    def truncate(self, outer, inner=None) -> "TwoVarLaurent":
        coeffs = self.coeffs
        if inner is not None:
            coeffs = {n: f.truncate(inner) for n, f in coeffs.items()}
        return TwoVarLaurent(self.q, coeffs, _omin(self.trunc, outer))

    def inv(self, cap: tuple | None = None) -> "TwoVarLaurent":
        """Inverse by geometric expansion off the leading t-coefficient.

        cap = (outer, inner) bounds for expansions that would otherwise
        be infinite.  The leading inner series must itself be invertible
        inside its stored window.
        """
        outer_cap, inner_cap = cap if cap is not None else (None, None)
        live = sorted(n for n, f in self.coeffs.items() if f.coeffs)
        if not live:
            raise NonInvertibleLeadingTerm(
                "no invertible leading t-coefficient below order %s" % self.trunc
            )
        v = live[0]
        lead = self.coeffs[v]
        lead_inv = lead.inv(cap=inner_cap)
        validity = self.trunc - 2 * v if self.trunc != INF else INF
        if outer_cap is not None:
            validity = _omin(validity, outer_cap)
        rest = {n - v: f * lead_inv for n, f in self.coeffs.items() if n != v}
        if not rest and validity == INF:
            # exact monomial in t: exact inverse
            return TwoVarLaurent(self.q, {-v: lead_inv})
        if validity == INF:
            raise ValueError("cap required to invert an exact series with several t-orders")
        rel = validity + v
        u = TwoVarLaurent(self.q, rest, (self.trunc - v) if self.trunc != INF else INF).truncate(rel)
        one = TruncLaurent.monomial("w", self._one_scalar())
        acc = TwoVarLaurent(self.q, {0: one}, rel)
        term = acc
        while True:
            term = (term * (-u)).truncate(rel)
            if not term.coeffs:
                # even zero-so-far coefficients are kept, so this is exact zero
                break
            acc = acc + term
        out = acc.shift_t(-v) * TwoVarLaurent(self.q, {0: lead_inv})
        return out.truncate(validity)

    def div(self, other: "TwoVarLaurent", cap: tuple | None = None) -> "TwoVarLaurent":
        return self * other.inv(cap=cap)

    def _one_scalar(self):
        for f in self.coeffs.values():
            s = f._sample()
            if s is not None:
                return s.one_like()
        return self.q.one_like()

    # derivations

    def dx(self) -> "TwoVarLaurent":
        """The main derivation: differentiate in w, shift t down by one."""
        out = {n - 1: f.deriv() for n, f in self.coeffs.items()}
        return TwoVarLaurent(self.q, out, self.trunc - 1 if self.trunc != INF else INF)

    def dt(self) -> "TwoVarLaurent":
        return self.dt0(1)

    def dt0(self, e: int) -> "TwoVarLaurent":
        """Parameter derivation through t = t0^(1/e); t-validity drops by e."""
        one = self._one_scalar()
        z_inner = {1: one}
        if not self.q.is_zero():
            z_inner[0] = self.q
        z = TruncLaurent("w", z_inner)
        out = {}
        for n, f in self.coeffs.items():
            part = f.scale(Fraction(n, e)) - (z * f.deriv()).scale(Fraction(1, e))
            cur = out.get(n - e)
            out[n - e] = part if cur is None else cur + part
        return TwoVarLaurent(self.q, out, self.trunc - e if self.trunc != INF else INF)

    # comparisons

    def agree(self, other: "TwoVarLaurent", outer_upto: int, inner_upto: int) -> int:
        """Exact comparison through t-order and w-order bounds (inclusive).

        Returns the number of compared inner coefficients; raises on any
        difference or if validity does not reach the requested window.
        """
        self._check_point(other)
        if self.trunc <= outer_upto or other.trunc <= outer_upto:
            raise TruncationExhausted(
                "cannot certify through t-order %d: validity %s vs %s"
                % (outer_upto, self.trunc, other.trunc)
            )
        count = 0
        zero = TruncLaurent.zero("w")
        for n in sorted(set(self.coeffs) | set(other.coeffs)):
            if n > outer_upto:
                continue
            a = self.coeffs.get(n, zero)
            b = other.coeffs.get(n, zero)
            try:
                count += max(a.agree(b, inner_upto), 1)
            except AssertionError as exc:
                raise AssertionError("t-order %d: %s" % (n, exc)) from None
        return count

    def is_zero_through(self, outer_upto: int, inner_upto: int) -> bool:
        try:
            self.agree(TwoVarLaurent.zero(self.q, trunc=INF), outer_upto, inner_upto)
            return True
        except AssertionError:
            return False

    def __eq__(self, other):
        if not isinstance(other, TwoVarLaurent):
            return NotImplemented
        return self.q == other.q and self.trunc == other.trunc and self.coeffs == other.coeffs

    def __repr__(self):
        from .render import format_two_var

        return "<%s>" % format_two_var(self)


def random_trunc_laurent(rng, var="w", val_range=(-3, 1), trunc=12, order=1) -> TruncLaurent:
    lo = rng.randint(*val_range)
    coeffs = {}
    for n in range(lo, trunc):
        if rng.random() < 0.5:
            num = rng.randint(-4, 4)
            if num:
                coeffs[n] = Scalar(order, [Fraction(num, rng.randint(1, 3))])
    return TruncLaurent(var, coeffs, trunc)


def random_two_var(rng, q: Scalar, outer_trunc=12, inner_trunc=12, val_range=(-2, 1)) -> TwoVarLaurent:
    lo = rng.randint(*val_range)
    coeffs = {}
    for n in range(lo, outer_trunc):
        if rng.random() < 0.6:
            inner = random_trunc_laurent(
                rng, "w", val_range=val_range, trunc=inner_trunc, order=q.order
            )
            coeffs[n] = inner
    return TwoVarLaurent(q, coeffs, outer_trunc)

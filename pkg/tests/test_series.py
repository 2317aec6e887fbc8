import random
from fractions import Fraction

import pytest

from ppv.errors import NonInvertibleLeadingTerm, TruncationExhausted
from ppv.rationals import t_var
from ppv.scalars import Scalar, rational
from ppv.series import (
    INF,
    TruncLaurent,
    TwoVarLaurent,
    random_two_var,
)


def w_mono(c, n):
    return TruncLaurent.monomial("w", rational(c), n)


def test_trunc_laurent_mul_validity():
    # (t^-1 + O(t^3)) * (t^2 + O(t^5)): product valid to min(3+2, 5-1) = 4
    a = TruncLaurent("t", {-1: rational(1)}, 3)
    b = TruncLaurent("t", {2: rational(1)}, 5)
    p = a * b
    assert p.trunc == 4
    assert p.coeffs == {1: rational(1)}


def test_trunc_laurent_inverse_window():
    a = TruncLaurent("t", {1: rational(2), 2: rational(1)}, 6)
    inv = a.inv()
    assert inv.trunc == 6 - 2
    prod = a * inv
    assert prod.agree(TruncLaurent("t", {0: rational(1)}), int(prod.trunc) - 1) >= 1


def test_monomial_inverts_exactly():
    a = TruncLaurent("t", {3: rational(2)})
    inv = a.inv()
    assert inv.trunc == INF
    assert inv.coeffs == {-3: rational(Fraction(1, 2))}


def test_inverse_requires_leading_coefficient():
    with pytest.raises(NonInvertibleLeadingTerm):
        TruncLaurent.zero("t", 5).inv()


def test_exact_nonmonomial_needs_cap():
    a = TruncLaurent("t", {0: rational(1), 1: rational(1)})
    with pytest.raises(ValueError):
        a.inv()
    assert a.inv(cap=6).trunc == 6


# spec-level examples for the main derivation


def test_dx_of_t_over_w():
    q = rational(0)
    elem = TwoVarLaurent(q, {1: w_mono(1, -1)})  # t/z
    d = elem.dx()
    assert d.coeffs[0] == w_mono(-1, -2)  # -1/z^2
    # (d/dx of t itself is zero: the t-coefficient is w-constant)
    t_elem = TwoVarLaurent(q, {1: w_mono(1, 0)})
    assert t_elem.dx().stored_zero()


def test_dt0_of_t_at_e1():
    t_elem = TwoVarLaurent(rational(0), {1: w_mono(1, 0)})
    d = t_elem.dt0(1)
    assert d.coeffs[0] == w_mono(1, 0)


def test_dt0_of_z_is_minus_z_over_t():
    q = rational(0)
    z = TwoVarLaurent.z_elem(q)
    d = z.dt0(1)
    assert d.coeffs[-1] == TruncLaurent("w", {1: rational(-1)})
    # at a shifted point the same identity holds with z = w + q
    q2 = rational(2)
    z2 = TwoVarLaurent.z_elem(q2)
    d2 = z2.dt0(1)
    assert d2.coeffs[-1] == TruncLaurent("w", {0: rational(-2), 1: rational(-1)})


def test_dt0_of_t_at_e2():
    t_elem = TwoVarLaurent(rational(0), {1: w_mono(1, 0)})
    d = t_elem.dt0(2)
    assert d.coeffs[-1] == TruncLaurent("w", {0: Scalar(1, [Fraction(1, 2)])})


def test_commutation_invariant():
    rng = random.Random(42)
    for e in (1, 2, 3):
        for qv in (0, 1, 2):
            for _ in range(12):
                f = random_two_var(rng, rational(qv), 12, 12)
                lhs = f.dx().dt0(e)
                rhs = f.dt0(e).dx()
                ow = int(min(lhs.trunc, rhs.trunc)) - 1
                iv = min(lhs.inner_validity(), rhs.inner_validity())
                iw = 12 if iv == INF else int(iv) - 1
                lhs.agree(rhs, ow, iw)


def test_leibniz_both_derivations():
    rng = random.Random(9)
    q = rational(1)
    for _ in range(8):
        f = random_two_var(rng, q, 9, 9)
        g = random_two_var(rng, q, 9, 9)
        for d in (lambda u: u.dx(), lambda u: u.dt0(2)):
            lhs = d(f * g)
            rhs = d(f) * g + f * d(g)
            ow = int(min(lhs.trunc, rhs.trunc)) - 1
            iv = min(lhs.inner_validity(), rhs.inner_validity())
            iw = 9 if iv == INF else int(iv) - 1
            lhs.agree(rhs, ow, iw)


def test_restriction_to_parameter_field():
    # dt0(e=1) on w-constant elements is coefficient-wise d/dt
    t = t_var()
    h = (t**3 + 2 * t) / (1 + t)
    q = rational(2)
    f = TwoVarLaurent.from_k(h, q, order=10)
    lhs = f.dt0(1)
    rhs = TwoVarLaurent.from_k(h.dt(), q, order=10)
    lhs.agree(rhs, 7, 5)


def test_truncation_soundness():
    # recomputing at higher truncation never changes settled coefficients
    rng = random.Random(5)
    q = rational(1)
    hi = random_two_var(rng, q, 14, 14)
    lo = hi.truncate(8, 8)
    lo2 = (lo * lo).dt0(2)
    hi2 = (hi * hi).dt0(2)
    ow = int(lo2.trunc) - 1
    iv = lo2.inner_validity()
    iw = int(iv) - 1 if iv != INF else 8
    lo2.agree(hi2, ow, iw)


def test_constants_kernel_is_inner_constant():
    # within the window, dx kills exactly the elements of k((t))
    q = rational(1)
    const_elem = TwoVarLaurent(
        q, {n: w_mono(n + 1, 0) for n in range(-2, 6)}, 6
    )
    assert const_elem.dx().is_zero_through(4, 4)
    non_const = const_elem + TwoVarLaurent(q, {2: w_mono(1, 3)}, 6)
    assert not non_const.dx().is_zero_through(4, 4)


def test_agree_refuses_beyond_validity():
    q = rational(0)
    a = TwoVarLaurent(q, {0: w_mono(1, 0)}, 4)
    b = TwoVarLaurent(q, {0: w_mono(1, 0)}, 9)
    with pytest.raises(TruncationExhausted):
        a.agree(b, 6, 3)


def test_division_round_trip():
    rng = random.Random(31)
    q = rational(2)
    done = 0
    while done < 10:
        f = random_two_var(rng, q, 9, 9)
        if not any(c.coeffs for c in f.coeffs.values()):
            continue
        g = f * f.inv(cap=(7, 7))
        one = TwoVarLaurent.term(q, rational(1))
        ow = int(g.trunc) - 1
        iv = g.inner_validity()
        iw = 5 if iv == INF else int(iv) - 1
        g.agree(one, min(ow, 6), iw)
        done += 1

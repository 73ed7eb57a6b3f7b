"""Monic integer polynomials and their homogeneous norm forms.

A sieve instance is built from a monic polynomial f(x) = sum c_i x^i of
degree d >= 2 together with a positive integer m that bounds the lower
coefficients (|c_i| <= m for i < d) and acts as the rational-side root.
The algebraic side of a table entry is the binary form

    F(a, b) = sum_{i=0..d} c_i a^i b^(d-i) = b^d f(a/b),

so F(a, 1) = f(a) and, for l not dividing b, the l-adic valuation of
F(a, b) is controlled by the roots of f modulo powers of l.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class MonicPolynomial:
    """Coefficients c_0..c_d in ascending order, with c_d == 1."""

    coefficients: tuple[int, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(int(c) for c in self.coefficients)
        object.__setattr__(self, "coefficients", coeffs)
        if len(coeffs) < 2:
            raise ValueError("polynomial must have degree >= 1")
        if coeffs[-1] != 1:
            raise ValueError(f"leading coefficient must be 1, got {coeffs[-1]}")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1


@dataclass(frozen=True)
class SievePolynomial(MonicPolynomial):
    """A monic polynomial admissible for table building: degree >= 2 and
    every non-leading coefficient bounded by m in absolute value."""

    m: int

    def __post_init__(self) -> None:
        super().__post_init__()
        if self.degree < 2:
            raise ValueError(f"sieve polynomial must have degree >= 2, got {self.degree}")
        if self.m < 1:
            raise ValueError(f"m must be >= 1, got {self.m}")
        for i, c in enumerate(self.coefficients[:-1]):
            if abs(c) > self.m:
                raise ValueError(f"|c_{i}| = {abs(c)} exceeds m = {self.m}")


@dataclass(frozen=True)
class NormForm:
    """Homogeneous binary form F(a, b); coefficient i multiplies a^i b^(d-i)."""

    coefficients: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1


def norm_form(f: MonicPolynomial) -> NormForm:
    """Homogenize f into the binary form F with F(a, 1) = f(a)."""
    return NormForm(coefficients=f.coefficients)


def eval_poly(f: MonicPolynomial, x: int, modulus: int | None = None) -> int:
    """f(x), reduced mod modulus when one is given.  Horner scheme."""
    acc = 0
    if modulus is None:
        for c in reversed(f.coefficients):
            acc = acc * x + c
    else:
        if modulus < 1:
            raise ValueError(f"modulus must be >= 1, got {modulus}")
        x %= modulus
        for c in reversed(f.coefficients):
            acc = (acc * x + c) % modulus
    return acc


def eval_derivative(f: MonicPolynomial, x: int, modulus: int | None = None) -> int:
    """f'(x), reduced mod modulus when one is given."""
    acc = 0
    if modulus is None:
        for i in range(f.degree, 0, -1):
            acc = acc * x + i * f.coefficients[i]
    else:
        if modulus < 1:
            raise ValueError(f"modulus must be >= 1, got {modulus}")
        x %= modulus
        for i in range(f.degree, 0, -1):
            acc = (acc * x + i * f.coefficients[i]) % modulus
    return acc


def eval_norm(form: NormForm, a: int, b: int) -> int:
    """F(a, b) by Horner in a with ascending powers of b folded in."""
    d = form.degree
    acc = form.coefficients[d]
    bp = 1
    for i in range(d - 1, -1, -1):
        bp *= b
        acc = acc * a + form.coefficients[i] * bp
    return acc


def rational_bound(f: SievePolynomial, u: int) -> int:
    """Upper bound u*(m+1) on |a - b*m| over the table region."""
    if u < 1:
        raise ValueError(f"u must be >= 1, got {u}")
    return u * (f.m + 1)


def algebraic_bound(f: SievePolynomial, u: int) -> int:
    """Upper bound m*(d+1)*u^d on |F(a, b)| over the table region."""
    if u < 1:
        raise ValueError(f"u must be >= 1, got {u}")
    return f.m * (f.degree + 1) * u**f.degree

"""Shared fixtures data: the worked example over F_7 and its presentations."""
from fermat_twists.descent import FormDatum, base_field
from fermat_twists.gf import AlgebraSpec, make_field

F7 = base_field(7)
F49 = make_field(7, 2, (5, 5, 1))  # alpha^2 + 5 alpha + 5 = 0
F2401 = make_field(7, 4, (5, 1, 4, 5, 1))  # beta^4 + 5 beta^3 + 4 beta^2 + beta + 5 = 0
ALPHA = F49.root
BETA = F2401.root
EXAMPLE_NAMES = "abcdxy"

# reference text for the worked example, kept verbatim; it differs from the pinned form in two terms
REFERENCE_FORM = ("2a^3+6a^2c+a^2d+6ab^2+2abc+4abd+2ac^2+3acd+6ad^2+5b^3+2b^2c+5b^2d+5bc^2+5bcd"
                "+6bd^2+2c^3+6c^2d+cd^2+d^3+y^3+4x^2y+5y^3")
# what the trace form actually is for representatives (1/beta, 1/alpha^2)
EXAMPLE_FORM = ("2a^3+2a^2b+6a^2c+a^2d+6ab^2+2abc+4abd+2ac^2+3acd+6ad^2+5b^3+2b^2c+5b^2d+5bc^2+5bcd"
                "+6bd^2+2c^3+6c^2d+cd^2+d^3+x^3+4x^2y+5y^3")
EXAMPLE_COUNTS = [2710, 5897984, 13881660703, 33246893493864]


def example_datum(x_big=None, x_small=None) -> FormDatum:
    """L = F_2401 x F_49 over F_7, m = 3; default representatives (1/beta, 1/alpha^2)."""
    x_big = BETA.inverse() if x_big is None else x_big
    x_small = ALPHA.inverse() ** 2 if x_small is None else x_small
    return FormDatum(3, AlgebraSpec(F7, (F2401, F49)), (x_big, x_small))

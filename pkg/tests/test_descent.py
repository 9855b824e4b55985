import itertools
import random

import pytest

from fermat_twists.descent import (
    DescentError,
    FormDatum,
    HomogeneousPoly,
    WreathElement,
    aut_group_order,
    base_field,
    enumerate_classes,
    equivalent,
    exponent_vectors,
    frobenius_cocycle,
    multiplication_matrix,
    partitions,
    power_basis,
    trace_form,
    verify_isomorphy,
)
from fermat_twists.gf import AlgebraSpec, extension, make_field
from fermat_twists.oracle import count_points, linear_stabilizer_order
from helpers import ALPHA, BETA, EXAMPLE_FORM, EXAMPLE_NAMES, F7, F49, F2401, example_datum


def block_diag(*blocks):
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            out[off + i][off:off + len(row)] = row
        off += len(b)
    return out


def random_datum(rng, m, q, degrees):
    base = base_field(q)
    alg = AlgebraSpec.from_degrees(base, degrees)
    return FormDatum(m, alg, tuple(L.from_index(rng.randrange(1, L.order)) for L in alg.factors))


# --- polynomials --------------------------------------------------------


def test_exponent_vectors_count_and_order():
    vs = exponent_vectors(4, 3)
    assert len(vs) == 20
    assert vs[0] == (3, 0, 0, 0) and vs[-1] == (0, 0, 0, 3)
    assert vs == sorted(vs, reverse=True)


def test_poly_rejects_inhomogeneous_terms():
    with pytest.raises(DescentError):
        HomogeneousPoly(F7, 2, 3, {(2, 0): 1})


def test_pretty_parse_round_trip():
    P = trace_form(example_datum())
    assert HomogeneousPoly.parse(P.pretty(EXAMPLE_NAMES), F7, 3, EXAMPLE_NAMES) == P
    Q = HomogeneousPoly.parse("X1^3-X2^3+2X1X2X3", F7, 3)
    assert Q.terms == {(3, 0, 0): 1, (0, 3, 0): 6, (1, 1, 1): 2}
    with pytest.raises(DescentError):
        HomogeneousPoly.parse("X1^2+X2^3", F7, 3)


def test_json_round_trip_of_poly():
    P = trace_form(example_datum())
    assert HomogeneousPoly.from_json(P.to_json()) == P


def test_substitution_composes():
    P = HomogeneousPoly.fermat(F7, 3, 3)
    A = [[1, 2, 0], [0, 1, 3], [4, 0, 1]]
    B = [[2, 0, 1], [1, 1, 0], [0, 5, 1]]
    AB = [[sum(A[i][k] * B[k][j] for k in range(3)) % 7 for j in range(3)] for i in range(3)]
    assert P.substitute(A).substitute(B) == P.substitute(AB)


# --- trace forms --------------------------------------------------------


def test_split_trivial_datum_is_fermat():
    for n in (1, 2, 4):
        assert trace_form(FormDatum.fermat(3, n, F7)) == HomogeneousPoly.fermat(F7, n, 3)


def test_split_diagonal_coefficients_are_inverses():
    d = FormDatum(3, AlgebraSpec.split(F7, 3), (F7(1), F7(2), F7(4)))
    assert trace_form(d).pretty() == "X1^3+4X2^3+2X3^3"


def test_example_trace_form_pinned_convention():
    assert trace_form(example_datum()).pretty(EXAMPLE_NAMES) == EXAMPLE_FORM


def test_example_representatives_related_by_substitution():
    literal = trace_form(example_datum(BETA**2, ALPHA))
    M = block_diag(multiplication_matrix(BETA, power_basis(F2401, F7), F7),
                   multiplication_matrix(ALPHA, power_basis(F49, F7), F7))
    assert literal.substitute(M) == trace_form(example_datum())
    assert literal != trace_form(example_datum())


def test_custom_basis_changes_polynomial_not_class():
    d = FormDatum(3, AlgebraSpec.from_degrees(F7, [2]), (extension(F7, 2).generator,))
    L = d.algebra.factors[0]
    other = (L.one + L.root, L.root * 3)
    P, Q = trace_form(d), trace_form(d, [other])
    assert count_points(P, 1).count == count_points(Q, 1).count
    assert count_points(P, 2).count == count_points(Q, 2).count
    with pytest.raises(DescentError):
        trace_form(d, [(L.one,)])


# --- cocycles -----------------------------------------------------------


def test_example_cocycle():
    b = frobenius_cocycle(example_datum())
    assert b.format(F7) == "(2,1,1,1,4,1)·[1234][56]"
    assert b == WreathElement.from_roots(F7, 3, [2, 1, 1, 1, 4, 1], [[1, 2, 3, 4], [5, 6]])
    assert frobenius_cocycle(example_datum(BETA**2, ALPHA)) == b


def test_trivial_and_single_factor_cocycles():
    assert frobenius_cocycle(FormDatum.fermat(3, 4, F7)) == WreathElement.identity(3, 4)
    d = FormDatum(3, AlgebraSpec(F7, (F49,)), (ALPHA,))
    assert frobenius_cocycle(d).format(F7) == "(4,1)·[12]"


def test_cocycle_depends_only_on_mth_power_classes():
    rng = random.Random(5)
    for _ in range(20):
        d = random_datum(rng, 3, 7, [3, 2, 1])
        ys = [L.from_index(rng.randrange(1, L.order)) for L in d.algebra.factors]
        twisted = FormDatum(3, d.algebra, tuple(x * y**3 for x, y in zip(d.x, ys)))
        assert frobenius_cocycle(twisted) == frobenius_cocycle(d)


def test_cocycle_needs_good_q():
    with pytest.raises(DescentError):
        frobenius_cocycle(FormDatum.fermat(3, 2, base_field(5)))


def test_wreath_group_laws():
    rng = random.Random(2)

    def rand():
        s = list(range(4))
        rng.shuffle(s)
        return WreathElement(3, [rng.randrange(3) for _ in range(4)], s)

    e = WreathElement.identity(3, 4)
    for _ in range(50):
        a, b, c = rand(), rand(), rand()
        assert (a * b) * c == a * (b * c)
        assert a * e == a == e * a
        assert (a * b).sign() == a.sign() * b.sign()


# --- classification -----------------------------------------------------


def test_partitions():
    assert partitions(4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert len(partitions(6)) == 11


def test_equivalence_examples():
    d = FormDatum(3, AlgebraSpec(F7, (F49,)), (ALPHA,))
    assert equivalent(d, d)
    assert equivalent(d, FormDatum(3, d.algebra, (ALPHA * 3,)))
    for v in (2, 17, 48):
        y = F49.from_index(v)
        assert equivalent(d, FormDatum(3, d.algebra, (ALPHA * y**3,)))
    assert equivalent(example_datum(), example_datum(BETA**2, ALPHA))


def test_equivalence_is_an_equivalence_relation():
    rng = random.Random(11)
    data = [random_datum(rng, 3, 7, degs) for degs in ([2, 1], [1, 2], [1, 1, 1], [3]) for _ in range(6)]
    data = [d for d in data if d.n == 3]
    for a, b, c in itertools.product(data[:10], repeat=3):
        assert equivalent(a, a)
        assert equivalent(a, b) == equivalent(b, a)
        if equivalent(a, b) and equivalent(b, c):
            assert equivalent(a, c)


def test_equivalent_data_give_equal_counts():
    rng = random.Random(4)
    for _ in range(6):
        d = random_datum(rng, 3, 7, [2, 1])
        lam = F7.from_index(rng.randrange(1, 7))
        e = FormDatum(3, d.algebra, tuple(x * d.algebra.factors[i].embedding(F7)(lam.value) for i, x in enumerate(d.x)))
        assert equivalent(d, e)
        P, Q = trace_form(d), trace_form(e)
        for i in (1, 2):
            assert count_points(P, i).count == count_points(Q, i).count


@pytest.mark.parametrize("m,n,q,expected", [(3, 1, 7, 1), (3, 2, 7, 3), (3, 3, 7, 10), (3, 3, 13, 10)])
def test_class_counts_and_pairwise_inequivalence(m, n, q, expected):
    classes = enumerate_classes(m, n, q)
    assert len(classes) == expected
    for a, b in itertools.combinations(classes, 2):
        assert not equivalent(a, b)


def test_every_random_datum_lands_in_one_class():
    rng = random.Random(8)
    classes = enumerate_classes(3, 3, 7)
    for degs in ([3], [2, 1], [1, 1, 1]):
        for _ in range(5):
            d = random_datum(rng, 3, 7, degs)
            assert sum(equivalent(d, c) for c in classes) == 1


def test_enumerate_rejects_bad_q():
    with pytest.raises(DescentError):
        enumerate_classes(3, 2, 5)


def test_datum_json_round_trip_keeps_presentation():
    d = example_datum()
    back = FormDatum.from_json(d.to_json())
    assert back.algebra == d.algebra and back.x == d.x
    assert FormDatum.from_json(FormDatum.fermat(3, 2, F7).to_json()).x == (F7.one, F7.one)


def test_canonical_keeps_class():
    d = example_datum()
    c = d.canonical()
    assert c.residues() == d.residues() == (1, 2)
    assert equivalent(c, d)


# --- automorphisms and isomorphy -----------------------------------------


def test_aut_order_of_split_fermat():
    for n in (1, 2, 3, 4):
        assert aut_group_order(FormDatum.fermat(3, n, F7)) == 3**n * [1, 1, 2, 6, 24][n]


def test_aut_orders_against_stabilizer_search():
    cubic = FormDatum(3, AlgebraSpec.from_degrees(F7, [3]), (extension(F7, 3).one,))
    mixed = FormDatum(3, AlgebraSpec.from_degrees(F7, [2, 1]), (extension(F7, 2).one, F7.one))
    for d, expected in ((cubic, 9), (mixed, 18)):
        assert aut_group_order(d) == expected == linear_stabilizer_order(trace_form(d))


def test_aut_orders_of_two_variable_classes_against_search():
    for d in enumerate_classes(3, 2, 7):
        assert aut_group_order(d) == linear_stabilizer_order(trace_form(d))


@pytest.mark.parametrize("q", [7, 13])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_every_class_is_a_form_of_fermat(n, q):
    for d in enumerate_classes(3, n, q):
        assert verify_isomorphy(d)


def test_example_is_a_form_of_fermat():
    assert verify_isomorphy(example_datum())
    assert verify_isomorphy(example_datum(BETA**2, ALPHA))


def test_random_data_are_forms_of_fermat():
    rng = random.Random(13)
    for degs in ([2], [1, 1], [2], [1, 1]):
        assert verify_isomorphy(random_datum(rng, 3, 13, degs), seed=rng.randrange(100))


def test_degenerate_basis_fails_determinant_check():
    d = FormDatum(3, AlgebraSpec(F7, (F49,)), (ALPHA,))
    assert not verify_isomorphy(d, [(ALPHA, ALPHA * 2)])


def test_datum_validation():
    with pytest.raises(DescentError):
        FormDatum(3, AlgebraSpec(F7, (F49,)), (F49.zero,))
    with pytest.raises(DescentError):
        FormDatum(3, AlgebraSpec(F7, (F49,)), (BETA,))
    with pytest.raises(DescentError):
        FormDatum(5, AlgebraSpec.split(make_field(5), 2), (make_field(5).one,) * 2)

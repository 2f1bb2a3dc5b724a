import random
from fractions import Fraction
from math import comb

import pytest

from pfaffian_nets.fields import QQ, GF
from pfaffian_nets.ideals import (EMPTY, INCONCLUSIVE, NONEMPTY,
                                  HilbertEngine, HomogeneousIdeal,
                                  ambient_dimension, fit_hilbert_polynomial,
                                  hilbert_function, is_empty_projective,
                                  jacobian_ideal, macaulay_matrix,
                                  minors_ideal, _interpolate)
from pfaffian_nets.multipoly import MultiPoly, monomials_of_degree


def x(field, nvars, i):
    return MultiPoly.variable(field, nvars, i)


def variables(field, nvars):
    return [x(field, nvars, i) for i in range(nvars)]


def twisted_cubic_ideal(field):
    """2x2 minors of [[x0,x1,x2],[x1,x2,x3]]: the standard degree-3 curve."""
    x0, x1, x2, x3 = variables(field, 4)
    return minors_ideal([[x0, x1, x2], [x1, x2, x3]], 2)


def random_ideal(field, nvars, rng, ngens=3):
    gens = []
    for _ in range(ngens):
        d = rng.randrange(1, 4)
        monos = list(monomials_of_degree(nvars, d))
        terms = {rng.choice(monos): field.random(rng).value for _ in range(4)}
        g = MultiPoly(field, nvars, terms)
        if not g.is_zero():
            gens.append(g)
    return HomogeneousIdeal(field, nvars, gens)


# -- macaulay matrices and plain hilbert values ------------------------------

def test_macaulay_principal_ideal():
    ideal = HomogeneousIdeal(QQ, 2, [x(QQ, 2, 0)])
    m = macaulay_matrix(ideal, 2)
    assert (m.nrows, m.ncols) == (2, 3)
    assert m.rank() == 2


def test_macaulay_zero_ideal():
    ideal = HomogeneousIdeal(QQ, 3, [])
    assert macaulay_matrix(ideal, 2).nrows == 0
    assert hilbert_function(ideal, 3) == ambient_dimension(3, 3) == 10


def test_hilbert_zero_ideal_six_vars():
    ideal = HomogeneousIdeal(GF(7), 6, [])
    assert hilbert_function(ideal, 3) == comb(8, 5) == 56


def test_hilbert_irrelevant_ideal():
    ideal = HomogeneousIdeal(GF(7), 6, variables(GF(7), 6))
    for t in (1, 2, 5):
        assert hilbert_function(ideal, t) == 0


def test_inhomogeneous_generator_rejected():
    bad = x(QQ, 2, 0) + MultiPoly.constant(QQ, 2, 1)
    with pytest.raises(ValueError):
        HomogeneousIdeal(QQ, 2, [bad])


def test_zero_generators_dropped():
    ideal = HomogeneousIdeal(QQ, 2, [MultiPoly.zero(QQ, 2), x(QQ, 2, 1)])
    assert len(ideal.generators) == 1


# -- the incremental engine against direct ranks -----------------------------

@pytest.mark.parametrize("prime", [7, 32003])
def test_engine_matches_direct_macaulay(prime):
    rng = random.Random(prime)
    field = GF(prime)
    for trial in range(3):
        ideal = random_ideal(field, 4, rng)
        engine = HilbertEngine(ideal, prime=prime)
        # degree 6 in 4 vars has 84 monomials: crosses the 64-column panel
        for t in range(7):
            assert engine.hilbert_function(t) == hilbert_function(ideal, t), \
                (trial, t)


def test_engine_deterministic_and_order_insensitive():
    field = GF(32003)
    ideal = twisted_cubic_ideal(field)
    a = HilbertEngine(ideal, prime=32003)
    b = HilbertEngine(ideal, prime=32003)
    vals_fwd = [a.hilbert_function(t) for t in range(8)]
    vals_rev = [b.hilbert_function(t) for t in (7, 3, 5, 0, 1, 2, 4, 6)]
    assert vals_fwd == [vals_rev[i] for i in (3, 4, 5, 1, 6, 2, 7, 0)]


def test_engine_rejects_wrong_field():
    ideal = HomogeneousIdeal(GF(7), 2, [x(GF(7), 2, 0)])
    with pytest.raises(ValueError):
        HilbertEngine(ideal, prime=32003)


def test_graded_piece_monotonicity_and_growth():
    rng = random.Random(5)
    field = GF(32003)
    ideal = random_ideal(field, 3, rng)
    engine = HilbertEngine(ideal, prime=32003)
    prev_rank = None
    for t in range(7):
        rank = engine.ideal_rank(t)
        hf = engine.hilbert_function(t)
        if prev_rank is not None:
            assert rank >= prev_rank
            assert hf <= prev_hf * ideal.nvars
        prev_rank, prev_hf = rank, hf


def test_variable_multiples_stay_inside():
    # span(x_j * I_t) inside I_{t+1}: stacking the shifted rows adds no rank
    field = GF(101)
    ideal = twisted_cubic_ideal(field)
    t = 3
    from pfaffian_nets.matrices import ExactMatrix
    m_t1 = macaulay_matrix(ideal, t + 1)
    shifted_rows = []
    for g in ideal.generators:
        for j in range(4):
            prod = g * x(field, 4, j)
            cols = {e: i for i, e in enumerate(monomials_of_degree(4, t + 1))}
            # t + 1 = deg g + 2, so multiply by every degree-1 monomial too
            for m in monomials_of_degree(4, t + 1 - prod.homogeneous_degree()):
                row = [field.zero_value] * len(cols)
                for exps, c in prod.terms.items():
                    shifted = tuple(a + b for a, b in zip(exps, m))
                    row[cols[shifted]] = c
                shifted_rows.append(row)
    stacked = ExactMatrix(field, m_t1.rows + shifted_rows, ncols=m_t1.ncols)
    assert stacked.rank() == m_t1.rank()


# -- fitting -----------------------------------------------------------------

def test_interpolate_recovers_polynomial():
    coeffs = _interpolate([2, 3, 4], [4 * t * t - t + 1 for t in (2, 3, 4)])
    assert coeffs == (Fraction(1), Fraction(-1), Fraction(4))


def test_fit_line_in_six_vars():
    field = GF(32003)
    rng = random.Random(2)
    xs = variables(field, 6)
    gens = []
    for _ in range(4):
        form = MultiPoly.zero(field, 6)
        for xi in xs:
            form = form + xi.scale(rng.randrange(1, 32003))
        gens.append(form)
    data = fit_hilbert_polynomial(HomogeneousIdeal(field, 6, gens), 1)
    assert data.fitted == (Fraction(1), Fraction(1))  # t + 1
    assert data.scheme_degree == 1
    assert data.arithmetic_genus == 0


@pytest.mark.parametrize("field", [GF(32003), QQ])
def test_fit_twisted_cubic(field):
    data = fit_hilbert_polynomial(twisted_cubic_ideal(field), 1, cap=8)
    assert data.fitted == (Fraction(1), Fraction(3))  # 3t + 1
    assert data.scheme_degree == 3
    assert data.arithmetic_genus == 0
    assert data.stable_from == 0  # saturated ideal: on the polynomial from t=0
    assert data.value(2) == 7


def test_fit_single_quartic_binomial_identity():
    # chi of a hypersurface of degree 4 in P^5: C(t+5,5) - C(t+1,5)
    field = GF(32003)
    rng = random.Random(3)
    monos = list(monomials_of_degree(6, 4))
    q = MultiPoly(field, 6, {m: rng.randrange(1, 32003)
                             for m in rng.sample(monos, 12)})
    ideal = HomogeneousIdeal(field, 6, [q])
    engine = HilbertEngine(ideal, prime=32003)
    for t in range(4, 9):
        assert engine.hilbert_function(t) == comb(t + 5, 5) - comb(t + 1, 5)


def test_fit_failure_reports_cap():
    ideal = HomogeneousIdeal(GF(7), 3, [])
    with pytest.raises(ValueError, match="did not stabilize"):
        fit_hilbert_polynomial(ideal, 0, cap=6)


# -- projective emptiness ----------------------------------------------------

def test_empty_irrelevant():
    ideal = HomogeneousIdeal(GF(32003), 6, variables(GF(32003), 6))
    res = is_empty_projective(ideal)
    assert res.status == EMPTY and res.witness_degree == 1
    assert res.is_empty


def test_nonempty_zero_ideal_and_point():
    res = is_empty_projective(HomogeneousIdeal(GF(7), 3, []), cap=6)
    assert res.status == NONEMPTY and not res.is_empty
    point = HomogeneousIdeal(GF(7), 6, variables(GF(7), 6)[:5])
    res2 = is_empty_projective(point, cap=5)
    assert res2.status == NONEMPTY and res2.tail[-1] == 1


def test_inconclusive_surfaced_not_coerced():
    # (x0^3, x1^3) in 2 vars is empty with HF hitting 0 only at t = 5; a cap
    # of 4 sees 1, 2, 3, 2, 1 still strictly dropping
    field = GF(7)
    x0, x1 = variables(field, 2)
    ideal = HomogeneousIdeal(field, 2, [x0 ** 3, x1 ** 3])
    res = is_empty_projective(ideal, cap=4)
    assert res.status == INCONCLUSIVE
    assert res.tail == [1, 2, 3, 2, 1]
    with pytest.raises(ValueError):
        res.is_empty
    assert is_empty_projective(ideal, cap=6).status == EMPTY


def test_curve_judged_nonempty_at_cap():
    res = is_empty_projective(twisted_cubic_ideal(GF(7)), cap=5)
    assert res.status == NONEMPTY and res.witness_degree == 5


def test_emptiness_stable_under_redundant_generators():
    field = GF(101)
    base = twisted_cubic_ideal(field)
    padded = HomogeneousIdeal(field, 4, base.generators +
                              [g * x(field, 4, j) for g in base.generators
                               for j in (0, 2)])
    a = is_empty_projective(base, cap=8)
    b = is_empty_projective(padded, cap=8)
    assert a.status == b.status == NONEMPTY


# -- jacobian and minors -----------------------------------------------------

def test_jacobian_smooth_conic():
    x0, x1, x2 = variables(QQ, 3)
    conic = x0 * x2 - x1 * x1
    jac = jacobian_ideal(HomogeneousIdeal(QQ, 3, [conic]))
    assert len(jac.generators) == 4
    assert is_empty_projective(jac).status == EMPTY


def test_jacobian_cone_singular_at_a_point():
    x0, x1, x2 = variables(QQ, 3)
    jac = jacobian_ideal(HomogeneousIdeal(QQ, 3, [x0 * x1]))
    res = is_empty_projective(jac)
    assert res.status == NONEMPTY
    engine = HilbertEngine(jac)
    assert [engine.hilbert_function(t) for t in (2, 3, 4)] == [1, 1, 1]


def test_jacobian_codim_required_for_multiple_generators():
    x0, x1, x2 = variables(QQ, 3)
    ideal = HomogeneousIdeal(QQ, 3, [x0 * x1, x0 * x2])
    with pytest.raises(ValueError):
        jacobian_ideal(ideal)
    jac = jacobian_ideal(ideal, codim=2)
    assert len(jac.generators) > 2


def test_minors_two_by_two():
    x0, x1, x2, x3 = variables(QQ, 4)
    ideal = minors_ideal([[x0, x1], [x2, x3]], 2)
    assert len(ideal.generators) == 1
    assert ideal.generators[0] == x0 * x3 - x1 * x2


def test_minors_size_one_gives_entries():
    x0, x1, x2, x3 = variables(QQ, 4)
    ideal = minors_ideal([[x0, x1], [x2, x3]], 1)
    assert len(ideal.generators) == 4


def test_minors_of_rank_deficient_grid():
    x0, x1 = variables(QQ, 2)[:2]
    # rank-1 grid: all 2x2 minors vanish identically
    grid = [[x0, x1], [x0, x1]]
    ideal = minors_ideal(grid, 2)
    assert ideal.generators == []

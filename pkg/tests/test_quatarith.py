"""Tests for quaternion-algebra arithmetic: the multiplication table, the
reduced norm, the norm-one enumeration, the exact matrix realization with
its indefinite-unitary check, the stabilized Heisenberg lattice, and the
deformation-parameter compatibility solver."""

import json
import math
import random
from fractions import Fraction

import pytest

from oneloop.exact import QI, Rad, RadC
from oneloop.heis import HeisPoint, lattice_contains, lattice_coordinates
from oneloop.quatarith import (
    CompatibleDeformation,
    QuatInt,
    QuatParams,
    c_compatible,
    embed_det,
    embed_matrix,
    enumerate_norm_one,
    gamma2_basis,
    is_nonresidue,
    norm_one_csv,
    preserves_gamma2,
    quat_conj,
    quat_mul,
    reduced_norm,
    su11_check,
)

P23 = QuatParams(2, 3)
P37 = QuatParams(3, 7)
P25 = QuatParams(2, 5)


def quat(q0, q1, q2, q3, params=P23):
    return QuatInt(q0, q1, q2, q3, params)


def random_quat(rng, params):
    return QuatInt(*(rng.randrange(-5, 6) for _ in range(4)), params)


def mat_mul2(x, y):
    return tuple(
        tuple(x[j][0] * y[0][k] + x[j][1] * y[1][k] for k in range(2))
        for j in range(2)
    )


def rad(params, r1=0, ra=0, rb=0, rab=0):
    return Rad(params.a, params.b, r1, ra, rb, rab)


class TestParams:
    def test_positive_integers_required(self):
        with pytest.raises(ValueError):
            QuatParams(0, 3)
        with pytest.raises(ValueError):
            QuatParams(2, -1)

    def test_integer_coordinates_required(self):
        with pytest.raises(ValueError):
            QuatInt(1, Fraction(1, 2), 0, 0, P23)


class TestMultiplicationTable:
    def test_defining_relations(self):
        one = quat(1, 0, 0, 0)
        i = quat(0, 1, 0, 0)
        j = quat(0, 0, 1, 0)
        k = quat(0, 0, 0, 1)
        assert quat_mul(i, i).coords() == (2, 0, 0, 0)  # I^2 = a
        assert quat_mul(j, j).coords() == (3, 0, 0, 0)  # J^2 = b
        assert quat_mul(i, j).coords() == (0, 0, 0, 1)  # IJ = K
        assert quat_mul(j, i).coords() == (0, 0, 0, -1)  # JI = -K
        assert quat_mul(one, k).coords() == (0, 0, 0, 1)

    def test_derived_relations(self):
        i = quat(0, 1, 0, 0)
        j = quat(0, 0, 1, 0)
        k = quat(0, 0, 0, 1)
        a, b = P23.a, P23.b
        assert quat_mul(k, k).coords() == (-a * b, 0, 0, 0)
        assert quat_mul(i, k).coords() == (0, 0, a, 0)
        assert quat_mul(k, i).coords() == (0, 0, -a, 0)
        assert quat_mul(j, k).coords() == (0, -b, 0, 0)
        assert quat_mul(k, j).coords() == (0, b, 0, 0)

    @pytest.mark.parametrize("params", [P23, P37])
    def test_associativity_on_seeded_triples(self, params):
        rng = random.Random(41)
        for _ in range(12):
            x, y, z = (random_quat(rng, params) for _ in range(3))
            assert quat_mul(quat_mul(x, y), z) == quat_mul(x, quat_mul(y, z))

    def test_conjugation_recovers_the_norm(self):
        rng = random.Random(42)
        for _ in range(8):
            q = random_quat(rng, P23)
            prod = quat_mul(q, quat_conj(q))
            assert prod.coords() == (reduced_norm(q), 0, 0, 0)

    def test_params_mismatch_rejected(self):
        with pytest.raises(ValueError, match="different"):
            quat_mul(quat(1, 0, 0, 0, P23), quat(1, 0, 0, 0, P37))

    def test_operator_sugar(self):
        x = quat(1, 2, 0, -1)
        y = quat(0, 1, 1, 0)
        assert (x + y).coords() == (1, 3, 1, -1)
        assert (x - y).coords() == (1, 1, -1, -1)
        assert (-x).coords() == (-1, -2, 0, 1)
        assert (x * y) == quat_mul(x, y)


class TestReducedNorm:
    def test_basis_values(self):
        assert reduced_norm(quat(1, 0, 0, 0)) == 1
        assert reduced_norm(quat(0, 1, 0, 0)) == -2
        assert reduced_norm(quat(0, 0, 1, 0)) == -3
        assert reduced_norm(quat(0, 0, 0, 1)) == 6

    def test_norm_one_example(self):
        assert reduced_norm(quat(3, 2, 0, 0)) == 1

    @pytest.mark.parametrize("params", [P23, P37])
    def test_multiplicative_on_seeded_pairs(self, params):
        rng = random.Random(43)
        for _ in range(12):
            x = random_quat(rng, params)
            y = random_quat(rng, params)
            assert reduced_norm(quat_mul(x, y)) == reduced_norm(x) * reduced_norm(y)

    def test_no_zero_divisors_spot_check(self):
        # In the non-residue regime the algebra is a division algebra; we
        # spot-check that seeded nonzero pairs never multiply to zero.
        rng = random.Random(44)
        zero = (0, 0, 0, 0)
        for params in (P23, P37):
            assert is_nonresidue(params.a, params.b)
            for _ in range(20):
                x = random_quat(rng, params)
                y = random_quat(rng, params)
                if x.coords() == zero or y.coords() == zero:
                    continue
                assert quat_mul(x, y).coords() != zero


class TestIsNonresidue:
    def test_pinned_examples(self):
        assert is_nonresidue(2, 3) is True
        assert is_nonresidue(4, 7) is False
        assert is_nonresidue(3, 7) is True

    def test_full_residue_classes_mod_seven(self):
        # Squares mod 7 are {0, 1, 2, 4}.
        for a in (1, 2, 4, 7, 8):
            assert not is_nonresidue(a, 7)
        for a in (3, 5, 6, 10):
            assert is_nonresidue(a, 7)

    def test_composite_modulus_rejected(self):
        with pytest.raises(ValueError, match="not a prime"):
            is_nonresidue(2, 6)
        with pytest.raises(ValueError, match="not a prime"):
            is_nonresidue(2, 1)


class TestEnumerateNormOne:
    def test_contains_units(self):
        found = {q.coords() for q in enumerate_norm_one(P23, 1)}
        assert (1, 0, 0, 0) in found
        assert (-1, 0, 0, 0) in found

    def test_contains_search_hits(self):
        found = {q.coords() for q in enumerate_norm_one(P23, 3)}
        for coords in ((3, 2, 0, 0), (3, -2, 0, 0), (-3, 2, 0, 0), (-3, -2, 0, 0)):
            assert coords in found

    def test_every_result_has_norm_one(self):
        for q in enumerate_norm_one(P37, 2):
            assert reduced_norm(q) == 1

    def test_deterministic_lexicographic_order(self):
        results = [q.coords() for q in enumerate_norm_one(P23, 2)]
        assert results == sorted(results)
        assert results == [q.coords() for q in enumerate_norm_one(P23, 2)]

    def test_products_stay_norm_one(self):
        elements = enumerate_norm_one(P23, 2)
        rng = random.Random(45)
        for _ in range(15):
            x = rng.choice(elements)
            y = rng.choice(elements)
            assert reduced_norm(quat_mul(x, y)) == 1

    def test_bound_validation(self):
        with pytest.raises(ValueError):
            enumerate_norm_one(P23, 0)


class TestEmbedMatrix:
    def test_one_maps_to_identity(self):
        m = embed_matrix(quat(1, 0, 0, 0))
        assert m[0][0] == RadC(rad(P23, r1=1))
        assert m[1][1] == RadC(rad(P23, r1=1))
        assert m[0][1].is_zero() and m[1][0].is_zero()

    def test_generator_images(self):
        i_img = embed_matrix(quat(0, 1, 0, 0))
        assert i_img[0][1] == RadC(rad(P23), rad(P23, ra=1))
        assert i_img[1][0] == RadC(rad(P23), rad(P23, ra=-1))
        assert i_img[0][0].is_zero() and i_img[1][1].is_zero()

        j_img = embed_matrix(quat(0, 0, 1, 0))
        assert j_img[0][1] == RadC(rad(P23, rb=1))
        assert j_img[1][0] == RadC(rad(P23, rb=1))
        assert j_img[0][0].is_zero() and j_img[1][1].is_zero()

        k_img = embed_matrix(quat(0, 0, 0, 1))
        assert k_img[0][0] == RadC(rad(P23), rad(P23, rab=1))
        assert k_img[1][1] == RadC(rad(P23), rad(P23, rab=-1))
        assert k_img[0][1].is_zero() and k_img[1][0].is_zero()

    def test_determinant_equals_reduced_norm(self):
        rng = random.Random(46)
        for params in (P23, P37):
            for _ in range(10):
                q = random_quat(rng, params)
                det = embed_det(embed_matrix(q))
                assert det == RadC(rad(params, r1=reduced_norm(q)))

    def test_ring_homomorphism_on_seeded_pairs(self):
        rng = random.Random(47)
        for params in (P23, P25):
            for _ in range(10):
                x = random_quat(rng, params)
                y = random_quat(rng, params)
                lhs = embed_matrix(quat_mul(x, y))
                rhs = mat_mul2(embed_matrix(x), embed_matrix(y))
                for j in range(2):
                    for k in range(2):
                        assert lhs[j][k] == rhs[j][k]

    def test_additive_on_seeded_pairs(self):
        rng = random.Random(48)
        for _ in range(6):
            x = random_quat(rng, P23)
            y = random_quat(rng, P23)
            lhs = embed_matrix(x + y)
            rhs_x = embed_matrix(x)
            rhs_y = embed_matrix(y)
            for j in range(2):
                for k in range(2):
                    assert lhs[j][k] == rhs_x[j][k] + rhs_y[j][k]


class TestSu11Check:
    def test_unit_passes(self):
        assert su11_check(quat(1, 0, 0, 0)) is True

    def test_search_hit_passes(self):
        assert su11_check(quat(3, 2, 0, 0)) is True

    def test_norm_precondition(self):
        with pytest.raises(ValueError, match="norm-one"):
            su11_check(quat(0, 1, 0, 0))

    @pytest.mark.parametrize("params", [P23, P37, P25])
    def test_exhaustive_over_enumeration(self, params):
        elements = enumerate_norm_one(params, 5)
        assert elements, "enumeration should not be empty"
        assert all(su11_check(q) for q in elements)


class TestGamma2Lattice:
    def test_basis_and_center_scale(self):
        lat = gamma2_basis(P23)
        assert lat.n == 2
        assert lat.labels == ("e1", "I*e1", "J*e1", "K*e1")
        assert lat.r == rad(P23, rab=1)
        assert lat.center_generator() == rad(P23, rab=Fraction(1, 2))

    def test_basis_vectors_are_the_generator_orbit(self):
        # Applying the matrix realization of each basis quaternion to
        # e_1 = (1, 0) must reproduce the corresponding lattice basis vector.
        lat = gamma2_basis(P23)
        e1 = (RadC(rad(P23, r1=1)), RadC(rad(P23)))
        units = (
            quat(1, 0, 0, 0),
            quat(0, 1, 0, 0),
            quat(0, 0, 1, 0),
            quat(0, 0, 0, 1),
        )
        for unit, expected in zip(units, lat.basis):
            m = embed_matrix(unit)
            image = tuple(m[j][0] * e1[0] + m[j][1] * e1[1] for j in range(2))
            assert image[0] == expected[0]
            assert image[1] == expected[1]

    def test_omega_table(self):
        lat = gamma2_basis(P23)
        table = lat.omega_table()
        root_ab = rad(P23, rab=1)
        # Signed values under the documented orientation (omega(e1, i e1) > 0):
        # the two nonzero pairs carry opposite signs, and their magnitudes
        # agree with the center scale sqrt(ab).
        assert table[0][3] == root_ab
        assert table[1][2] == -root_ab
        nonzero = {(0, 3), (3, 0), (1, 2), (2, 1)}
        for i in range(4):
            for j in range(4):
                if (i, j) not in nonzero:
                    assert table[i][j].is_zero()

    def test_omega_magnitudes_up_to_sign(self):
        # Convention-independent content: both nonzero omega values square
        # to a*b.
        lat = gamma2_basis(P23)
        table = lat.omega_table()
        for val in (table[0][3], table[1][2]):
            assert val * val == rad(P23, r1=P23.a * P23.b)

    def test_serialization(self):
        data = json.loads(gamma2_basis(P23).serialize())
        assert data["radical"] == {"kind": "sqrt_ab", "a": 2, "b": 3}
        assert data["r"] == ["0", "0", "0", "1"]
        assert data["basis"][0][0] == {
            "re": ["1", "0", "0", "0"],
            "im": ["0", "0", "0", "0"],
        }


class TestPreservesGamma2:
    def test_identity_preserves(self):
        assert preserves_gamma2(quat(1, 0, 0, 0)) is True

    def test_image_coordinates_match_quaternion_multiplication(self):
        params = P23
        q = quat(3, 2, 0, 0)
        matrix = embed_matrix(q)
        lat = gamma2_basis(params)
        units = (
            quat(1, 0, 0, 0),
            quat(0, 1, 0, 0),
            quat(0, 0, 1, 0),
            quat(0, 0, 0, 1),
        )
        expected_coords = [quat_mul(q, u).coords() for u in units]
        # Pinned examples: the images of e1 and I*e1.
        assert expected_coords[0] == (3, 2, 0, 0)
        assert expected_coords[1] == (4, 3, 0, 0)
        for vec, expected in zip(lat.basis, expected_coords):
            image = tuple(
                matrix[j][0] * vec[0] + matrix[j][1] * vec[1] for j in range(2)
            )
            found = lattice_coordinates(lat, HeisPoint(image, Fraction(0)))
            assert found is not None
            assert found.coords == expected
            assert found.center == 0

    def test_matrix_route_agrees_with_quaternion_route(self):
        # Dual route: exact lattice solve vs. direct order multiplication.
        rng = random.Random(49)
        units = [
            (1, 0, 0, 0),
            (0, 1, 0, 0),
            (0, 0, 1, 0),
            (0, 0, 0, 1),
        ]
        for params in (P23, P25):
            lat = gamma2_basis(params)
            elements = enumerate_norm_one(params, 3)
            for q in rng.sample(elements, min(6, len(elements))):
                matrix = embed_matrix(q)
                for coords, vec in zip(units, lat.basis):
                    u = QuatInt(*coords, params)
                    image = tuple(
                        matrix[j][0] * vec[0] + matrix[j][1] * vec[1]
                        for j in range(2)
                    )
                    found = lattice_coordinates(lat, HeisPoint(image, Fraction(0)))
                    assert found is not None
                    assert found.coords == quat_mul(q, u).coords()

    def test_norm_precondition(self):
        with pytest.raises(ValueError, match="norm-one"):
            preserves_gamma2(quat(0, 0, 1, 0))

    @pytest.mark.parametrize("params", [P23, P37, P25])
    def test_exhaustive_over_enumeration(self, params):
        elements = enumerate_norm_one(params, 5)
        assert all(preserves_gamma2(q) for q in elements)


class TestCCompatible:
    def test_zero_is_undeformed(self):
        result = c_compatible(P23, 0)
        assert result.c == 0.0
        assert result.period == 0.0
        assert result.four_pi_c.is_zero()

    def test_pinned_example(self):
        result = c_compatible(P23, 1)
        assert isinstance(result, CompatibleDeformation)
        assert result.c == pytest.approx(math.sqrt(6) / (8 * math.pi), rel=1e-14)
        assert (result.lam, result.a, result.b) == (Fraction(1), 2, 3)
        assert result.four_pi_c == rad(P23, rab=Fraction(1, 2))

    def test_period_is_four_pi_c_at_n_two(self):
        result = c_compatible(P23, Fraction(2, 3))
        assert result.period == pytest.approx(4 * math.pi * result.c, rel=1e-12)
        assert result.four_pi_c == rad(P23, rab=Fraction(1, 3))

    def test_negative_rejected(self):
        with pytest.raises(ValueError, match="nonnegative"):
            c_compatible(P23, -1)

    def test_rational_input_accepted_as_string(self):
        result = c_compatible(P25, "3/2")
        assert result.lam == Fraction(3, 2)
        assert result.four_pi_c == rad(P25, rab=Fraction(3, 4))


class TestCsvExport:
    def test_header_and_shape(self):
        text = norm_one_csv(P23, 2)
        lines = text.strip().split("\n")
        assert lines[0] == "q0,q1,q2,q3,norm,su11_ok,preserves_gamma2"
        assert len(lines) - 1 == len(enumerate_norm_one(P23, 2))

    def test_rows_report_verified_flags(self):
        text = norm_one_csv(P23, 2)
        for line in text.strip().split("\n")[1:]:
            fields = line.split(",")
            assert len(fields) == 7
            assert fields[4] == "1"
            assert fields[5] == "true"
            assert fields[6] == "true"
        # Fields round-trip to the enumeration entries, in order.
        coords = [
            tuple(int(f) for f in line.split(",")[:4])
            for line in text.strip().split("\n")[1:]
        ]
        assert coords == [q.coords() for q in enumerate_norm_one(P23, 2)]

from __future__ import annotations

from fractions import Fraction

import pytest

from weightmagic import (ALMOST_PRIMITIVE, PLAIN, PRIMITIVE, MagicSquare,
                         ParseError, SingularMatrixError, ValidationError,
                         WeightSystem, classify, format_monomial_matrix,
                         inverse_data, parse_matrix, parse_monomial_matrix,
                         parse_weight_system, recover_partner, transpose,
                         validate)
from weightmagic.linalg import mat_mul

W42 = parse_weight_system("6,14,21;42")
W10 = parse_weight_system("1,3,5;10")
W30 = parse_weight_system("4,10,13;30")

DIAGONAL_42 = ((7, 0, 0), (0, 3, 0), (0, 0, 2))
COUPLED_10_30 = ((5, 0, 1), (1, 3, 0), (0, 0, 2))


class TestValidate:
    def test_coupled_pair(self):
        square = validate(COUPLED_10_30, W10, W30)
        assert square.entries == COUPLED_10_30

    def test_self_coupled_diagonal(self):
        square = validate(DIAGONAL_42, W42, W42)
        assert square.n == 3

    def test_row_relation_failure_names_the_row(self):
        w = parse_weight_system("2,3;6")
        with pytest.raises(ValidationError, match="row 2.*sum 5.*degree 6"):
            validate(((3, 0), (1, 1)), w, w)

    def test_column_relation_failure(self):
        with pytest.raises(ValidationError, match="column 1"):
            validate(DIAGONAL_42, W42, parse_weight_system("1,14,21;42"))

    def test_negative_entry(self):
        w = parse_weight_system("1,1;2")
        with pytest.raises(ValidationError):
            validate(((3, -1), (1, 1)), w, w)

    def test_dimension_mismatch(self):
        with pytest.raises(ValidationError):
            validate(((3, 0), (0, 2)), W42, W42)

    def test_non_square(self):
        w = parse_weight_system("1,1;2")
        with pytest.raises(ValidationError):
            validate(((1, 1), (1, 1), (2, 0)), w, w)


class TestClassify:
    def test_almost_primitive_strong(self):
        report = classify(validate(COUPLED_10_30, W10, W30))
        assert report.determinant == 30
        assert abs(report.determinant) == 10 * 3 == 30 * 1
        assert report.classification == ALMOST_PRIMITIVE
        assert report.strong

    def test_primitive_strong(self):
        report = classify(validate(DIAGONAL_42, W42, W42))
        assert report.determinant == 42
        assert report.classification == PRIMITIVE
        assert report.strong

    def test_primitive_not_strong(self):
        square = validate(((3, 0, 0), (0, 0, 2), (1, 2, 1)),
                          parse_weight_system("4,1,6;12"),
                          parse_weight_system("2,3,6;12"))
        report = classify(square)
        assert report.classification == PRIMITIVE
        assert not report.strong
        assert report.row_has_zero == (True, True, False)

    def test_plain(self):
        w = parse_weight_system("1,1;2")
        report = classify(validate(((2, 0), (0, 2)), w, w))
        assert report.determinant == 4
        assert report.classification == PLAIN

    def test_degenerate_virtual_weight(self):
        # det 0 meets the almost-primitive equalities when a0 = b0 = 0
        w = parse_weight_system("1,1;2")
        report = classify(validate(((1, 1), (1, 1)), w, w))
        assert report.determinant == 0
        assert report.classification == ALMOST_PRIMITIVE

    def test_primitive_implies_matching_degrees(self, catalog):
        for entry in catalog:
            square = entry.square()
            if classify(square).classification == PRIMITIVE:
                assert square.wa.degree == square.wb.degree
                assert square.wa.a0 == square.wb.a0


class TestInverseData:
    def test_diagonal_square_recovery(self):
        data = inverse_data(validate(DIAGONAL_42, W42, W42))
        assert data.b == ((6, -1, -1), (-1, 2, -1), (-1, -1, 1))
        n = 3
        row_sums = [sum(data.a[i][j] for j in range(n)) for i in range(n)]
        col_sums = [sum(data.a[i][j] for i in range(n)) for j in range(n)]
        assert row_sums == [6, 14, 21]  # a_i / a0 with a0 = 1
        assert col_sums == [6, 14, 21]
        assert data.recovered_wa == W42
        assert data.recovered_wb == W42

    def test_coupled_pair_recovery(self):
        data = inverse_data(validate(COUPLED_10_30, W10, W30))
        assert data.recovered_wa == W10
        assert data.recovered_wb == W30

    def test_singular_difference(self):
        square = validate(((2, 2), (2, 2)), parse_weight_system("1,2;6"),
                          parse_weight_system("1,1;4"))
        with pytest.raises(SingularMatrixError):
            inverse_data(square)

    def test_determinant_ratios_are_integers(self, catalog):
        from weightmagic.linalg import determinant
        for entry in catalog:
            square = entry.square()
            det_c = determinant(square.entries)
            det_b = determinant(tuple(tuple(c - 1 for c in row)
                                      for row in square.entries))
            h, k = square.wa.degree, square.wb.degree
            assert det_c * square.wa.a0 == det_b * h
            assert det_c * square.wb.a0 == det_b * k
            assert det_c % h == 0 and det_c % k == 0


class TestRecoverPartner:
    def test_self_coupled(self):
        square = recover_partner(DIAGONAL_42, W42)
        assert square.wb == W42

    def test_coupled_pair(self):
        rows = parse_monomial_matrix("x^5y, y^3, xz^2", 3)
        square = recover_partner(rows, W30)
        assert square.wb == W10

    def test_preserves_column_order(self):
        square = recover_partner(((3, 0, 1), (0, 0, 2), (0, 2, 1)),
                                 parse_weight_system("2,3,6;12"))
        assert str(square.wb) == "4,1,6;12"  # column order, not sorted

    def test_singular(self):
        with pytest.raises(SingularMatrixError):
            recover_partner(((1, 1), (1, 1)), parse_weight_system("1,1;2"))


class TestTranspose:
    def test_swaps_weights_and_entries(self):
        wa = parse_weight_system("4,10,15;30")
        wb = parse_weight_system("6,8,15;30")
        square = validate(((5, 1, 0), (0, 3, 0), (0, 0, 2)), wa, wb)
        flipped = transpose(square)
        assert flipped.entries == ((5, 0, 0), (1, 3, 0), (0, 0, 2))
        assert flipped.wa == wb and flipped.wb == wa
        assert flipped.monomials() == "x^5, xy^3, z^2"

    def test_involution(self):
        square = validate(COUPLED_10_30, W10, W30)
        assert transpose(transpose(square)) == square

    def test_symmetric_diagonal(self):
        square = validate(DIAGONAL_42, W42, W42)
        assert transpose(square).entries == square.entries

    def test_preserves_classification(self, catalog):
        for entry in catalog:
            square = entry.square()
            assert (classify(transpose(square)).classification
                    == classify(square).classification)


class TestMonomialNotation:
    def test_parse_basic(self):
        assert parse_monomial_matrix("x^5z, xy^3, z^2", 3) == (
            (5, 0, 1), (1, 3, 0), (0, 0, 2))

    def test_parse_braced_exponent(self):
        assert parse_monomial_matrix("x^{21}z, y^3, z^2", 3) == (
            (21, 0, 1), (0, 3, 0), (0, 0, 2))

    def test_parse_numbered_variables(self):
        assert parse_monomial_matrix("x1^3x3, x2^2, x3^4", 3) == (
            (3, 0, 1), (0, 2, 0), (0, 0, 4))

    def test_fourth_variable(self):
        assert parse_monomial_matrix("t^2, z^3, y^4, x^5", 4) == (
            (0, 0, 0, 2), (0, 0, 3, 0), (0, 4, 0, 0), (5, 0, 0, 0))

    def test_mixed_styles_rejected(self):
        with pytest.raises(ParseError):
            parse_monomial_matrix("x^2x2, y^3, z^4", 3)

    def test_duplicate_variable_rejected(self):
        with pytest.raises(ParseError):
            parse_monomial_matrix("x^2x, y, z", 3)

    def test_wrong_monomial_count(self):
        with pytest.raises(ParseError):
            parse_monomial_matrix("x^2, y^2", 3)

    def test_garbage(self):
        with pytest.raises(ParseError):
            parse_monomial_matrix("x^2, 5q, z", 3)

    def test_format_plain_and_braces(self):
        assert format_monomial_matrix(((21, 0, 1), (0, 3, 0), (1, 0, 10))) == \
            "x^{21}z, y^3, xz^{10}"
        assert format_monomial_matrix(((7, 0, 0), (0, 3, 0), (0, 0, 2))) == \
            "x^7, y^3, z^2"

    def test_round_trip(self, catalog):
        for entry in catalog:
            rows = parse_monomial_matrix(entry.monomials, entry.weights.n)
            assert parse_monomial_matrix(
                format_monomial_matrix(rows), entry.weights.n) == rows


class TestParseMatrix:
    def test_integer_rows(self):
        assert parse_matrix("5,0,1;1,3,0;0,0,2", 3) == COUPLED_10_30

    def test_monomial_dispatch(self):
        assert parse_matrix("x^5z, xy^3, z^2", 3) == COUPLED_10_30

    def test_bad_integer_rows(self):
        with pytest.raises(ParseError):
            parse_matrix("5,0;1,3", 3)

from fractions import Fraction
from unittest import TestCase

from zkbundles.linalg.exact import (
    DimensionMismatchError,
    SparseMatrix,
    echelon_rows,
    nullspace_basis,
    pivot_columns,
    projected_kernel_dim,
    quotient_dim,
    rank,
    to_fraction,
)


class ExactLinalgTests(TestCase):
    def test_rank(self):
        cases = [
            ([[1, 2], [2, 4]], 1),
            ([[1, 0], [0, 1]], 2),
            ([[0, 0], [0, 0]], 0),
            ([[Fraction(1, 3), 1, 0], [1, 3, 0], [0, 0, 5]], 2),
        ]
        for rows, expected in cases:
            with self.subTest(rows=rows):
                self.assertEqual(expected, rank(SparseMatrix.from_dense(rows)))

    def test_nullspace_vectors_are_in_the_kernel(self):
        m = SparseMatrix.from_dense([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
        kernel = nullspace_basis(m)
        self.assertEqual(1, len(kernel))
        for row in [[1, 2, 3], [2, 4, 6], [1, 0, 1]]:
            self.assertEqual(0, sum(a * b for a, b in zip(row, kernel[0])))

    def test_nullspace_of_empty_matrix(self):
        self.assertEqual(
            [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))],
            nullspace_basis(SparseMatrix(0, 2)),
        )
        self.assertEqual([], nullspace_basis(SparseMatrix(3, 0)))

    def test_quotient_dim(self):
        self.assertEqual(1, quotient_dim(3, [[1, 0, 0], [0, 1, 0], [1, 1, 0]]))
        self.assertEqual(4, quotient_dim(4, []))
        with self.assertRaises(DimensionMismatchError):
            quotient_dim(2, [[1, 2, 3]])

    def test_projected_kernel_dim(self):
        # ker C = span{(1, 1, 0), (0, 0, 1)}; projecting onto the first coordinate leaves 1
        constraints = SparseMatrix.from_dense([[1, -1, 0]])
        projection = SparseMatrix.from_dense([[1, 0, 0]])
        self.assertEqual(1, projected_kernel_dim(constraints, projection))
        self.assertEqual(0, projected_kernel_dim(constraints, SparseMatrix.from_dense([[1, -1, 0]])))

    def test_pivot_columns(self):
        m = SparseMatrix.from_columns(2, [{0: 1}, {0: 2}, {1: 1}, {0: 1, 1: 1}])
        self.assertEqual([0, 2], pivot_columns(m))

    def test_echelon_rows(self):
        rows = echelon_rows(SparseMatrix.from_dense([[0, 2, 4], [0, 1, 3]]))
        self.assertEqual([1, 2], [pivot for pivot, _ in rows])
        self.assertEqual({1: Fraction(1)}, rows[0][1])

    def test_stack_requires_matching_columns(self):
        with self.assertRaises(DimensionMismatchError):
            SparseMatrix(1, 2).stack(SparseMatrix(1, 3))

    def test_entries_outside_shape_are_rejected(self):
        with self.assertRaises(DimensionMismatchError):
            SparseMatrix(1, 1, {(1, 0): Fraction(1)})

    def test_only_exact_values(self):
        self.assertEqual(Fraction(3), to_fraction(3))
        with self.assertRaises(TypeError):
            to_fraction(0.5)  # type: ignore[arg-type]
        with self.assertRaises(TypeError):
            to_fraction(True)

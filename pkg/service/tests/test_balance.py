from itertools import product
from unittest import TestCase

from zkbundles.errors import UsageError
from zkbundles.moduli.balance import AdmissibleSequence, balance, validate_admissible


class BalanceTests(TestCase):
    def test_known_sequences(self):
        seq = balance(2, [3, -3])
        self.assertEqual([[3, -3], [3, -1], [3, 1], [3, 3]], seq.rows)
        self.assertEqual(4, seq.t)
        self.assertEqual([0, 2, 4, 6], [sum(row) for row in seq.rows])
        self.assertEqual(7, balance(1, [2, 0, -2]).t)
        self.assertEqual([2, 2, 2], balance(1, [2, 0, -2]).rows[-1])
        self.assertEqual(1, balance(5, [1, 0]).t)

    def test_rows_annotated_with_formal_splitting(self):
        seq = balance(2, [3, -3])
        self.assertEqual([False, False, True, True], seq.splits_formally)

    def test_invalid_types(self):
        for k, splitting_type in [(2, [3]), (2, [-3, 3]), (0, [1, 0])]:
            with self.subTest(k=k, splitting_type=splitting_type):
                with self.assertRaises(UsageError):
                    balance(k, splitting_type)

    def test_output_is_admissible(self):
        for k in range(1, 6):
            for r in (2, 3):
                for entries in product(range(-6, 7, 3), repeat=r):
                    splitting_type = sorted(entries, reverse=True)
                    with self.subTest(k=k, splitting_type=splitting_type):
                        seq = balance(k, splitting_type)
                        self.assertEqual([], validate_admissible(seq, k, splitting_type))

    def test_violations(self):
        bad_sum = AdmissibleSequence(k=2, rows=[[3, -3], [3, 0]])
        self.assertTrue(any(v.startswith("(ii)") for v in validate_admissible(bad_sum, 2)))
        unbalanced = AdmissibleSequence(k=2, rows=[[3, -3]])
        self.assertTrue(any(v.startswith("(iii)") for v in validate_admissible(unbalanced, 2)))
        wrong_start = AdmissibleSequence(k=2, rows=[[1, 1]])
        self.assertTrue(any(v.startswith("(i)") for v in validate_admissible(wrong_start, 2, [2, 0])))
        self.assertEqual([], validate_admissible(AdmissibleSequence(k=5, rows=[[1, 0]]), 5))
        self.assertEqual(["empty sequence"], validate_admissible(AdmissibleSequence(k=2, rows=[]), 2))

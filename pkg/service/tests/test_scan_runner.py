from concurrent.futures import ThreadPoolExecutor
from unittest import TestCase
from unittest.mock import patch


class ScanRunnerTests(TestCase):
    def test_runs_in_process_in_order(self):
        from zkbundles.moduli.scan_runner import ScanRunner

        invocations = []

        def handler(point: int) -> int:
            invocations.append(point)
            return point * 2

        runner = ScanRunner(handler, 1)
        self.assertEqual([2, 4, 6], runner.run([1, 2, 3]))
        self.assertEqual([1, 2, 3], invocations)

    @patch("zkbundles.moduli.scan_runner.ProcessPoolExecutor", ThreadPoolExecutor)
    def test_pool_keeps_input_order(self):
        from zkbundles.moduli.scan_runner import ScanRunner

        runner = ScanRunner(abs, worker_count=3)
        self.assertEqual(3, runner.worker_count)
        self.assertEqual([5, 1, 4, 2, 3], runner.run([-5, 1, -4, 2, -3]))

    def test_worker_count_is_at_least_one(self):
        from zkbundles.moduli.scan_runner import ScanRunner

        self.assertEqual(1, ScanRunner(abs, worker_count=0).worker_count)

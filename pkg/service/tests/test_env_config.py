from unittest import TestCase

from zkbundles.config.env_config import EnvConfig
from zkbundles.errors import UsageError
from zkbundles.moduli.invariants import EngineSettings


class EnvConfigTests(TestCase):
    def test_type_conversion(self):
        config = EnvConfig(environ={"ZK_COUNT": " 123 ", "ZK_NAME": "test"})
        self.assertEqual(123, config.get_int_value("COUNT", 0))
        self.assertEqual(123, config.get_optional_int_value("COUNT"))
        self.assertEqual("test", config.get_str_value("NAME", "default"))

    def test_default_values(self):
        config = EnvConfig(environ={"ZK_EMPTY": "", "OTHER_COUNT": "5"})
        self.assertEqual("default", config.get_str_value("EMPTY", "default"))
        self.assertEqual(123, config.get_int_value("COUNT", 123))
        self.assertIsNone(config.get_optional_int_value("COUNT"))
        self.assertIsNone(config.get_value("EMPTY"))

    def test_prefix(self):
        config = EnvConfig(prefix="OTHER", environ={"ZK_COUNT": "1", "OTHER_COUNT": "5"})
        self.assertEqual(5, config.get_int_value("COUNT", 0))

    def test_malformed_integer(self):
        config = EnvConfig(environ={"ZK_COUNT": "many"})
        with self.assertRaises(UsageError):
            config.get_int_value("COUNT", 0)


class EngineSettingsTests(TestCase):
    def test_defaults(self):
        settings = EngineSettings.from_config(EnvConfig(environ={}))
        self.assertEqual(EngineSettings(), settings)
        self.assertEqual(1, settings.scan_worker_count)
        self.assertEqual(1_000_000, settings.scan_max_points)
        self.assertIsNone(settings.width_margin)

    def test_from_config(self):
        config = EnvConfig(
            environ={
                "ZK_HEIGHT_WINDOW_SCALE": "2",
                "ZK_HEIGHT_WINDOW_MAX_DOUBLINGS": "8",
                "ZK_WIDTH_DEGREE_MARGIN": "5",
                "ZK_WIDTH_MAX_EXTENSIONS": "3",
                "ZK_SCAN_WORKER_COUNT": "4",
                "ZK_SCAN_MAX_POINTS": "100",
            }
        )
        self.assertEqual(EngineSettings(2, 8, 5, 3, 4, 100), EngineSettings.from_config(config))

    def test_invalid_settings(self):
        with self.assertRaises(UsageError):
            EngineSettings(window_scale=0)
        with self.assertRaises(UsageError):
            EngineSettings(scan_worker_count=0)
        with self.assertRaises(UsageError):
            EngineSettings(width_margin=-1)

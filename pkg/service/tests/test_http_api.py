from unittest import TestCase
from unittest.mock import patch

from zkbundles.errors import StabilisationError
from zkbundles.main import app
from zkbundles.utils.utils import BUILD_NUMBER, VERSION


class HttpApiTests(TestCase):
    def setUp(self):
        self.client = app.test_client()

    def test_healthcheck(self):
        response = self.client.get("/api/v1/healthcheck")
        self.assertEqual(200, response.status_code)
        self.assertEqual(b"OK", response.data)

    def test_health(self):
        response = self.client.get("/api/v1/health")
        self.assertEqual({"version": VERSION, "build": BUILD_NUMBER}, response.get_json())

    def test_invariants(self):
        response = self.client.post("/api/v1/invariants", json={"k": 2, "j": 3, "p": "z*u"})
        self.assertEqual(200, response.status_code)
        data = response.get_json()
        self.assertEqual((2, 0, 2), (data["height"], data["width"], data["chi"]))

    def test_invariants_parse_error(self):
        response = self.client.post("/api/v1/invariants", json={"k": 2, "j": 3, "p": "z^"})
        self.assertEqual(400, response.status_code)
        self.assertEqual("PolynomialParseError", response.get_json()["error_type"])

    def test_invariants_window_error(self):
        response = self.client.post("/api/v1/invariants", json={"k": 1, "j": 2, "p": "z*u^0"})
        self.assertEqual(400, response.status_code)
        self.assertEqual("CanonicalWindowError", response.get_json()["error_type"])

    def test_invariants_bad_parameters(self):
        for payload in ({"j": 3}, {"k": True, "j": 3}, {"k": 2, "j": 3, "p": 7}):
            with self.subTest(payload=payload):
                response = self.client.post("/api/v1/invariants", json=payload)
                self.assertEqual(400, response.status_code)
                self.assertEqual("UsageError", response.get_json()["error_type"])

    @patch("zkbundles.main.invariants", side_effect=StabilisationError("stuck"))
    def test_stabilisation_failure(self, _invariants):
        response = self.client.post("/api/v1/invariants", json={"k": 2, "j": 3})
        self.assertEqual(500, response.status_code)

    def test_bounds(self):
        response = self.client.get("/api/v1/bounds?k=3&j=6")
        self.assertEqual(200, response.status_code)
        data = response.get_json()
        self.assertEqual((5, 12), (data["chi_lo"], data["chi_hi"]))
        self.assertEqual([[1], [4]], data["charge_gaps"])

    def test_bounds_invalid(self):
        self.assertEqual(400, self.client.get("/api/v1/bounds?k=0&j=3").status_code)
        self.assertEqual(400, self.client.get("/api/v1/bounds?k=x&j=3").status_code)

    def test_balance(self):
        response = self.client.post("/api/v1/balance", json={"k": 2, "type": [3, -3]})
        self.assertEqual(200, response.status_code)
        data = response.get_json()
        self.assertEqual(4, data["t"])
        self.assertEqual([], data["violations"])
        self.assertEqual([3, 3], data["rows"][-1])

    def test_balance_invalid_type(self):
        response = self.client.post("/api/v1/balance", json={"k": 2, "type": "3,-3"})
        self.assertEqual(400, response.status_code)

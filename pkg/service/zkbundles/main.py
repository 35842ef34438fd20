import logging
import os

from flask import Flask
from flask import make_response
from flask import request

from zkbundles.config.env_config import EnvConfig
from zkbundles.utils.utils import BUILD_NUMBER, VERSION, init_logging

init_logging(config=EnvConfig())
logger = logging.getLogger(__name__)

from zkbundles.bundle.bundle_spec import BundleSpec
from zkbundles.errors import StabilisationError, UsageError, ZkBundlesError
from zkbundles.moduli.balance import balance, validate_admissible
from zkbundles.moduli.bounds import Bounds, charge_gap_ranges
from zkbundles.moduli.invariants import EngineSettings, invariants

SERVICE_HOST = os.getenv("SERVER_HOST", "0.0.0.0")
SERVICE_PORT = os.getenv("SERVER_PORT") or "8081"


"""
Local HTTP surface over the invariant engines. Every endpoint is read-only and stateless;
engine settings come from the ZK_ environment configuration.
"""

app = Flask(__name__)
settings = EngineSettings.from_config(EnvConfig())


def _json_response(payload, status: int = 200):
    response = make_response(payload, status)
    response.headers["Content-type"] = "application/json"
    return response


def _error_response(error: Exception, status: int):
    return _json_response({"error_type": type(error).__name__, "error": str(error)}, status)


def _int_arg(payload, name: str) -> int:
    value = payload.get(name)
    if isinstance(value, bool):
        raise UsageError(f"Parameter {name!r} must be an integer")
    try:
        return int(value)
    except (TypeError, ValueError):
        raise UsageError(f"Parameter {name!r} must be an integer, got {value!r}")


@app.errorhandler(ZkBundlesError)
def handle_engine_error(error: ZkBundlesError):
    if isinstance(error, StabilisationError):
        logger.error(f"Stabilisation failure: {error}")
        return _error_response(error, 500)
    return _error_response(error, 400)


@app.get("/api/v1/healthcheck")
def health_check():
    """
    Readiness probe.
    """
    return "OK"


@app.get("/api/v1/health")
def health():
    return _json_response({"version": VERSION, "build": BUILD_NUMBER})


@app.post("/api/v1/invariants")
def api_invariants():
    payload = request.get_json(silent=True) or {}
    logger.debug(f"Received invariants request: {payload}")
    p = payload.get("p", "0")
    if not isinstance(p, str):
        raise UsageError("Parameter 'p' must be a polynomial string")
    b = BundleSpec.parse(_int_arg(payload, "k"), _int_arg(payload, "j"), p)
    return _json_response(invariants(b, settings).to_dict())


@app.get("/api/v1/bounds")
def api_bounds():
    k = _int_arg(request.args, "k")
    j = _int_arg(request.args, "j")
    if k < 1 or j < 1:
        raise UsageError(f"Bounds need k >= 1 and j >= 1, got k={k}, j={j}")
    low_gap, high_gap = charge_gap_ranges(k)
    return _json_response(
        {"k": k, "j": j, **Bounds.of(k, j).to_dict(), "charge_gaps": [list(low_gap), list(high_gap)]}
    )


@app.post("/api/v1/balance")
def api_balance():
    payload = request.get_json(silent=True) or {}
    degrees = payload.get("type")
    if not isinstance(degrees, list) or not all(
        isinstance(d, int) and not isinstance(d, bool) for d in degrees
    ):
        raise UsageError("Parameter 'type' must be a list of integers")
    k = _int_arg(payload, "k")
    seq = balance(k, degrees)
    data = seq.to_dict()
    data["t"] = seq.t
    data["violations"] = validate_admissible(seq, k, degrees)
    return _json_response(data)


if __name__ == "__main__":
    app.run(host=SERVICE_HOST, port=int(SERVICE_PORT))

import sys
from pathlib import Path

from hypothesis import HealthCheck, settings

# helpers.py lives next to the tests, not in the package
sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "suite",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

"""Shared pytest configuration: hypothesis profile tuned for exact solvers."""

from hypothesis import HealthCheck, settings

# the geometry under test is exact and occasionally spends its time budget in
# one rational pivot; wall-clock deadlines only produce flaky failures here
settings.register_profile(
    "exact",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("exact")

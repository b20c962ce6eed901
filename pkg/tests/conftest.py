from hypothesis import HealthCheck, settings

# Statistical code paths make individual examples uneven in runtime, so
# the deadline is off; derandomize keeps CI deterministic.
settings.register_profile(
    "suite",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

"""Pytest-wide configuration: a deterministic, deadline-free property profile."""

import hypothesis

hypothesis.settings.register_profile(
    "covopt",
    max_examples=75,
    deadline=None,
    derandomize=True,
)
hypothesis.settings.load_profile("covopt")

"""Security assessment engine for SOA maturity models, built on the
goal-question-metric method."""

__version__ = "0.1.0"

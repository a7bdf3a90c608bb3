"""Writing analytics dashboard: phased sessions, judged feedback, study statistics."""

__version__ = "0.1.0"

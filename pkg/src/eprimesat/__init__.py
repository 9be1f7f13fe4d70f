"""eprimesat: tailor Essence Prime constraint models to SAT and back."""

__version__ = "0.1.0"

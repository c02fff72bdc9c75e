from .plots import default_series, emit_svg
from .tables import CsvTable

__all__ = ["CsvTable", "default_series", "emit_svg"]

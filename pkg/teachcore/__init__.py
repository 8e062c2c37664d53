__version__ = "1.0.0"
__date__ = "2026/10/17"
version_info = f"teachcore v{__version__} ({__date__})"
__all__ = ["__version__", "__date__", "version_info"]

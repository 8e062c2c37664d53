from .config import AppConfig, LoggingSection, SearchSection, GeneratorSection, VerifySection

from pydantic_settings import BaseSettings
from functools import lru_cache
from pathlib import Path

PACKAGE_ROOT = Path(__file__).resolve().parent.parent


class Settings(BaseSettings):
    APP_NAME: str = "VirtualKnotLab"
    LOG_LEVEL: str = "WARNING"
    LOG_DIR: str = "./logs"
    LOG_TO_FILE: bool = False

    REPORT_OUTPUT_DIR: str = "./reports"

    # Empty means the copies shipped inside the package
    FIXTURES_DIR: str = ""
    KNOT_CATALOG: str = ""

    DEFAULT_SEED: int = 20040101
    PROPERTY_CASES: int = 100
    MINOR_WORKERS: int = 1

    class Config:
        env_file = ".env"
        env_file_encoding = "utf-8"

    def fixtures_path(self) -> Path:
        if self.FIXTURES_DIR:
            return Path(self.FIXTURES_DIR)
        return PACKAGE_ROOT / "fixtures"

    def catalog_path(self) -> Path:
        if self.KNOT_CATALOG:
            return Path(self.KNOT_CATALOG)
        return PACKAGE_ROOT / "config" / "knots.json"


@lru_cache()
def get_settings() -> Settings:
    return Settings()

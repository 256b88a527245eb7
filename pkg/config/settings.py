"""
矛盾容忍推理系統配置模組
"""

import os
from pathlib import Path

try:
    from dotenv import load_dotenv

    load_dotenv()
except ImportError:
    pass

# 基礎路徑
_BASE_DIR = Path(__file__).parent.parent
STORAGE_DIR = _BASE_DIR / "storage"

_VALID_MODES = ("material", "internal")
_VALID_OUTPUTS = ("text", "json")


class Settings:
    """系統設定類別"""

    BASE_DIR: Path = _BASE_DIR

    # 推理設定
    PARALOGIC_MODE: str = os.getenv("PARALOGIC_MODE", "material").strip().lower()
    PARALOGIC_OUTPUT: str = os.getenv("PARALOGIC_OUTPUT", "text").strip().lower()

    # 資源上限
    MAX_NODES: int = int(os.getenv("PARALOGIC_MAX_NODES", "100000"))
    MAX_ARGUMENTS: int = int(os.getenv("PARALOGIC_MAX_ARGS", "1000"))
    EXHAUSTIVE_LIMIT: int = int(os.getenv("PARALOGIC_EXHAUSTIVE_LIMIT", "20"))

    # 系統設定
    DEBUG: bool = os.getenv("DEBUG", "false").lower() == "true"
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "DEBUG" if DEBUG else "WARNING")

    # 路徑設定
    STORAGE_PATH: Path = STORAGE_DIR
    EXPORT_PATH: Path = Path(
        os.getenv("PARALOGIC_DOT_DIR", str(STORAGE_DIR / "exports"))
    )
    KB_PATH: Path = _BASE_DIR / "kb"

    @classmethod
    def validate_config(cls) -> bool:
        """驗證必要配置"""
        if cls.PARALOGIC_MODE not in _VALID_MODES:
            raise ValueError(
                f"PARALOGIC_MODE 必須為 {'/'.join(_VALID_MODES)}: {cls.PARALOGIC_MODE}"
            )
        if cls.PARALOGIC_OUTPUT not in _VALID_OUTPUTS:
            raise ValueError(
                f"PARALOGIC_OUTPUT 必須為 {'/'.join(_VALID_OUTPUTS)}: {cls.PARALOGIC_OUTPUT}"
            )
        for name in ("MAX_NODES", "MAX_ARGUMENTS", "EXHAUSTIVE_LIMIT"):
            if getattr(cls, name) <= 0:
                raise ValueError(f"{name} 必須為正整數")
        return True


settings = Settings()

"""
矛盾容忍 ALC 推理系統主程式入口
"""

import logging
import sys
from pathlib import Path

# 添加專案根目錄到 Python 路徑
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from config.settings import settings  # noqa: E402
from cli.app import run  # noqa: E402

# 日誌只寫到 stderr，stdout 保留給判定結果
logging.basicConfig(
    level=getattr(logging, settings.LOG_LEVEL.upper(), logging.WARNING),
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    handlers=[logging.StreamHandler(sys.stderr)],
)

logger = logging.getLogger(__name__)


def validate_environment() -> bool:
    """驗證環境設定"""
    try:
        settings.validate_config()
        logger.debug("環境設定驗證通過")
        return True
    except ValueError as e:
        logger.error("環境設定錯誤: %s", e)
        return False


if __name__ == "__main__":
    if not validate_environment():
        print("環境設定不正確，請檢查 .env 檔案中的 PARALOGIC_* 設定", file=sys.stderr)
        sys.exit(2)
    try:
        sys.exit(run(sys.argv[1:]))
    except KeyboardInterrupt:
        logger.info("已中斷")
        sys.exit(130)

"""
命令列應用程式 - 參數剖析、設定合併與結束碼對應
"""

import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from cli.commands import (
    EXIT_DIAGNOSTIC,
    EXIT_INPUT_ERROR,
    cmd_entail,
    cmd_export,
    cmd_oracle,
)
from config.settings import settings
from models.exceptions import (
    KBSyntaxError,
    NoStableExtensionError,
    OracleInapplicableError,
    ResourceLimitError,
    UnknownIdentifierError,
)
from models.report_models import CliConfig

logger = logging.getLogger(__name__)

# 依序比對，先列出的類別優先
_EXIT_CODES = (
    (KBSyntaxError, EXIT_INPUT_ERROR),
    (UnknownIdentifierError, EXIT_INPUT_ERROR),
    (ValidationError, EXIT_INPUT_ERROR),
    (OSError, EXIT_INPUT_ERROR),
    (OracleInapplicableError, EXIT_DIAGNOSTIC),
    (ResourceLimitError, EXIT_DIAGNOSTIC),
    (NoStableExtensionError, EXIT_DIAGNOSTIC),
)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("kb", help="知識庫檔案路徑")
    common.add_argument("query", help='查詢命題，例如 "a : D"')
    common.add_argument("--mode", choices=("internal", "material"), help="包含公理解讀模式")
    common.add_argument("--output", choices=("text", "json"), help="輸出格式")
    common.add_argument("--max-nodes", type=int, help="表列節點上限")
    common.add_argument("--max-args", type=int, help="論證數上限")
    common.add_argument("--dot-dir", help="產出物輸出目錄")

    parser = argparse.ArgumentParser(
        prog="paralogic", description="矛盾容忍 ALC 推理器 (LP / 衝突最小語意)"
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("entail", parents=[common], help="判定蘊涵")
    sub.add_parser("oracle", parents=[common], help="窮舉模型檢查")
    export = sub.add_parser("export", parents=[common], help="匯出表列與論證框架")
    export.add_argument("--what", choices=("tableau", "af", "all"), default="all")
    return parser


def build_config(args: argparse.Namespace) -> CliConfig:
    """旗標優先，其次為環境設定"""
    return CliConfig(
        kb_path=args.kb,
        query=args.query,
        mode=args.mode or settings.PARALOGIC_MODE,
        output=args.output or settings.PARALOGIC_OUTPUT,
        max_nodes=args.max_nodes if args.max_nodes is not None else settings.MAX_NODES,
        max_args=args.max_args if args.max_args is not None else settings.MAX_ARGUMENTS,
        exhaustive_limit=settings.EXHAUSTIVE_LIMIT,
        dot_dir=args.dot_dir or settings.EXPORT_PATH,
    )


def run(argv: Optional[List[str]] = None) -> int:
    """執行命令列並回傳結束碼"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT_ERROR if e.code else 0

    try:
        config = build_config(args)
        if args.command == "entail":
            return cmd_entail(config)
        if args.command == "oracle":
            return cmd_oracle(config)
        return cmd_export(config, args.what)
    except Exception as e:
        for error_type, code in _EXIT_CODES:
            if isinstance(e, error_type):
                logger.debug("命令失敗: %s", e)
                print(f"錯誤: {e}", file=sys.stderr)
                return code
        raise

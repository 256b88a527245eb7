"""
推理系統例外類別
"""

from typing import Any, Sequence


class KBSyntaxError(ValueError):
    """知識庫語法錯誤，附帶行列位置與預期符號"""

    def __init__(self, message: str, line: int, column: int, expected: Sequence[str] = ()):
        self.line = line
        self.column = column
        self.expected = tuple(sorted(expected))
        detail = f"第 {line} 行第 {column} 欄: {message}"
        if self.expected:
            detail += f" (預期: {', '.join(self.expected)})"
        super().__init__(detail)


class UnknownIdentifierError(ValueError):
    """解讀中找不到的識別字"""

    def __init__(self, kind: str, name: str):
        self.kind = kind
        self.name = name
        super().__init__(f"未知的{kind}: {name}")


class OracleInapplicableError(ValueError):
    """知識庫超出窮舉模型檢查的範圍"""


class ResourceLimitError(RuntimeError):
    """超過設定的資源上限"""

    def __init__(self, resource: str, limit: int):
        self.resource = resource
        self.limit = limit
        super().__init__(f"{resource} 超過上限 {limit}")


class NoStableExtensionError(RuntimeError):
    """論證框架沒有任何穩定擴充"""

    def __init__(self, framework: Any):
        self.framework = framework
        super().__init__("論證框架沒有穩定擴充，無法判定衝突最小蘊涵")

"""
報告與輸出資料模型 (JSON 產出物與 CLI 設定)
"""

from pathlib import Path
from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, Field, PositiveInt


class CliConfig(BaseModel):
    """命令列設定：旗標優先，其次為環境設定"""

    kb_path: Path
    query: str
    mode: Literal["internal", "material"] = "material"
    output: Literal["text", "json"] = "text"
    max_nodes: PositiveInt = 100000
    max_args: PositiveInt = 1000
    exhaustive_limit: PositiveInt = 20
    dot_dir: Optional[Path] = None


class BlockedIndividualReport(BaseModel):
    """被阻擋的新生個體"""

    individual: str
    blocker: Optional[str] = None
    gamma: List[str] = Field(default_factory=list)
    blocker_gamma: List[str] = Field(default_factory=list)


class TableauNodeReport(BaseModel):
    node_id: int
    parent_id: Optional[int] = None
    rule: str
    added: List[str] = Field(default_factory=list)
    status: Optional[str] = None
    closing_options: List[str] = Field(default_factory=list)
    blocked: List[BlockedIndividualReport] = Field(default_factory=list)


class TableauExport(BaseModel):
    """表列樹 JSON 匯出"""

    mode: str
    root: List[str]
    nodes: List[TableauNodeReport]
    fresh_individuals: List[str] = Field(default_factory=list)


class TableauSummary(BaseModel):
    """判定報告中的表列摘要"""

    goal: str
    result: str
    node_count: int
    leaf_count: int
    strongly_closed: int
    weakly_closed: int
    open: int
    assumption_sets: List[List[str]] = Field(default_factory=list)


class ArgumentReport(BaseModel):
    index: int
    name: str
    assumptions: List[str]
    conclusion: str
    in_grounded: bool = False
    credulously_preferred: bool = False
    skeptically_preferred: bool = False


class ArgumentationExport(BaseModel):
    """論證框架 JSON 匯出；攻擊以 [攻擊者, 目標] 索引對表示"""

    arguments: List[ArgumentReport]
    attacks: List[List[int]]
    stable_extensions: List[List[int]] = Field(default_factory=list)
    preferred_extensions: List[List[int]] = Field(default_factory=list)
    grounded_extension: List[int] = Field(default_factory=list)


class ExtensionReport(BaseModel):
    """穩定擴充與其允許的假設 Ω(E)"""

    index: int
    members: List[int]
    allowed_assumptions: List[str]
    supporting_arguments: List[int]


class VerdictReport(BaseModel):
    """蘊涵判定報告"""

    query: str
    mode: str
    verdict: str
    tableau: Optional[TableauSummary] = None
    af: Optional[ArgumentationExport] = None
    stable_extensions: Optional[List[ExtensionReport]] = None
    # 穩定擴充索引 -> 支持查詢的論證索引
    witnesses: Optional[Dict[int, int]] = None
    counterexample_extension: Optional[List[int]] = None


class OracleReport(BaseModel):
    """窮舉模型檢查報告"""

    query: str
    mode: str
    lp: bool
    lpm: bool
    models: List[str] = Field(default_factory=list)

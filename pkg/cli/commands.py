"""
命令列子命令 - entail、oracle、export
"""

import logging
import sys
from pathlib import Path
from typing import Tuple

from config.settings import settings
from models.kb_models import KnowledgeBase, Proposition
from models.reasoning_models import VerdictKind
from models.report_models import CliConfig, OracleReport
from models.semantics_models import SubsumptionMode
from services.entailment_service import EntailmentService, render_text
from services.export_service import (
    af_to_dot,
    argumentation_export,
    tableau_export,
    tableau_to_dot,
    write_artifact,
)
from services.kb_parser import parse_kb, parse_proposition, serialize, signature_of
from services.lp_semantics import (
    canonical_model_line,
    conflict_minimal_models,
    oracle_lp_entails,
    oracle_lpm_entails,
)

logger = logging.getLogger(__name__)

EXIT_ENTAILED = 0
EXIT_NOT_ENTAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_DIAGNOSTIC = 3


def load_inputs(config: CliConfig) -> Tuple[KnowledgeBase, Proposition]:
    """讀取並剖析知識庫檔案與查詢"""
    kb = parse_kb(Path(config.kb_path).read_bytes())
    query = parse_proposition(config.query)
    logger.info("已載入知識庫 %s (%d 條命題)", config.kb_path, len(kb))
    return kb, query


def _service(config: CliConfig) -> EntailmentService:
    return EntailmentService(
        mode=SubsumptionMode(config.mode),
        max_nodes=config.max_nodes,
        max_arguments=config.max_args,
        exhaustive_limit=config.exhaustive_limit,
    )


def cmd_entail(config: CliConfig) -> int:
    """判定衝突最小蘊涵並輸出判定報告"""
    kb, query = load_inputs(config)
    service = _service(config)
    report = service.explain(kb, query)
    if config.output == "json":
        print(report.model_dump_json(indent=2))
    else:
        print(render_text(report), end="")
    entailed = VerdictKind(report.verdict).entailed
    return EXIT_ENTAILED if entailed else EXIT_NOT_ENTAILED


def cmd_oracle(config: CliConfig) -> int:
    """窮舉檢查：列出衝突最小模型與 LP / LPm 蘊涵結果"""
    kb, query = load_inputs(config)
    mode = SubsumptionMode(config.mode)
    sig = signature_of(kb, query)
    models = conflict_minimal_models(kb, query, mode)
    report = OracleReport(
        query=serialize(query),
        mode=mode.value,
        lp=oracle_lp_entails(kb, query, mode),
        lpm=oracle_lpm_entails(kb, query, mode),
        models=[canonical_model_line(model, sig) for model in models],
    )
    if config.output == "json":
        print(report.model_dump_json(indent=2))
    else:
        for line in report.models:
            print(line)
        print(f"lp={str(report.lp).lower()} lpm={str(report.lpm).lower()}")
    return EXIT_ENTAILED if report.lpm else EXIT_NOT_ENTAILED


def cmd_export(config: CliConfig, what: str = "all") -> int:
    """寫出表列與論證框架的 DOT / JSON 產出物"""
    kb, query = load_inputs(config)
    service = _service(config)
    directory = Path(config.dot_dir or settings.EXPORT_PATH)
    written = []

    if what in ("tableau", "all"):
        proof = service.decide_lp(kb, query).proof
        export = tableau_export(proof.tableau)
        written += write_artifact(
            directory, "tableau", tableau_to_dot(proof.tableau), export.model_dump_json(indent=2)
        )

    if what in ("af", "all"):
        verdict = service.decide_lpm(kb, query)
        if verdict.kind == VerdictKind.ENTAILED_MONOTONE:
            message = f"{serialize(query)} 為 LP 蘊涵，沒有論證框架可匯出"
            print(message, file=sys.stderr)
            if what == "af":
                return EXIT_DIAGNOSTIC
        else:
            af_export = argumentation_export(verdict.framework, config.exhaustive_limit)
            written += write_artifact(
                directory, "af", af_to_dot(verdict.framework), af_export.model_dump_json(indent=2)
            )

    for path in written:
        print(path)
    return EXIT_ENTAILED

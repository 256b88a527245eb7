"""
蘊涵判定服務 - LP 蘊涵與衝突最小 (LPm) 蘊涵的判定流程與說明報告
"""

import logging
from typing import Optional

from config.settings import settings
from models.exceptions import NoStableExtensionError
from models.kb_models import KnowledgeBase, Proposition
from models.reasoning_models import (
    Extension,
    ExtensionKind,
    Label,
    LPDecision,
    ProofKind,
    SignedProposition,
    Supports,
    Verdict,
    VerdictKind,
)
from models.report_models import ExtensionReport, VerdictReport
from models.semantics_models import SubsumptionMode
from services.argumentation_service import (
    ArgumentationService,
    allowed_assumptions,
    stable_extensions,
    supporting_members,
)
from services.export_service import (
    argumentation_export,
    format_assumption,
    tableau_summary,
)
from services.kb_parser import serialize
from services.tableau_service import TableauService

logger = logging.getLogger(__name__)

VERDICT_TEXT = {
    VerdictKind.ENTAILED_MONOTONE: "LP 蘊涵 (entailed)",
    VerdictKind.ENTAILED_CONFLICT_MINIMAL: "衝突最小蘊涵 (entailed conflict-minimally)",
    VerdictKind.NOT_ENTAILED: "不蘊涵 (not entailed)",
}


class EntailmentService:
    """蘊涵判定：先試 LP 強封閉，否則建立論證框架並檢查每個穩定擴充"""

    def __init__(
        self,
        mode: Optional[SubsumptionMode] = None,
        max_nodes: Optional[int] = None,
        max_arguments: Optional[int] = None,
        exhaustive_limit: Optional[int] = None,
    ):
        self.mode = mode or SubsumptionMode(settings.PARALOGIC_MODE)
        self.max_nodes = max_nodes or settings.MAX_NODES
        self.max_arguments = max_arguments or settings.MAX_ARGUMENTS
        self.exhaustive_limit = exhaustive_limit or settings.EXHAUSTIVE_LIMIT

    def decide_lp(self, kb: KnowledgeBase, query: Proposition) -> LPDecision:
        """Σ ⊨ φ 若且唯若 Γ ∪ {T̄φ} 的表列全部強封閉"""
        proof = TableauService(self.mode, self.max_nodes).prove(
            kb, SignedProposition(Label.T, query)
        )
        return LPDecision(entailed=proof.kind == ProofKind.PROVED, proof=proof)

    def decide_lpm(self, kb: KnowledgeBase, query: Proposition) -> Verdict:
        """Σ ⊨<c φ 若且唯若每個穩定擴充都含有支持 Tφ 的論證"""
        lp = self.decide_lp(kb, query)
        if lp.entailed:
            logger.info("%s 為 LP 蘊涵，略過論證框架", serialize(query))
            return Verdict(
                kind=VerdictKind.ENTAILED_MONOTONE, query=query, mode=self.mode, proof=lp.proof
            )

        builder = ArgumentationService(kb, self.mode, self.max_nodes, self.max_arguments)
        af = builder.complete_af(query, lp.proof)
        goal = Supports(Label.T, query)
        if not any(argument.conclusion == goal for argument in af.arguments):
            # 沒有支持論證時框架為空，空集合即唯一的穩定擴充
            empty = Extension(frozenset(), ExtensionKind.STABLE)
            return Verdict(
                kind=VerdictKind.NOT_ENTAILED,
                query=query,
                mode=self.mode,
                proof=lp.proof,
                framework=af,
                stable_extensions=(empty,),
                counterexample=empty,
            )

        extensions = stable_extensions(af, self.exhaustive_limit)
        if not extensions:
            logger.error("論證框架沒有穩定擴充 (%d 個論證)", len(af))
            raise NoStableExtensionError(af)

        witnesses = {}
        for position, extension in enumerate(extensions):
            members = supporting_members(extension, af, query)
            if not members:
                logger.info("穩定擴充 %s 不支持 %s", extension.sorted_members(), serialize(query))
                return Verdict(
                    kind=VerdictKind.NOT_ENTAILED,
                    query=query,
                    mode=self.mode,
                    proof=lp.proof,
                    framework=af,
                    stable_extensions=tuple(extensions),
                    counterexample=extension,
                )
            witnesses[position] = members[0]

        return Verdict(
            kind=VerdictKind.ENTAILED_CONFLICT_MINIMAL,
            query=query,
            mode=self.mode,
            proof=lp.proof,
            framework=af,
            stable_extensions=tuple(extensions),
            witnesses=witnesses,
        )

    def explain(self, kb: KnowledgeBase, query: Proposition) -> VerdictReport:
        """判定並產生報告"""
        return self.build_report(self.decide_lpm(kb, query))

    def build_report(self, verdict: Verdict) -> VerdictReport:
        """報告內容只取自判定證據"""
        report = VerdictReport(
            query=serialize(verdict.query),
            mode=verdict.mode.value,
            verdict=verdict.kind.value,
            tableau=tableau_summary(verdict.proof),
        )
        af = verdict.framework
        if af is None:
            return report

        report.af = argumentation_export(af, self.exhaustive_limit)
        report.stable_extensions = [
            ExtensionReport(
                index=position,
                members=extension.sorted_members(),
                allowed_assumptions=[
                    format_assumption(a) for a in sorted(allowed_assumptions(extension, af))
                ],
                supporting_arguments=supporting_members(extension, af, verdict.query),
            )
            for position, extension in enumerate(verdict.stable_extensions)
        ]
        if verdict.kind == VerdictKind.ENTAILED_CONFLICT_MINIMAL:
            report.witnesses = dict(verdict.witnesses)
        else:
            report.counterexample_extension = verdict.counterexample.sorted_members()
        return report


def render_text(report: VerdictReport) -> str:
    """人類可讀的判定報告"""
    lines = [
        f"查詢: {report.query}",
        f"模式: {report.mode}",
        f"判定: {VERDICT_TEXT[VerdictKind(report.verdict)]}",
    ]
    if report.tableau is not None:
        summary = report.tableau
        lines.append(
            f"表列: {summary.node_count} 個節點, {summary.leaf_count} 個葉節點 "
            f"(強封閉 {summary.strongly_closed}, 弱封閉 {summary.weakly_closed}, 開放 {summary.open})"
        )
    if report.af is None:
        return "\n".join(lines) + "\n"

    lines.append(f"論證 ({len(report.af.arguments)}):")
    for argument in report.af.arguments:
        flags = []
        if argument.in_grounded:
            flags.append("grounded")
        if argument.skeptically_preferred:
            flags.append("skeptical")
        elif argument.credulously_preferred:
            flags.append("credulous")
        suffix = f"  [{', '.join(flags)}]" if flags else ""
        lines.append(
            f"  {argument.name}: ({{{', '.join(argument.assumptions)}}}, {argument.conclusion}){suffix}"
        )
    lines.append(f"攻擊 ({len(report.af.attacks)}):")
    for attacker, target in report.af.attacks:
        lines.append(f"  A{attacker} -> A{target}")
    lines.append(f"穩定擴充 ({len(report.stable_extensions or [])}):")
    for extension in report.stable_extensions or []:
        members = ", ".join(f"A{i}" for i in extension.members)
        support = ", ".join(f"A{i}" for i in extension.supporting_arguments) or "-"
        lines.append(f"  E{extension.index} = {{{members}}}  支持: {support}")
        lines.append(f"    Ω = {{{', '.join(extension.allowed_assumptions)}}}")
    if report.counterexample_extension is not None:
        members = ", ".join(f"A{i}" for i in report.counterexample_extension)
        lines.append(f"反例擴充: {{{members}}}")
    return "\n".join(lines) + "\n"


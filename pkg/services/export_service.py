"""
匯出服務 - 表列樹與論證框架的文字格式、JSON 與 DOT 產出物
"""

import logging
from pathlib import Path
from typing import Iterable, List, Optional

from models.kb_models import AtomicConcept, ConceptAssertion
from models.reasoning_models import (
    Argument,
    ArgumentationFramework,
    Assumption,
    ClosureKind,
    Conclusion,
    Conflict,
    ProofResult,
    SignedProposition,
    Tableau,
)
from models.report_models import (
    ArgumentationExport,
    ArgumentReport,
    BlockedIndividualReport,
    TableauExport,
    TableauNodeReport,
    TableauSummary,
)
from services.argumentation_service import (
    grounded_extension,
    preferred_extensions,
    stable_extensions,
)
from services.kb_parser import serialize
from utils.dot_utils import digraph, edge_line, node_line

logger = logging.getLogger(__name__)

_STATUS_COLORS = {
    ClosureKind.STRONG: "#ccffcc",
    ClosureKind.WEAK: "#ffffcc",
    ClosureKind.OPEN: "#ffcccc",
}


# --- 文字格式 -----------------------------------------------------------------


def format_signed(sp: SignedProposition) -> str:
    return f"{sp.label.symbol} {serialize(sp.prop)}"


def format_assumption(assumption: Assumption) -> str:
    return f"~C({assumption})"


def format_conclusion(conclusion: Conclusion) -> str:
    if isinstance(conclusion, Conflict):
        return f"C {conclusion.atom}"
    prop = conclusion.prop
    if isinstance(prop, ConceptAssertion) and isinstance(prop.concept, AtomicConcept):
        return f"{conclusion.label.symbol} {prop.individual}:{prop.concept.name}"
    return f"{conclusion.label.symbol} {serialize(conclusion.prop)}"


def format_assumption_set(assumptions: Iterable[Assumption]) -> str:
    return "{" + ", ".join(format_assumption(a) for a in sorted(assumptions)) + "}"


def format_argument(argument: Argument) -> str:
    """例如 ({~C(a:C)}, T a:D)"""
    return f"({format_assumption_set(argument.assumptions)}, {format_conclusion(argument.conclusion)})"


# --- 表列 -----------------------------------------------------------------------


def tableau_export(tableau: Tableau) -> TableauExport:
    """表列樹的 JSON 模型；被阻擋個體附上 Γ 集合以便檢查 Γ(y) ⊆ Γ(x)"""
    nodes = []
    for node in tableau.nodes:
        status = node.status
        nodes.append(
            TableauNodeReport(
                node_id=node.node_id,
                parent_id=node.parent_id,
                rule=node.rule,
                added=[format_signed(sp) for sp in node.added],
                status=status.kind.value if status else None,
                closing_options=[str(a) for a in sorted(status.options)] if status else [],
                blocked=[
                    BlockedIndividualReport(
                        individual=info.individual,
                        blocker=info.blocker,
                        gamma=sorted(f"{lbl.symbol} {c}" for lbl, c in info.gamma),
                        blocker_gamma=sorted(f"{lbl.symbol} {c}" for lbl, c in info.blocker_gamma),
                    )
                    for info in node.blocked
                ],
            )
        )
    return TableauExport(
        mode=tableau.mode.value,
        root=[format_signed(sp) for sp in tableau.root],
        nodes=nodes,
        fresh_individuals=list(tableau.fresh_individuals),
    )


def tableau_summary(proof: ProofResult) -> TableauSummary:
    leaves = proof.tableau.leaves()
    counts = {kind: 0 for kind in ClosureKind}
    for leaf in leaves:
        counts[leaf.status.kind] += 1
    return TableauSummary(
        goal=format_signed(proof.goal),
        result=proof.kind.value,
        node_count=len(proof.tableau.nodes),
        leaf_count=len(leaves),
        strongly_closed=counts[ClosureKind.STRONG],
        weakly_closed=counts[ClosureKind.WEAK],
        open=counts[ClosureKind.OPEN],
        assumption_sets=[[str(a) for a in sorted(s)] for s in proof.assumption_sets],
    )


def tableau_to_dot(tableau: Tableau) -> str:
    """每個節點一個方框，葉節點依封閉狀態著色"""
    nodes, edges = [], []
    for node in tableau.nodes:
        lines = [f"#{node.node_id} {node.rule}"] + [format_signed(sp) for sp in node.added]
        attrs = {"shape": "box"}
        if node.status is not None:
            lines.append(node.status.kind.value)
            if node.status.options:
                lines.append("options: " + ", ".join(str(a) for a in sorted(node.status.options)))
            for info in node.blocked:
                lines.append(f"blocked {info.individual} by {info.blocker or '-'}")
            attrs.update(style="filled", fillcolor=_STATUS_COLORS[node.status.kind])
        nodes.append(node_line(f"n{node.node_id}", "\n".join(lines), **attrs))
        if node.parent_id is not None:
            edges.append(edge_line(f"n{node.parent_id}", f"n{node.node_id}"))
    return digraph("tableau", nodes, edges)


# --- 論證框架 -----------------------------------------------------------------


def argumentation_export(
    af: ArgumentationFramework, exhaustive_limit: Optional[int] = None
) -> ArgumentationExport:
    """論證框架的 JSON 模型，附上各論證在 grounded / preferred 語意下的接受狀態"""
    grounded = grounded_extension(af)
    preferred = preferred_extensions(af, exhaustive_limit)
    stable = stable_extensions(af, exhaustive_limit)
    arguments = []
    for index, argument in enumerate(af.arguments):
        arguments.append(
            ArgumentReport(
                index=index,
                name=f"A{index}",
                assumptions=[format_assumption(a) for a in sorted(argument.assumptions)],
                conclusion=format_conclusion(argument.conclusion),
                in_grounded=index in grounded.members,
                credulously_preferred=any(index in e.members for e in preferred),
                skeptically_preferred=bool(preferred)
                and all(index in e.members for e in preferred),
            )
        )
    return ArgumentationExport(
        arguments=arguments,
        attacks=[[i, j] for i, j in af.attacks],
        stable_extensions=[e.sorted_members() for e in stable],
        preferred_extensions=[e.sorted_members() for e in preferred],
        grounded_extension=grounded.sorted_members(),
    )


def af_to_dot(af: ArgumentationFramework) -> str:
    """節點標籤形如 A0: ({~C(a:C)}, T a:D)，邊為攻擊關係"""
    nodes = [
        node_line(f"A{index}", f"A{index}: {format_argument(argument)}", shape="ellipse")
        for index, argument in enumerate(af.arguments)
    ]
    edges = [edge_line(f"A{i}", f"A{j}") for i, j in af.attacks]
    return digraph("af", nodes, edges, rankdir="LR")


def write_artifact(directory: Path, name: str, dot_text: str, json_text: str) -> List[Path]:
    """寫出 <name>.dot 與 <name>.json"""
    try:
        directory.mkdir(parents=True, exist_ok=True)
        dot_path = directory / f"{name}.dot"
        json_path = directory / f"{name}.json"
        dot_path.write_text(dot_text, encoding="utf-8")
        json_path.write_text(json_text, encoding="utf-8")
    except OSError as e:
        logger.error("寫出產出物失敗: %s", e)
        raise
    logger.info("已寫出產出物: %s, %s", dot_path, json_path)
    return [dot_path, json_path]

"""
論證服務 - 由表列推導論證與反論證、旋轉、建立完整論證框架，並計算 Dung 擴充
"""

import logging
from collections import deque
from typing import Dict, FrozenSet, Iterable, List, Optional

from config.settings import settings
from models.exceptions import ResourceLimitError
from models.kb_models import KnowledgeBase, Proposition
from models.reasoning_models import (
    Argument,
    ArgumentationFramework,
    Assumption,
    Conflict,
    Extension,
    ExtensionKind,
    Label,
    ProofResult,
    SignedProposition,
    Supports,
    assumption_set_key,
)
from models.semantics_models import SubsumptionMode
from services.kb_parser import serialize
from services.tableau_service import TableauService
from utils.hitting_sets import minimal_unions

logger = logging.getLogger(__name__)


def argument_key(argument: Argument):
    """論證的正規排序鍵"""
    conclusion = argument.conclusion
    if isinstance(conclusion, Conflict):
        tail = (1, str(conclusion.atom))
    else:
        tail = (0, conclusion.label.value + " " + serialize(conclusion.prop))
    return (tail[0], assumption_set_key(argument.assumptions), tail[1])


def rotate(argument: Argument) -> List[Argument]:
    """衝突論證的等價旋轉：以結論換掉任一假設；沒有假設時沒有旋轉"""
    if not isinstance(argument.conclusion, Conflict):
        raise ValueError("只有衝突論證可以旋轉")
    origin = argument.conclusion.atom
    return [
        Argument((argument.assumptions - {atom}) | {origin}, Conflict(atom))
        for atom in sorted(argument.assumptions)
    ]


class ArgumentationService:
    """針對單一知識庫與解讀模式建立論證"""

    def __init__(
        self,
        kb: KnowledgeBase,
        mode: Optional[SubsumptionMode] = None,
        max_nodes: Optional[int] = None,
        max_arguments: Optional[int] = None,
    ):
        self.kb = kb
        self.mode = mode or SubsumptionMode(settings.PARALOGIC_MODE)
        self.max_arguments = max_arguments or settings.MAX_ARGUMENTS
        self.tableaux = TableauService(self.mode, max_nodes)
        self._counter_cache: Dict[Assumption, List[Argument]] = {}

    def derive_arguments(self, goal: Supports) -> List[Argument]:
        """每組最小假設集合對應一個支持 goal 的論證"""
        proof = self.tableaux.prove(self.kb, SignedProposition(goal.label, goal.prop))
        return [Argument(assumptions, goal) for assumptions in proof.assumption_sets]

    def counter_arguments(self, target: Assumption) -> List[Argument]:
        """推導衝突結論 C(α)：Γ ∪ {T̄α} 與 Γ ∪ {F̄α} 兩個表列都必須封閉"""
        if target in self._counter_cache:
            return self._counter_cache[target]

        gamma = [SignedProposition(Label.T, sigma) for sigma in self.kb.propositions]
        alpha = target.assertion
        _, not_true = self.tableaux.assumption_sets_for(
            gamma + [SignedProposition(Label.TBAR, alpha)]
        )
        arguments: List[Argument] = []
        if not_true:
            _, not_false = self.tableaux.assumption_sets_for(
                gamma + [SignedProposition(Label.FBAR, alpha)]
            )
            unions = minimal_unions(not_true, not_false, key=assumption_set_key)
            # 假設自己的結論的組合不構成論證
            arguments = [
                Argument(assumptions, Conflict(target))
                for assumptions in unions
                if target not in assumptions
            ]
        logger.debug("C(%s) 的反論證: %d 個", target, len(arguments))
        self._counter_cache[target] = arguments
        return arguments

    def complete_af(
        self, query: Proposition, proof: Optional[ProofResult] = None
    ) -> ArgumentationFramework:
        """不動點建構：支持 Tφ 的論證，加上所有出現假設的反論證及其旋轉

        已有 Tφ 的證明結果時直接沿用其假設集合
        """
        ordered: List[Argument] = []
        known = set()
        queued = set()
        pending = deque()

        def admit(argument: Argument) -> None:
            if argument in known:
                return
            if len(ordered) >= self.max_arguments:
                logger.error("論證數超過上限 %d", self.max_arguments)
                raise ResourceLimitError("論證", self.max_arguments)
            known.add(argument)
            ordered.append(argument)
            for atom in sorted(argument.assumptions):
                if atom not in queued:
                    queued.add(atom)
                    pending.append(atom)

        goal = Supports(Label.T, query)
        if proof is None:
            derived = self.derive_arguments(goal)
        else:
            derived = [Argument(assumptions, goal) for assumptions in proof.assumption_sets]
        supports = sorted(derived, key=argument_key)
        for argument in supports:
            admit(argument)
        while pending:
            atom = pending.popleft()
            for counter in self.counter_arguments(atom):
                admit(counter)
                for rotated in rotate(counter):
                    admit(rotated)

        framework = ArgumentationFramework(tuple(ordered))
        logger.info(
            "論證框架完成: %d 個論證, %d 條攻擊", len(framework), len(framework.attacks)
        )
        return framework


# --- Dung 語意 ---------------------------------------------------------------


def conflict_free(members: Iterable[int], af: ArgumentationFramework) -> bool:
    """集合內沒有互相攻擊的論證"""
    members = set(members)
    return not any(af.targets_of(i) & members for i in members)


def defends(members: Iterable[int], index: int, af: ArgumentationFramework) -> bool:
    """集合攻擊了 index 的每一個攻擊者"""
    members = set(members)
    return all(af.attackers_of(b) & members for b in af.attackers_of(index))


def _attack_masks(af: ArgumentationFramework):
    targets = [0] * len(af)
    attackers = [0] * len(af)
    for i, j in af.attacks:
        targets[i] |= 1 << j
        attackers[j] |= 1 << i
    return targets, attackers


def _members(mask: int, size: int) -> FrozenSet[int]:
    return frozenset(i for i in range(size) if mask >> i & 1)


def _conflict_free_masks(af: ArgumentationFramework) -> List[int]:
    """以遞增索引建構所有無衝突集合"""
    targets, attackers = _attack_masks(af)
    size = len(af)
    found = []

    def extend(start: int, mask: int, forbidden: int) -> None:
        found.append(mask)
        for i in range(start, size):
            bit = 1 << i
            if forbidden & bit or targets[i] & bit:
                continue
            extend(i + 1, mask | bit, forbidden | targets[i] | attackers[i])

    extend(0, 0, 0)
    return found


def _stable_by_subsets(af: ArgumentationFramework) -> List[FrozenSet[int]]:
    targets, _ = _attack_masks(af)
    size = len(af)
    everything = (1 << size) - 1
    result = []
    for mask in _conflict_free_masks(af):
        covered = mask
        for i in range(size):
            if mask >> i & 1:
                covered |= targets[i]
        if covered == everything:
            result.append(_members(mask, size))
    return result


def _stable_by_labelling(af: ArgumentationFramework) -> List[FrozenSet[int]]:
    """IN/OUT 標記搜尋：IN 的攻擊者與目標皆為 OUT，OUT 必須被某個 IN 攻擊"""
    size = len(af)
    result = []

    def still_attackable(labels, index) -> bool:
        return any(labels[b] != "OUT" for b in af.attackers_of(index))

    def search(labels: List[Optional[str]]) -> None:
        for i in range(size):
            if labels[i] == "OUT" and not still_attackable(labels, i):
                return
        undecided = [i for i in range(size) if labels[i] is None]
        if not undecided:
            members = frozenset(i for i in range(size) if labels[i] == "IN")
            if all(af.attackers_of(i) & members for i in range(size) if labels[i] == "OUT"):
                result.append(members)
            return
        index = undecided[0]
        if index not in af.targets_of(index):
            neighbours = af.attackers_of(index) | af.targets_of(index)
            if all(labels[j] != "IN" for j in neighbours):
                chosen = list(labels)
                chosen[index] = "IN"
                for j in neighbours:
                    chosen[j] = "OUT"
                search(chosen)
        rejected = list(labels)
        rejected[index] = "OUT"
        search(rejected)

    search([None] * size)
    return result


def _canonical(sets: Iterable[FrozenSet[int]], kind: ExtensionKind) -> List[Extension]:
    return [Extension(members, kind) for members in sorted(set(sets), key=sorted)]


def stable_extensions(
    af: ArgumentationFramework, exhaustive_limit: Optional[int] = None
) -> List[Extension]:
    """無衝突且攻擊所有外部論證的集合"""
    limit = exhaustive_limit or settings.EXHAUSTIVE_LIMIT
    if len(af) < limit:
        found = _stable_by_subsets(af)
    else:
        found = _stable_by_labelling(af)
    return _canonical(found, ExtensionKind.STABLE)


def _maximal_conflict_free_masks(af: ArgumentationFramework) -> List[int]:
    """⊆-最大的無衝突集合；自我攻擊的論證永遠不在其中"""
    targets, attackers = _attack_masks(af)
    size = len(af)
    conflicts = [targets[i] | attackers[i] for i in range(size)]
    excluded = sum(1 << i for i in range(size) if targets[i] >> i & 1)
    found = []

    def extend(i: int, mask: int, forbidden: int) -> None:
        if i == size:
            for j in range(size):
                if not (mask | excluded) >> j & 1 and not conflicts[j] & mask:
                    return
            found.append(mask)
            return
        bit = 1 << i
        if not (forbidden | excluded) & bit:
            extend(i + 1, mask | bit, forbidden | conflicts[i])
        # 不選 i 時，i 必須已被排除或之後的鄰居會被選入
        if (forbidden | excluded) & bit or conflicts[i] >> (i + 1):
            extend(i + 1, mask, forbidden)

    extend(0, 0, 0)
    return found


def _admissible_core(mask: int, af: ArgumentationFramework) -> int:
    """無衝突集合中最大的可接受子集：反覆移除未受防禦的成員"""
    _, attackers = _attack_masks(af)
    size = len(af)
    while True:
        kept = mask
        for i in range(size):
            if mask >> i & 1 and any(
                not attackers[b] & mask for b in range(size) if attackers[i] >> b & 1
            ):
                kept &= ~(1 << i)
        if kept == mask:
            return mask
        mask = kept


def _preferred_by_subsets(af: ArgumentationFramework) -> List[FrozenSet[int]]:
    size = len(af)
    admissible = []
    for mask in _conflict_free_masks(af):
        members = _members(mask, size)
        if all(defends(members, i, af) for i in members):
            admissible.append(members)
    return [s for s in admissible if not any(s < other for other in admissible)]


def _preferred_by_cores(af: ArgumentationFramework) -> List[FrozenSet[int]]:
    """每個偏好擴充都是某個最大無衝突集合的可接受核心"""
    size = len(af)
    cores = {_admissible_core(mask, af) for mask in _maximal_conflict_free_masks(af)}
    return [
        _members(core, size)
        for core in cores
        if not any(core != other and core & other == core for other in cores)
    ]


def preferred_extensions(
    af: ArgumentationFramework, exhaustive_limit: Optional[int] = None
) -> List[Extension]:
    """⊆-最大的可接受 (admissible) 集合"""
    limit = exhaustive_limit or settings.EXHAUSTIVE_LIMIT
    if len(af) < limit:
        found = _preferred_by_subsets(af)
    else:
        found = _preferred_by_cores(af)
    return _canonical(found, ExtensionKind.PREFERRED)


def grounded_extension(af: ArgumentationFramework) -> Extension:
    """防禦函數從空集合開始的最小不動點"""
    current: FrozenSet[int] = frozenset()
    while True:
        following = frozenset(i for i in range(len(af)) if defends(current, i, af))
        if following == current:
            return Extension(current, ExtensionKind.GROUNDED)
        current = following


def allowed_assumptions(extension: Extension, af: ArgumentationFramework) -> FrozenSet[Assumption]:
    """Ω(E)：框架中衝突結論不被 E 中任何論證支持的假設"""
    conflicted = {
        af.arguments[i].conclusion.atom
        for i in extension.members
        if af.arguments[i].is_conflict
    }
    return frozenset(a for a in af.assumptions if a not in conflicted)


def supporting_members(
    extension: Extension, af: ArgumentationFramework, query: Proposition
) -> List[int]:
    """擴充中支持 Tφ 的論證索引"""
    goal = Supports(Label.T, query)
    return [i for i in extension.sorted_members() if af.arguments[i].conclusion == goal]

"""
推理資料模型 - 帶標記命題、表列 (tableau)、論證與論證框架、蘊涵判定結果
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, List, Optional, Tuple, Union

from models.kb_models import AtomicConcept, ConceptAssertion, Proposition
from models.semantics_models import SubsumptionMode


class Label(Enum):
    """表列標記"""

    T = "T"  # 至少為真
    F = "F"  # 至少為假
    TBAR = "Tbar"  # 非真
    FBAR = "Fbar"  # 非假

    @property
    def complement(self) -> "Label":
        return _COMPLEMENTS[self]

    @property
    def symbol(self) -> str:
        return _SYMBOLS[self]


_COMPLEMENTS = {
    Label.T: Label.TBAR,
    Label.TBAR: Label.T,
    Label.F: Label.FBAR,
    Label.FBAR: Label.F,
}

_SYMBOLS = {Label.T: "T", Label.F: "F", Label.TBAR: "T̄", Label.FBAR: "F̄"}


@dataclass(frozen=True)
class SignedProposition:
    """帶標記的命題 Lα"""

    label: Label
    prop: Proposition


@dataclass(frozen=True, order=True)
class Assumption:
    """假設 C̄(a:C)：原子斷言 a:C 上沒有衝突

    同一個 (個體, 原子概念) 組合也用來表示衝突結論 C(a:C) 的對象。
    """

    individual: str
    concept: str

    @property
    def assertion(self) -> ConceptAssertion:
        return ConceptAssertion(self.individual, AtomicConcept(self.concept))

    def __str__(self):
        return f"{self.individual}:{self.concept}"


class ClosureKind(Enum):
    """分支封閉狀態"""

    OPEN = "open"
    STRONG = "strongly_closed"
    WEAK = "weakly_closed"


@dataclass(frozen=True)
class BranchStatus:
    """葉節點狀態；弱封閉時 options 為所有可用來封閉的原子斷言"""

    kind: ClosureKind
    options: FrozenSet[Assumption] = frozenset()
    closing_pair: Optional[Tuple[SignedProposition, ...]] = None

    def __post_init__(self):
        if (self.kind == ClosureKind.WEAK) != bool(self.options):
            raise ValueError("只有弱封閉的分支可以帶有封閉選項")


@dataclass(frozen=True)
class BlockingInfo:
    """被阻擋的新生個體，以及阻擋它的祖先與兩者的 Γ 集合"""

    individual: str
    blocker: Optional[str]
    gamma: FrozenSet[Tuple[Label, str]]
    blocker_gamma: FrozenSet[Tuple[Label, str]] = frozenset()


@dataclass
class TableauNode:
    """表列樹節點：由父節點套用一次規則得到"""

    node_id: int
    parent_id: Optional[int]
    added: Tuple[SignedProposition, ...]
    rule: str
    children: List[int] = field(default_factory=list)
    status: Optional[BranchStatus] = None
    blocked: Tuple[BlockingInfo, ...] = ()

    @property
    def is_leaf(self) -> bool:
        return not self.children


@dataclass
class Tableau:
    """完整的表列樹"""

    root: Tuple[SignedProposition, ...]
    mode: SubsumptionMode
    nodes: List[TableauNode] = field(default_factory=list)
    fresh_individuals: List[str] = field(default_factory=list)

    def leaves(self) -> List[TableauNode]:
        return [node for node in self.nodes if node.is_leaf]

    def branch(self, node_id: int) -> List[SignedProposition]:
        """從根到指定節點累積的帶標記命題"""
        chain = []
        current: Optional[int] = node_id
        while current is not None:
            node = self.nodes[current]
            chain.append(node)
            current = node.parent_id
        formulas: List[SignedProposition] = []
        for node in reversed(chain):
            formulas.extend(node.added)
        return formulas

    @property
    def is_closed(self) -> bool:
        return all(leaf.status.kind != ClosureKind.OPEN for leaf in self.leaves())


class ProofKind(Enum):
    """證明結果"""

    PROVED = "proved"
    PROVED_UNDER_ASSUMPTIONS = "proved_under_assumptions"
    NOT_PROVABLE = "not_provable"


@dataclass
class ProofResult:
    """prove 的結果：最小假設集合依正規順序排列"""

    kind: ProofKind
    goal: SignedProposition
    assumption_sets: Tuple[FrozenSet[Assumption], ...]
    tableau: Tableau


@dataclass(frozen=True)
class Supports:
    """論證結論 Lφ (L 為 T 或 F)"""

    label: Label
    prop: Proposition


@dataclass(frozen=True)
class Conflict:
    """論證結論 C(a:C)：原子斷言上有衝突"""

    atom: Assumption


Conclusion = Union[Supports, Conflict]


def assumption_set_key(assumptions: FrozenSet[Assumption]):
    """假設集合的正規排序鍵：先比大小，再比排序後的內容"""
    return (len(assumptions), sorted(assumptions))


@dataclass(frozen=True)
class Argument:
    """論證 (假設集合, 結論)，以結構判斷相等"""

    assumptions: FrozenSet[Assumption]
    conclusion: Conclusion

    def __post_init__(self):
        object.__setattr__(self, "assumptions", frozenset(self.assumptions))
        if isinstance(self.conclusion, Conflict):
            if self.conclusion.atom in self.assumptions:
                raise ValueError(f"衝突論證不可假設自己的結論: {self.conclusion.atom}")
        elif self.conclusion.label not in (Label.T, Label.F):
            raise ValueError("支持論證的標記必須為 T 或 F")

    @property
    def is_conflict(self) -> bool:
        return isinstance(self.conclusion, Conflict)

    def attacks(self, other: "Argument") -> bool:
        return self.is_conflict and self.conclusion.atom in other.assumptions


class ExtensionKind(Enum):
    """擴充語意"""

    STABLE = "stable"
    PREFERRED = "preferred"
    GROUNDED = "grounded"


@dataclass(frozen=True)
class Extension:
    """擴充：框架中論證的索引集合"""

    members: FrozenSet[int]
    kind: ExtensionKind

    def sorted_members(self) -> List[int]:
        return sorted(self.members)


@dataclass
class ArgumentationFramework:
    """論證框架；攻擊關係由論證推導，不可自由指定"""

    arguments: Tuple[Argument, ...] = ()
    _attackers_of: Dict[int, FrozenSet[int]] = field(
        default_factory=dict, init=False, repr=False
    )
    _targets_of: Dict[int, FrozenSet[int]] = field(
        default_factory=dict, init=False, repr=False
    )

    def __post_init__(self):
        self.arguments = tuple(self.arguments)
        if len(set(self.arguments)) != len(self.arguments):
            raise ValueError("論證框架中不可有重複論證")
        indices = range(len(self.arguments))
        self._attackers_of = {
            j: frozenset(i for i in indices if self.arguments[i].attacks(self.arguments[j]))
            for j in indices
        }
        self._targets_of = {
            i: frozenset(j for j in indices if i in self._attackers_of[j]) for i in indices
        }

    @property
    def attacks(self) -> List[Tuple[int, int]]:
        """(攻擊者, 目標) 索引對，依索引排序"""
        return sorted(
            (i, j) for j, attackers in self._attackers_of.items() for i in attackers
        )

    def attackers_of(self, index: int) -> FrozenSet[int]:
        return self._attackers_of[index]

    def targets_of(self, index: int) -> FrozenSet[int]:
        return self._targets_of[index]

    def index_of(self, argument: Argument) -> int:
        return self.arguments.index(argument)

    @property
    def assumptions(self) -> FrozenSet[Assumption]:
        """框架中出現過的所有假設"""
        found = set()
        for argument in self.arguments:
            found.update(argument.assumptions)
        return frozenset(found)

    def __len__(self):
        return len(self.arguments)


class VerdictKind(Enum):
    """蘊涵判定"""

    ENTAILED_MONOTONE = "entailed_monotone"
    ENTAILED_CONFLICT_MINIMAL = "entailed_conflict_minimal"
    NOT_ENTAILED = "not_entailed"

    @property
    def entailed(self) -> bool:
        return self != VerdictKind.NOT_ENTAILED


@dataclass
class LPDecision:
    """LP 蘊涵判定與表列證據"""

    entailed: bool
    proof: ProofResult


@dataclass
class Verdict:
    """衝突最小蘊涵判定與證據"""

    kind: VerdictKind
    query: Proposition
    mode: SubsumptionMode
    proof: ProofResult
    framework: Optional[ArgumentationFramework] = None
    stable_extensions: Tuple[Extension, ...] = ()
    # 穩定擴充索引 -> 其中支持查詢的論證索引
    witnesses: Dict[int, int] = field(default_factory=dict)
    counterexample: Optional[Extension] = None

    def __post_init__(self):
        if self.kind == VerdictKind.ENTAILED_CONFLICT_MINIMAL:
            if set(self.witnesses) != set(range(len(self.stable_extensions))):
                raise ValueError("每個穩定擴充都必須有支持查詢的論證")
        if self.kind == VerdictKind.NOT_ENTAILED and self.counterexample is None:
            raise ValueError("不蘊涵的判定必須附上反例擴充")

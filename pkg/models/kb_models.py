"""
ALC 知識庫資料模型 - 概念、命題、知識庫與簽章
"""

from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, Iterator, Tuple, Union


@dataclass(frozen=True)
class AtomicConcept:
    """原子概念"""

    name: str


@dataclass(frozen=True)
class Top:
    """頂概念 ⊤"""


@dataclass(frozen=True)
class Bottom:
    """底概念 ⊥"""


@dataclass(frozen=True)
class Not:
    """否定 ¬C"""

    operand: "ConceptExpr"


@dataclass(frozen=True)
class And:
    """交集 C ⊓ D"""

    left: "ConceptExpr"
    right: "ConceptExpr"


@dataclass(frozen=True)
class Or:
    """聯集 C ⊔ D"""

    left: "ConceptExpr"
    right: "ConceptExpr"


@dataclass(frozen=True)
class Exists:
    """存在限制 ∃R.C"""

    role: str
    filler: "ConceptExpr"


@dataclass(frozen=True)
class Forall:
    """全稱限制 ∀R.C"""

    role: str
    filler: "ConceptExpr"


ConceptExpr = Union[AtomicConcept, Top, Bottom, Not, And, Or, Exists, Forall]


@dataclass(frozen=True)
class Subsumption:
    """包含公理 C ⊑ D"""

    lhs: ConceptExpr
    rhs: ConceptExpr


@dataclass(frozen=True)
class Equality:
    """等價公理 C = D"""

    lhs: ConceptExpr
    rhs: ConceptExpr


@dataclass(frozen=True)
class ConceptAssertion:
    """概念斷言 a:C"""

    individual: str
    concept: ConceptExpr


@dataclass(frozen=True)
class RoleAssertion:
    """角色斷言 (a, b):R"""

    subject: str
    object: str
    role: str


Proposition = Union[Subsumption, Equality, ConceptAssertion, RoleAssertion]

TERMINOLOGICAL = (Subsumption, Equality)
ASSERTIONAL = (ConceptAssertion, RoleAssertion)


def iter_subconcepts(concept: ConceptExpr) -> Iterator[ConceptExpr]:
    """前序走訪概念樹"""
    stack = [concept]
    while stack:
        current = stack.pop()
        yield current
        if isinstance(current, Not):
            stack.append(current.operand)
        elif isinstance(current, (And, Or)):
            stack.append(current.right)
            stack.append(current.left)
        elif isinstance(current, (Exists, Forall)):
            stack.append(current.filler)


def proposition_concepts(prop: Proposition) -> Tuple[ConceptExpr, ...]:
    """命題中直接出現的概念"""
    if isinstance(prop, (Subsumption, Equality)):
        return (prop.lhs, prop.rhs)
    if isinstance(prop, ConceptAssertion):
        return (prop.concept,)
    return ()


def is_quantifier_free(props: Iterable[Proposition]) -> bool:
    """命題集合中是否不含 ∃/∀"""
    for prop in props:
        for concept in proposition_concepts(prop):
            for sub in iter_subconcepts(concept):
                if isinstance(sub, (Exists, Forall)):
                    return False
    return True


def _dedupe(props: Iterable[Proposition]) -> Tuple[Proposition, ...]:
    seen = set()
    ordered = []
    for prop in props:
        if prop not in seen:
            seen.add(prop)
            ordered.append(prop)
    return tuple(ordered)


@dataclass(frozen=True, eq=False)
class KnowledgeBase:
    """知識庫 K = (TBox, ABox)，重複命題自動合併，保留插入順序"""

    tbox: Tuple[Proposition, ...] = ()
    abox: Tuple[Proposition, ...] = ()

    def __post_init__(self):
        for prop in self.tbox:
            if not isinstance(prop, TERMINOLOGICAL):
                raise ValueError(f"TBox 只能包含公理: {prop!r}")
        for prop in self.abox:
            if not isinstance(prop, ASSERTIONAL):
                raise ValueError(f"ABox 只能包含斷言: {prop!r}")
        object.__setattr__(self, "tbox", _dedupe(self.tbox))
        object.__setattr__(self, "abox", _dedupe(self.abox))

    @classmethod
    def from_propositions(cls, props: Iterable[Proposition]) -> "KnowledgeBase":
        """依命題種類分配到 TBox 與 ABox"""
        props = list(props)
        return cls(
            tbox=tuple(p for p in props if isinstance(p, TERMINOLOGICAL)),
            abox=tuple(p for p in props if isinstance(p, ASSERTIONAL)),
        )

    @property
    def propositions(self) -> Tuple[Proposition, ...]:
        return self.tbox + self.abox

    def extended(self, props: Iterable[Proposition]) -> "KnowledgeBase":
        """回傳加入額外命題後的新知識庫"""
        return KnowledgeBase.from_propositions(list(self.propositions) + list(props))

    def __eq__(self, other):
        if not isinstance(other, KnowledgeBase):
            return NotImplemented
        return set(self.tbox) == set(other.tbox) and set(self.abox) == set(other.abox)

    def __hash__(self):
        return hash((frozenset(self.tbox), frozenset(self.abox)))

    def __len__(self):
        return len(self.tbox) + len(self.abox)


@dataclass(frozen=True)
class Signature:
    """知識庫與查詢中出現的識別字"""

    atomic_concepts: FrozenSet[str] = field(default_factory=frozenset)
    roles: FrozenSet[str] = field(default_factory=frozenset)
    individuals: FrozenSet[str] = field(default_factory=frozenset)

    def atoms(self) -> Tuple[Tuple[str, str], ...]:
        """所有 (個體, 原子概念) 組合，依字母排序"""
        return tuple(
            (individual, concept)
            for individual in sorted(self.individuals)
            for concept in sorted(self.atomic_concepts)
        )

"""
三值 (LP) 語意資料模型
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Hashable, Tuple


class SubsumptionMode(Enum):
    """包含公理的解讀方式"""

    INTERNAL = "internal"  # 內部蘊涵
    MATERIAL = "material"  # 實質蘊涵 (預設)


class TruthSet(Enum):
    """LP 真值：{t}、{f}、{t,f}"""

    TRUE = "T"
    FALSE = "F"
    CONFLICT = "TF"

    @classmethod
    def from_flags(cls, is_true: bool, is_false: bool) -> "TruthSet":
        if is_true and is_false:
            return cls.CONFLICT
        if is_true:
            return cls.TRUE
        if is_false:
            return cls.FALSE
        raise ValueError("LP 真值不可為空集合")

    @property
    def has_true(self) -> bool:
        return self in (TruthSet.TRUE, TruthSet.CONFLICT)

    @property
    def has_false(self) -> bool:
        return self in (TruthSet.FALSE, TruthSet.CONFLICT)


ObjectSet = FrozenSet[Hashable]


def _by_name(item):
    return item[0]


@dataclass(frozen=True)
class FiniteInterpretation:
    """有限論域上的三值解讀 I = (O, π)"""

    domain: ObjectSet
    concept_map: Dict[str, Tuple[ObjectSet, ObjectSet]] = field(default_factory=dict)
    individual_map: Dict[str, Hashable] = field(default_factory=dict)
    role_map: Dict[str, FrozenSet[Tuple[Hashable, Hashable]]] = field(
        default_factory=dict
    )
    top_negatives: ObjectSet = frozenset()
    bottom_positives: ObjectSet = frozenset()

    def __post_init__(self):
        if not self.domain:
            raise ValueError("論域不可為空")
        for name, (positives, negatives) in self.concept_map.items():
            if positives | negatives != self.domain:
                raise ValueError(f"概念 {name} 的 P ∪ N 必須等於論域")
        for name, obj in self.individual_map.items():
            if obj not in self.domain:
                raise ValueError(f"個體 {name} 對應的物件不在論域中")
        for name, pairs in self.role_map.items():
            for subject, obj in pairs:
                if subject not in self.domain or obj not in self.domain:
                    raise ValueError(f"角色 {name} 含有論域外的物件")
        if not (self.top_negatives <= self.domain and self.bottom_positives <= self.domain):
            raise ValueError("⊤/⊥ 的額外實例必須在論域中")

    def __hash__(self):
        return hash(
            (
                self.domain,
                tuple(sorted(self.concept_map.items(), key=_by_name)),
                tuple(sorted(self.individual_map.items(), key=_by_name)),
                tuple(sorted(self.role_map.items(), key=_by_name)),
            )
        )

"""
最小擊中集合工具
"""

from typing import Callable, FrozenSet, Hashable, Iterable, List, Optional


def minimize(sets: Iterable[FrozenSet], key: Optional[Callable] = None) -> List[FrozenSet]:
    """只保留 ⊆-最小的集合（去除重複），依 key 排序"""
    distinct = set(frozenset(s) for s in sets)
    minimal = [s for s in distinct if not any(other < s for other in distinct)]
    return sorted(minimal, key=key or _default_key)


def minimal_hitting_sets(
    families: Iterable[Iterable[Hashable]], key: Optional[Callable] = None
) -> List[FrozenSet]:
    """所有 ⊆-最小擊中集合：每個集合族至少選中一個元素

    空集合族列表只有空擊中集合；含空集合族時沒有擊中集合。
    """
    current: List[FrozenSet] = [frozenset()]
    for family in families:
        family = frozenset(family)
        if not family:
            return []
        extended = []
        for hitting in current:
            if hitting & family:
                extended.append(hitting)
            else:
                extended.extend(hitting | {element} for element in family)
        current = minimize(extended, key)
    return minimize(current, key)


def minimal_unions(
    left: Iterable[FrozenSet], right: Iterable[FrozenSet], key: Optional[Callable] = None
) -> List[FrozenSet]:
    """兩個集合族的交叉聯集，再取最小者"""
    right = list(right)
    return minimize((a | b for a in left for b in right), key)


def _default_key(s: FrozenSet):
    return (len(s), sorted(s))

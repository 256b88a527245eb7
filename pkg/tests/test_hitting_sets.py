"""
最小擊中集合工具測試
"""

from utils.hitting_sets import minimal_hitting_sets, minimal_unions, minimize


class TestHittingSets:
    """測試集合族運算"""

    def test_minimize_drops_supersets_and_duplicates(self):
        sets = [frozenset("ab"), frozenset("a"), frozenset("a"), frozenset("bc")]
        assert minimize(sets) == [frozenset("a"), frozenset("bc")]

    def test_minimal_hitting_sets(self):
        families = [{"C", "D"}, {"C"}, {"D", "E"}]
        assert minimal_hitting_sets(families) == [frozenset("CD"), frozenset("CE")]

    def test_no_families(self):
        assert minimal_hitting_sets([]) == [frozenset()]

    def test_empty_family_cannot_be_hit(self):
        assert minimal_hitting_sets([{"C"}, set()]) == []

    def test_minimal_unions(self):
        left = [frozenset("a"), frozenset("b")]
        right = [frozenset("a"), frozenset("c")]
        assert minimal_unions(left, right) == [frozenset("a"), frozenset("bc")]

    def test_minimal_unions_with_empty_side(self):
        assert minimal_unions([frozenset("a")], []) == []

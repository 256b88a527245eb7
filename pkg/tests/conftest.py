"""
共用測試設定 - 範例知識庫與隨機知識庫產生器
"""

import random
import sys
from pathlib import Path
from typing import Callable, List, Tuple

import pytest

# 添加專案根目錄到 Python 搜尋路徑
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from models.kb_models import (  # noqa: E402
    And,
    AtomicConcept,
    ConceptAssertion,
    KnowledgeBase,
    Not,
    Or,
    Proposition,
    Subsumption,
)
from services.kb_parser import parse_kb  # noqa: E402

KB_DIR = project_root / "kb"

INDIVIDUALS = ("a", "b", "c")
CONCEPTS = ("C", "D", "E", "G")


def load_kb(name: str) -> KnowledgeBase:
    return parse_kb((KB_DIR / name).read_text(encoding="utf-8"))


@pytest.fixture
def example1_kb() -> KnowledgeBase:
    """{a:¬C, a:C⊔D}"""
    return load_kb("example1.kb")


@pytest.fixture
def example3_kb() -> KnowledgeBase:
    """{a:¬C, a:C⊔D, a:¬D⊔E, a:¬E}"""
    return load_kb("example3.kb")


@pytest.fixture
def example4_kb() -> KnowledgeBase:
    """{a:¬C, a:C⊔D, a:¬D, a:C⊔E, a:D⊔E}"""
    return load_kb("example4.kb")


@pytest.fixture
def nonmonotonic_kb() -> KnowledgeBase:
    return load_kb("nonmonotonic.kb")


@pytest.fixture
def blocking_kb() -> KnowledgeBase:
    return load_kb("blocking.kb")


@pytest.fixture
def patel_schneider_kb() -> KnowledgeBase:
    return load_kb("patel_schneider.kb")


def _literal(rng: random.Random, concepts):
    atom = AtomicConcept(rng.choice(concepts))
    return Not(atom) if rng.random() < 0.5 else atom


def random_assertion(rng: random.Random, individuals, concepts) -> ConceptAssertion:
    """原子、否定原子，或兩個文字的 ⊔/⊓"""
    individual = rng.choice(individuals)
    roll = rng.random()
    if roll < 0.3:
        return ConceptAssertion(individual, AtomicConcept(rng.choice(concepts)))
    if roll < 0.5:
        return ConceptAssertion(individual, Not(AtomicConcept(rng.choice(concepts))))
    left, right = _literal(rng, concepts), _literal(rng, concepts)
    if roll < 0.8:
        return ConceptAssertion(individual, Or(left, right))
    return ConceptAssertion(individual, And(left, right))


def random_proposition(rng: random.Random, individuals, concepts) -> Proposition:
    if rng.random() < 0.2:
        lhs, rhs = rng.sample(concepts, 2) if len(concepts) > 1 else (concepts[0],) * 2
        return Subsumption(AtomicConcept(lhs), AtomicConcept(rhs))
    return random_assertion(rng, individuals, concepts)


def random_instance(seed: int, max_props: int = 6) -> Tuple[KnowledgeBase, ConceptAssertion]:
    """≤3 個體、≤4 原子概念、≤6 命題的無量詞知識庫與斷言查詢"""
    rng = random.Random(seed)
    individuals = INDIVIDUALS[: rng.randint(1, len(INDIVIDUALS))]
    concepts = CONCEPTS[: rng.randint(1, len(CONCEPTS))]
    props: List[Proposition] = [
        random_proposition(rng, individuals, concepts)
        for _ in range(rng.randint(1, max_props))
    ]
    query = random_assertion(rng, individuals, concepts)
    return KnowledgeBase.from_propositions(props), query


@pytest.fixture
def random_instances() -> Callable[..., List[Tuple[int, KnowledgeBase, ConceptAssertion]]]:
    """依種子產生可重現的隨機實例"""

    def build(count: int, offset: int = 0, max_props: int = 6):
        return [
            (seed,) + random_instance(seed, max_props)
            for seed in range(offset, offset + count)
        ]

    return build

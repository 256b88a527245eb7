"""
知識庫語法測試 - 剖析、序列化、簽章與錯誤位置
"""

import random

import pytest

from models.exceptions import KBSyntaxError
from models.kb_models import (
    And,
    AtomicConcept,
    Bottom,
    ConceptAssertion,
    Equality,
    Exists,
    Forall,
    KnowledgeBase,
    Not,
    Or,
    RoleAssertion,
    Subsumption,
    Top,
)
from services.kb_parser import (
    parse_concept,
    parse_kb,
    parse_proposition,
    serialize,
    signature_of,
)

C, D, E = AtomicConcept("C"), AtomicConcept("D"), AtomicConcept("E")


class TestParseConcept:
    """測試概念剖析"""

    def test_negation(self):
        assert parse_concept("~C") == Not(C)

    def test_disjunction(self):
        assert parse_concept("C | D") == Or(C, D)

    def test_exists_with_parenthesized_filler(self):
        assert parse_concept("exists R. (C & D)") == Exists("R", And(C, D))

    def test_forall_and_constants(self):
        assert parse_concept("forall R. top") == Forall("R", Top())
        assert parse_concept("~bot") == Not(Bottom())

    def test_negation_binds_tighter_than_binary(self):
        """~C | D 為 (¬C) ⊔ D"""
        assert parse_concept("~C | D") == Or(Not(C), D)
        assert parse_concept("~(C & D)") == Not(And(C, D))

    def test_nested_binary_needs_parentheses(self):
        assert parse_concept("(C | D) & E") == And(Or(C, D), E)
        with pytest.raises(KBSyntaxError):
            parse_concept("C | D & E")

    def test_keyword_prefix_is_identifier(self):
        assert parse_concept("topic") == AtomicConcept("topic")


class TestParseKB:
    """測試知識庫剖析"""

    def test_example_kb(self, example1_kb):
        assert example1_kb.tbox == ()
        assert example1_kb.abox == (
            ConceptAssertion("a", Not(C)),
            ConceptAssertion("a", Or(C, D)),
        )

    def test_empty_input(self):
        kb = parse_kb("")
        assert kb == KnowledgeBase()
        assert len(kb) == 0

    def test_tbox_and_abox_are_separated(self):
        kb = parse_kb("C <= D. a : C.")
        assert kb.tbox == (Subsumption(C, D),)
        assert kb.abox == (ConceptAssertion("a", C),)

    def test_equality_role_assertion_and_comments(self):
        text = "# 註解\nC == D.\n(a, b) : R.  # 行尾註解\n"
        kb = parse_kb(text)
        assert kb.tbox == (Equality(C, D),)
        assert kb.abox == (RoleAssertion("a", "b", "R"),)

    def test_duplicates_are_merged(self):
        kb = parse_kb("a : C. a : C. a : D.")
        assert kb.abox == (ConceptAssertion("a", C), ConceptAssertion("a", D))

    def test_bytes_input(self):
        assert parse_kb(b"a : C.") == parse_kb("a : C.")

    def test_query_period_is_optional(self):
        assert parse_proposition("a : D") == parse_proposition("a : D.")
        assert parse_proposition("C <= D") == Subsumption(C, D)


class TestSyntaxErrors:
    """測試語法錯誤的位置資訊"""

    def test_unexpected_character_position(self):
        with pytest.raises(KBSyntaxError) as info:
            parse_kb("a : C$.")
        assert info.value.line == 1
        assert info.value.column == 6

    def test_error_on_second_line(self):
        with pytest.raises(KBSyntaxError) as info:
            parse_kb("a : C.\nb : .")
        assert info.value.line == 2

    def test_missing_period_in_kb(self):
        with pytest.raises(KBSyntaxError) as info:
            parse_kb("a : C")
        assert info.value.line == 1

    def test_error_is_value_error(self):
        with pytest.raises(ValueError):
            parse_proposition("a :")


class TestSerialize:
    """測試序列化"""

    def test_concepts(self):
        assert serialize(Not(C)) == "~C"
        assert serialize(And(C, Or(D, E))) == "(C & (D | E))"
        assert serialize(Exists("R", C)) == "exists R. C"

    def test_propositions(self):
        assert serialize(ConceptAssertion("a", C)) == "a : C"
        assert serialize(RoleAssertion("a", "b", "R")) == "(a, b) : R"
        assert serialize(Subsumption(C, D)) == "C <= D"
        assert serialize(Equality(C, D)) == "C == D"

    def test_kb_keeps_insertion_order(self, example3_kb):
        text = serialize(example3_kb)
        assert text.splitlines() == [
            "a : ~C.",
            "a : (C | D).",
            "a : (~D | E).",
            "a : ~E.",
        ]
        assert parse_kb(text) == example3_kb

    def test_quantified_kb_reparses(self, blocking_kb):
        assert parse_kb(serialize(blocking_kb)) == blocking_kb


class TestSignature:
    """測試簽章計算"""

    def test_example3_with_query(self, example3_kb):
        sig = signature_of(example3_kb, parse_proposition("a : D"))
        assert sig.atomic_concepts == {"C", "D", "E"}
        assert sig.roles == frozenset()
        assert sig.individuals == {"a"}

    def test_empty_kb_with_query(self):
        sig = signature_of(KnowledgeBase(), parse_proposition("a : C"))
        assert sig.atomic_concepts == {"C"}
        assert sig.individuals == {"a"}

    def test_role_assertion(self):
        sig = signature_of(parse_kb("(a, b) : R."))
        assert sig.roles == {"R"}
        assert sig.individuals == {"a", "b"}

    def test_roles_inside_concepts(self, blocking_kb):
        sig = signature_of(blocking_kb)
        assert sig.roles == {"R"}
        assert sig.atoms() == (("a", "C"),)


def random_concept(rng: random.Random, depth: int = 3):
    if depth == 0 or rng.random() < 0.3:
        return rng.choice([C, D, E, AtomicConcept("topic"), Top(), Bottom()])
    shape = rng.choice(["not", "and", "or", "exists", "forall"])
    if shape == "not":
        return Not(random_concept(rng, depth - 1))
    if shape in ("and", "or"):
        cls = And if shape == "and" else Or
        return cls(random_concept(rng, depth - 1), random_concept(rng, depth - 1))
    cls = Exists if shape == "exists" else Forall
    return cls(rng.choice(["R", "S"]), random_concept(rng, depth - 1))


def random_statement(rng: random.Random):
    shape = rng.choice(["assertion", "assertion", "role", "subsumption", "equality"])
    if shape == "assertion":
        return ConceptAssertion(rng.choice("ab"), random_concept(rng))
    if shape == "role":
        return RoleAssertion(rng.choice("ab"), rng.choice("ab"), rng.choice(["R", "S"]))
    cls = Subsumption if shape == "subsumption" else Equality
    return cls(random_concept(rng), random_concept(rng))


class TestRoundTrip:
    """隨機語法樹的序列化後再剖析"""

    def test_concepts(self):
        rng = random.Random(7)
        for _ in range(300):
            concept = random_concept(rng, depth=4)
            assert parse_concept(serialize(concept)) == concept, serialize(concept)

    def test_propositions(self):
        rng = random.Random(11)
        for _ in range(300):
            prop = random_statement(rng)
            assert parse_proposition(serialize(prop)) == prop, serialize(prop)

    def test_knowledge_bases(self):
        rng = random.Random(13)
        for _ in range(100):
            kb = KnowledgeBase.from_propositions(
                random_statement(rng) for _ in range(rng.randint(0, 6))
            )
            assert parse_kb(serialize(kb)) == kb


class TestTotality:
    """任意輸入只會剖析成功或丟出帶位置的 KBSyntaxError"""

    TOKENS = ["a", "C", "R", "top", "bot", "exists", "forall", "~", "&", "|", "(", ")",
              ",", ":", ".", "<=", "==", "#", " ", "\n", "$", "é", "\x00"]

    def check(self, text):
        try:
            parse_kb(text)
        except KBSyntaxError as e:
            assert e.line >= 1
            assert e.column >= 1

    def test_token_soup(self):
        rng = random.Random(17)
        for _ in range(1000):
            self.check("".join(rng.choice(self.TOKENS) for _ in range(rng.randint(0, 20))))

    def test_random_bytes(self):
        rng = random.Random(19)
        for _ in range(1000):
            self.check(bytes(rng.randrange(256) for _ in range(rng.randint(0, 30))))

    def test_invalid_utf8_position(self):
        with pytest.raises(KBSyntaxError) as info:
            parse_kb(b"a : C.\n# caf\xe9\n")
        assert info.value.line == 2
        assert info.value.column == 6

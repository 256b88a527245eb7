"""
知識庫語法服務 - ALC 概念、命題與知識庫的剖析、序列化與簽章計算
"""

import logging
from typing import Iterable, Optional, Union

from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedEOF, UnexpectedInput

from models.exceptions import KBSyntaxError
from models.kb_models import (
    And,
    AtomicConcept,
    Bottom,
    ConceptAssertion,
    ConceptExpr,
    Equality,
    Exists,
    Forall,
    KnowledgeBase,
    Not,
    Or,
    Proposition,
    RoleAssertion,
    Signature,
    Subsumption,
    Top,
    iter_subconcepts,
    proposition_concepts,
)

logger = logging.getLogger(__name__)

KB_GRAMMAR = r"""
kb: statement*

?statement: (axiom | assertion) "."

proposition_text: (axiom | assertion) "."?

concept_text: top_concept

?axiom: top_concept "<=" top_concept -> subsumption
      | top_concept "==" top_concept -> equality

?assertion: IDENT ":" top_concept -> concept_assertion
          | "(" IDENT "," IDENT ")" ":" IDENT -> role_assertion

?top_concept: concept
            | concept "&" concept -> conj
            | concept "|" concept -> disj

?concept: "top" -> top
        | "bot" -> bot
        | IDENT -> atomic
        | "~" concept -> neg
        | "(" concept "&" concept ")" -> conj
        | "(" concept "|" concept ")" -> disj
        | "exists" IDENT "." concept -> exists
        | "forall" IDENT "." concept -> forall

IDENT: /[A-Za-z_][A-Za-z0-9_]*/
COMMENT: /#[^\n]*/

%import common.WS
%ignore WS
%ignore COMMENT
"""


@v_args(inline=True)
class _AstBuilder(Transformer):
    """將剖析樹轉換為不可變的 AST"""

    def top(self):
        return Top()

    def bot(self):
        return Bottom()

    def atomic(self, name):
        return AtomicConcept(str(name))

    def neg(self, operand):
        return Not(operand)

    def conj(self, left, right):
        return And(left, right)

    def disj(self, left, right):
        return Or(left, right)

    def exists(self, role, filler):
        return Exists(str(role), filler)

    def forall(self, role, filler):
        return Forall(str(role), filler)

    def subsumption(self, lhs, rhs):
        return Subsumption(lhs, rhs)

    def equality(self, lhs, rhs):
        return Equality(lhs, rhs)

    def concept_assertion(self, individual, concept):
        return ConceptAssertion(str(individual), concept)

    def role_assertion(self, subject, obj, role):
        return RoleAssertion(str(subject), str(obj), str(role))

    def concept_text(self, concept):
        return concept

    def proposition_text(self, prop):
        return prop

    def kb(self, *statements):
        return KnowledgeBase.from_propositions(statements)


_PARSER = Lark(
    KB_GRAMMAR,
    parser="lalr",
    start=["kb", "concept_text", "proposition_text"],
    propagate_positions=False,
)


def _describe_terminal(name: str) -> str:
    try:
        pattern = _PARSER.get_terminal(name).pattern
    except KeyError:
        return name
    if pattern.type == "str":
        return repr(pattern.value)
    return name


def _end_position(text: str):
    lines = text.split("\n")
    return len(lines), len(lines[-1]) + 1


def _decode(raw: bytes) -> str:
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError as e:
        line, column = _end_position(raw[: e.start].decode("utf-8"))
        logger.debug("非 UTF-8 位元組於 %d:%d", line, column)
        raise KBSyntaxError("不是有效的 UTF-8 文字", line, column) from e


def _parse(text: Union[str, bytes], start: str):
    if isinstance(text, bytes):
        text = _decode(text)
    try:
        tree = _PARSER.parse(text, start=start)
    except UnexpectedInput as e:
        expected = set()
        for attr in ("expected", "allowed"):
            expected.update(getattr(e, attr, None) or ())
        if isinstance(e, UnexpectedEOF) or getattr(e, "line", -1) < 1:
            line, column = _end_position(text)
            message = "輸入意外結束"
        else:
            line, column = e.line, e.column
            message = "無法辨識的符號"
        logger.debug("剖析失敗 (%s) 於 %d:%d", start, line, column)
        raise KBSyntaxError(
            message, line, column, [_describe_terminal(n) for n in expected]
        ) from e
    return _AstBuilder().transform(tree)


def parse_concept(text: Union[str, bytes]) -> ConceptExpr:
    """剖析單一概念"""
    return _parse(text, "concept_text")


def parse_proposition(text: Union[str, bytes]) -> Proposition:
    """剖析單一命題（查詢字串），結尾句點可省略"""
    return _parse(text, "proposition_text")


def parse_kb(text: Union[str, bytes]) -> KnowledgeBase:
    """剖析知識庫文字，依語句種類分配到 TBox 與 ABox"""
    kb = _parse(text, "kb")
    logger.debug("知識庫剖析完成: TBox %d 條, ABox %d 條", len(kb.tbox), len(kb.abox))
    return kb


def serialize(value: Union[ConceptExpr, Proposition, KnowledgeBase]) -> str:
    """序列化為可重新剖析的文字（二元運算子一律加括號）"""
    if isinstance(value, KnowledgeBase):
        return "\n".join(serialize(prop) + "." for prop in value.propositions)
    if isinstance(value, Subsumption):
        return f"{serialize(value.lhs)} <= {serialize(value.rhs)}"
    if isinstance(value, Equality):
        return f"{serialize(value.lhs)} == {serialize(value.rhs)}"
    if isinstance(value, ConceptAssertion):
        return f"{value.individual} : {serialize(value.concept)}"
    if isinstance(value, RoleAssertion):
        return f"({value.subject}, {value.object}) : {value.role}"
    if isinstance(value, AtomicConcept):
        return value.name
    if isinstance(value, Top):
        return "top"
    if isinstance(value, Bottom):
        return "bot"
    if isinstance(value, Not):
        return "~" + serialize(value.operand)
    if isinstance(value, And):
        return f"({serialize(value.left)} & {serialize(value.right)})"
    if isinstance(value, Or):
        return f"({serialize(value.left)} | {serialize(value.right)})"
    if isinstance(value, Exists):
        return f"exists {value.role}. {serialize(value.filler)}"
    if isinstance(value, Forall):
        return f"forall {value.role}. {serialize(value.filler)}"
    raise TypeError(f"無法序列化的型別: {type(value).__name__}")


def signature_of(
    kb: KnowledgeBase, query: Optional[Proposition] = None
) -> Signature:
    """計算知識庫與查詢中出現的識別字"""
    props: Iterable[Proposition] = list(kb.propositions)
    if query is not None:
        props = list(props) + [query]

    concepts, roles, individuals = set(), set(), set()
    for prop in props:
        if isinstance(prop, ConceptAssertion):
            individuals.add(prop.individual)
        elif isinstance(prop, RoleAssertion):
            individuals.update((prop.subject, prop.object))
            roles.add(prop.role)
        for concept in proposition_concepts(prop):
            for sub in iter_subconcepts(concept):
                if isinstance(sub, AtomicConcept):
                    concepts.add(sub.name)
                elif isinstance(sub, (Exists, Forall)):
                    roles.add(sub.role)

    return Signature(
        atomic_concepts=frozenset(concepts),
        roles=frozenset(roles),
        individuals=frozenset(individuals),
    )

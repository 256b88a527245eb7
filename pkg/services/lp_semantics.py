"""
LP 三值語意服務 - 概念與命題求值、衝突排序，以及有限論域上的窮舉模型檢查
"""

import itertools
import logging
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from models.exceptions import OracleInapplicableError, UnknownIdentifierError
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
    is_quantifier_free,
)
from models.reasoning_models import Assumption
from models.semantics_models import FiniteInterpretation, SubsumptionMode, TruthSet
from services.kb_parser import signature_of

logger = logging.getLogger(__name__)

ConflictSet = FrozenSet[Assumption]

# 單一物件在原子概念上的三種取值，依正規順序
_POINT_VALUES = (TruthSet.TRUE, TruthSet.FALSE, TruthSet.CONFLICT)
_ANONYMOUS_OBJECT = "_o"


def _successors(i: FiniteInterpretation, role: str, obj) -> FrozenSet:
    if role not in i.role_map:
        raise UnknownIdentifierError("角色", role)
    return frozenset(o for s, o in i.role_map[role] if s == obj)


def eval_concept(i: FiniteInterpretation, c: ConceptExpr):
    """計算 π*(c) = ⟨P, N⟩"""
    if isinstance(c, AtomicConcept):
        if c.name not in i.concept_map:
            raise UnknownIdentifierError("原子概念", c.name)
        return i.concept_map[c.name]
    if isinstance(c, Top):
        return i.domain, i.top_negatives
    if isinstance(c, Bottom):
        return i.bottom_positives, i.domain
    if isinstance(c, Not):
        positives, negatives = eval_concept(i, c.operand)
        return negatives, positives
    if isinstance(c, (And, Or)):
        left_p, left_n = eval_concept(i, c.left)
        right_p, right_n = eval_concept(i, c.right)
        if isinstance(c, And):
            return left_p & right_p, left_n | right_n
        return left_p | right_p, left_n & right_n
    if isinstance(c, (Exists, Forall)):
        filler_p, filler_n = eval_concept(i, c.filler)
        positives, negatives = set(), set()
        for obj in i.domain:
            successors = _successors(i, c.role, obj)
            if isinstance(c, Exists):
                if successors & filler_p:
                    positives.add(obj)
                if successors <= filler_n:
                    negatives.add(obj)
            else:
                if successors <= filler_p:
                    positives.add(obj)
                if successors & filler_n:
                    negatives.add(obj)
        return frozenset(positives), frozenset(negatives)
    raise TypeError(f"未知的概念型別: {type(c).__name__}")


def _holds_subsumption(domain, lhs, rhs, mode: SubsumptionMode) -> bool:
    lhs_p, lhs_n = lhs
    rhs_p, rhs_n = rhs
    if mode == SubsumptionMode.INTERNAL:
        return lhs_p <= rhs_p and rhs_n <= lhs_n
    return domain <= (lhs_n | rhs_p)


def eval_prop(i: FiniteInterpretation, p: Proposition, mode: SubsumptionMode) -> TruthSet:
    """計算命題的 LP 真值"""
    if isinstance(p, ConceptAssertion):
        if p.individual not in i.individual_map:
            raise UnknownIdentifierError("個體", p.individual)
        obj = i.individual_map[p.individual]
        positives, negatives = eval_concept(i, p.concept)
        return TruthSet.from_flags(obj in positives, obj in negatives)
    if isinstance(p, RoleAssertion):
        for name in (p.subject, p.object):
            if name not in i.individual_map:
                raise UnknownIdentifierError("個體", name)
        if p.role not in i.role_map:
            raise UnknownIdentifierError("角色", p.role)
        pair = (i.individual_map[p.subject], i.individual_map[p.object])
        return TruthSet.TRUE if pair in i.role_map[p.role] else TruthSet.FALSE
    lhs = eval_concept(i, p.lhs)
    rhs = eval_concept(i, p.rhs)
    if isinstance(p, Subsumption):
        holds = _holds_subsumption(i.domain, lhs, rhs, mode)
    elif mode == SubsumptionMode.INTERNAL:
        holds = lhs == rhs
    else:
        holds = _holds_subsumption(i.domain, lhs, rhs, mode) and _holds_subsumption(
            i.domain, rhs, lhs, mode
        )
    return TruthSet.TRUE if holds else TruthSet.FALSE


def satisfies(i: FiniteInterpretation, kb: KnowledgeBase, mode: SubsumptionMode) -> bool:
    """I ⊨ Σ：每個命題都至少為真"""
    return all(eval_prop(i, prop, mode).has_true for prop in kb.propositions)


def conflict_set(i: FiniteInterpretation, sig: Signature) -> ConflictSet:
    """取值為 {t,f} 的 (具名個體, 原子概念) 組合"""
    found = set()
    for individual, concept in sig.atoms():
        if individual not in i.individual_map or concept not in i.concept_map:
            continue
        positives, negatives = i.concept_map[concept]
        obj = i.individual_map[individual]
        if obj in positives and obj in negatives:
            found.add(Assumption(individual, concept))
    return frozenset(found)


def less_conflicts(i1: FiniteInterpretation, i2: FiniteInterpretation, sig: Signature) -> bool:
    """I1 <c I2：I1 的衝突集合是 I2 的真子集"""
    return conflict_set(i1, sig) < conflict_set(i2, sig)


# --- 窮舉模型檢查 ---------------------------------------------------------


def _point_eval(values: Dict[str, TruthSet], c: ConceptExpr) -> Tuple[bool, bool]:
    """無量詞概念在單一物件上的 (∈P, ∈N)；⊤/⊥ 的額外實例固定為空"""
    if isinstance(c, AtomicConcept):
        value = values[c.name]
        return value.has_true, value.has_false
    if isinstance(c, Top):
        return True, False
    if isinstance(c, Bottom):
        return False, True
    if isinstance(c, Not):
        positive, negative = _point_eval(values, c.operand)
        return negative, positive
    left_p, left_n = _point_eval(values, c.left)
    right_p, right_n = _point_eval(values, c.right)
    if isinstance(c, And):
        return left_p and right_p, left_n or right_n
    return left_p or right_p, left_n and right_n


def _point_holds(values: Dict[str, TruthSet], prop: Proposition, mode: SubsumptionMode) -> bool:
    """公理在單一物件上的條件；無量詞時公理為各物件條件的合取"""
    lhs_p, lhs_n = _point_eval(values, prop.lhs)
    rhs_p, rhs_n = _point_eval(values, prop.rhs)
    if mode == SubsumptionMode.INTERNAL:
        forward = (not lhs_p or rhs_p) and (not rhs_n or lhs_n)
        if isinstance(prop, Subsumption):
            return forward
        return lhs_p == rhs_p and lhs_n == rhs_n
    forward = lhs_n or rhs_p
    if isinstance(prop, Subsumption):
        return forward
    return forward and (rhs_n or lhs_p)


def _require_oracle_scope(props: Sequence[Proposition]) -> None:
    if not is_quantifier_free(props):
        raise OracleInapplicableError("窮舉模型檢查只支援不含 ∃/∀ 的知識庫與查詢")


def _domain_objects(sig: Signature) -> List[str]:
    individuals = sorted(sig.individuals)
    return individuals if individuals else [_ANONYMOUS_OBJECT]


def _local_options(
    kb: KnowledgeBase, sig: Signature, mode: SubsumptionMode
) -> Dict[str, List[Dict[str, TruthSet]]]:
    """每個物件上滿足公理與其概念斷言的原子取值

    無量詞時公理與概念斷言都逐點成立，模型即各物件取值的任意組合。
    """
    concepts = sorted(sig.atomic_concepts)
    axioms = list(kb.tbox)
    assertions_by_individual: Dict[str, List[ConceptAssertion]] = {}
    for prop in kb.abox:
        if isinstance(prop, ConceptAssertion):
            assertions_by_individual.setdefault(prop.individual, []).append(prop)

    options: Dict[str, List[Dict[str, TruthSet]]] = {}
    for obj in _domain_objects(sig):
        local = []
        for combo in itertools.product(_POINT_VALUES, repeat=len(concepts)):
            values = dict(zip(concepts, combo))
            if not all(_point_holds(values, axiom, mode) for axiom in axioms):
                continue
            if not all(
                _point_eval(values, assertion.concept)[0]
                for assertion in assertions_by_individual.get(obj, ())
            ):
                continue
            local.append(values)
        options[obj] = local
    return options


def _local_conflicts(values: Dict[str, TruthSet]) -> FrozenSet[str]:
    return frozenset(c for c, v in values.items() if v == TruthSet.CONFLICT)


def _locally_minimal(local: List[Dict[str, TruthSet]]) -> List[Dict[str, TruthSet]]:
    """衝突最小模型恰為各物件取局部衝突最小取值的組合"""
    minimal = set(_minimal(_local_conflicts(values) for values in local))
    return [values for values in local if _local_conflicts(values) in minimal]


def _build_interpretation(
    assignment: Dict[str, Dict[str, TruthSet]],
    sig: Signature,
    roles: Dict[str, FrozenSet[Tuple[str, str]]],
) -> FiniteInterpretation:
    domain = frozenset(assignment)
    concept_map = {}
    for concept in sorted(sig.atomic_concepts):
        positives = frozenset(o for o, v in assignment.items() if v[concept].has_true)
        negatives = frozenset(o for o, v in assignment.items() if v[concept].has_false)
        concept_map[concept] = (positives, negatives)
    return FiniteInterpretation(
        domain=domain,
        concept_map=concept_map,
        individual_map={name: name for name in sig.individuals},
        role_map=dict(roles),
    )


def _role_assignments(kb: KnowledgeBase, sig: Signature, objects: List[str]):
    """列舉角色外延；每個角色必須包含知識庫中斷言的配對"""
    pairs = list(itertools.product(objects, repeat=2))
    roles = sorted(sig.roles)
    per_role = []
    for role in roles:
        required = frozenset(
            (p.subject, p.object)
            for p in kb.abox
            if isinstance(p, RoleAssertion) and p.role == role
        )
        optional = [pair for pair in pairs if pair not in required]
        extents = []
        for mask in itertools.product((False, True), repeat=len(optional)):
            chosen = frozenset(pair for pair, on in zip(optional, mask) if on)
            extents.append(required | chosen)
        per_role.append(extents)
    for combo in itertools.product(*per_role):
        yield dict(zip(roles, combo))


def _models_from(
    kb: KnowledgeBase,
    sig: Signature,
    mode: SubsumptionMode,
    options: Dict[str, List[Dict[str, TruthSet]]],
) -> Iterator[FiniteInterpretation]:
    objects = list(options)
    role_extents = list(_role_assignments(kb, sig, objects))
    for choice in itertools.product(*(options[obj] for obj in objects)):
        assignment = dict(zip(objects, choice))
        for roles in role_extents:
            model = _build_interpretation(assignment, sig, roles)
            if satisfies(model, kb, mode):
                yield model


def enumerate_models(
    kb: KnowledgeBase, sig: Signature, mode: SubsumptionMode
) -> Iterator[FiniteInterpretation]:
    """列舉固定論域（每個具名個體一個物件）上所有滿足知識庫的解讀"""
    _require_oracle_scope(kb.propositions)
    yield from _models_from(kb, sig, mode, _local_options(kb, sig, mode))


def _minimal(conflict_sets) -> List[FrozenSet]:
    distinct = set(conflict_sets)
    return [cs for cs in distinct if not any(other < cs for other in distinct)]


def _scoped_signature(kb: KnowledgeBase, query: Optional[Proposition]) -> Signature:
    props = list(kb.propositions) + ([query] if query is not None else [])
    _require_oracle_scope(props)
    return signature_of(kb, query)


def _entailed_by_options(
    kb: KnowledgeBase,
    query: Proposition,
    mode: SubsumptionMode,
    options: Dict[str, List[Dict[str, TruthSet]]],
) -> bool:
    """查詢是否在所有由 options 組成的模型中至少為真"""
    if any(not local for local in options.values()):
        return True
    if isinstance(query, RoleAssertion):
        # 角色為二值且彼此獨立，只有知識庫斷言的配對必然存在
        return query in kb.abox
    if isinstance(query, ConceptAssertion):
        return all(_point_eval(values, query.concept)[0] for values in options[query.individual])
    return all(
        _point_holds(values, query, mode) for local in options.values() for values in local
    )


def oracle_lp_entails(kb: KnowledgeBase, query: Proposition, mode: SubsumptionMode) -> bool:
    """Σ ⊨ φ：每個模型都使 φ 至少為真"""
    sig = _scoped_signature(kb, query)
    return _entailed_by_options(kb, query, mode, _local_options(kb, sig, mode))


def oracle_lpm_entails(kb: KnowledgeBase, query: Proposition, mode: SubsumptionMode) -> bool:
    """Σ ⊨<c φ：每個衝突最小模型都使 φ 至少為真"""
    sig = _scoped_signature(kb, query)
    options = {
        obj: _locally_minimal(local) for obj, local in _local_options(kb, sig, mode).items()
    }
    logger.debug(
        "窮舉完成: 每個物件的衝突最小取值數 %s", {o: len(v) for o, v in options.items()}
    )
    return _entailed_by_options(kb, query, mode, options)


def oracle_entails_respecting(
    kb: KnowledgeBase,
    query: Proposition,
    mode: SubsumptionMode,
    assumptions: FrozenSet[Assumption],
) -> bool:
    """只看在 assumptions 中每個原子斷言上都沒有衝突的模型時，φ 是否恆至少為真"""
    sig = _scoped_signature(kb, query)
    options = {
        obj: [
            values
            for values in local
            if not any(Assumption(obj, c) in assumptions for c in _local_conflicts(values))
        ]
        for obj, local in _local_options(kb, sig, mode).items()
    }
    return _entailed_by_options(kb, query, mode, options)


def conflict_minimal_models(
    kb: KnowledgeBase, query: Optional[Proposition], mode: SubsumptionMode
) -> List[FiniteInterpretation]:
    """依正規順序列出衝突最小模型"""
    sig = _scoped_signature(kb, query)
    options = {
        obj: _locally_minimal(local) for obj, local in _local_options(kb, sig, mode).items()
    }
    return list(_models_from(kb, sig, mode, options))


def canonical_model_line(i: FiniteInterpretation, sig: Signature) -> str:
    """模型的正規文字形式：排序後的 individual:Concept=T|F|TF"""
    parts = []
    for individual, concept in sig.atoms():
        positives, negatives = i.concept_map[concept]
        obj = i.individual_map[individual]
        parts.append(
            f"{individual}:{concept}="
            f"{TruthSet.from_flags(obj in positives, obj in negatives).value}"
        )
    return " ".join(parts)

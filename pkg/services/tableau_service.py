"""
帶標記表列 (signed tableaux) 服務 - 規則展開、阻擋、強/弱封閉與最小假設集合
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from config.settings import settings
from models.exceptions import ResourceLimitError
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
    Subsumption,
    Top,
)
from models.reasoning_models import (
    Assumption,
    BlockingInfo,
    BranchStatus,
    ClosureKind,
    Label,
    ProofKind,
    ProofResult,
    SignedProposition,
    Tableau,
    TableauNode,
    assumption_set_key,
)
from models.semantics_models import SubsumptionMode
from services.kb_parser import serialize
from utils.hitting_sets import minimal_hitting_sets

logger = logging.getLogger(__name__)

T, F, TBAR, FBAR = Label.T, Label.F, Label.TBAR, Label.FBAR

# ¬ 規則：標記在否定下的對應
_NEGATED = {T: F, F: T, TBAR: FBAR, FBAR: TBAR}

# 兩個標記同時出現在同一命題上即強封閉
_STRONG_PARTNERS = {T: (TBAR,), TBAR: (T, FBAR), F: (FBAR,), FBAR: (F, TBAR)}

_OPERATOR_SYMBOLS = {Not: "¬", And: "⊓", Or: "⊔", Exists: "∃", Forall: "∀"}


def individuals_of(prop: Proposition) -> Tuple[str, ...]:
    if isinstance(prop, ConceptAssertion):
        return (prop.individual,)
    if isinstance(prop, RoleAssertion):
        return (prop.subject, prop.object)
    return ()


def _strong_pair(
    present: Set[SignedProposition], sp: SignedProposition
) -> Optional[Tuple[SignedProposition, ...]]:
    if isinstance(sp.prop, ConceptAssertion):
        if sp.label == TBAR and isinstance(sp.prop.concept, Top):
            return (sp,)
        if sp.label == FBAR and isinstance(sp.prop.concept, Bottom):
            return (sp,)
    for partner in _STRONG_PARTNERS[sp.label]:
        other = SignedProposition(partner, sp.prop)
        if other in present:
            return (other, sp)
    return None


def closure_status(
    formulas: Iterable[SignedProposition], named_individuals: Iterable[str]
) -> BranchStatus:
    """飽和分支的封閉狀態；強封閉優先於弱封閉

    弱封閉選項只考慮具名個體上的原子概念斷言。
    """
    present: Set[SignedProposition] = set()
    for sp in formulas:
        pair = _strong_pair(present, sp)
        if pair is not None:
            return BranchStatus(ClosureKind.STRONG, closing_pair=pair)
        present.add(sp)

    named = set(named_individuals)
    options = set()
    for sp in present:
        prop = sp.prop
        if (
            sp.label == T
            and isinstance(prop, ConceptAssertion)
            and isinstance(prop.concept, AtomicConcept)
            and prop.individual in named
            and SignedProposition(F, prop) in present
        ):
            options.add(Assumption(prop.individual, prop.concept.name))
    if options:
        return BranchStatus(ClosureKind.WEAK, options=frozenset(options))
    return BranchStatus(ClosureKind.OPEN)


@dataclass
class _Branch:
    """展開中的分支狀態"""

    formulas: List[SignedProposition] = field(default_factory=list)
    present: Set[SignedProposition] = field(default_factory=set)
    fired: Set[tuple] = field(default_factory=set)
    individuals: List[str] = field(default_factory=list)
    # 新生個體 -> 產生它的個體
    parent: Dict[str, str] = field(default_factory=dict)
    gamma: Dict[str, Set[Tuple[Label, ConceptExpr]]] = field(default_factory=dict)
    edges: Dict[str, List[Tuple[str, str]]] = field(default_factory=dict)
    closing: Optional[Tuple[SignedProposition, ...]] = None

    def copy(self) -> "_Branch":
        return _Branch(
            formulas=list(self.formulas),
            present=set(self.present),
            fired=set(self.fired),
            individuals=list(self.individuals),
            parent=dict(self.parent),
            gamma={k: set(v) for k, v in self.gamma.items()},
            edges={k: list(v) for k, v in self.edges.items()},
            closing=self.closing,
        )

    def add(self, sp: SignedProposition) -> bool:
        if sp in self.present:
            return False
        if self.closing is None:
            self.closing = _strong_pair(self.present, sp)
        self.formulas.append(sp)
        self.present.add(sp)
        for name in individuals_of(sp.prop):
            if name not in self.gamma:
                self.individuals.append(name)
                self.gamma[name] = set()
                self.edges[name] = []
        if isinstance(sp.prop, ConceptAssertion):
            self.gamma[sp.prop.individual].add((sp.label, sp.prop.concept))
        elif isinstance(sp.prop, RoleAssertion) and sp.label == T:
            self.edges[sp.prop.subject].append((sp.prop.role, sp.prop.object))
        return True

    def successors(self, individual: str, role: str) -> List[str]:
        return [obj for r, obj in self.edges.get(individual, ()) if r == role]

    def ancestors(self, individual: str) -> List[str]:
        chain = []
        current = self.parent.get(individual)
        while current is not None:
            chain.append(current)
            current = self.parent.get(current)
        return chain

    def blocker(self, individual: str) -> Tuple[bool, Optional[str]]:
        """(是否被阻擋, 阻擋者)；只有新生個體可被阻擋"""
        if individual not in self.parent:
            return False, None
        own = self.gamma.get(individual, set())
        for ancestor in self.ancestors(individual):
            if own <= self.gamma.get(ancestor, set()):
                return True, ancestor
        parent_blocked, _ = self.blocker(self.parent[individual])
        return parent_blocked, None


@dataclass
class _Application:
    """一次可套用的規則"""

    key: tuple
    rule: str
    build: Callable[[Optional[str]], List[List[SignedProposition]]]
    generator: bool = False
    anchor: Optional[str] = None


def _assert(label: Label, individual: str, concept: ConceptExpr) -> SignedProposition:
    return SignedProposition(label, ConceptAssertion(individual, concept))


def _rule_name(sp: SignedProposition) -> str:
    prop = sp.prop
    if isinstance(prop, ConceptAssertion):
        symbol = _OPERATOR_SYMBOLS.get(type(prop.concept), "")
    elif isinstance(prop, Subsumption):
        symbol = "⊑"
    elif isinstance(prop, Equality):
        symbol = "="
    else:
        symbol = "R"
    return f"{sp.label.symbol}{symbol}"


class TableauService:
    """帶標記表列展開器；規則順序固定為非分支、分支、產生新個體"""

    def __init__(
        self,
        mode: Optional[SubsumptionMode] = None,
        max_nodes: Optional[int] = None,
    ):
        self.mode = mode or SubsumptionMode(settings.PARALOGIC_MODE)
        self.max_nodes = max_nodes or settings.MAX_NODES
        self._fresh_counter = 0

    # --- 規則 ---------------------------------------------------------------

    def _non_branching(self, branch: _Branch, sp: SignedProposition) -> Iterator[_Application]:
        prop, label = sp.prop, sp.label
        name = _rule_name(sp)

        if isinstance(prop, (RoleAssertion, Subsumption, Equality)):
            # 公理與角色斷言為二值：F 即非真，F̄ 即真
            if label == F:
                yield _Application((name, sp), name, lambda _: [[SignedProposition(TBAR, prop)]])
            elif label == FBAR:
                yield _Application((name, sp), name, lambda _: [[SignedProposition(T, prop)]])
            elif label == T and isinstance(prop, Equality):
                both = [
                    SignedProposition(T, Subsumption(prop.lhs, prop.rhs)),
                    SignedProposition(T, Subsumption(prop.rhs, prop.lhs)),
                ]
                yield _Application((name, sp), name, lambda _: [both])
            return

        if not isinstance(prop, ConceptAssertion):
            return
        a, concept = prop.individual, prop.concept

        if isinstance(concept, Not):
            out = [_assert(_NEGATED[label], a, concept.operand)]
            yield _Application((name, sp), name, lambda _: [out])
        elif (isinstance(concept, And) and label in (T, FBAR)) or (
            isinstance(concept, Or) and label in (F, TBAR)
        ):
            out = [_assert(label, a, concept.left), _assert(label, a, concept.right)]
            yield _Application((name, sp), name, lambda _: [out])
        elif (isinstance(concept, Exists) and label in (TBAR, F)) or (
            isinstance(concept, Forall) and label in (T, FBAR)
        ):
            for b in branch.successors(a, concept.role):
                out = [_assert(label, b, concept.filler)]
                yield _Application((name, sp, b), name, lambda _, out=out: [out])

    def _branching(self, branch: _Branch, sp: SignedProposition) -> Iterator[_Application]:
        prop, label = sp.prop, sp.label
        name = _rule_name(sp)

        if isinstance(prop, Equality) and label == TBAR:
            alternatives = [
                [SignedProposition(TBAR, Subsumption(prop.lhs, prop.rhs))],
                [SignedProposition(TBAR, Subsumption(prop.rhs, prop.lhs))],
            ]
            yield _Application((name, sp), name, lambda _: alternatives)
        elif isinstance(prop, Subsumption) and label == T:
            c, d = prop.lhs, prop.rhs
            for a in list(branch.individuals):
                if self.mode == SubsumptionMode.MATERIAL:
                    alts = [[_assert(F, a, c)], [_assert(T, a, d)]]
                    yield _Application((name, sp, a), name, lambda _, alts=alts: alts)
                else:
                    first = [[_assert(TBAR, a, c)], [_assert(T, a, d)]]
                    second = [[_assert(FBAR, a, d)], [_assert(F, a, c)]]
                    yield _Application((name, sp, a, 1), name, lambda _, alts=first: alts)
                    yield _Application((name, sp, a, 2), name, lambda _, alts=second: alts)
        elif isinstance(prop, ConceptAssertion):
            a, concept = prop.individual, prop.concept
            if (isinstance(concept, And) and label in (F, TBAR)) or (
                isinstance(concept, Or) and label in (T, FBAR)
            ):
                alts = [[_assert(label, a, concept.left)], [_assert(label, a, concept.right)]]
                yield _Application((name, sp), name, lambda _: alts)

    def _generators(self, branch: _Branch, sp: SignedProposition) -> Iterator[_Application]:
        prop, label = sp.prop, sp.label
        name = _rule_name(sp)

        if isinstance(prop, Subsumption) and label == TBAR:
            c, d = prop.lhs, prop.rhs
            if self.mode == SubsumptionMode.MATERIAL:
                build = lambda x: [[_assert(FBAR, x, c), _assert(TBAR, x, d)]]
            else:
                build = lambda x: [
                    [_assert(T, x, c), _assert(TBAR, x, d)],
                    [_assert(F, x, d), _assert(FBAR, x, c)],
                ]
            yield _Application((name, sp), name, build, generator=True)
        elif isinstance(prop, ConceptAssertion):
            a, concept = prop.individual, prop.concept
            if (isinstance(concept, Exists) and label in (T, FBAR)) or (
                isinstance(concept, Forall) and label in (TBAR, F)
            ):
                role, filler = concept.role, concept.filler
                build = lambda x: [
                    [
                        SignedProposition(T, RoleAssertion(a, x, role)),
                        _assert(label, x, filler),
                    ]
                ]
                yield _Application((name, sp), name, build, generator=True, anchor=a)

    def _is_witnessed(self, branch: _Branch, app: _Application) -> bool:
        """產生規則的結論是否已由既有個體滿足"""
        if app.anchor is not None:
            concept = app.key[1].prop.concept
            return any(
                (app.key[1].label, concept.filler) in branch.gamma.get(b, ())
                for b in branch.successors(app.anchor, concept.role)
            )
        for b in branch.individuals:
            if any(all(sp in branch.present for sp in alt) for alt in app.build(b)):
                return True
        return False

    def _next_application(self, branch: _Branch) -> Optional[_Application]:
        for rules in (self._non_branching, self._branching):
            for sp in branch.formulas:
                for app in rules(branch, sp):
                    if app.key in branch.fired:
                        continue
                    alternatives = app.build(None)
                    if any(all(out in branch.present for out in alt) for alt in alternatives):
                        continue
                    return app
        for sp in branch.formulas:
            for app in self._generators(branch, sp):
                if app.key in branch.fired or self._is_witnessed(branch, app):
                    continue
                if app.anchor is not None and branch.blocker(app.anchor)[0]:
                    continue
                return app
        return None

    # --- 展開 ---------------------------------------------------------------

    def _fresh_name(self, taken: Set[str]) -> str:
        while True:
            self._fresh_counter += 1
            name = f"_x{self._fresh_counter}"
            if name not in taken:
                return name

    def _new_node(
        self,
        tableau: Tableau,
        parent_id: Optional[int],
        added: Sequence[SignedProposition],
        rule: str,
    ) -> TableauNode:
        if len(tableau.nodes) >= self.max_nodes:
            logger.error("表列節點數超過上限 %d", self.max_nodes)
            raise ResourceLimitError("表列節點", self.max_nodes)
        node = TableauNode(
            node_id=len(tableau.nodes), parent_id=parent_id, added=tuple(added), rule=rule
        )
        tableau.nodes.append(node)
        if parent_id is not None:
            tableau.nodes[parent_id].children.append(node.node_id)
        return node

    def _finish_leaf(self, tableau: Tableau, branch: _Branch, node: TableauNode, named):
        node.status = closure_status(branch.formulas, named)
        blocked = []
        for individual in branch.individuals:
            is_blocked, blocker = branch.blocker(individual)
            if is_blocked:
                blocked.append(
                    BlockingInfo(
                        individual=individual,
                        blocker=blocker,
                        gamma=frozenset(
                            (lbl, serialize(c)) for lbl, c in branch.gamma[individual]
                        ),
                        blocker_gamma=frozenset(
                            (lbl, serialize(c)) for lbl, c in branch.gamma.get(blocker, ())
                        ),
                    )
                )
        node.blocked = tuple(blocked)

    def expand(self, root: Iterable[SignedProposition]) -> Tableau:
        """展開到飽和；分支依深度優先、左側優先處理"""
        root_branch = _Branch()
        for sp in root:
            root_branch.add(sp)
        named = list(root_branch.individuals)
        tableau = Tableau(root=tuple(root_branch.formulas), mode=self.mode)
        self._fresh_counter = 0
        taken = set(named)

        root_node = self._new_node(tableau, None, root_branch.formulas, "root")
        stack: List[Tuple[_Branch, int]] = [(root_branch, root_node.node_id)]
        while stack:
            branch, node_id = stack.pop()
            while True:
                node = tableau.nodes[node_id]
                if branch.closing is not None:
                    self._finish_leaf(tableau, branch, node, named)
                    break
                app = self._next_application(branch)
                if app is None:
                    self._finish_leaf(tableau, branch, node, named)
                    break
                branch.fired.add(app.key)
                fresh = None
                if app.generator:
                    fresh = self._fresh_name(taken)
                    taken.add(fresh)
                    tableau.fresh_individuals.append(fresh)
                alternatives = app.build(fresh)

                if len(alternatives) == 1:
                    added = [sp for sp in alternatives[0] if sp not in branch.present]
                    for sp in added:
                        branch.add(sp)
                    if fresh is not None and app.anchor is not None:
                        branch.parent[fresh] = app.anchor
                    node_id = self._new_node(tableau, node_id, added, app.rule).node_id
                    continue

                children = []
                for alternative in alternatives:
                    child = branch.copy()
                    added = [sp for sp in alternative if sp not in child.present]
                    for sp in added:
                        child.add(sp)
                    if fresh is not None and app.anchor is not None:
                        child.parent[fresh] = app.anchor
                    child_node = self._new_node(tableau, node_id, added, app.rule)
                    children.append((child, child_node.node_id))
                stack.extend(reversed(children))
                break

        logger.debug(
            "表列展開完成: %d 個節點, %d 個新生個體",
            len(tableau.nodes),
            len(tableau.fresh_individuals),
        )
        return tableau

    # --- 證明 ---------------------------------------------------------------

    @staticmethod
    def minimal_assumption_sets(tableau: Tableau) -> List[frozenset]:
        """封閉所有弱封閉分支所需的最小假設集合；有開放分支時為空"""
        families = []
        for leaf in tableau.leaves():
            if leaf.status.kind == ClosureKind.OPEN:
                return []
            if leaf.status.kind == ClosureKind.WEAK:
                families.append(leaf.status.options)
        return minimal_hitting_sets(families, key=assumption_set_key)

    def assumption_sets_for(self, root: Iterable[SignedProposition]):
        """展開任意根並回傳 (表列, 最小假設集合)"""
        tableau = self.expand(root)
        return tableau, self.minimal_assumption_sets(tableau)

    def prove(self, kb: KnowledgeBase, goal: SignedProposition) -> ProofResult:
        """以 {Tσ | σ ∈ Σ} ∪ {goal 的補標記} 為根證明 goal"""
        if goal.label not in (T, F):
            raise ValueError(f"證明目標的標記必須為 T 或 F: {goal.label.value}")
        root = [SignedProposition(T, sigma) for sigma in kb.propositions]
        root.append(SignedProposition(goal.label.complement, goal.prop))
        tableau, sets = self.assumption_sets_for(root)

        if not sets:
            kind = ProofKind.NOT_PROVABLE
        elif sets == [frozenset()]:
            kind = ProofKind.PROVED
        else:
            kind = ProofKind.PROVED_UNDER_ASSUMPTIONS
        logger.info(
            "證明 %s %s: %s (%d 組假設)",
            goal.label.symbol,
            serialize(goal.prop),
            kind.value,
            len(sets),
        )
        return ProofResult(kind=kind, goal=goal, assumption_sets=tuple(sets), tableau=tableau)

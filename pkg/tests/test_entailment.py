"""
蘊涵判定測試 - LP 與衝突最小蘊涵、判定報告，以及與窮舉模型檢查的一致性
"""

import pytest

from models.exceptions import NoStableExtensionError
from models.reasoning_models import VerdictKind
from models.semantics_models import SubsumptionMode
from services.entailment_service import EntailmentService, render_text
from services.kb_parser import parse_kb, parse_proposition
from services.lp_semantics import oracle_lp_entails, oracle_lpm_entails
from services.tableau_service import TableauService

MODES = [SubsumptionMode.INTERNAL, SubsumptionMode.MATERIAL]


def service(mode: SubsumptionMode = SubsumptionMode.MATERIAL) -> EntailmentService:
    return EntailmentService(mode=mode, max_nodes=100000, max_arguments=1000, exhaustive_limit=20)


class TestDecideLP:
    """測試 LP 蘊涵"""

    def test_example1_not_entailed(self, example1_kb):
        decision = service().decide_lp(example1_kb, parse_proposition("a : D"))
        assert not decision.entailed

    def test_asserted_fact(self):
        assert service().decide_lp(parse_kb("a : C."), parse_proposition("a : C")).entailed

    @pytest.mark.parametrize("mode", MODES, ids=lambda m: m.value)
    def test_no_explosion(self, mode):
        kb = parse_kb("a : C. a : ~C.")
        assert not service(mode).decide_lp(kb, parse_proposition("a : D")).entailed


class TestDecideLPm:
    """測試衝突最小蘊涵"""

    def test_example1(self, example1_kb):
        verdict = service().decide_lpm(example1_kb, parse_proposition("a : D"))
        assert verdict.kind == VerdictKind.ENTAILED_CONFLICT_MINIMAL
        assert len(verdict.framework) == 1
        assert verdict.witnesses == {0: 0}

    def test_example3_not_entailed(self, example3_kb):
        verdict = service().decide_lpm(example3_kb, parse_proposition("a : D"))
        assert verdict.kind == VerdictKind.NOT_ENTAILED
        assert verdict.counterexample.sorted_members() == [1]
        assert [e.sorted_members() for e in verdict.stable_extensions] == [[0, 2], [0, 3], [1]]

    def test_example4_distinct_witnesses(self, example4_kb):
        verdict = service().decide_lpm(example4_kb, parse_proposition("a : E"))
        assert verdict.kind == VerdictKind.ENTAILED_CONFLICT_MINIMAL
        assert verdict.witnesses == {0: 0, 1: 1}

    def test_monotone_shortcut_skips_framework(self, patel_schneider_kb):
        verdict = service(SubsumptionMode.INTERNAL).decide_lpm(
            patel_schneider_kb, parse_proposition("a : D")
        )
        assert verdict.kind == VerdictKind.ENTAILED_MONOTONE
        assert verdict.framework is None

    def test_material_subsumption_is_weaker(self, patel_schneider_kb):
        verdict = service(SubsumptionMode.MATERIAL).decide_lpm(
            patel_schneider_kb, parse_proposition("a : D")
        )
        assert verdict.kind == VerdictKind.NOT_ENTAILED

    def test_nonmonotonic(self, example1_kb, nonmonotonic_kb):
        query = parse_proposition("a : D")
        assert service().decide_lpm(example1_kb, query).kind.entailed
        assert service().decide_lpm(nonmonotonic_kb, query).kind == VerdictKind.NOT_ENTAILED

    @pytest.mark.parametrize("mode", MODES, ids=lambda m: m.value)
    def test_no_explosion(self, mode):
        kb = parse_kb("a : C. a : ~C.")
        verdict = service(mode).decide_lpm(kb, parse_proposition("a : D"))
        assert verdict.kind == VerdictKind.NOT_ENTAILED

    def test_no_supporting_argument(self):
        verdict = service().decide_lpm(parse_kb("a : C."), parse_proposition("a : D"))
        assert verdict.kind == VerdictKind.NOT_ENTAILED
        assert len(verdict.framework) == 0
        assert verdict.counterexample.sorted_members() == []

    def test_quantified_kb(self, blocking_kb):
        verdict = service().decide_lpm(blocking_kb, parse_proposition("a : exists R. C"))
        assert verdict.kind == VerdictKind.ENTAILED_CONFLICT_MINIMAL

    def test_query_tableau_expanded_once(self, example3_kb, mocker):
        spy = mocker.spy(TableauService, "prove")
        verdict = service().decide_lpm(example3_kb, parse_proposition("a : D"))
        assert verdict.kind == VerdictKind.NOT_ENTAILED
        assert spy.call_count == 1

    def test_missing_stable_extension(self, example3_kb, mocker):
        mocker.patch("services.entailment_service.stable_extensions", return_value=[])
        with pytest.raises(NoStableExtensionError):
            service().decide_lpm(example3_kb, parse_proposition("a : D"))


class TestReport:
    """測試判定報告"""

    def test_example3_report(self, example3_kb):
        report = service().explain(example3_kb, parse_proposition("a : D"))
        assert report.verdict == "not_entailed"
        assert len(report.af.arguments) == 4
        assert len(report.af.attacks) == 7
        assert len(report.stable_extensions) == 3
        assert report.counterexample_extension == [1]
        assert report.witnesses is None

    def test_example4_report(self, example4_kb):
        report = service().explain(example4_kb, parse_proposition("a : E"))
        assert report.verdict == "entailed_conflict_minimal"
        assert report.witnesses == {0: 0, 1: 1}
        first = report.stable_extensions[0]
        assert first.members == [0, 3]
        assert first.allowed_assumptions == ["~C(a:C)"]
        assert first.supporting_arguments == [0]
        assert "衝突最小蘊涵" in render_text(report)

    def test_monotone_report_has_no_framework(self):
        report = service().explain(parse_kb("a : C."), parse_proposition("a : C"))
        assert report.af is None
        assert report.stable_extensions is None
        text = render_text(report)
        assert "LP 蘊涵" in text
        assert "論證" not in text


class TestAgainstOracle:
    """隨機無量詞知識庫上與窮舉模型檢查的一致性"""

    @pytest.mark.parametrize("mode", MODES, ids=lambda m: m.value)
    def test_conflict_minimal_entailment(self, mode, random_instances):
        disagreements = []
        decider = service(mode)
        for seed, kb, query in random_instances(500):
            verdict = decider.decide_lpm(kb, query)
            if verdict.kind.entailed != oracle_lpm_entails(kb, query, mode):
                disagreements.append(seed)
        assert disagreements == []

    @pytest.mark.parametrize("mode", MODES, ids=lambda m: m.value)
    def test_lp_entailment(self, mode, random_instances):
        decider = service(mode)
        for seed, kb, query in random_instances(200, offset=10000):
            assert decider.decide_lp(kb, query).entailed == oracle_lp_entails(kb, query, mode), seed

    @pytest.mark.parametrize("mode", MODES, ids=lambda m: m.value)
    def test_lp_entailment_survives_extension(self, mode, random_instances):
        decider = service(mode)
        extras = random_instances(100, offset=60000)
        for (seed, kb, query), (_, extra, _) in zip(random_instances(100, offset=50000), extras):
            if decider.decide_lp(kb, query).entailed:
                assert decider.decide_lp(kb.extended(extra.propositions), query).entailed, seed

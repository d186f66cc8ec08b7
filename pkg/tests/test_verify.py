import json
import random

from isogeny_lab.reports import (
    CLAIM_COUNTEREXAMPLE,
    CLAIM_LEM32,
    CLAIM_LEM42,
    CLAIM_NECESSITY,
    CLAIM_THM1,
    CLAIM_THM2,
    NOT_APPLICABLE,
    VERIFIED,
    VerificationReport,
    merge_reports,
)
from isogeny_lab.verify import (
    abstract_necessity_witness,
    cyclic_law_trial,
    lemma42_trial,
    lemma_sweep,
    replay_witness,
    reproduce_paper_counterexample,
    run_sweep,
    run_trials,
    theorem2_trial,
    verify_theorem1,
    verify_theorem2_products,
)


def test_theorem1_7_3():
    rep = verify_theorem1(7, 3)
    assert rep.clean
    assert rep.paper_claims[CLAIM_THM1] == VERIFIED
    assert rep.counts["graphs_order_2"] == 1
    assert rep.counts["soundness"]["homomorphism_failures"] == 0


def test_theorem1_no_order2_when_q_2_mod_3():
    rep = verify_theorem1(11, 3)
    assert rep.clean
    assert rep.counts["graphs_order_2"] == 0
    assert rep.paper_claims[CLAIM_THM1] == NOT_APPLICABLE


def test_lemma_sweep_7_3():
    rep = lemma_sweep(7, 3)
    assert rep.clean
    assert rep.paper_claims[CLAIM_LEM32] == VERIFIED
    assert rep.paper_claims[CLAIM_LEM42] == VERIFIED
    assert rep.counts["lattices_checked"] == 1


def test_theorem2_products_small():
    rep = verify_theorem2_products(7, 3, max_pairs=3)
    assert rep.clean
    assert rep.paper_claims[CLAIM_THM2] in (VERIFIED, NOT_APPLICABLE)
    assert rep.counts["pairs_checked"] > 0


def test_counterexample_report():
    rep = reproduce_paper_counterexample()
    assert rep.clean
    assert rep.paper_claims[CLAIM_COUNTEREXAMPLE] == VERIFIED
    checks = rep.counts["checks"]
    assert checks["quotient_equals_family"]
    assert checks["psi3_rational_roots"] == [[-1, 3]]
    assert checks["rational_lift_exists"] == [False]
    assert rep.timing["seconds"] < 1.0


def test_necessity_witness_report():
    rep = abstract_necessity_witness()
    assert rep.clean
    assert rep.paper_claims[CLAIM_NECESSITY] == VERIFIED
    assert rep.counts["order"] == 2
    assert rep.counts["semisimple"] is False
    assert rep.counts["fixed_dimension"] == 0


def test_report_round_trip_and_determinism():
    rep1 = verify_theorem1(13, 3)
    rep2 = verify_theorem1(13, 3)
    j1 = json.loads(rep1.to_json())
    j2 = json.loads(rep2.to_json())
    j1.pop("timing")
    j2.pop("timing")
    assert j1 == j2
    back = VerificationReport.from_json(rep1.to_json())
    assert back.paper_claims == rep1.paper_claims
    assert back.counts == rep1.counts


def test_merge_reports_statuses():
    a = VerificationReport(parameters={}, paper_claims={CLAIM_THM1: VERIFIED},
                           counts={"x": 1}, timing={"seconds": 0.0})
    b = VerificationReport(parameters={}, paper_claims={CLAIM_THM1: NOT_APPLICABLE},
                           counts={"x": 2}, timing={"seconds": 0.0})
    m = merge_reports({}, [a, b])
    assert m.paper_claims[CLAIM_THM1] == VERIFIED
    assert m.counts["x"] == 3


def test_mini_sweep_runs_clean():
    rep = run_sweep([3, 5], q_max=20, q_min=5)
    assert rep.clean
    assert rep.paper_claims[CLAIM_THM1] in (VERIFIED, NOT_APPLICABLE)


def test_random_trial_suites_small():
    assert run_trials(lemma42_trial, 40, seed=1) == []
    assert run_trials(theorem2_trial, 40, seed=2) == []
    assert run_trials(cyclic_law_trial, 40, seed=3) == []


def test_replay_passing_witnesses():
    # a witness built from a passing configuration replays clean
    w = {"claim": CLAIM_COUNTEREXAMPLE}
    assert replay_witness(w)
    w2 = {"claim": CLAIM_NECESSITY}
    assert replay_witness(w2)
    w3 = {"claim": CLAIM_THM1, "q": 7, "ell": 3, "target": [0, 2]}
    assert replay_witness(w3)


def test_replay_synthetic_violation():
    # two equal hyperplanes claimed independent: the lattice check must fail
    w = {
        "claim": CLAIM_LEM42,
        "ell": 3,
        "dim": 4,
        "hyperplanes": [
            [[1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
            [[1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
        ],
    }
    assert replay_witness(w) is False
    # theorem-2 witness with a non-semisimple but pointed configuration of
    # order 2 and zero fixed space: still violated on replay
    from isogeny_lab.galois_modules import necessity_witness_config

    cfg = necessity_witness_config()
    data = cfg.to_json()
    w2 = {"claim": CLAIM_THM2, "module": data,
          "hyperplanes": data["hyperplanes"]}
    assert replay_witness(w2) is False


def test_theorem2_trial_structure():
    rng = random.Random(5)
    for _ in range(10):
        assert theorem2_trial(rng) is None

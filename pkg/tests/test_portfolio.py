import pytest

from conftest import random_model
from hcprop.branching import WarnsdorffBrancher
from hcprop.circuit import COST, standard_propagators
from hcprop.halfcheck import make_propagator
from hcprop.kernel import (Asset, FailPropagator, Strategy, arrange, portfolio_run,
                           search_restarting)
from hcprop.reference import held_karp


def complete(model, name="complete", seed=0):
    return Asset(name, standard_propagators(model), WarnsdorffBrancher(model, seed=seed),
                 objective=COST, seed=seed)


def halfcheck(model, names, seed=1000, record=False):
    props = [make_propagator(p, model, seed=seed) for p in names]
    return Asset("hc", standard_propagators(model) + props, WarnsdorffBrancher(model, seed=seed),
                 objective=COST, nogood_recording=record, seed=seed)


@pytest.mark.parametrize("strategy", list(Strategy))
def test_fail_asset_does_not_hurt(strategy):
    model = random_model(8, 3)
    out = portfolio_run([complete(model), halfcheck(model, ["fail"])], model.root_store(), strategy)
    assert out.proven_optimal
    assert out.incumbent[1] == held_karp(model.w)[0]


def test_single_asset_matches_plain_search():
    model = random_model(8, 9)
    alone = search_restarting(complete(model), model.root_store())
    out = portfolio_run([complete(model)], model.root_store())
    assert out.proven_optimal
    assert out.incumbent[1] == alone.solutions[-1].cost
    assert out.stats["complete"].nodes == alone.stats.nodes


@pytest.mark.parametrize("strategy", list(Strategy))
def test_all_halfcheck_props_nine_cities(strategy):
    model = random_model(9, 21)
    assets = [complete(model), halfcheck(model, ["wncl", "cbp", "onetree"], record=True)]
    out = portfolio_run(assets, model.root_store(), strategy, check=True)
    assert out.proven_optimal and not out.infeasible
    assert out.incumbent[1] == held_karp(model.w)[0]


def test_incomplete_nogoods_never_reach_complete_assets():
    model = random_model(9, 4)
    comp = complete(model)
    hc = halfcheck(model, ["onetree", "cbp"], record=True)
    comp.restart_scale = hc.restart_scale = 1
    portfolio_run([comp, hc], model.root_store())
    assert comp.nogoods == [] or not any(ng.origin_incomplete for ng in comp.nogoods)
    assert all(ng.origin_incomplete for ng in hc.nogoods if ng.origin == "hc")


def test_arrange_multi_and_roundrobin():
    model = random_model(7, 2)
    assets = [complete(model), halfcheck(model, ["wncl", "cbp", "onetree"])]
    multi = arrange(assets, Strategy.MULTIPLE)
    assert [a.name for a in multi] == ["complete", "hc/wncl", "hc/cbp", "hc/onetree"]
    assert all(sum(p.half_checking for p in a.propagators) == 1 for a in multi[1:])
    assert not any(a.complete for a in multi[1:])
    rr = arrange(assets, Strategy.ROUND_ROBIN)
    assert [a.name for a in rr] == ["complete", "hc/rr"]
    assert [[p.name for p in g] for g in rr[1].rotation] == [["wncl"], ["cbp"], ["onetree"]]
    assert not rr[1].complete


def test_only_incomplete_assets_never_claim_optimality():
    model = random_model(7, 2)
    out = portfolio_run([halfcheck(model, ["onetree"])], model.root_store())
    assert not out.proven_optimal and out.incumbent is not None


def test_infeasible_store():
    model = random_model(5, 2)
    store = model.root_store()
    store.set_max(COST, 1)
    out = portfolio_run([complete(model)], store)
    assert out.infeasible and out.incumbent is None and not out.proven_optimal


def test_strategy_aliases():
    assert Strategy.parse("multiple_assets") is Strategy.MULTIPLE
    assert Strategy.parse("round_robin") is Strategy.ROUND_ROBIN
    with pytest.raises(ValueError):
        Strategy.parse("nope")


def test_duplicate_names_rejected():
    model = random_model(5, 2)
    with pytest.raises(ValueError):
        portfolio_run([complete(model), complete(model)], model.root_store())
    with pytest.raises(ValueError):
        portfolio_run([], model.root_store())

import pytest

from ogroup import suites


@pytest.mark.parametrize("suite", suites.SUITE_NAMES)
def test_suite_clean_at_small_order(suite):
    results = suites.run_suite(suite, max_order=6)
    assert results, suite
    assert all(ok for _, ok, _ in results)


@pytest.mark.parametrize("suite", suites.SUITE_NAMES)
def test_worker_pool_deterministic(suite):
    serial = suites.run_suite(suite, max_order=6)
    pooled = suites.run_suite(suite, max_order=6, workers=2)
    assert serial == pooled


def test_all_composes_the_four_suites():
    both = suites.run_suite("all", max_order=4)
    names = {c[0].split("/")[0] for c in both}
    assert names == {"prop2", "theorem", "sie-ns", "lemma"}


def test_unknown_suite_rejected():
    with pytest.raises(ValueError):
        suites.run_suite("bogus")


def test_check_ids_unique_and_sorted():
    results = suites.run_suite("prop2", max_order=6)
    ids = [c[0] for c in results]
    assert ids == sorted(ids)
    # greedy sampling ids repeat per instance; everything else is unique
    non_greedy = [i for i in ids if not i.startswith("prop2/greedy/")]
    assert len(non_greedy) == len(set(non_greedy))

from brokencircuits import verify


def test_full_suite_is_green():
    results = verify.run_suite("all", seed=3)
    failures = [(r.name, r.witness) for r in results if r.status == "fail"]
    assert not failures, failures


def test_results_sorted_by_name():
    results = verify.run_suite("all", seed=3)
    names = [r.name for r in results]
    assert names == sorted(names)


def test_deterministic_given_seed():
    a = verify.run_suite("lattice", seed=9)
    b = verify.run_suite("lattice", seed=9)
    assert [(r.name, r.status, r.witness) for r in a] == [
        (r.name, r.status, r.witness) for r in b
    ]

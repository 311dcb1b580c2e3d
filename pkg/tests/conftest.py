import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from hopfmerge.trees import AbstractTree, PlanarTree

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def abstract_st(alphabet=("a", "b", "c"), max_leaves=6):
    leaf = st.sampled_from(alphabet).map(AbstractTree.leaf)
    return st.recursive(leaf, lambda kids: st.tuples(kids, kids).map(lambda p: AbstractTree.node(*p)),
                        max_leaves=max_leaves)


def planar_st(max_leaves=5, vlabels=(None,), leaf="x"):
    base = st.just(PlanarTree.leaf(leaf))
    return st.recursive(base, lambda kids: st.tuples(kids, kids, st.sampled_from(vlabels)).map(
        lambda p: PlanarTree.node(*p)), max_leaves=max_leaves)


@pytest.fixture
def abstract_trees_st():
    return abstract_st()


SMALL = dict(enum_max_internal=5, ds_max_n=5, trees_max_leaves=4, lr_max_degree=2,
             lr_assoc_max_degree=2, lr_assoc_max_total=4, lr_agree_max_degree=3,
             mg_coideal_max_leaves=4, mg_ideal_max_leaves=4, mg_nested_max_leaves=4,
             mg_cocycle_max_leaves=3, ws_max_leaves=2, ext_max_leaves=4)


@pytest.fixture
def small_cfg():
    from hopfmerge.config import Config

    return Config(**SMALL)


_CRITERIA: dict = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" in report.nodeid and (report.when == "call" or report.failed):
        name = report.nodeid.split("::")[-1][len("test_criterion_"):]
        _CRITERIA[name] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA):
        num, _, title = name.partition("_")
        terminalreporter.write_line(f"criterion {int(num):2d} {_CRITERIA[name]:4s}  {title.replace('_', ' ')}")

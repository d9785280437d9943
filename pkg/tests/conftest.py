import pytest


def pytest_addoption(parser):
    parser.addoption("--run-heavy", action="store_true", default=False,
                     help="run the 2^24-state heavy checks")
    parser.addoption("--run-slow", action="store_true", default=False,
                     help="run minutes-scale exhaustive checks")


def pytest_collection_modifyitems(config, items):
    skip_heavy = pytest.mark.skip(reason="needs --run-heavy")
    skip_slow = pytest.mark.skip(reason="needs --run-slow")
    for item in items:
        if "heavy" in item.keywords and not config.getoption("--run-heavy"):
            item.add_marker(skip_heavy)
        if "slow" in item.keywords and not config.getoption("--run-slow"):
            item.add_marker(skip_slow)
